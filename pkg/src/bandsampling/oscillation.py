"""Local oscillation, derivative and Bessel norms, and the Bernstein inequality.

``osc_eps(f)(x) = sup_{u in U_eps} |f(x) - f(x u^-1)|`` is approximated from
below by a maximum over a fixed displacement grid.  The grid for radius
``eps`` is every multiple of a common step up to ``eps``, so grids at smaller
radii are subsets of grids at larger ones when the step is shared (as in
``osc_profile``).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import spaces as sp
from .kernels import BandCoefficients, random_band_function, synthesize
from .spaces import SU2, Sphere, Torus

__all__ = [
    "OscillationProfile",
    "osc_sup",
    "osc_profile",
    "oscillation_constant",
    "modewise_osc_bound",
    "derivative_sum_bound",
    "bernstein_constant",
    "bernstein_check",
]

N_DIRECTIONS = 16


@dataclass
class OscillationProfile:
    epsilons: np.ndarray
    l2_norms: np.ndarray
    ratios: np.ndarray
    bounds: np.ndarray | None = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["epsilon", "l2_norm", "ratio"] + (["modewise_bound"] if self.bounds is not None else [])
        writer.writerow(header)
        for i, eps in enumerate(self.epsilons):
            row = [repr(float(eps)), repr(float(self.l2_norms[i])), repr(float(self.ratios[i]))]
            if self.bounds is not None:
                row.append(repr(float(self.bounds[i])))
            writer.writerow(row)
        return buf.getvalue()


def _rotation_towards(x, radius, direction):
    """Points at geodesic distance ``radius`` from unit vectors ``x`` on S^2.

    ``direction`` is an angle in the tangent plane, measured from a fixed
    frame built from ``x``.
    """
    ref = np.where(np.abs(x[..., 2:3]) < 0.9, np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))
    e1 = np.cross(x, ref)
    e1 /= np.linalg.norm(e1, axis=-1, keepdims=True)
    e2 = np.cross(x, e1)
    tangent = math.cos(direction) * e1 + math.sin(direction) * e2
    return math.cos(radius) * x + math.sin(radius) * tangent


def _displacement_radii(epsilon, step):
    k = int(math.floor(epsilon / step * (1 + 1e-12)))
    return step * np.arange(1, k + 1)


def osc_sup(space, f: BandCoefficients, epsilon: float, probe_rule, displacement_count: int = 64,
            step: float | None = None) -> np.ndarray:
    """Oscillation of ``f`` at each probe node, over a displacement grid.

    Torus: shifts ``+-j*step``.  SU2: the same in the zonal angle, folded into
    [0, pi] (the class angles reachable from ``theta`` within the ball).
    S^2: geodesic radii ``j*step`` in ``N_DIRECTIONS`` tangent directions.
    ``step`` defaults to ``epsilon / displacement_count`` on the 1-D spaces and
    ``epsilon / (displacement_count // N_DIRECTIONS)`` on the sphere.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    x = probe_rule.nodes
    fx = synthesize(f, x)
    best = np.zeros(len(probe_rule))
    if isinstance(space, (Torus, SU2)):
        if step is None:
            step = epsilon / displacement_count
        for s in _displacement_radii(epsilon, step):
            for sign in (1.0, -1.0):
                y = x + sign * s
                if isinstance(space, SU2):
                    y = np.abs(y)
                    y = np.where(y > np.pi, 2 * np.pi - y, y)
                best = np.maximum(best, np.abs(fx - synthesize(f, y)))
        return best
    if isinstance(space, Sphere) and space.d == 2:
        n_r = max(1, displacement_count // N_DIRECTIONS)
        if step is None:
            step = epsilon / n_r
        for s in _displacement_radii(epsilon, step):
            for j in range(N_DIRECTIONS):
                y = _rotation_towards(x, s, 2 * math.pi * j / N_DIRECTIONS)
                best = np.maximum(best, np.abs(fx - synthesize(f, y)))
        return best
    raise sp.UnsupportedSpaceError(f"oscillation is not implemented on {space!r}")


def modewise_osc_bound(f: BandCoefficients, epsilon: float) -> float:
    """Triangle-inequality bound ``sum_k |c_k| 2 sin(min(|k| eps, pi)/2)`` (torus).

    Each character has oscillation exactly ``2 sin(min(|k| eps, pi)/2)``
    everywhere, so this bounds ``osc_eps(f)`` pointwise and hence in L2.
    """
    if not isinstance(f.space, Torus):
        raise sp.UnsupportedSpaceError("modewise bound is implemented on the torus")
    k = np.abs(np.array(sp.basis_labels(f.space, f.omega), dtype=float))
    return float(np.sum(np.abs(f.coeffs) * 2 * np.sin(np.minimum(k * epsilon, np.pi) / 2)))


def osc_profile(space, f: BandCoefficients, epsilons, probe_rule, displacement_count: int = 64) -> OscillationProfile:
    """L2 norms of ``osc_eps(f)`` over decreasing ``epsilons``, sharing one grid step."""
    eps = np.asarray(epsilons, dtype=float)
    if np.any(np.diff(eps) >= 0):
        raise ValueError("epsilons must be strictly decreasing")
    if isinstance(space, Sphere):
        step = eps[0] / max(1, displacement_count // N_DIRECTIONS)
    else:
        step = eps[0] / displacement_count
    norms = np.array([math.sqrt(probe_rule.integrate(osc_sup(space, f, e, probe_rule, displacement_count, step) ** 2))
                      for e in eps])
    fnorm = f.norm()
    ratios = norms / fnorm if fnorm > 0 else np.zeros_like(norms)
    bounds = None
    if isinstance(space, Torus):
        bounds = np.array([modewise_osc_bound(f, e) for e in eps])
    return OscillationProfile(eps, norms, ratios, bounds)


def oscillation_constant(space, omega, epsilon, probe_rule, trials: int = 20, seed: int = 0,
                         displacement_count: int = 64) -> float:
    """Measured ``C_U``: the largest ``||osc_eps f|| / ||f||`` over a test family.

    The family is ``trials`` random unit functions plus every single basis
    function.  A sup over the band space is approximated from below.
    """
    rng = np.random.default_rng(seed)
    dim = len(sp.basis_labels(space, omega))
    family = [BandCoefficients(space, omega, row) for row in np.eye(dim)]
    family += [random_band_function(space, omega, rng) for _ in range(trials)]
    best = 0.0
    for f in family:
        o = osc_sup(space, f, epsilon, probe_rule, displacement_count)
        best = max(best, math.sqrt(probe_rule.integrate(o**2)) / f.norm())
    return best


def derivative_sum_bound(f: BandCoefficients, order: int) -> tuple[float, float]:
    """``(sum_{j=1}^{order} ||f^(j)||, ||(I - Delta)^{order/2} f||)`` on the torus."""
    if not isinstance(f.space, Torus):
        raise sp.UnsupportedSpaceError("derivatives are spectral multipliers only on the torus")
    k = np.array(sp.basis_labels(f.space, f.omega), dtype=float)
    a2 = np.abs(f.coeffs) ** 2
    dsum = sum(math.sqrt(np.sum(k ** (2 * j) * a2)) for j in range(1, order + 1))
    bessel = math.sqrt(np.sum((1 + k * k) ** order * a2))
    return float(dsum), float(bessel)


def bernstein_constant(space, omega) -> float:
    """Largest ``|-Delta|`` eigenvalue over the band."""
    return max(abs(space.laplace_eigenvalue(i)) for i in space.spectrum(omega))


def bernstein_check(space, omega, f: BandCoefficients, k: int) -> tuple[float, float]:
    """``(||Delta^k f||, c(Omega)^k ||f||)``, computed spectrally."""
    if k < 0:
        raise ValueError("k must be non-negative")
    lam = sp.band_eigenvalues(space, f.omega)
    lhs = float(np.linalg.norm(lam**k * f.coeffs))
    rhs = float(bernstein_constant(space, omega) ** k * f.norm())
    return lhs, rhs

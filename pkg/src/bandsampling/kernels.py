"""Reproducing kernels of band spaces and the band projection.

``sinc_kernel`` is the convolution kernel ``phi_Omega`` as a function of the
invariant pairing (angle, inner product, radius, ...).  ``kernel_eval`` is the
two-point reproducing kernel ``K(x, y)`` of the band space actually used for
reconstruction; on every space except SU(2) it is ``phi_Omega(y^-1 x)``.  On
SU(2) the reconstruction space is the central subspace, whose kernel is the
conjugation average of ``phi_Omega(y^-1 k x k^-1)``, namely
``sum_n chi_n(x) chi_n(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spaces as sp
from .spaces import SU2, EuclideanRadial, HeisenbergBand, HeisenbergRadial, Sphere, Torus
from . import special_fn as sf

__all__ = [
    "BandCoefficients",
    "band_dimension",
    "central_dimension",
    "sinc_kernel",
    "su2_character_sum_closed_form",
    "su2_kernel_closed_form",
    "kernel_eval",
    "kernel_gram",
    "heisenberg_kernel",
    "project_band",
    "synthesize",
    "random_band_function",
    "truncate",
]

SERIES_SWITCH = 1e-6


@dataclass(frozen=True)
class BandCoefficients:
    """A band-limited function as coefficients over ``basis_eval`` ordering."""

    space: object
    omega: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (len(sp.basis_labels(self.space, self.omega)),):
            raise ValueError(f"expected {len(sp.basis_labels(self.space, self.omega))} "
                             f"coefficients, got shape {c.shape}")
        object.__setattr__(self, "coeffs", c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, x):
        return synthesize(self, x)

    def __add__(self, other):
        return BandCoefficients(self.space, self.omega, self.coeffs + other.coeffs)

    def __sub__(self, other):
        return BandCoefficients(self.space, self.omega, self.coeffs - other.coeffs)


def band_dimension(space, omega) -> int:
    """Sum of Plancherel multiplicities over the band, ``phi_Omega(e)``.

    For SU(2) this counts ``(n+1)^2``; the central reconstruction space has
    dimension ``central_dimension`` instead.
    """
    if not space.compact:
        raise sp.UnsupportedSpaceError("band dimension is infinite on non-compact spaces")
    return int(sum(space.plancherel_weight(i) for i in space.spectrum(omega)))


def central_dimension(space, omega) -> int:
    """Length of the coefficient vector of ``BandCoefficients``."""
    return len(sp.basis_labels(space, omega))


# --------------------------------------------------------------------------
# Closed forms
# --------------------------------------------------------------------------

def dirichlet_kernel(omega: int, t):
    """``sin((Omega+1/2) t) / sin(t/2)``, switching to the character sum near 0."""
    t = np.asarray(t, dtype=float)
    # centre on 0 so (Omega+1/2) t stays small where sin(t/2) is small
    t = t - 2 * np.pi * np.round(t / (2 * np.pi))
    half = np.sin(t / 2)
    small = np.abs(half) < SERIES_SWITCH
    safe = np.where(small, 1.0, half)
    out = np.sin((omega + 0.5) * t) / safe
    if np.any(small):
        k = np.arange(1, omega + 1)
        series = 1.0 + 2.0 * np.cos(np.multiply.outer(t[small], k)).sum(axis=-1)
        out = np.where(small, 0.0, out)
        out[small] = series
    return float(out) if out.ndim == 0 else out


def su2_character_sum_closed_form(omega: int, theta):
    """``sin((Omega+2) theta/2) sin((Omega+1) theta/2) / (sin theta sin(theta/2))``.

    Equals ``sum_{n<=Omega} (n+1) phi_n``, i.e. the character sum
    ``sum_n chi_n(theta)``.  Near the identity the direct character sum is used.
    """
    theta = np.asarray(theta, dtype=float)
    den = np.sin(theta) * np.sin(theta / 2)
    small = (np.abs(np.sin(theta / 2)) < SERIES_SWITCH) | (np.abs(np.sin(theta)) < SERIES_SWITCH)
    out = np.sin((omega + 2) * theta / 2) * np.sin((omega + 1) * theta / 2) / np.where(small, 1.0, den)
    if np.any(small):
        out = np.where(small, 0.0, out)
        out[small] = sp.su2_character(omega, theta[small]).sum(axis=0)
    return float(out) if out.ndim == 0 else out


def su2_kernel_closed_form(omega: int, theta):
    """Closed form of ``sum_{n<=Omega} (n+1) sin((n+1) theta) / sin theta``.

    This is ``phi_Omega`` with the Peter-Weyl multiplicities ``(n+1)^2``.
    With ``N = Omega + 1`` and ``s = sin(theta/2)`` it reads
    ``[sin((N+1/2) theta) cos(theta/2) - (2N+1) cos((N+1/2) theta) s] / (4 s^2 sin theta)``.
    """
    theta = np.asarray(theta, dtype=float)
    n_top = omega + 1
    s = np.sin(theta / 2)
    # the numerator cancels to O(theta^3) near the identity
    small = (np.abs(s) < 0.05) | (np.abs(np.sin(theta)) < 1e-3)
    num = (np.sin((n_top + 0.5) * theta) * np.cos(theta / 2)
           - (2 * n_top + 1) * np.cos((n_top + 0.5) * theta) * s)
    den = np.where(small, 1.0, 4 * s * s * np.sin(theta))
    out = num / den
    if np.any(small):
        out = np.where(small, 0.0, out)
        chars = sp.su2_character(omega, theta[small])
        out[small] = ((np.arange(omega + 1) + 1)[:, None] * chars).sum(axis=0)
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# Kernels
# --------------------------------------------------------------------------

def heisenberg_kernel(nh: int, band: HeisenbergBand, w, t, lambda_nodes: int = sp.DEFAULT_LAMBDA_NODES,
                      paper_literal: bool = False):
    """Sinc-type kernel on the radial Heisenberg group at ``(w, t)``.

    ``sum_{m=0}^{M} int_0^R 2 cos(lam t) L_m(lam w^2/2) e^{-lam w^2/4} (2m+nh) lam^nh d lam``
    by Gauss-Legendre in ``lam``.  With ``paper_literal`` the density is
    dropped and the sum starts at ``m = 1``, as in the displayed integral
    this construction is usually quoted from.
    """
    if band.M < 0 or not band.R > 0:
        raise ValueError("need M >= 0 and R > 0")
    lam, qw = sp._gauss_legendre_0R(band.R, lambda_nodes)
    w = np.asarray(w, dtype=float)
    t = np.asarray(t, dtype=float)
    shape = np.broadcast(w, t).shape
    a = np.multiply.outer(w ** 2, lam)           # (..., L) of lam * w^2
    cos_part = np.cos(np.multiply.outer(t, lam))
    gauss = np.exp(-a / 4)
    total = np.zeros(shape)
    m_start = 1 if paper_literal else 0
    for m in range(m_start, band.M + 1):
        lag = sf.laguerre_normalized(m, nh - 1, a / 2)
        dens = np.ones_like(lam) if paper_literal else (2 * m + nh) * lam ** nh
        total = total + np.broadcast_to(2 * cos_part * lag * gauss, shape + lam.shape) @ (qw * dens)
    return float(total) if total.ndim == 0 else total


def euclidean_kernel(d: int, R: float, r, lambda_nodes: int = sp.DEFAULT_LAMBDA_NODES):
    """``int_0^R phi_lam(r) c_d lam^(d-1) d lam`` (radial Paley-Wiener kernel)."""
    space = EuclideanRadial(d, lambda_nodes)
    r = np.asarray(r, dtype=float)
    idx = space.spectrum(R)
    lam = np.array([i.value for i in idx])
    weights = np.array([i.qweight * space.plancherel_weight(i) for i in idx])
    phis = sf.bessel_spherical(d, 1.0, np.multiply.outer(r, lam))
    total = phis @ weights
    return float(total) if total.ndim == 0 else total


def sinc_kernel(space, omega, s, paper_literal: bool = False):
    """``phi_Omega`` as a function of the pairing value ``s``.

    ``s`` is an angle (Torus, SU2), an inner product (Sphere), a radius
    (Euclidean) or a pair ``(w, t)`` (Heisenberg).
    """
    if isinstance(space, Torus):
        return dirichlet_kernel(sp._check_omega(omega), s)
    if isinstance(space, SU2):
        return su2_kernel_closed_form(sp._check_omega(omega), s)
    if isinstance(space, Sphere):
        omega = sp._check_omega(omega)
        phis = sf.zonal_polynomials(space.d, omega, s)
        dims = np.array([sp.sphere_dimension(space.d, n) for n in range(omega + 1)], dtype=float)
        out = np.tensordot(dims, phis, axes=1)
        return float(out) if np.ndim(out) == 0 else out
    if isinstance(space, EuclideanRadial):
        return euclidean_kernel(space.d, float(omega), s, space.lambda_nodes)
    if isinstance(space, HeisenbergRadial):
        w, t = s
        return heisenberg_kernel(space.n, omega, w, t, space.lambda_nodes, paper_literal)
    raise TypeError(f"unknown space {space!r}")


def kernel_eval(space, omega, x, y, paper_literal: bool = False):
    """Reproducing kernel ``K(x, y)`` of the band space (broadcasts over points)."""
    if isinstance(space, SU2):
        omega = sp._check_omega(omega)
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        cx = sp.su2_character(omega, x)
        cy = sp.su2_character(omega, y)
        out = np.sum(cx * cy, axis=0)
        return float(out) if np.ndim(out) == 0 else out
    return sinc_kernel(space, omega, sp.pair(space, x, y), paper_literal)


def kernel_gram(space, omega, points, paper_literal: bool = False) -> np.ndarray:
    """Matrix ``K(x_i, x_j)`` over a point list (rows in a fixed order)."""
    if isinstance(space, HeisenbergRadial):
        z, t = points
        z = np.asarray(z, dtype=complex)
        t = np.asarray(t, dtype=float)
        n = len(t)
        rows = []
        for i in range(n):
            w, tt = sp.pair(space, (z[i][None, :], t[i]), (z, t))
            rows.append(sinc_kernel(space, omega, (w, tt), paper_literal))
        return np.array(rows)
    pts = np.asarray(points, dtype=float)
    return np.array([kernel_eval(space, omega, pts[i], pts) for i in range(len(pts))])


# --------------------------------------------------------------------------
# Projection and synthesis
# --------------------------------------------------------------------------

def project_band(space, omega, values_on_quadrature, rule) -> BandCoefficients:
    """Coefficients ``c_j = sum_q w_q f(x_q) conj(b_j(x_q))``."""
    values = np.asarray(values_on_quadrature)
    if values.shape != (len(rule),):
        raise ValueError(f"{values.shape[0] if values.ndim else 0} values for {len(rule)} nodes")
    if rule.exactness < 2 * omega:
        raise ValueError(f"rule exactness {rule.exactness} < 2*Omega = {2 * omega}")
    b = sp.basis_eval(space, omega, rule.nodes)
    return BandCoefficients(space, omega, np.conj(b).T @ (rule.weights * values))


def synthesize(f: BandCoefficients, x):
    """``sum_j c_j b_j(x)``."""
    out = sp.basis_eval(f.space, f.omega, x) @ f.coeffs
    return complex(out) if np.ndim(out) == 0 else out


def random_band_function(space, omega, rng) -> BandCoefficients:
    """Complex Gaussian coefficients normalized to unit L2 norm."""
    n = central_dimension(space, omega)
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return BandCoefficients(space, omega, c / np.linalg.norm(c))


def truncate(f: BandCoefficients, omega) -> BandCoefficients:
    """Exact band projection of ``f`` onto a smaller band (nested bases)."""
    labels = sp.basis_labels(f.space, f.omega)
    keep = set(sp.basis_labels(f.space, omega))
    mask = np.array([lab in keep for lab in labels])
    if omega > f.omega:
        out = np.zeros(len(keep), dtype=complex)
        big = sp.basis_labels(f.space, omega)
        pos = {lab: i for i, lab in enumerate(big)}
        for lab, c in zip(labels, f.coeffs):
            out[pos[lab]] = c
        return BandCoefficients(f.space, omega, out)
    return BandCoefficients(f.space, omega, f.coeffs[mask])

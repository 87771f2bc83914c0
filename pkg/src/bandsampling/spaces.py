"""Concrete commutative spaces: spectra, spherical functions, bases, quadrature.

Each space is a small frozen dataclass.  Points are plain numbers or numpy
arrays in canonical coordinates:

=================  ==========================================================
Torus              angle ``t`` in [0, 2 pi)
Sphere(d)          unit vector in R^(d+1), shape (..., d+1)
SU2                zonal angle ``theta`` in [0, pi] (conjugacy class of
                   ``diag(e^{i theta}, e^{-i theta})``)
EuclideanRadial    radius ``r``; ``pair`` takes full vectors in R^d
HeisenbergRadial   ``(w, t)`` with ``w = |z|``; ``pair`` takes full ``(z, t)``
=================  ==========================================================

All compact measures have total mass 1.  Spectral indices are the natural
labels: Fourier index ``k``, degree ``n``, radial frequency ``lam`` or the
Heisenberg pair ``(m, lam)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import gammaln

from . import special_fn as sf

__all__ = [
    "UnsupportedSpaceError",
    "SpectralIndex",
    "HeisenbergBand",
    "QuadratureRule",
    "Torus",
    "Sphere",
    "SU2",
    "EuclideanRadial",
    "HeisenbergRadial",
    "Space",
    "spectrum_enumerate",
    "plancherel_weight",
    "laplace_eigenvalue",
    "spherical_function",
    "basis_eval",
    "basis_labels",
    "quadrature",
    "pair",
    "distance",
    "heisenberg_multiply",
    "heisenberg_inverse",
    "space_to_dict",
    "space_from_dict",
]

DEFAULT_LAMBDA_NODES = 256


class UnsupportedSpaceError(NotImplementedError):
    """The operation is not available on this space."""


@dataclass(frozen=True)
class SpectralIndex:
    """A point of the spectrum.

    ``value`` is ``k``, ``n`` or ``lam``; ``m`` is the Laguerre degree on the
    Heisenberg fan.  ``qweight`` is the lambda-quadrature weight for
    discretized continuous spectra and 1 otherwise.
    """

    value: Union[int, float]
    m: int | None = None
    qweight: float = 1.0


@dataclass(frozen=True)
class HeisenbergBand:
    """The band ``{(m, lam): m <= M, 0 < |lam| <= R}`` on the Heisenberg fan."""

    M: int
    R: float

    def __post_init__(self):
        if self.M < 0 or not self.R > 0 or not math.isfinite(self.R):
            raise ValueError("need M >= 0 and finite R > 0")


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    exactness: int

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    def __len__(self):
        return len(self.weights)

    def integrate(self, values):
        """Integral of sampled values (last axis of ``values`` runs over nodes)."""
        return np.asarray(values) @ self.weights


def _check_omega(omega):
    if int(omega) != omega or omega < 0:
        raise ValueError(f"band cutoff must be a non-negative integer, got {omega!r}")
    return int(omega)


def _gauss_legendre_0R(R, n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * R * (x + 1.0), 0.5 * R * w


# --------------------------------------------------------------------------
# Torus
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Torus:
    compact = True
    identity = 0.0

    def spectrum(self, omega):
        omega = _check_omega(omega)
        return [SpectralIndex(k) for k in range(-omega, omega + 1)]

    def plancherel_weight(self, idx):
        return 1.0

    def laplace_eigenvalue(self, idx):
        return float(idx.value) ** 2

    def spherical_function(self, idx, x):
        return np.exp(1j * idx.value * np.asarray(x, dtype=float))

    def basis_labels(self, omega):
        omega = _check_omega(omega)
        return list(range(-omega, omega + 1))

    def basis(self, omega, x):
        k = np.arange(-_check_omega(omega), omega + 1)
        return np.exp(1j * np.multiply.outer(np.asarray(x, dtype=float), k))

    def eigenvalues(self, omega):
        return np.array(self.basis_labels(omega), dtype=float) ** 2

    def quadrature(self, resolution):
        n = 2 * resolution + 1
        return QuadratureRule(2 * np.pi * np.arange(n) / n, np.full(n, 1.0 / n), 2 * resolution)

    def pair(self, x, y):
        return np.mod(np.asarray(x, dtype=float) - np.asarray(y, dtype=float), 2 * np.pi)

    def distance(self, x, y):
        d = np.abs(np.mod(np.asarray(x, dtype=float) - np.asarray(y, dtype=float), 2 * np.pi))
        return np.minimum(d, 2 * np.pi - d)

    def canonical(self, x):
        return np.mod(np.asarray(x, dtype=float), 2 * np.pi)


# --------------------------------------------------------------------------
# Spheres
# --------------------------------------------------------------------------

def sphere_dimension(d: int, n: int) -> int:
    """Dimension of the degree-``n`` harmonics on ``S^d``."""
    if n == 0:
        return 1
    return (2 * n + d - 1) * math.factorial(d + n - 2) // (math.factorial(d - 1) * math.factorial(n))


@dataclass(frozen=True)
class Sphere:
    d: int = 2
    compact = True

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("use Torus for d = 1")

    @property
    def identity(self):
        e = np.zeros(self.d + 1)
        e[0] = 1.0
        return e

    def spectrum(self, omega):
        return [SpectralIndex(n) for n in range(_check_omega(omega) + 1)]

    def plancherel_weight(self, idx):
        return float(sphere_dimension(self.d, int(idx.value)))

    def laplace_eigenvalue(self, idx):
        n = int(idx.value)
        return float(n * (n + self.d - 1))

    def spherical_function(self, idx, x):
        x = np.asarray(x, dtype=float)
        return sf.zonal_polynomial(self.d, int(idx.value), x[..., 0])

    def basis_labels(self, omega):
        if self.d != 2:
            raise UnsupportedSpaceError("explicit bases exist only on S^2")
        omega = _check_omega(omega)
        return [(n, m) for n in range(omega + 1) for m in range(-n, n + 1)]

    def basis(self, omega, x):
        """Real spherical harmonics, polar axis along the last coordinate.

        Ordering is lexicographic in ``(n, m)``; ``m < 0`` carries
        ``sin(|m| phi)`` and ``m >= 0`` carries ``cos(m phi)``.
        """
        labels = self.basis_labels(omega)
        x = np.asarray(x, dtype=float)
        p = sf.assoc_legendre_table(omega, x[..., 2])
        phi = np.arctan2(x[..., 1], x[..., 0])
        out = np.empty(x.shape[:-1] + (len(labels),))
        for j, (n, m) in enumerate(labels):
            if m < 0:
                out[..., j] = p[n, -m] * np.sin(-m * phi)
            else:
                out[..., j] = p[n, m] * np.cos(m * phi)
        return out

    def eigenvalues(self, omega):
        return np.array([n * (n + self.d - 1) for n, _ in self.basis_labels(omega)], dtype=float)

    def quadrature(self, resolution):
        """Gauss-Legendre in the polar cosine times uniform longitudes (S^2)."""
        if self.d != 2:
            raise UnsupportedSpaceError("quadrature is implemented on S^2 only")
        z, wz = np.polynomial.legendre.leggauss(resolution + 1)
        n_phi = 2 * resolution + 1
        phi = 2 * np.pi * np.arange(n_phi) / n_phi
        zz, pp = np.meshgrid(z, phi, indexing="ij")
        s = np.sqrt(1.0 - zz**2)
        nodes = np.stack([s * np.cos(pp), s * np.sin(pp), zz], axis=-1).reshape(-1, 3)
        weights = np.outer(0.5 * wz, np.full(n_phi, 1.0 / n_phi)).ravel()
        return QuadratureRule(nodes, weights, 2 * resolution)

    def pair(self, x, y):
        ip = np.sum(np.asarray(x, dtype=float) * np.asarray(y, dtype=float), axis=-1)
        return np.clip(ip, -1.0, 1.0)

    def distance(self, x, y):
        # chord form keeps precision for nearby points
        chord = np.linalg.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float), axis=-1)
        return 2 * np.arcsin(np.clip(chord / 2, 0.0, 1.0))

    def canonical(self, x):
        x = np.asarray(x, dtype=float)
        norm = np.linalg.norm(x, axis=-1, keepdims=True)
        if np.any(np.abs(norm - 1.0) > 1e-12):
            raise ValueError("sphere points must be unit vectors to 1e-12")
        return x / norm


# --------------------------------------------------------------------------
# SU(2), central functions
# --------------------------------------------------------------------------

def su2_character(n_max: int, theta) -> np.ndarray:
    """Characters ``sin((n+1) theta) / sin(theta)`` for ``n = 0..n_max``.

    Evaluated as Chebyshev polynomials of the second kind in ``cos theta``,
    so the removable singularities at 0 and pi need no special care.
    """
    t = np.cos(np.asarray(theta, dtype=float))
    out = np.empty((n_max + 1,) + t.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2 * t
    for n in range(1, n_max):
        out[n + 1] = 2 * t * out[n] - out[n - 1]
    return out


@dataclass(frozen=True)
class SU2:
    """SU(2) = S^3 through its central functions.

    ``plancherel_weight`` is the Peter-Weyl multiplicity ``(n+1)^2``, the
    same as the harmonic dimension on S^3.  The reconstruction basis is the
    character family, orthonormal for the Weyl measure, so the central band
    space has dimension ``Omega + 1``.
    """

    compact = True
    identity = 0.0

    def spectrum(self, omega):
        return [SpectralIndex(n) for n in range(_check_omega(omega) + 1)]

    def plancherel_weight(self, idx):
        return float((int(idx.value) + 1) ** 2)

    def laplace_eigenvalue(self, idx):
        n = int(idx.value)
        return float(n * (n + 2))

    def spherical_function(self, idx, x):
        n = int(idx.value)
        return su2_character(n, x)[n] / (n + 1)

    def basis_labels(self, omega):
        return list(range(_check_omega(omega) + 1))

    def basis(self, omega, x):
        return np.moveaxis(su2_character(_check_omega(omega), x), 0, -1)

    def eigenvalues(self, omega):
        n = np.arange(_check_omega(omega) + 1)
        return (n * (n + 2)).astype(float)

    def quadrature(self, resolution):
        """Weyl measure ``(2/pi) sin^2(theta) d theta`` on [0, pi].

        Uses the Gauss rule for ``sqrt(1 - t^2)`` in ``t = cos theta``: nodes
        ``theta_k = k pi/(N+1)``, weights ``2 sin^2(theta_k)/(N+1)``.  Exact
        for products of characters up to total degree ``2N - 1``.
        """
        n = resolution + 1
        theta = np.pi * np.arange(1, n + 1) / (n + 1)
        return QuadratureRule(theta, 2 * np.sin(theta) ** 2 / (n + 1), 2 * n - 1)

    def pair(self, x, y):
        # relative angle of the commuting torus elements u(y)^-1 u(x)
        return np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))

    def distance(self, x, y):
        return np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))

    def canonical(self, x):
        x = np.asarray(x, dtype=float)
        if np.any((x < -1e-12) | (x > np.pi + 1e-12)):
            raise ValueError("SU2 zonal angles lie in [0, pi]")
        return np.clip(x, 0.0, np.pi)


# --------------------------------------------------------------------------
# Non-compact, kernel-only spaces
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EuclideanRadial:
    """Radial functions on R^d (Euclidean motion group modulo SO(d))."""

    d: int = 3
    lambda_nodes: int = DEFAULT_LAMBDA_NODES
    compact = False
    identity = 0.0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")

    def density_constant(self):
        # |S^{d-1}| / (2 pi)^d
        return math.exp(math.log(2) + 0.5 * self.d * math.log(math.pi) - gammaln(self.d / 2)
                        - self.d * math.log(2 * math.pi))

    def spectrum(self, R):
        lam, w = _gauss_legendre_0R(float(R), self.lambda_nodes)
        return [SpectralIndex(float(a), qweight=float(b)) for a, b in zip(lam, w)]

    def plancherel_weight(self, idx):
        return self.density_constant() * float(idx.value) ** (self.d - 1)

    def laplace_eigenvalue(self, idx):
        return float(idx.value) ** 2

    def spherical_function(self, idx, x):
        return sf.bessel_spherical(self.d, float(idx.value), x)

    def basis(self, omega, x):
        raise UnsupportedSpaceError("R^d is a kernel-only backend")

    def basis_labels(self, omega):
        raise UnsupportedSpaceError("R^d is a kernel-only backend")

    def quadrature(self, resolution):
        raise UnsupportedSpaceError("R^d has no finite invariant measure")

    def pair(self, x, y):
        return np.linalg.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float), axis=-1)

    distance = pair


def heisenberg_multiply(a, b):
    """Group law ``(z,t)(z',t') = (z+z', t+t'+Im(conj(z).z')/2)``."""
    z, t = a
    zp, tp = b
    z = np.asarray(z, dtype=complex)
    zp = np.asarray(zp, dtype=complex)
    return z + zp, t + tp + 0.5 * np.imag(np.sum(np.conj(z) * zp, axis=-1))


def heisenberg_inverse(a):
    z, t = a
    return -np.asarray(z, dtype=complex), -t


@dataclass(frozen=True)
class HeisenbergRadial:
    """U(n)-radial functions on the Heisenberg group H_n."""

    n: int = 1
    lambda_nodes: int = DEFAULT_LAMBDA_NODES
    compact = False
    identity = (0.0, 0.0)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def spectrum(self, band: HeisenbergBand):
        lam, w = _gauss_legendre_0R(band.R, self.lambda_nodes)
        return [SpectralIndex(s * float(a), m=m, qweight=float(b))
                for m in range(band.M + 1) for s in (1.0, -1.0) for a, b in zip(lam, w)]

    def plancherel_weight(self, idx):
        return (2 * idx.m + self.n) * abs(float(idx.value)) ** self.n

    def laplace_eigenvalue(self, idx):
        raise UnsupportedSpaceError("sub-Laplacian eigenvalues are not provided for H_n")

    def spherical_function(self, idx, x):
        w, t = x
        lam = float(idx.value)
        if lam == 0:
            raise ValueError("lam = 0 carries no Plancherel mass")
        a = abs(lam) * np.asarray(w, dtype=float) ** 2
        return (np.exp(1j * lam * np.asarray(t, dtype=float))
                * sf.laguerre_normalized(idx.m, self.n - 1, a / 2) * np.exp(-a / 4))

    def basis(self, omega, x):
        raise UnsupportedSpaceError("H_n is a kernel-only backend")

    def basis_labels(self, omega):
        raise UnsupportedSpaceError("H_n is a kernel-only backend")

    def quadrature(self, resolution):
        raise UnsupportedSpaceError("H_n has no finite invariant measure")

    def pair(self, x, y):
        """Radial coordinates ``(|z|, t)`` of ``y^-1 x`` for full points ``(z, t)``."""
        z, t = heisenberg_multiply(heisenberg_inverse(y), x)
        w = np.linalg.norm(np.atleast_1d(z), axis=-1)
        if np.ndim(w) == 0:
            return float(w), float(t)
        return w, t


Space = Union[Torus, Sphere, SU2, EuclideanRadial, HeisenbergRadial]


# --------------------------------------------------------------------------
# Functional surface
# --------------------------------------------------------------------------

def spectrum_enumerate(space, omega) -> list[SpectralIndex]:
    return space.spectrum(omega)


def plancherel_weight(space, idx: SpectralIndex) -> float:
    return space.plancherel_weight(idx)


def laplace_eigenvalue(space, idx: SpectralIndex) -> float:
    return space.laplace_eigenvalue(idx)


def spherical_function(space, idx: SpectralIndex, x):
    return space.spherical_function(idx, x)


def basis_eval(space, omega, x) -> np.ndarray:
    """Orthonormal basis of the band space evaluated at ``x``; last axis = basis."""
    return space.basis(omega, x)


def basis_labels(space, omega) -> list:
    return space.basis_labels(omega)


def quadrature(space, resolution: int) -> QuadratureRule:
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    return space.quadrature(resolution)


def pair(space, x, y):
    return space.pair(x, y)


def distance(space, x, y):
    return space.distance(x, y)


def band_eigenvalues(space, omega) -> np.ndarray:
    """Laplacian eigenvalue of each basis function, in basis order."""
    return space.eigenvalues(omega)


_KINDS = {"torus": Torus, "sphere": Sphere, "su2": SU2,
          "euclidean": EuclideanRadial, "heisenberg": HeisenbergRadial}


def space_to_dict(space) -> dict:
    if isinstance(space, Torus):
        return {"kind": "torus"}
    if isinstance(space, Sphere):
        return {"kind": "sphere", "d": space.d}
    if isinstance(space, SU2):
        return {"kind": "su2"}
    if isinstance(space, EuclideanRadial):
        return {"kind": "euclidean", "d": space.d, "lambda_nodes": space.lambda_nodes}
    if isinstance(space, HeisenbergRadial):
        return {"kind": "heisenberg", "n": space.n, "lambda_nodes": space.lambda_nodes}
    raise TypeError(f"not a space: {space!r}")


def space_from_dict(doc: dict):
    doc = dict(doc)
    kind = doc.pop("kind", None)
    if kind not in _KINDS:
        raise ValueError(f"unknown space kind {kind!r}; expected one of {sorted(_KINDS)}")
    return _KINDS[kind](**doc)

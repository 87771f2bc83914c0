"""Scalar special functions behind the spherical functions of each space.

Everything here is a pure function of its arguments.  Array inputs are
accepted wherever the docstring says so; scalars come back as floats.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

__all__ = [
    "DomainError",
    "QuadratureError",
    "laguerre_normalized",
    "laguerre_term_sum_exact",
    "zonal_polynomial",
    "zonal_polynomials",
    "hypergeometric_terminating_exact",
    "assoc_legendre",
    "assoc_legendre_table",
    "bessel_spherical",
]

ENDPOINT_TOL = 1e-12


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""


def _clamp_unit(t):
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise DomainError("argument must be finite")
    if np.any(np.abs(t) > 1.0 + ENDPOINT_TOL):
        raise DomainError(f"|t| exceeds 1 by more than {ENDPOINT_TOL}")
    return np.clip(t, -1.0, 1.0)


def _scalar_or_array(out, like):
    return float(out) if np.ndim(like) == 0 else out


# --------------------------------------------------------------------------
# Laguerre
# --------------------------------------------------------------------------

def laguerre_normalized(m: int, alpha: int, x):
    """Laguerre polynomial of degree ``m`` and order ``alpha`` scaled to 1 at 0.

    Equals ``binom(m+alpha, m)**-1 * sum_k (-1)**k binom(m+alpha, m-k) x**k / k!``.
    Evaluated with the three-term recurrence in the degree, which stays
    accurate where the alternating term sum cancels catastrophically.
    """
    if m < 0 or alpha < 0:
        raise DomainError("degree and order must be non-negative")
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise DomainError("x must be finite")
    # Recurrence on the normalized values l_j = L_j / L_j(0):
    #   (j+1+alpha) l_{j+1} = (2j+1+alpha-x) l_j - j l_{j-1}
    prev = np.ones_like(xa)
    if m == 0:
        return _scalar_or_array(prev, x)
    cur = 1.0 - xa / (alpha + 1.0)
    for j in range(1, m):
        prev, cur = cur, ((2 * j + 1 + alpha - xa) * cur - j * prev) / (j + 1 + alpha)
    return _scalar_or_array(cur, x)


def laguerre_term_sum_exact(m: int, alpha: int, x) -> Fraction:
    """Exact rational value of the normalized Laguerre term sum (test oracle)."""
    x = Fraction(x)
    total = Fraction(0)
    for k in range(m + 1):
        total += (-1) ** k * math.comb(m + alpha, m - k) * x**k / math.factorial(k)
    return total / math.comb(m + alpha, m)


# --------------------------------------------------------------------------
# Zonal (normalized Gegenbauer) polynomials
# --------------------------------------------------------------------------

def hypergeometric_terminating_exact(a, b: int, c, z) -> Fraction:
    """``2F1(a, b; c; z)`` for a non-positive integer ``b``, in exact rationals."""
    if b > 0 or int(b) != b:
        raise DomainError("series terminates only for integer b <= 0")
    a, c, z = Fraction(a), Fraction(c), Fraction(z)
    term, total = Fraction(1), Fraction(1)
    for k in range(-int(b)):
        term *= (a + k) * (b + k) * z / ((c + k) * (k + 1))
        total += term
    return total


def zonal_polynomials(d: int, n_max: int, t) -> np.ndarray:
    """Rows ``Phi_0(t) .. Phi_{n_max}(t)`` of the zonal polynomials on ``S^d``.

    ``Phi_n = 2F1(n+d-1, -n; d/2; (1-t)/2)``, normalized so ``Phi_n(1) = 1``.
    Output shape is ``(n_max + 1,) + shape(t)``.
    """
    if d < 2:
        raise DomainError("sphere dimension must be >= 2")
    if n_max < 0:
        raise DomainError("degree must be non-negative")
    t = _clamp_unit(t)
    out = np.empty((n_max + 1,) + t.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = t
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + d - 1) * t * out[n] - n * out[n - 1]) / (n + d - 1)
    return out


def zonal_polynomial(d: int, n: int, t):
    """Normalized Gegenbauer polynomial ``Phi_n`` on ``S^d`` at ``t``."""
    return _scalar_or_array(zonal_polynomials(d, n, t)[n], t)


# --------------------------------------------------------------------------
# Associated Legendre functions (S^2 basis normalization)
# --------------------------------------------------------------------------

def assoc_legendre_table(n_max: int, t) -> np.ndarray:
    """All normalized associated Legendre values up to degree ``n_max``.

    Returns ``P[n, m, ...]`` for ``0 <= m <= n <= n_max`` (zeros above the
    diagonal).  The normalization is
    ``sqrt((2 - delta_m0) (2n+1) (n-m)!/(n+m)!) P_n^m``, without the
    Condon-Shortley phase, so that ``P[n, m] cos(m phi)`` and
    ``P[n, m] sin(m phi)`` are orthonormal for the unit-mass measure on S^2.
    """
    t = _clamp_unit(t)
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    p = np.zeros((n_max + 1, n_max + 1) + t.shape)
    p[0, 0] = 1.0
    for m in range(1, n_max + 1):
        p[m, m] = math.sqrt((2 * m + 1) / (2 * m)) * s * p[m - 1, m - 1]
    for m in range(0, n_max):
        p[m + 1, m] = math.sqrt(2 * m + 3) * t * p[m, m]
    for m in range(0, n_max + 1):
        for n in range(m + 2, n_max + 1):
            a = math.sqrt((4 * n * n - 1) / (n * n - m * m))
            b = math.sqrt((2 * n + 1) * (n - 1 - m) * (n - 1 + m) / ((2 * n - 3) * (n * n - m * m)))
            p[n, m] = a * t * p[n - 1, m] - b * p[n - 2, m]
    p[:, 1:] *= math.sqrt(2.0)
    return p


def assoc_legendre(n: int, m: int, t):
    """Normalized associated Legendre function of degree ``n``, order ``m``."""
    if n < 0 or m < 0:
        raise DomainError("degree and order must be non-negative")
    if m > n:
        raise DomainError(f"order m={m} exceeds degree n={n}")
    return _scalar_or_array(assoc_legendre_table(n, t)[n, m], t)


# --------------------------------------------------------------------------
# Radial spherical functions on R^d
# --------------------------------------------------------------------------

def _bessel_prefactor(d: int) -> float:
    return math.exp(gammaln(d / 2) - 0.5 * math.log(math.pi) - gammaln((d - 1) / 2))


def bessel_spherical(d: int, lam: float, r, tol: float = 1e-12, max_nodes: int = 2**14):
    """Radial spherical function ``phi_lam(r)`` on ``R^d``.

    The defining integral ``c_d * int_{-1}^{1} cos(lam r t) (1-t^2)^{(d-3)/2} dt``
    is computed after substituting ``t = sin u``, which removes the endpoint
    singularity for ``d = 2`` and leaves a smooth periodic integrand.
    Gauss-Legendre node counts double until the change is below ``tol``
    (absolute; the values are bounded by ``phi(0) = 1``).  ``d = 1`` is the
    degenerate case ``cos(lam r)``.
    """
    if d < 1:
        raise DomainError("dimension must be >= 1")
    if not lam > 0:
        raise DomainError("lam must be positive")
    ra = np.asarray(r, dtype=float)
    if np.any(ra < 0) or not np.all(np.isfinite(ra)):
        raise DomainError("r must be finite and non-negative")
    z = lam * ra
    if d == 1:
        return _scalar_or_array(np.cos(z), r)

    pref = _bessel_prefactor(d)

    def rule(n):
        x, w = np.polynomial.legendre.leggauss(n)
        u = 0.5 * math.pi * x
        w = 0.5 * math.pi * w * np.cos(u) ** (d - 2)
        return pref * np.tensordot(np.cos(np.multiply.outer(z, np.sin(u))), w, axes=1)

    n = 16
    old = rule(n)
    while True:
        n *= 2
        new = rule(n)
        if np.max(np.abs(new - old), initial=0.0) < tol:
            return _scalar_or_array(new, r)
        if n >= max_nodes:
            raise QuadratureError(f"no convergence with {n} nodes")
        old = new

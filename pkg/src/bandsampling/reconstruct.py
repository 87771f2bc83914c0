"""Frame analysis and reconstruction of band-limited functions from samples.

All operators act on coefficient vectors over the orthonormal band basis, so
convolution with the sinc-type kernel is exact truncation and every residual
norm is an L2 norm (Parseval).

Two pipelines are provided:

* frame inversion: ``S = E^H E`` is inverted with the Neumann series
  ``S^-1 = 2/(A+B) sum_n (I - 2/(A+B) S)^n`` (or directly, for dual atoms);
* the sampling operator ``T f = P_Omega(sum_i f(x_i) psi_i)`` with indicator
  partitions ``psi_i``, inverted by its own Neumann series.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import spaces as sp
from .kernels import BandCoefficients, truncate
from .sampling import SampleSet, min_separation

__all__ = [
    "ReconstructionError",
    "NotAFrameError",
    "ContractionError",
    "FrameAnalysis",
    "ReconstructionReport",
    "frame_analysis",
    "neumann_reconstruct",
    "dual_frame",
    "sampling_matrix",
    "sampling_operator_T",
    "invert_T",
    "oversample_reconstruct",
    "norm_equivalence_window",
]

RANK_TOL = 1e-10
GROWTH_STEPS = 5


class ReconstructionError(ArithmeticError):
    pass


class NotAFrameError(ReconstructionError):
    """The sample translates of the kernel do not span the band space."""


class ContractionError(ReconstructionError):
    """``I - T`` is not a contraction; the samples are too sparse."""


@dataclass
class FrameAnalysis:
    space: object
    omega: int
    points: np.ndarray
    eval_matrix: np.ndarray
    A: float
    B: float
    min_separation: float = math.nan

    @property
    def frame_operator(self) -> np.ndarray:
        E = self.eval_matrix
        return E.conj().T @ E

    @property
    def gram(self) -> np.ndarray:
        """Sample Gram matrix ``K(x_i, x_j) = (E E^H)_ij``."""
        E = self.eval_matrix
        return E @ E.conj().T

    @property
    def rate(self) -> float:
        if self.A + self.B == 0:
            return 1.0
        return (self.B - self.A) / (self.A + self.B)

    @property
    def dim(self) -> int:
        return self.eval_matrix.shape[1]

    @property
    def n_samples(self) -> int:
        return self.eval_matrix.shape[0]

    def summary(self) -> dict:
        return {"A": self.A, "B": self.B, "rate": self.rate, "dim": self.dim,
                "n_samples": self.n_samples, "min_separation": self.min_separation}

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


@dataclass
class ReconstructionReport:
    iterations: int
    residual_history: list = field(default_factory=list)
    final_rel_error: float = math.nan
    predicted_rate: float = math.nan
    observed_rate: float = math.nan
    converged: bool = False


def frame_analysis(space, omega, samples) -> FrameAnalysis:
    """Evaluation matrix ``E[i, j] = b_j(x_i)`` and the frame bounds of ``E^H E``."""
    pts = samples.points if isinstance(samples, SampleSet) else np.asarray(samples)
    E = np.asarray(sp.basis_eval(space, omega, pts), dtype=complex)
    S = E.conj().T @ E
    eig = scipy.linalg.eigvalsh(S)
    B = float(eig[-1])
    A = float(eig[0])
    if A <= RANK_TOL * max(B, 1.0):
        A = 0.0
    return FrameAnalysis(space, omega, pts, E, A, B, min_separation(space, pts))


def _observed_rate(history, window=10):
    h = np.asarray(history, dtype=float)
    h = h[h > 0]
    if len(h) < 3:
        return math.nan
    tail = h[-(window + 1):]
    return float((tail[-1] / tail[0]) ** (1.0 / (len(tail) - 1)))


def neumann_reconstruct(fa: FrameAnalysis, sample_values, tol: float = 1e-12, max_iter: int = 1000):
    """Frame-operator Neumann iteration ``c <- c + 2/(A+B) E^H (v - E c)``.

    The residual is ``||E^H (v - E c)|| / ||E^H v||``; it contracts by at most
    ``(B-A)/(A+B)`` per step.  Hitting ``max_iter`` returns a report with
    ``converged = False``.
    """
    if fa.A <= 0:
        raise NotAFrameError("lower frame bound is zero; samples do not determine the band space")
    v = np.asarray(sample_values, dtype=complex)
    if v.shape != (fa.n_samples,):
        raise ValueError(f"{v.size} sample values for {fa.n_samples} samples")
    E = fa.eval_matrix
    relax = 2.0 / (fa.A + fa.B)
    rhs = E.conj().T @ v
    scale = np.linalg.norm(rhs)
    c = np.zeros(fa.dim, dtype=complex)
    report = ReconstructionReport(0, predicted_rate=fa.rate)
    if scale == 0:
        report.converged = True
        report.final_rel_error = 0.0
        return BandCoefficients(fa.space, fa.omega, c), report
    r = rhs
    for k in range(1, max_iter + 1):
        c = c + relax * r
        r = rhs - E.conj().T @ (E @ c)
        res = float(np.linalg.norm(r) / scale)
        report.residual_history.append(res)
        report.iterations = k
        if res < tol:
            report.converged = True
            break
    report.final_rel_error = report.residual_history[-1]
    report.observed_rate = _observed_rate(report.residual_history)
    return BandCoefficients(fa.space, fa.omega, c), report


def dual_frame(fa: FrameAnalysis) -> list[BandCoefficients]:
    """Dual atoms ``S^-1 l(x_i) phi``; ``f = sum_i f(x_i) dual_i`` on the band."""
    if fa.A <= 0:
        raise NotAFrameError("frame operator is singular")
    atoms = fa.eval_matrix.conj().T               # column i = coefficients of l(x_i) phi
    dual = scipy.linalg.solve(fa.frame_operator, atoms, assume_a="pos")
    return [BandCoefficients(fa.space, fa.omega, dual[:, i]) for i in range(fa.n_samples)]


# --------------------------------------------------------------------------
# Sampling operator T
# --------------------------------------------------------------------------

def sampling_matrix(space, omega, partition, rule) -> np.ndarray:
    """Matrix ``M`` with ``T(v) = M v``: column i is ``P_Omega(psi_i)``."""
    if partition.assignment.shape != (len(rule),):
        raise ValueError("partition was not built on this quadrature rule")
    b = np.asarray(sp.basis_eval(space, omega, rule.nodes), dtype=complex)
    weighted = b.conj() * rule.weights[:, None]       # (nodes, dim)
    return (partition.indicators().T @ weighted).T     # (dim, samples)


def sampling_operator_T(space, omega, partition, rule, sample_values) -> BandCoefficients:
    """``T f = P_Omega(sum_i f(x_i) psi_i)`` from the sample values."""
    v = np.asarray(sample_values, dtype=complex)
    if v.shape != (partition.n_samples,):
        raise ValueError(f"{v.size} sample values for {partition.n_samples} samples")
    return BandCoefficients(space, omega, sampling_matrix(space, omega, partition, rule) @ v)


def invert_T(space, omega, partition, rule, sample_points, sample_values,
             tol: float = 1e-12, max_iter: int = 500):
    """Neumann series for ``T^-1`` applied to ``T f``.

    ``f_{k+1} = f_k + T(v - f_k(x_i))``: each sweep re-samples the iterate at
    the sample points.  Before iterating, the spectral radius of ``I - T`` on
    the band space is checked; a value >= 1 (including rank deficiency, where
    the iteration would stagnate on a wrong answer) raises ``ContractionError``,
    as do ``GROWTH_STEPS`` consecutive residual increases.
    """
    v = np.asarray(sample_values, dtype=complex)
    M = sampling_matrix(space, omega, partition, rule)
    E = np.asarray(sp.basis_eval(space, omega, np.asarray(sample_points)), dtype=complex)
    if v.shape != (E.shape[0],):
        raise ValueError(f"{v.size} sample values for {E.shape[0]} samples")
    I_minus_T = np.eye(M.shape[0]) - M @ E
    radius = float(np.max(np.abs(np.linalg.eigvals(I_minus_T))))
    if radius >= 1.0 - 1e-12:
        raise ContractionError(f"spectral radius of I - T is {radius:.4g} >= 1 at band {omega}; "
                               f"use denser samples (smaller cells)")
    report = ReconstructionReport(0, predicted_rate=radius)
    f = np.zeros(M.shape[0], dtype=complex)
    scale = np.linalg.norm(M @ v)
    if scale == 0:
        report.converged = True
        report.final_rel_error = 0.0
        return BandCoefficients(space, omega, f), report
    growth = 0
    for k in range(1, max_iter + 1):
        step = M @ (v - E @ f)
        f = f + step
        res = float(np.linalg.norm(step) / scale)
        hist = report.residual_history
        growth = growth + 1 if hist and res > hist[-1] else 0
        hist.append(res)
        report.iterations = k
        if growth >= GROWTH_STEPS:
            raise ContractionError(f"residual grew for {GROWTH_STEPS} consecutive steps; "
                                   f"use denser samples")
        if res < tol:
            report.converged = True
            break
    report.final_rel_error = report.residual_history[-1]
    report.observed_rate = _observed_rate(report.residual_history)
    return BandCoefficients(space, omega, f), report


def oversample_reconstruct(space, omega, omega1, partition, rule, sample_points, sample_values,
                           tol: float = 1e-12, max_iter: int = 500):
    """Invert ``T_1`` on the larger band ``omega1`` and project back to ``omega``."""
    if omega1 < omega:
        raise ValueError("omega1 must contain omega")
    f1, report = invert_T(space, omega1, partition, rule, sample_points, sample_values, tol, max_iter)
    return truncate(f1, omega), report


# --------------------------------------------------------------------------
# Norm equivalence
# --------------------------------------------------------------------------

def norm_equivalence_window(C_U: float, U_measure: float, overlap: int) -> dict:
    """Frame-bound windows implied by an oscillation constant ``C_U < 1``.

    ``literal`` is the pair ``((1-C)/(|U| N))^2, (N (1+C)/|U|)^2``.
    ``derived`` follows the same chain of estimates with the Cauchy-Schwarz
    steps carried out exactly: ``(1-C)^2/(N |U|)`` and ``N^2 (1+C)^2/|U|``.
    """
    if not 0 <= C_U < 1:
        raise ValueError("the window needs 0 <= C_U < 1")
    lit = (((1 - C_U) / (U_measure * overlap)) ** 2, (overlap * (1 + C_U) / U_measure) ** 2)
    der = ((1 - C_U) ** 2 / (overlap * U_measure), overlap**2 * (1 + C_U) ** 2 / U_measure)
    return {"literal": lit, "derived": der}

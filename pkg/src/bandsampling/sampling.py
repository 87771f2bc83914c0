"""Sample sets, separation/covering diagnostics and indicator partitions of unity.

The neighbourhood ``U`` is the closed metric ball of radius ``epsilon``.  A
partition assigns every quadrature node to its nearest sample (lowest index on
ties), which gives indicator functions ``psi_i`` with ``sum_i psi_i = 1`` and
``psi_i <= 1_{x_i U}`` whenever the balls cover the space.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from . import spaces as sp
from .spaces import SU2, Sphere, Torus

__all__ = [
    "SamplingError",
    "DuplicatePointsError",
    "CoverageError",
    "SampleSet",
    "SeparationReport",
    "Partition",
    "generate",
    "covering_radius",
    "min_separation",
    "separation_report",
    "build_partition",
    "ball_measure",
]

DUPLICATE_TOL = 1e-12
TIE_TOL = 1e-12
CHUNK_ENTRIES = 2**21          # distance-matrix entries held at once
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class SamplingError(ValueError):
    pass


class DuplicatePointsError(SamplingError):
    pass


class CoverageError(SamplingError):
    pass


@dataclass(frozen=True)
class SampleSet:
    space: object
    points: np.ndarray
    epsilon: float
    strategy: str = "custom"
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", self.space.canonical(self.points))
        if not self.epsilon > 0:
            raise SamplingError("epsilon must be positive")

    def __len__(self):
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "space": sp.space_to_dict(self.space),
            "strategy": self.strategy,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "points": np.asarray(self.points).tolist(),
        }

    def to_json(self) -> str:
        # repr of a float round-trips exactly (17 significant digits at most)
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, doc: dict) -> "SampleSet":
        return cls(sp.space_from_dict(doc["space"]), np.array(doc["points"], dtype=float),
                   float(doc["epsilon"]), doc.get("strategy", "custom"), doc.get("seed"))

    @classmethod
    def from_json(cls, text: str) -> "SampleSet":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SeparationReport:
    covering: bool
    overlap_N: int
    min_separation: float
    covering_radius: float


@dataclass(frozen=True)
class Partition:
    """Voronoi assignment of quadrature nodes to samples."""

    assignment: np.ndarray
    n_samples: int

    def indicator(self, i: int) -> np.ndarray:
        return (self.assignment == i).astype(float)

    def indicators(self) -> np.ndarray:
        """Matrix ``psi[q, i]`` of node-by-sample indicator values."""
        out = np.zeros((len(self.assignment), self.n_samples))
        out[np.arange(len(self.assignment)), self.assignment] = 1.0
        return out

    def cell_measures(self, rule) -> np.ndarray:
        return np.bincount(self.assignment, weights=rule.weights, minlength=self.n_samples)


# --------------------------------------------------------------------------
# Generation
# --------------------------------------------------------------------------

def _fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n)
    z = 1.0 - (2 * i + 1) / n
    r = np.sqrt(1.0 - z * z)
    phi = GOLDEN_ANGLE * i
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=-1)


def _random_sphere(n: int, rng) -> np.ndarray:
    x = rng.standard_normal((n, 3))
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def generate(space, strategy: str, count: int, seed: int = 0, epsilon: float | None = None) -> SampleSet:
    """Deterministic sample sets.

    Torus: equidistant, jittered (uniform jitter of amplitude pi/(2N)), random.
    SU2 zonal angle: equidistant (cell midpoints of [0, pi]), jittered, random.
    Sphere(2): fibonacci, random.

    Without ``epsilon`` the ball radius is the covering radius of the set
    (exact on one-dimensional spaces, a fine-probe estimate on the sphere,
    inflated by 1% there).
    """
    if count < 1:
        raise SamplingError("count must be >= 1")
    rng = np.random.default_rng(seed)
    if isinstance(space, Torus):
        base = 2 * np.pi * np.arange(count) / count
        if strategy == "equidistant":
            pts = base
        elif strategy == "jittered":
            pts = np.mod(base + rng.uniform(-np.pi / (2 * count), np.pi / (2 * count), count), 2 * np.pi)
        elif strategy == "random":
            pts = np.sort(rng.uniform(0.0, 2 * np.pi, count))
        else:
            raise SamplingError(f"strategy {strategy!r} unavailable on the torus")
    elif isinstance(space, SU2):
        base = np.pi * (np.arange(count) + 0.5) / count
        if strategy == "equidistant":
            pts = base
        elif strategy == "jittered":
            pts = base + rng.uniform(-np.pi / (4 * count), np.pi / (4 * count), count)
        elif strategy == "random":
            pts = np.sort(rng.uniform(0.0, np.pi, count))
        else:
            raise SamplingError(f"strategy {strategy!r} unavailable on SU2")
    elif isinstance(space, Sphere) and space.d == 2:
        if strategy == "fibonacci":
            pts = _fibonacci_sphere(count)
        elif strategy == "random":
            pts = _random_sphere(count, rng)
        else:
            raise SamplingError(f"strategy {strategy!r} unavailable on S^2")
    else:
        raise SamplingError(f"no sample generator for {space!r}")
    if epsilon is None:
        epsilon = covering_radius(space, pts)
        if isinstance(space, Sphere):
            epsilon *= 1.01
    return SampleSet(space, pts, float(epsilon), strategy, seed)


# --------------------------------------------------------------------------
# Geometry
# --------------------------------------------------------------------------

def _probe_nodes(space, resolution):
    return sp.quadrature(space, resolution).nodes


def _distance_matrix(space, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if isinstance(space, Sphere):
        return space.distance(a[:, None, :], b[None, :, :])
    return space.distance(a[:, None], b[None, :])


def _chunks(n_rows, n_cols):
    step = max(1, CHUNK_ENTRIES // max(1, n_cols))
    for start in range(0, n_rows, step):
        yield slice(start, min(n_rows, start + step))


def _nearest(space, probes, points):
    """Distance to, and index of, the nearest sample (lowest index on ties)."""
    dist = np.empty(len(probes))
    idx = np.empty(len(probes), dtype=np.intp)
    for sl in _chunks(len(probes), len(points)):
        d = _distance_matrix(space, probes[sl], points)
        idx[sl] = np.argmin(d, axis=1)
        dist[sl] = d[np.arange(d.shape[0]), idx[sl]]
    return dist, idx


def min_separation(space, points) -> float:
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        return math.inf
    best = math.inf
    for sl in _chunks(len(pts), len(pts)):
        d = _distance_matrix(space, pts[sl], pts)
        d[np.arange(d.shape[0]), np.arange(sl.start, sl.stop)] = np.inf
        best = min(best, float(d.min()))
    return best


def covering_radius(space, points, probe_resolution: int = 256) -> float:
    """Largest distance from a point of the space to the nearest sample."""
    pts = np.sort(np.asarray(points, dtype=float)) if not isinstance(space, Sphere) else np.asarray(points)
    if isinstance(space, Torus):
        gaps = np.diff(np.append(pts, pts[0] + 2 * np.pi))
        return float(gaps.max() / 2)
    if isinstance(space, SU2):
        inner = np.diff(pts).max() / 2 if len(pts) > 1 else 0.0
        return float(max(pts[0], np.pi - pts[-1], inner))
    probes = _probe_nodes(space, probe_resolution)
    if isinstance(space, Sphere):
        chord, _ = cKDTree(pts).query(probes)
        return float(2 * np.arcsin(min(1.0, chord.max() / 2)))
    return float(_nearest(space, probes, pts)[0].max())


def ball_measure(space, epsilon: float) -> float:
    """Normalized measure of the metric ball of radius ``epsilon``."""
    if isinstance(space, Torus):
        return min(epsilon / np.pi, 1.0)
    if isinstance(space, Sphere) and space.d == 2:
        return (1.0 - math.cos(min(epsilon, math.pi))) / 2
    if isinstance(space, SU2):
        e = min(epsilon, math.pi)
        return (e - math.sin(e) * math.cos(e)) / math.pi
    raise sp.UnsupportedSpaceError(f"no ball measure for {space!r}")


def separation_report(s: SampleSet, probe_resolution: int = 256) -> SeparationReport:
    """Covering and overlap of the balls ``B(x_i, epsilon)`` on a probe grid.

    A probe-based check: necessary for covering, not a proof of it.
    """
    sep = min_separation(s.space, s.points)
    if sep < DUPLICATE_TOL:
        raise DuplicatePointsError(f"sample points closer than {DUPLICATE_TOL} (duplicates)")
    probes = _probe_nodes(s.space, probe_resolution)
    if isinstance(s.space, Sphere):
        # chord length is monotone in geodesic distance
        tree = cKDTree(s.points)
        chord, _ = tree.query(probes)
        radius = 2 * math.sin(min(math.pi, s.epsilon * (1 + TIE_TOL)) / 2)
        counts = tree.query_ball_point(probes, radius, return_length=True)
        return SeparationReport(bool(np.all(counts >= 1)), int(max(1, counts.max())), sep,
                                float(2 * np.arcsin(min(1.0, chord.max() / 2))))
    counts = np.empty(len(probes), dtype=np.intp)
    nearest = np.empty(len(probes))
    for sl in _chunks(len(probes), len(s.points)):
        d = _distance_matrix(s.space, probes[sl], s.points)
        counts[sl] = np.count_nonzero(d <= s.epsilon * (1 + TIE_TOL), axis=1)
        nearest[sl] = d.min(axis=1)
    return SeparationReport(bool(np.all(counts >= 1)), int(max(1, counts.max())), sep,
                            float(nearest.max()))


def build_partition(s: SampleSet, rule) -> Partition:
    """Nearest-sample assignment of quadrature nodes; ties go to the lowest index."""
    if min_separation(s.space, s.points) < DUPLICATE_TOL:
        raise DuplicatePointsError("duplicate sample points")
    nearest, assignment = _nearest(s.space, np.asarray(rule.nodes), s.points)
    bad = np.flatnonzero(nearest > s.epsilon * (1 + TIE_TOL))
    if bad.size:
        q = int(bad[0])
        raise CoverageError(f"quadrature node {q} at {np.asarray(rule.nodes[q]).tolist()} is "
                            f"{nearest[q]:.6g} from the nearest sample (epsilon={s.epsilon:.6g})")
    return Partition(assignment, len(s.points))

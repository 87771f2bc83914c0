"""Command-line experiment harness.

Usage::

    bandsampling {kernel,frame,reconstruct,oscillation} --config CFG.json --out DIR
                 [--seed N] [--paper-literal]

The config is one JSON object.  Unknown keys are rejected.  Keys and defaults:

    space        {"kind": "torus"} | {"kind": "sphere", "d": 2} | {"kind": "su2"}
                 | {"kind": "euclidean", "d": 3, "lambda_nodes": 256}
                 | {"kind": "heisenberg", "n": 1, "lambda_nodes": 256}     (required)
    band         {"omega": int} on compact spaces, {"R": float} on euclidean,
                 {"M": int, "R": float} on heisenberg                       (required)
    seed         seed of the synthetic test function                        (0)
    sampling     {"strategy": "equidistant", "count": 2*omega+1, "seed": <seed>,
                  "epsilon": covering radius, "file": null}
                 strategy defaults to "fibonacci" on the sphere; "file" loads a
                 sample-set JSON written by the frame command
    solver       {"method": "neumann" | "invert_T" | "dual", "tol": 1e-12, "max_iter": 1000}
    quadrature   {"resolution": 256 (64 on the sphere)}
    slice        {"start": 0.0, "stop": pi, "count": 64, "w": 0.0}
    oscillation  {"epsilons": [0.4, 0.2, 0.1, 0.05], "displacements": 64}
    omega1       larger band for oversampled reconstruction (null)
    paper_literal  Heisenberg kernel without the Plancherel density, m >= 1 (false)

``--seed`` overrides ``seed``; ``--paper-literal`` sets ``paper_literal``.

Outputs, in ``--out``:
    kernel        kernel.csv
    frame         frame.json, samples.json
    reconstruct   reconstruct.json, residuals.csv
    oscillation   oscillation.csv

Exit codes: 0 success, 1 configuration error, 2 numerical failure (samples
do not form a frame, contraction failure, or no convergence).
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import kernels as kn
from . import oscillation as osc
from . import reconstruct as rc
from . import sampling as sa
from . import spaces as sp

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2

_SCHEMA = {
    "space": None,  # validated by space_from_dict
    "band": {"omega", "M", "R"},
    "seed": (),
    "sampling": {"strategy", "count", "seed", "epsilon", "file"},
    "solver": {"method", "tol", "max_iter"},
    "quadrature": {"resolution"},
    "slice": {"start", "stop", "count", "w"},
    "oscillation": {"epsilons", "displacements"},
    "omega1": (),
    "paper_literal": (),
}
METHODS = ("neumann", "invert_T", "dual")


class ConfigError(ValueError):
    pass


def _check_keys(doc, allowed, where):
    if not isinstance(doc, dict):
        raise ConfigError(f"{where}: expected a JSON object")
    for key in doc:
        if key not in allowed:
            raise ConfigError(f"unknown key {where + '.' if where else ''}{key}")


def _int(value, key, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{key}: must be >= {minimum}")
    return value


def _float(value, key, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{key}: expected a finite number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"{key}: must be positive")
    return float(value)


class Experiment:
    """Validated configuration with defaults filled in."""

    def __init__(self, doc: dict, base_dir: Path = Path(".")):
        _check_keys(doc, _SCHEMA, "")
        for key, allowed in _SCHEMA.items():
            if isinstance(allowed, set) and key in doc:
                _check_keys(doc[key], allowed, key)
        if "space" not in doc:
            raise ConfigError("missing key space")
        if "band" not in doc:
            raise ConfigError("missing key band")
        try:
            self.space = sp.space_from_dict(doc["space"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"space: {exc}") from exc
        self.doc = doc
        self.base_dir = base_dir
        self.seed = _int(doc.get("seed", 0), "seed", 0)
        self.paper_literal = bool(doc.get("paper_literal", False))
        self.band = self._band(doc["band"])
        self.omega1 = doc.get("omega1")
        if self.omega1 is not None:
            self.omega1 = _int(self.omega1, "omega1", 0)
            if not self.space.compact or self.omega1 < self.band:
                raise ConfigError("omega1: needs a compact space and omega1 >= band.omega")

        solver = doc.get("solver", {})
        self.method = solver.get("method", "neumann")
        if self.method not in METHODS:
            raise ConfigError(f"solver.method: expected one of {METHODS}")
        self.tol = _float(solver.get("tol", 1e-12), "solver.tol", positive=True)
        self.max_iter = _int(solver.get("max_iter", 1000), "solver.max_iter", 1)

        default_res = 64 if isinstance(self.space, sp.Sphere) else 256
        self.resolution = _int(doc.get("quadrature", {}).get("resolution", default_res),
                               "quadrature.resolution", 1)

        sl = doc.get("slice", {})
        self.slice_start = _float(sl.get("start", 0.0), "slice.start")
        self.slice_stop = _float(sl.get("stop", math.pi), "slice.stop")
        self.slice_count = _int(sl.get("count", 64), "slice.count", 1)
        self.slice_w = _float(sl.get("w", 0.0), "slice.w")

        oc = doc.get("oscillation", {})
        eps = oc.get("epsilons", [0.4, 0.2, 0.1, 0.05])
        if not isinstance(eps, list) or not eps:
            raise ConfigError("oscillation.epsilons: expected a non-empty list")
        self.epsilons = [_float(e, "oscillation.epsilons", positive=True) for e in eps]
        self.displacements = _int(oc.get("displacements", 64), "oscillation.displacements", 1)

        self.sampling = dict(doc.get("sampling", {}))

    def _band(self, band):
        if isinstance(self.space, sp.HeisenbergRadial):
            if set(band) != {"M", "R"}:
                raise ConfigError("band: heisenberg needs exactly M and R")
            return sp.HeisenbergBand(_int(band["M"], "band.M", 0), _float(band["R"], "band.R", positive=True))
        if isinstance(self.space, sp.EuclideanRadial):
            if set(band) != {"R"}:
                raise ConfigError("band: euclidean needs exactly R")
            return _float(band["R"], "band.R", positive=True)
        if set(band) != {"omega"}:
            raise ConfigError("band: compact spaces need exactly omega")
        return _int(band["omega"], "band.omega", 0)

    # ------------------------------------------------------------------

    def require_compact(self, verb):
        if not self.space.compact:
            raise ConfigError(f"space: {verb} needs a compact space (torus, sphere, su2)")

    def samples(self, omega) -> sa.SampleSet:
        s = self.sampling
        if s.get("file"):
            path = Path(s["file"])
            if not path.is_absolute():
                path = self.base_dir / path
            try:
                loaded = sa.SampleSet.from_json(path.read_text(encoding="utf-8"))
            except (OSError, ValueError, KeyError) as exc:
                raise ConfigError(f"sampling.file: {exc}") from exc
            if loaded.space != self.space:
                raise ConfigError("sampling.file: sample set lives on a different space")
            return loaded
        default_strategy = "fibonacci" if isinstance(self.space, sp.Sphere) else "equidistant"
        strategy = s.get("strategy", default_strategy)
        count = _int(s.get("count", kn.central_dimension(self.space, omega)), "sampling.count", 1)
        seed = _int(s.get("seed", self.seed), "sampling.seed", 0)
        eps = s.get("epsilon")
        eps = None if eps is None else _float(eps, "sampling.epsilon", positive=True)
        try:
            return sa.generate(self.space, strategy, count, seed, eps)
        except sa.SamplingError as exc:
            raise ConfigError(f"sampling: {exc}") from exc

    def rule(self):
        return sp.quadrature(self.space, self.resolution)


# --------------------------------------------------------------------------
# Output helpers
# --------------------------------------------------------------------------

def _num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _write_json(path: Path, obj):
    text = json.dumps(obj, sort_keys=True, indent=1, allow_nan=False) + "\n"
    path.write_bytes(text.encode("utf-8"))


def _write_csv(path: Path, header, rows, comment=None):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if comment:
        buf.write(f"# {comment}\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if not isinstance(v, (int, str)) else v for v in row])
    path.write_bytes(buf.getvalue().encode("utf-8"))


# --------------------------------------------------------------------------
# Verbs
# --------------------------------------------------------------------------

def cmd_kernel(ex: Experiment, out: Path):
    grid = np.linspace(ex.slice_start, ex.slice_stop, ex.slice_count)
    space, band = ex.space, ex.band
    comment = None
    if isinstance(space, sp.Torus):
        k = np.arange(1, band + 1)
        series = 1.0 + 2.0 * np.cos(np.multiply.outer(grid, k)).sum(axis=-1)
        kern = kn.dirichlet_kernel(band, grid)
        header = ["t", "kernel", "term_sum", "diff"]
        rows = zip(grid, kern, series, kern - series)
    elif isinstance(space, sp.SU2):
        kern = np.atleast_1d(kn.sinc_kernel(space, band, grid))
        chars = sp.su2_character(band, grid)
        series = ((np.arange(band + 1) + 1)[:, None] * chars).sum(axis=0)
        central = np.atleast_1d(kn.su2_character_sum_closed_form(band, grid))
        header = ["theta", "kernel", "term_sum", "diff", "central_kernel", "central_diff"]
        rows = zip(grid, kern, series, kern - series, central, central - chars.sum(axis=0))
        comment = "kernel uses weights (n+1)^2; central_kernel is the character sum sum_n chi_n"
    elif isinstance(space, sp.Sphere):
        kern = np.atleast_1d(kn.sinc_kernel(space, band, np.cos(grid)))
        header = ["theta", "kernel"]
        rows = zip(grid, kern)
    elif isinstance(space, sp.EuclideanRadial):
        kern = np.atleast_1d(kn.sinc_kernel(space, band, grid))
        header = ["r", "kernel"]
        rows = zip(grid, kern)
    else:
        kern = np.atleast_1d(kn.sinc_kernel(space, band, (np.full_like(grid, ex.slice_w), grid),
                                            ex.paper_literal))
        origin = kn.sinc_kernel(space, band, (0.0, 0.0), ex.paper_literal)
        normalized = kern / origin if origin != 0 else np.full_like(kern, np.nan)
        header = ["t", "kernel", "kernel_over_origin"]
        rows = zip(grid, kern, normalized)
        density = "no Plancherel density, m from 1" if ex.paper_literal else "density (2m+n)|lam|^n, m from 0"
        comment = (f"heisenberg w={ex.slice_w!r}; {density}; kernel is un-normalized, "
                   f"kernel_over_origin divides by the value at w=0, t=0 ({origin!r})")
    _write_csv(out / "kernel.csv", header, rows, comment)
    return EXIT_OK


def cmd_frame(ex: Experiment, out: Path):
    ex.require_compact("frame")
    s = ex.samples(ex.band)
    fa = rc.frame_analysis(ex.space, ex.band, s)
    rep = sa.separation_report(s)
    doc = {k: _num(v) if isinstance(v, float) else v for k, v in fa.summary().items()}
    doc.update(covering=rep.covering, overlap_N=rep.overlap_N, is_frame=fa.A > 0,
               band_dimension=kn.band_dimension(ex.space, ex.band))
    _write_json(out / "frame.json", doc)
    (out / "samples.json").write_bytes((s.to_json() + "\n").encode("utf-8"))
    if not fa.A > 0:
        print(f"warning: lower frame bound is 0; {fa.n_samples} samples do not determine "
              f"a {fa.dim}-dimensional band space", file=sys.stderr)
    return EXIT_OK


def cmd_reconstruct(ex: Experiment, out: Path):
    ex.require_compact("reconstruct")
    space, omega = ex.space, ex.band
    truth = kn.random_band_function(space, omega, np.random.default_rng(ex.seed))
    s = ex.samples(ex.omega1 if ex.omega1 is not None else omega)
    values = np.asarray(kn.synthesize(truth, s.points))
    method = "invert_T" if ex.omega1 is not None else ex.method
    if method == "neumann":
        fa = rc.frame_analysis(space, omega, s)
        rec, report = rc.neumann_reconstruct(fa, values, ex.tol, ex.max_iter)
    elif method == "dual":
        fa = rc.frame_analysis(space, omega, s)
        atoms = rc.dual_frame(fa)
        rec = kn.BandCoefficients(space, omega, np.array([a.coeffs for a in atoms]).T @ values)
        report = rc.ReconstructionReport(0, [], 0.0, fa.rate, math.nan, True)
    else:
        rule = ex.rule()
        part = sa.build_partition(s, rule)
        if ex.omega1 is not None:
            rec, report = rc.oversample_reconstruct(space, omega, ex.omega1, part, rule, s.points,
                                                    values, ex.tol, ex.max_iter)
        else:
            rec, report = rc.invert_T(space, omega, part, rule, s.points, values, ex.tol, ex.max_iter)
    err = float(np.linalg.norm(rec.coeffs - truth.coeffs) / truth.norm())
    doc = {
        "method": method,
        "omega1": ex.omega1,
        "iterations": report.iterations,
        "converged": report.converged,
        "final_residual": _num(report.final_rel_error),
        "final_rel_error": _num(err),
        "predicted_rate": _num(report.predicted_rate),
        "observed_rate": _num(report.observed_rate),
        "n_samples": len(s),
        "dim": len(truth.coeffs),
    }
    _write_json(out / "reconstruct.json", doc)
    _write_csv(out / "residuals.csv", ["iteration", "residual"],
               ((i + 1, r) for i, r in enumerate(report.residual_history)))
    if not report.converged:
        print(f"error: no convergence after {report.iterations} iterations "
              f"(residual {report.final_rel_error:.3g}); add samples or raise solver.max_iter",
              file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_oscillation(ex: Experiment, out: Path):
    ex.require_compact("oscillation")
    f = kn.random_band_function(ex.space, ex.band, np.random.default_rng(ex.seed))
    eps = sorted(set(ex.epsilons), reverse=True)
    prof = osc.osc_profile(ex.space, f, eps, ex.rule(), ex.displacements)
    (out / "oscillation.csv").write_bytes(prof.to_csv().encode("utf-8"))
    return EXIT_OK


VERBS = {"kernel": cmd_kernel, "frame": cmd_frame, "reconstruct": cmd_reconstruct,
         "oscillation": cmd_oscillation}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bandsampling",
        description="Kernels, frames, reconstruction and oscillation of band-limited functions.",
        epilog="exit codes: 0 success, 1 configuration error, "
               "2 numerical failure (not a frame, contraction failure, divergence)",
    )
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--out", required=True, help="output directory (created if missing)")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--paper-literal", action="store_true",
                   help="Heisenberg kernel without the Plancherel density (m >= 1)")
    return p


def load_experiment(path, seed=None, paper_literal=False) -> Experiment:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    doc = copy.deepcopy(doc)
    if isinstance(doc, dict):
        if seed is not None:
            doc["seed"] = seed
        if paper_literal:
            doc["paper_literal"] = True
    return Experiment(doc, path.parent)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ex = load_experiment(args.config, args.seed, args.paper_literal)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return VERBS[args.verb](ex, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except rc.NotAFrameError as exc:
        print(f"error: {exc}; add samples until the lower frame bound is positive", file=sys.stderr)
        return EXIT_NUMERICAL
    except rc.ContractionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (sa.CoverageError, sa.DuplicatePointsError) as exc:
        print(f"config error: sampling: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (rc.ReconstructionError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

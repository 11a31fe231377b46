"""
Run manifests: a JSON object that fully determines one experiment.

    {
      "command": "scan",
      "out": "results/scan_eq3",
      "workers": 1,
      "series": {"family": "exp_sum", "p": 2, "N": 220} | {"file": "f.txt"},
      "system": {"kind": "steinhaus", "seed": 7, "trials": 1} | null,
      "params": {"delta": 0.05, ...},
      "budget": {"grid_per_axis": 64, ...},
      "options": {...command specific...}
    }

Radii are written as ``eK`` (ln r = K) or as plain positive numbers.
"""
import logging
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from wiman_lab.bounds.params import BoundParams
from wiman_lab.config import settings
from wiman_lab.core.domain.series import MultiPowerSeries, RadiusVector
from wiman_lab.core.errors import ManifestError
from wiman_lab.data.repositories.artifact_repository import save_manifest, save_rows_csv, save_summary_json
from wiman_lab.levy.experiment import erdos_renyi_ratio, lower_bound_experiment
from wiman_lab.predicates.factory import get_predicate
from wiman_lab.randomization.systems import CoefficientSystem, randomize_series
from wiman_lab.scan.fit import exponent_fit, wiman_exponent_samples
from wiman_lab.scan.grid import RadialGrid
from wiman_lab.scan.scanner import scan
from wiman_lab.series.factory import build_series
from wiman_lab.series.io import load_series
from wiman_lab.series.operations import maximal_term, partial_log_derivative, sum_modulus, total_log_derivative
from wiman_lab.torus.budget import TorusBudget
from wiman_lab.torus.max_modulus import max_modulus, s_norm
from wiman_lab.torus.tail_mc import tail_probability_mc

logger = logging.getLogger(__name__)

COMMANDS = ("analyze", "scan", "mc-tail", "levy", "fit")
LEVY_MODES = ("lower_bound", "erdos_renyi")


def parse_log_radius(token: Any) -> float:
    """ln r for ``eK`` shorthand or a plain positive radius."""
    text = str(token).strip()
    try:
        if text[:1] in ("e", "E"):
            return float(text[1:])
        value = float(text)
    except (ValueError, IndexError):
        raise ManifestError(f"[ERROR] cannot read radius {token!r}; use eK or a positive number.")
    if not value > 0:
        raise ManifestError(f"[ERROR] radius must be > 0, got {token!r}.")
    return math.log(value)


def parse_log_radii(spec: Any) -> List[float]:
    tokens = spec.split(",") if isinstance(spec, str) else list(spec)
    if not tokens:
        raise ManifestError("[ERROR] empty radius list.")
    return [parse_log_radius(t) for t in tokens]


@dataclass
class RunManifest:
    command: str
    out: str = settings.OUTPUT_DIR
    workers: int = settings.WORKERS
    series: Optional[Dict[str, Any]] = None
    system: Optional[Dict[str, Any]] = None
    params: Dict[str, Any] = field(default_factory=dict)
    budget: Dict[str, Any] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ManifestError(f"[ERROR] unknown manifest keys: {unknown}.")
        if "command" not in data:
            raise ManifestError("[ERROR] manifest has no 'command'.")
        manifest = cls(**{k: v for k, v in data.items() if v is not None or k in ("series", "system")})
        manifest.validate()
        return manifest

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ManifestError(f"[ERROR] unknown command '{self.command}'. Known: {list(COMMANDS)}.")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ManifestError(f"[ERROR] workers must be a positive integer, got {self.workers!r}.")
        for name in ("params", "budget", "options"):
            if not isinstance(getattr(self, name), dict):
                raise ManifestError(f"[ERROR] '{name}' must be a JSON object.")
        if self.command in ("analyze", "scan", "fit") and not self.series:
            raise ManifestError(f"[ERROR] command '{self.command}' needs a 'series' entry.")
        if self.series is not None and not ("file" in self.series or {"family", "p", "N"} <= set(self.series)):
            raise ManifestError("[ERROR] 'series' needs either 'file' or 'family', 'p' and 'N'.")
        if self.command in ("mc-tail", "levy") and not self.system:
            raise ManifestError(f"[ERROR] command '{self.command}' needs a 'system' entry.")
        if self.system is not None and "kind" not in self.system:
            raise ManifestError("[ERROR] 'system' needs a 'kind'.")
        self.bound_params()
        self.torus_budget()

    def bound_params(self) -> BoundParams:
        try:
            return BoundParams(**self.params)
        except (TypeError, ValueError) as e:
            raise ManifestError(f"[ERROR] bad 'params': {e}")

    def torus_budget(self) -> TorusBudget:
        try:
            return TorusBudget(**self.budget)
        except (TypeError, ValueError) as e:
            raise ManifestError(f"[ERROR] bad 'budget': {e}")

    def coefficient_system(self) -> Optional[CoefficientSystem]:
        if not self.system:
            return None
        return CoefficientSystem(self.system["kind"], int(self.system.get("seed", settings.SEED)))

    @property
    def trials(self) -> int:
        return int((self.system or {}).get("trials", 1))

    def option(self, name: str, default: Any = None, required: bool = False) -> Any:
        if name not in self.options:
            if required:
                raise ManifestError(f"[ERROR] command '{self.command}' needs option '{name}'.")
            return default
        return self.options[name]

    def load_series(self) -> MultiPowerSeries:
        if "file" in self.series:
            return load_series(self.series["file"])
        return build_series(self.series["family"], int(self.series["p"]), int(self.series["N"]))


def _series_for_trial(manifest: RunManifest, f: MultiPowerSeries, trial: int) -> MultiPowerSeries:
    sys = manifest.coefficient_system()
    return f if sys is None else randomize_series(f, sys, trial)


def _trial_name(base: str, trial: int, trials: int) -> str:
    return base if trials == 1 else f"{base}_t{trial:04d}"


def run_analyze(manifest: RunManifest) -> dict:
    f = _series_for_trial(manifest, manifest.load_series(), 0)
    r = RadiusVector.from_logs(parse_log_radii(manifest.option("r", required=True)))
    mu_log, argmax = maximal_term(f, r)
    estimate = max_modulus(f, r, manifest.torus_budget())
    rows = pd.DataFrame(
        {
            "axis": np.arange(1, f.dimension + 1),
            "log_r": r.logs,
            "partial_log_derivative": [partial_log_derivative(f, r, s) for s in range(1, f.dimension + 1)],
        }
    )
    save_rows_csv(rows, manifest.out, "analyze")
    return {
        "log_r": list(r.log_radii),
        "mu_log": mu_log,
        "central_index": list(argmax.entries),
        "sum_modulus_log": sum_modulus(f, r),
        "max_modulus_log": estimate.log_value,
        "max_modulus_mode": estimate.mode,
        "argmax_angles": list(estimate.argmax_angles),
        "s_norm_log": s_norm(f, r),
        "total_log_derivative": total_log_derivative(f, r),
        "terms": len(f),
    }


def _grid(manifest: RunManifest, p: int) -> RadialGrid:
    spec = manifest.option("grid", required=True)
    try:
        lo, hi, cells = spec["lo"], spec["hi"], int(spec["cells"])
    except (KeyError, TypeError):
        raise ManifestError("[ERROR] option 'grid' needs 'lo', 'hi' and 'cells'.")
    log_lo = parse_log_radii(lo) if not np.isscalar(lo) or "," in str(lo) else [parse_log_radius(lo)] * p
    log_hi = parse_log_radii(hi) if not np.isscalar(hi) or "," in str(hi) else [parse_log_radius(hi)] * p
    return RadialGrid(p, tuple(log_lo), tuple(log_hi), cells)


def run_scan(manifest: RunManifest) -> dict:
    base = manifest.load_series()
    grid = _grid(manifest, base.dimension)
    predicate_options = dict(manifest.option("predicate_options", {}))
    predicate = get_predicate(manifest.option("predicate", required=True), manifest.bound_params(), **predicate_options)
    per_trial = []
    for trial in range(manifest.trials):
        f = _series_for_trial(manifest, base, trial)
        report = scan(f, grid, predicate, budget=manifest.torus_budget(), workers=manifest.workers)
        save_rows_csv(report.rows, manifest.out, _trial_name("scan", trial, manifest.trials))
        per_trial.append({"trial": trial, **report.summary()})
    fractions = [s["flagged_fraction"] for s in per_trial]
    return {
        "predicate": predicate.describe(),
        "grid": grid.describe(),
        "trials": per_trial,
        "max_flagged_fraction": max(fractions),
    }


def run_mc_tail(manifest: RunManifest) -> dict:
    report = tail_probability_mc(
        int(manifest.option("N", required=True)),
        int(manifest.option("p", 1)),
        float(manifest.option("beta", 1.0)),
        manifest.trials,
        manifest.coefficient_system(),
        manifest.torus_budget(),
        threshold=manifest.option("threshold"),
        workers=manifest.workers,
    )
    save_rows_csv(report.rows, manifest.out, "mc_tail")
    return report.summary


def run_levy(manifest: RunManifest) -> dict:
    mode = manifest.option("mode", "lower_bound")
    if mode not in LEVY_MODES:
        raise ManifestError(f"[ERROR] levy mode must be one of {list(LEVY_MODES)}, got {mode!r}.")
    sys = manifest.coefficient_system()
    eps = float(manifest.option("eps", 0.15 if mode == "lower_bound" else 0.1))
    N = int(manifest.option("N", required=True))
    if mode == "erdos_renyi":
        radii = [math.exp(x) for x in parse_log_radii(manifest.option("r_values", required=True))]
        rows = erdos_renyi_ratio(radii, manifest.trials, eps, sys, N, manifest.torus_budget(), manifest.workers)
        save_rows_csv(rows, manifest.out, "levy_ratio")
        return {"mode": mode, "eps": eps, "seed": sys.seed, "trials": manifest.trials, "median_ratio": rows["median_ratio"].tolist()}

    t_values = [math.exp(x) for x in parse_log_radii(manifest.option("t_values", required=True))]
    report = lower_bound_experiment(
        int(manifest.option("p", 2)),
        eps,
        t_values,
        manifest.trials,
        sys,
        N,
        manifest.torus_budget(),
        points_per_t=int(manifest.option("points_per_t", 8)),
        workers=manifest.workers,
    )
    save_rows_csv(report.rows, manifest.out, "levy")
    summary = dict(report.summary)
    if not math.isfinite(summary["slope"]):
        summary["slope"] = None
    return {"mode": mode, **summary}


def run_fit(manifest: RunManifest) -> dict:
    base = manifest.load_series()
    lo = parse_log_radius(manifest.option("lo", "e2"))
    hi = parse_log_radius(manifest.option("hi", "e6"))
    samples = int(manifest.option("samples", 40))
    if base.dimension != 1:
        # diagonal sampling r_1 = ... = r_p
        log_radii = np.repeat(np.linspace(lo, hi, samples)[:, None], base.dimension, axis=1)
    else:
        log_radii = np.linspace(lo, hi, samples)[:, None]
    records, sample_frames = [], []
    for trial in range(manifest.trials):
        f = _series_for_trial(manifest, base, trial)
        data = wiman_exponent_samples(f, log_radii, manifest.torus_budget())
        fit = exponent_fit(data[["x", "y"]].to_numpy())
        records.append({"trial": trial, **fit.as_dict()})
        sample_frames.append(data.assign(trial=trial)[["trial", "x", "y"]])
    fits = pd.DataFrame.from_records(records)
    save_rows_csv(fits, manifest.out, "fit")
    save_rows_csv(pd.concat(sample_frames, ignore_index=True), manifest.out, "fit_samples")
    return {
        "trials": manifest.trials,
        "median_slope": float(fits["slope"].median()),
        "min_r2": float(fits["r2"].min()),
    }


RUNNERS = {
    "analyze": run_analyze,
    "scan": run_scan,
    "mc-tail": run_mc_tail,
    "levy": run_levy,
    "fit": run_fit,
}


def run(manifest: RunManifest) -> dict:
    """Executes a validated manifest; writes manifest.json, result CSVs and summary.json."""
    out = Path(manifest.out)
    save_manifest(manifest.to_dict(), out)
    logger.info(f"Running '{manifest.command}' into {out}")
    summary = RUNNERS[manifest.command](manifest)
    summary = {"command": manifest.command, **summary}
    save_summary_json(summary, out)
    return summary

from pathlib import Path
from typing import Optional

import typer

from wiman_lab.cli.manifest import RunManifest, run
from wiman_lab.config import settings
from wiman_lab.config.settings import setup_logging
from wiman_lab.core.errors import ManifestError, WimanLabError
from wiman_lab.data.repositories.artifact_repository import load_manifest

app = typer.Typer(help="Numerical laboratory for Wiman-type inequalities.")

EXIT_DOMAIN = 1
EXIT_USAGE = 2


@app.callback()
def main(log_level: str = typer.Option(settings.LOG_LEVEL, "--log-level", help="Logging level (DEBUG, INFO, ...)")):
    setup_logging(log_level.upper())


def _series(family: Optional[str], p: int, N: Optional[int], series_file: Optional[Path]) -> Optional[dict]:
    if series_file is not None:
        return {"file": str(series_file)}
    if family is None or N is None:
        return None
    return {"family": family, "p": p, "N": N}


def _system(kind: Optional[str], seed: int, trials: int) -> Optional[dict]:
    if kind is None:
        return None
    return {"kind": kind, "seed": seed, "trials": trials}


def _budget(grid_per_axis: Optional[int], refine_steps: Optional[int]) -> dict:
    values = {"grid_per_axis": grid_per_axis, "refine_steps": refine_steps}
    return {k: v for k, v in values.items() if v is not None}


def execute(data: dict) -> dict:
    """Validates and runs a manifest, mapping failures onto exit codes."""
    try:
        manifest = RunManifest.from_dict(data)
        summary = run(manifest)
    except ManifestError as e:
        typer.echo(str(e), err=True)
        raise typer.Exit(EXIT_USAGE)
    except (WimanLabError, ValueError, ImportError) as e:
        typer.echo(str(e), err=True)
        raise typer.Exit(EXIT_DOMAIN)
    typer.echo(f"[INFO] {manifest.command} finished; artifacts in {manifest.out}")
    return summary


@app.command()
def analyze(
    family: Optional[str] = typer.Option(None, "--family", help="Series family (exp_sum, unit, log_square)"),
    p: int = typer.Option(1, "--p", help="Number of variables"),
    N: Optional[int] = typer.Option(None, "--N", help="Total-degree truncation"),
    series_file: Optional[Path] = typer.Option(None, "--series-file", help="Series table instead of a family"),
    r: str = typer.Option(..., "--r", help="Radius vector, e.g. e2,e2"),
    kind: Optional[str] = typer.Option(None, "--kind", help="Randomize with this system (trial 0)"),
    seed: int = typer.Option(settings.SEED, "--seed"),
    grid_per_axis: Optional[int] = typer.Option(None, "--grid-per-axis"),
    refine_steps: Optional[int] = typer.Option(None, "--refine-steps"),
    out: str = typer.Option(settings.OUTPUT_DIR, "--out"),
    workers: int = typer.Option(settings.WORKERS, "--workers"),
):
    """mu_f, majorant sum, torus maximum and S-norm at one radius vector."""
    execute(
        {
            "command": "analyze",
            "out": out,
            "workers": workers,
            "series": _series(family, p, N, series_file),
            "system": _system(kind, seed, 1),
            "budget": _budget(grid_per_axis, refine_steps),
            "options": {"r": r},
        }
    )


@app.command("scan")
def scan_command(
    predicate: str = typer.Option(..., "--predicate", help="eq1, eq3, eq5, star_quarter, thm11b_half, eq9_tail, lemma23"),
    family: Optional[str] = typer.Option(None, "--family"),
    p: int = typer.Option(1, "--p"),
    N: Optional[int] = typer.Option(None, "--N"),
    series_file: Optional[Path] = typer.Option(None, "--series-file"),
    lo: str = typer.Option("e2", "--lo", help="Lower radius per axis (eK or number, or a comma list)"),
    hi: str = typer.Option("e4", "--hi"),
    cells: int = typer.Option(16, "--cells", help="Cells per axis"),
    delta: float = typer.Option(0.05, "--delta"),
    delta1: float = typer.Option(0.05, "--delta1"),
    delta2: float = typer.Option(0.1, "--delta2"),
    eps: float = typer.Option(0.05, "--eps"),
    exponent: Optional[float] = typer.Option(None, "--exponent", help="eq1 only: replace 1/2+eps"),
    axis: Optional[int] = typer.Option(None, "--axis", help="lemma23 only: check a single axis"),
    kind: Optional[str] = typer.Option(None, "--kind"),
    seed: int = typer.Option(settings.SEED, "--seed"),
    trials: int = typer.Option(1, "--trials"),
    grid_per_axis: Optional[int] = typer.Option(None, "--grid-per-axis"),
    refine_steps: Optional[int] = typer.Option(None, "--refine-steps"),
    out: str = typer.Option(settings.OUTPUT_DIR, "--out"),
    workers: int = typer.Option(settings.WORKERS, "--workers"),
):
    """Flag the cells of a radial grid where an inequality fails."""
    predicate_options = {}
    if exponent is not None:
        predicate_options["exponent"] = exponent
    if axis is not None:
        predicate_options["axis"] = axis
    execute(
        {
            "command": "scan",
            "out": out,
            "workers": workers,
            "series": _series(family, p, N, series_file),
            "system": _system(kind, seed, trials),
            "params": {"delta": delta, "delta1": delta1, "delta2": delta2, "eps": eps},
            "budget": _budget(grid_per_axis, refine_steps),
            "options": {
                "predicate": predicate,
                "predicate_options": predicate_options,
                "grid": {"lo": lo, "hi": hi, "cells": cells},
            },
        }
    )


@app.command("mc-tail")
def mc_tail(
    N: int = typer.Option(..., "--N"),
    p: int = typer.Option(1, "--p"),
    beta: float = typer.Option(1.0, "--beta"),
    trials: int = typer.Option(500, "--trials"),
    kind: str = typer.Option("steinhaus", "--kind"),
    seed: int = typer.Option(settings.SEED, "--seed"),
    threshold: Optional[float] = typer.Option(None, "--threshold", help="A for the exceedance fraction"),
    grid_per_axis: Optional[int] = typer.Option(None, "--grid-per-axis"),
    refine_steps: Optional[int] = typer.Option(None, "--refine-steps"),
    out: str = typer.Option(settings.OUTPUT_DIR, "--out"),
    workers: int = typer.Option(settings.WORKERS, "--workers"),
):
    """Monte Carlo of sup |P_N| / (S_N ln^{1/2} N) for randomized unit polynomials."""
    options = {"N": N, "p": p, "beta": beta}
    if threshold is not None:
        options["threshold"] = threshold
    execute(
        {
            "command": "mc-tail",
            "out": out,
            "workers": workers,
            "system": _system(kind, seed, trials),
            "budget": _budget(grid_per_axis, refine_steps),
            "options": options,
        }
    )


@app.command()
def levy(
    N: int = typer.Option(..., "--N"),
    mode: str = typer.Option("lower_bound", "--mode", help="lower_bound or erdos_renyi"),
    p: int = typer.Option(2, "--p"),
    eps: Optional[float] = typer.Option(None, "--eps"),
    t: str = typer.Option("e3,e4,e5", "--t", help="lower_bound: base radii t"),
    r_values: str = typer.Option("e2,e3,e4,e5", "--r-values", help="erdos_renyi: radii"),
    trials: int = typer.Option(50, "--trials"),
    points_per_t: int = typer.Option(8, "--points-per-t"),
    kind: str = typer.Option("steinhaus", "--kind"),
    seed: int = typer.Option(settings.SEED, "--seed"),
    grid_per_axis: Optional[int] = typer.Option(None, "--grid-per-axis"),
    refine_steps: Optional[int] = typer.Option(None, "--refine-steps"),
    out: str = typer.Option(settings.OUTPUT_DIR, "--out"),
    workers: int = typer.Option(settings.WORKERS, "--workers"),
):
    """Lower bound on the regions A_t, or the growing ratio in one variable."""
    options = {"mode": mode, "N": N, "p": p, "t_values": t, "r_values": r_values, "points_per_t": points_per_t}
    if eps is not None:
        options["eps"] = eps
    execute(
        {
            "command": "levy",
            "out": out,
            "workers": workers,
            "system": _system(kind, seed, trials),
            "budget": _budget(grid_per_axis, refine_steps),
            "options": options,
        }
    )


@app.command()
def fit(
    family: Optional[str] = typer.Option(None, "--family"),
    p: int = typer.Option(1, "--p"),
    N: Optional[int] = typer.Option(None, "--N"),
    series_file: Optional[Path] = typer.Option(None, "--series-file"),
    lo: str = typer.Option("e2", "--lo"),
    hi: str = typer.Option("e6", "--hi"),
    samples: int = typer.Option(40, "--samples"),
    kind: Optional[str] = typer.Option(None, "--kind"),
    seed: int = typer.Option(settings.SEED, "--seed"),
    trials: int = typer.Option(1, "--trials"),
    grid_per_axis: Optional[int] = typer.Option(None, "--grid-per-axis"),
    refine_steps: Optional[int] = typer.Option(None, "--refine-steps"),
    out: str = typer.Option(settings.OUTPUT_DIR, "--out"),
    workers: int = typer.Option(settings.WORKERS, "--workers"),
):
    """Least-squares exponent of ln(M / mu) against the bracket term."""
    execute(
        {
            "command": "fit",
            "out": out,
            "workers": workers,
            "series": _series(family, p, N, series_file),
            "system": _system(kind, seed, trials),
            "budget": _budget(grid_per_axis, refine_steps),
            "options": {"lo": lo, "hi": hi, "samples": samples},
        }
    )


@app.command("run")
def run_command(manifest: Path = typer.Option(..., "--manifest", help="Saved manifest.json to replay")):
    """Replay a saved manifest."""
    try:
        data = load_manifest(manifest)
    except ManifestError as e:
        typer.echo(str(e), err=True)
        raise typer.Exit(EXIT_USAGE)
    execute(data)


if __name__ == "__main__":
    app()

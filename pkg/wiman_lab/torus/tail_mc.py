"""
Monte Carlo of sup |P_N| for a randomized unit-coefficient polynomial of total
degree N, normalised by S_N * ln^{1/2} N.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from wiman_lab.randomization.systems import CoefficientSystem, randomize_series
from wiman_lab.series.families import make_unit
from wiman_lab.torus.budget import TorusBudget
from wiman_lab.torus.max_modulus import max_modulus, s_norm

logger = logging.getLogger(__name__)

MIN_TRIALS = 50


@dataclass
class TailReport:
    rows: pd.DataFrame
    quantile_ratio: float
    exceed_fraction: float
    summary: dict = field(default_factory=dict)


def tail_probability_mc(
    N: int,
    p: int,
    beta: float,
    trials: int,
    sys: CoefficientSystem,
    budget: TorusBudget = TorusBudget(),
    threshold: Optional[float] = None,
    workers: int = 1,
) -> TailReport:
    if trials < MIN_TRIALS:
        raise ValueError(f"[ERROR] need at least {MIN_TRIALS} trials for a tail quantile, got {trials}.")
    if p < 1 or N < max(p, 4.0 * math.pi):
        raise ValueError(f"[ERROR] need N >= max(p, 4 pi) = {max(p, 4.0 * math.pi):.3f}, got N={N}, p={p}.")
    if not beta > 0:
        raise ValueError(f"[ERROR] beta must be > 0, got {beta}.")

    base = make_unit(p, N)
    log_s = s_norm(base, np.ones(p))
    norm = math.exp(log_s) * math.sqrt(math.log(N))

    def run_trial(trial: int) -> dict:
        est = max_modulus(randomize_series(base, sys, trial), np.ones(p), budget)
        w = math.exp(est.log_value)
        return {"trial": trial, "W": w, "S": math.exp(log_s), "ratio": w / norm}

    logger.info(f"tail_probability_mc N={N} p={p} beta={beta} trials={trials} kind={sys.kind} workers={workers}")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        records = list(executor.map(run_trial, range(trials)))
    rows = pd.DataFrame.from_records(records, columns=["trial", "W", "S", "ratio"])

    level = 1.0 - N ** (-float(beta))
    quantile_ratio = float(np.quantile(rows["ratio"].to_numpy(), level))
    a = quantile_ratio if threshold is None else float(threshold)
    exceed_fraction = float((rows["ratio"] > a).mean())

    summary = {
        "N": N,
        "p": p,
        "beta": float(beta),
        "trials": trials,
        "seed": sys.seed,
        "kind": sys.kind,
        "quantile_ratio": quantile_ratio,
        "exceed_fraction": exceed_fraction,
    }
    logger.info(f"quantile_ratio={quantile_ratio:.4f} exceed_fraction={exceed_fraction:.4f}")
    return TailReport(rows, quantile_ratio, exceed_fraction, summary)

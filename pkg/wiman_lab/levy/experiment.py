"""
Ensemble checks of the quarter-exponent phenomenon for randomized exp(z_1 + ... + z_p):
the lower bound M >= mu ln^{p/4-eps} mu on the regions A_t, and the growth of
M / (mu ln^{1/4-eps} mu) in one variable.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from wiman_lab.bounds.rhs import rhs_power
from wiman_lab.core.domain.series import RadiusVector
from wiman_lab.core.errors import CoefficientSystemError
from wiman_lab.levy.psi import PsiTable
from wiman_lab.levy.region import product_sum_margin, region_measure_slope, sample_regions
from wiman_lab.randomization.systems import CoefficientSystem, randomize_series
from wiman_lab.series.families import make_exp_sum
from wiman_lab.series.operations import maximal_term
from wiman_lab.series.truncation import check_truncation_from_logs
from wiman_lab.torus.budget import TorusBudget
from wiman_lab.torus.max_modulus import max_modulus

logger = logging.getLogger(__name__)

TAIL_DELTA2 = 0.1


@dataclass
class LevyReport:
    rows: pd.DataFrame
    hold_fraction: float
    region_log_measure_slope: float
    summary: dict = field(default_factory=dict)


def _require_steinhaus(sys: CoefficientSystem, allow_identity: bool = False) -> None:
    allowed = ("steinhaus", "identity") if allow_identity else ("steinhaus",)
    if sys.kind not in allowed:
        raise CoefficientSystemError(f"[ERROR] this experiment is defined for {' / '.join(allowed)} systems, got '{sys.kind}'.")


def _certified_log_max(g, r: RadiusVector, budget: TorusBudget, mu_log: float) -> float:
    # Cauchy: M >= mu, so the larger of the two is still a lower bound
    return max(max_modulus(g, r, budget).log_value, mu_log)


def lower_bound_experiment(
    p: int,
    eps: float,
    t_values: Sequence[float],
    trials: int,
    sys: CoefficientSystem,
    N: int,
    budget: Optional[TorusBudget] = None,
    points_per_t: int = 8,
    workers: int = 1,
) -> LevyReport:
    """
    For each trial and each sampled r in the regions A_t, checks
    M_g(r) >= mu_g(r) ln^{p/4-eps} mu_g(r). A failed check is retried once at
    doubled torus budget before it counts.
    """
    _require_steinhaus(sys)
    if trials < 1 or not t_values:
        raise ValueError("[ERROR] need at least one trial and one t value.")
    budget = budget or TorusBudget()
    exponent = p / 4.0 - eps
    if exponent <= 0:
        logger.warning(f"exponent p/4 - eps = {exponent:.3f} <= 0: the lower bound reduces to Cauchy's M >= mu.")

    table = PsiTable.build(2.0 * max(t_values) + 2.0 ** 6)
    regions = sample_regions(sorted(t_values), p, points_per_t, sys.seed, table)
    points = np.vstack([pts for _, pts in regions])
    f = make_exp_sum(p, N)
    check_truncation_from_logs(f, np.log(points), TAIL_DELTA2)
    margin = product_sum_margin(points)
    if margin < 0:
        logger.warning(f"product-sum inequality fails on sampled points (margin {margin:.4g}) for p={p}.")

    def run_trial(trial: int) -> list:
        g = randomize_series(f, sys, trial)
        records = []
        for region, pts in regions:
            for row in pts:
                r = RadiusVector.from_radii(row)
                mu_log, _ = maximal_term(g, r)
                rhs = rhs_power(mu_log, exponent)
                lhs = _certified_log_max(g, r, budget, mu_log)
                if lhs < rhs:
                    logger.debug(f"trial {trial} t={region.t:.4g}: retrying at doubled budget")
                    lhs = max(lhs, _certified_log_max(g, r, budget.doubled(), mu_log))
                record = {"t": region.t}
                record.update({f"r_{i + 1}": float(row[i]) for i in range(1, p)})
                record.update({"trial": trial, "lhs_log": lhs, "rhs_log": rhs, "holds": bool(lhs >= rhs)})
                records.append(record)
        logger.info(f"lower_bound_experiment trial {trial} done")
        return records

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        per_trial = list(executor.map(run_trial, range(trials)))
    rows = pd.DataFrame.from_records([rec for records in per_trial for rec in records])

    hold_fraction = float(rows["holds"].mean())
    slope = region_measure_slope(min(t_values), max(t_values), p, table=table) if len(set(t_values)) > 1 else math.nan
    summary = {
        "p": p,
        "eps": float(eps),
        "seed": sys.seed,
        "trials": trials,
        "t_values": [float(t) for t in sorted(t_values)],
        "hold_fraction": hold_fraction,
        "slope": slope,
        "reference_slope": math.log(8.0 / 3.0) ** (p - 1),
        "product_sum_margin": margin,
    }
    logger.info(f"hold_fraction={hold_fraction:.4f} region slope={slope:.4f}")
    return LevyReport(rows, hold_fraction, slope, summary)


def erdos_renyi_ratio(
    r_values: Sequence[float],
    trials: int,
    eps: float,
    sys: CoefficientSystem,
    N: int,
    budget: Optional[TorusBudget] = None,
    workers: int = 1,
) -> pd.DataFrame:
    """
    Per radius, the ensemble median of M_g(r) / (mu_g(r) ln^{1/4-eps} mu_g(r)) for
    randomized g = e^z. The identity system gives the deterministic reference.
    """
    _require_steinhaus(sys, allow_identity=True)
    if trials < 1 or not r_values:
        raise ValueError("[ERROR] need at least one trial and one radius.")
    budget = budget or TorusBudget()
    f = make_exp_sum(1, N)
    radii = sorted(float(r) for r in r_values)
    check_truncation_from_logs(f, np.log(radii).reshape(-1, 1), TAIL_DELTA2)

    def run_trial(trial: int) -> list:
        g = randomize_series(f, sys, trial)
        out = []
        for r in radii:
            rv = RadiusVector.from_radii([r])
            mu_log, _ = maximal_term(g, rv)
            out.append(_certified_log_max(g, rv, budget, mu_log) - rhs_power(mu_log, 0.25 - eps))
        return out

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        log_ratios = np.asarray(list(executor.map(run_trial, range(trials))))

    medians = np.median(log_ratios, axis=0)
    logger.info(f"erdos_renyi_ratio: {len(radii)} radii x {trials} trials ({sys.kind})")
    return pd.DataFrame({"r": radii, "log_median_ratio": medians, "median_ratio": np.exp(medians)})

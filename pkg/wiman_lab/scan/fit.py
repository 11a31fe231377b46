"""
Least-squares exponent fits of ln(M/mu) against ln of a bracket term.

For p = 1 the bracket is ln mu (the classical normalisation); for p >= 2 it is
prod_i ln^{p-1} r_i * ln^p mu, the quantity raised to the exponent in the
multivariate bounds.
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.stats import linregress

from wiman_lab.bounds.rhs import log_bracket
from wiman_lab.core.domain.series import MultiPowerSeries, RadiusVector
from wiman_lab.core.errors import FitError
from wiman_lab.series.operations import maximal_term_many, sum_modulus_many
from wiman_lab.torus.budget import TorusBudget
from wiman_lab.torus.max_modulus import max_modulus

logger = logging.getLogger(__name__)

MIN_SAMPLES = 10
MIN_X_RANGE = 1.5


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    r2: float
    sample_count: int

    def as_dict(self) -> dict:
        return asdict(self)


def exponent_fit(samples: Iterable[Tuple[float, float]]) -> ExponentFit:
    data = np.asarray(list(samples), dtype=float).reshape(-1, 2)
    data = data[np.isfinite(data).all(axis=1)]
    if len(data) < MIN_SAMPLES:
        raise FitError(f"[ERROR] an exponent fit needs at least {MIN_SAMPLES} finite samples, got {len(data)}.")
    x, y = data[:, 0], data[:, 1]
    if np.ptp(x) < MIN_X_RANGE:
        raise FitError(f"[ERROR] x must span at least {MIN_X_RANGE} log units, got {np.ptp(x):.3f}.")
    if not np.var(x) > 0:
        raise FitError("[ERROR] degenerate x variance; the slope is undefined.")
    res = linregress(x, y)
    r2 = float(res.rvalue ** 2) if math.isfinite(res.rvalue) else 1.0
    return ExponentFit(float(res.slope), float(res.intercept), r2, len(data))


def bracket_x(mu_log: float, log_radii) -> float:
    """x coordinate of an exponent sample at one radius vector."""
    log_radii = np.asarray(log_radii, dtype=float)
    if len(log_radii) == 1:
        return math.log(mu_log)
    return log_bracket(mu_log, log_radii)


def wiman_exponent_samples(
    f: MultiPowerSeries, log_radii, budget: Optional[TorusBudget] = None
) -> pd.DataFrame:
    """
    (x, y) at each row of ``log_radii`` with y = ln M - ln mu, M the torus
    maximum (equal to the majorant sum for nonnegative coefficients).
    """
    rows = np.atleast_2d(np.asarray(log_radii, dtype=float))
    mu = maximal_term_many(f, rows)
    if not np.any(f.phase):
        top = sum_modulus_many(f, rows)
    else:
        budget = budget or TorusBudget()
        top = np.asarray([max_modulus(f, RadiusVector.from_logs(row), budget).log_value for row in rows])
    x = np.asarray([bracket_x(m, row) for m, row in zip(mu, rows)])
    logger.debug(f"wiman_exponent_samples: {len(rows)} radii, p={f.dimension}")
    return pd.DataFrame({"x": x, "y": top - mu})

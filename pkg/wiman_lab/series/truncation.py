"""
Adequacy of a total-degree truncation at the radii where a claim is made.

A truncation is adequate at r when N >= 2 d(r) (the tail-cut index), or when
the stored degree-N layer is already negligible next to mu_f(r): a gap of
``min_gap`` natural-log units (36 ~ 2e-16 relative) means the discarded part
of a series with decaying layers cannot move any double-precision result.
"""
import logging
import math
from typing import Iterable

import numpy as np

from wiman_lab.core.domain.series import MultiPowerSeries, RadiusVector, as_log_radii
from wiman_lab.core.errors import InadequateTruncationError
from wiman_lab.series.operations import maximal_term_many, sum_modulus_many, tail_cut_index_from_logs

logger = logging.getLogger(__name__)

DEFAULT_MIN_GAP = 36.0


def _rows(f: MultiPowerSeries, radii: Iterable) -> np.ndarray:
    return np.asarray([as_log_radii(r, f.dimension) for r in radii], dtype=float).reshape(-1, f.dimension)


def required_truncation_from_logs(f: MultiPowerSeries, log_radii: np.ndarray, delta2: float) -> float:
    """ceil(2 * max d(r)) over rows of ln r; inf when d overflows."""
    mu = maximal_term_many(f, log_radii)
    d_max = max(tail_cut_index_from_logs(m, row, delta2) for m, row in zip(mu, log_radii))
    return math.ceil(2.0 * d_max) if math.isfinite(d_max) else math.inf


def required_truncation(f: MultiPowerSeries, radii: Iterable[RadiusVector], delta2: float) -> float:
    return required_truncation_from_logs(f, _rows(f, radii), delta2)


def top_layer_gaps(f: MultiPowerSeries, log_radii: np.ndarray) -> np.ndarray:
    """ln mu_f minus ln of the stored degree-N layer at every row."""
    layer = f.restrict(f.orders == f.truncation)
    return maximal_term_many(f, log_radii) - sum_modulus_many(layer, log_radii)


def check_truncation_from_logs(
    f: MultiPowerSeries, log_radii: np.ndarray, delta2: float, min_gap: float = DEFAULT_MIN_GAP
) -> None:
    log_radii = np.atleast_2d(np.asarray(log_radii, dtype=float))
    required = required_truncation_from_logs(f, log_radii, delta2)
    if f.truncation >= required:
        return
    worst = float(top_layer_gaps(f, log_radii).min())
    if worst >= min_gap:
        logger.debug(f"Truncation N={f.truncation} accepted on layer gap {worst:.1f} (formula asks {required}).")
        return
    raise InadequateTruncationError(
        f"[ERROR] truncation N={f.truncation} is inadequate for the requested radii: "
        f"need N >= {required} (2 * max tail-cut index), or a degree-N layer at least "
        f"{min_gap:g} log-units below mu_f (worst gap {worst:.2f}).",
        required_truncation=required,
    )


def check_truncation(
    f: MultiPowerSeries, radii: Iterable[RadiusVector], delta2: float, min_gap: float = DEFAULT_MIN_GAP
) -> None:
    check_truncation_from_logs(f, _rows(f, radii), delta2, min_gap)

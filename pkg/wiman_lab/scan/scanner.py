import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Union

import numpy as np
import pandas as pd

from wiman_lab.bounds.params import BoundParams
from wiman_lab.core.domain.series import MultiPowerSeries
from wiman_lab.core.errors import DomainError, FitError
from wiman_lab.core.utils.logmath import MIN_LOG_RADIUS, require_log_radii
from wiman_lab.predicates.base import BasePredicate, RadialPoint
from wiman_lab.predicates.factory import get_predicate
from wiman_lab.scan.fit import ExponentFit, bracket_x, exponent_fit
from wiman_lab.scan.grid import RadialGrid, log_measure
from wiman_lab.series.truncation import check_truncation_from_logs
from wiman_lab.torus.budget import TorusBudget

logger = logging.getLogger(__name__)

# left-hand sides for which ln(lhs / mu) is an exponent sample
_FITTABLE = ("max_modulus", "sum_modulus")


@dataclass
class ExceptionalReport:
    predicate_name: str
    flagged: FrozenSet[int]
    flagged_log_measure: float
    scanned_log_measure: float
    rows: pd.DataFrame = field(repr=False)
    fit: Optional[ExponentFit] = None

    @property
    def flagged_fraction(self) -> float:
        return self.flagged_log_measure / self.scanned_log_measure if self.scanned_log_measure > 0 else 0.0

    def summary(self) -> dict:
        return {
            "predicate": self.predicate_name,
            "cells": int(len(self.rows)),
            "flagged_cells": len(self.flagged),
            "flagged_log_measure": self.flagged_log_measure,
            "scanned_log_measure": self.scanned_log_measure,
            "flagged_fraction": self.flagged_fraction,
            "fit": self.fit.as_dict() if self.fit else None,
        }


def _resolve(predicate: Union[str, BasePredicate], params: Optional[BoundParams]) -> BasePredicate:
    if isinstance(predicate, BasePredicate):
        return predicate
    return get_predicate(predicate, params)


def scan(
    f: MultiPowerSeries,
    grid: RadialGrid,
    predicate: Union[str, BasePredicate],
    params: Optional[BoundParams] = None,
    budget: Optional[TorusBudget] = None,
    workers: int = 1,
) -> ExceptionalReport:
    """
    Evaluates ``predicate`` at every cell center of ``grid`` and measures the
    cells where it fails. A cell is flagged on the evidence of its center only.
    """
    predicate = _resolve(predicate, params)
    params = predicate.params
    budget = budget or TorusBudget()
    if grid.n_cells == 0:
        raise DomainError("[ERROR] cannot scan an empty grid (cells_per_axis = 0).")
    if grid.p != f.dimension:
        raise ValueError(f"[ERROR] grid has p = {grid.p}, series has p = {f.dimension}.")
    require_log_radii(grid.log_lo, MIN_LOG_RADIUS, "lo")

    ids = grid.cell_ids()
    centers = grid.centers(ids)
    check_truncation_from_logs(f, centers, params.delta2)

    logger.info(f"Scanning {len(ids)} cells with predicate {predicate.name} (p={f.dimension}, workers={workers})")

    def evaluate(center: np.ndarray):
        point = RadialPoint(f, center, budget)
        return point.mu_log, predicate.evaluate(point)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        results = list(executor.map(evaluate, centers))

    mu = np.asarray([m for m, _ in results])
    lhs = np.asarray([v.lhs_log for _, v in results])
    rhs = np.asarray([v.rhs_log for _, v in results])
    flagged_mask = lhs > rhs

    rows = pd.DataFrame({"cell_id": ids})
    for axis in range(f.dimension):
        rows[f"r_{axis + 1}"] = np.exp(centers[:, axis])
    rows["lhs_log"] = lhs
    rows["rhs_log"] = rhs
    rows["flagged"] = flagged_mask

    flagged = frozenset(int(c) for c in ids[flagged_mask])
    report = ExceptionalReport(
        predicate_name=predicate.name,
        flagged=flagged,
        flagged_log_measure=log_measure(flagged, grid),
        scanned_log_measure=log_measure(ids, grid),
        rows=rows,
        fit=_fit(predicate, mu, lhs, centers),
    )
    logger.info(
        f"{predicate.name}: {len(flagged)}/{len(ids)} cells flagged, "
        f"log measure {report.flagged_log_measure:.4g} of {report.scanned_log_measure:.4g}"
    )
    return report


def _fit(predicate: BasePredicate, mu: np.ndarray, lhs: np.ndarray, centers: np.ndarray) -> Optional[ExponentFit]:
    if predicate.lhs_quantity not in _FITTABLE:
        return None
    samples = [(bracket_x(m, c), y - m) for m, y, c in zip(mu, lhs, centers) if math.isfinite(y)]
    try:
        return exponent_fit(samples)
    except FitError as e:
        logger.debug(f"No exponent fit for this scan: {e}")
        return None


def measure_profile(report: ExceptionalReport, grid: RadialGrid, log_his: Iterable[float]) -> pd.DataFrame:
    """
    Flagged and scanned log measure restricted to the cells lying inside
    prod [lo_i, h] for each h in ``log_his``; a plateau of the flagged column as h
    grows is the bounded-scan evidence of finite logarithmic measure.
    """
    ids = grid.cell_ids()
    edges = grid.upper_edges(ids).max(axis=1)
    flagged = np.isin(ids, np.fromiter(report.flagged, dtype=np.int64, count=len(report.flagged)))
    records = []
    for h in sorted(float(x) for x in log_his):
        inside = edges <= h + 1e-12
        records.append(
            {
                "log_hi": h,
                "flagged_log_measure": log_measure(ids[inside & flagged], grid),
                "scanned_log_measure": log_measure(ids[inside], grid),
            }
        )
    return pd.DataFrame.from_records(records, columns=["log_hi", "flagged_log_measure", "scanned_log_measure"])

"""
Truncated improper integrals used as convergence evidence.

condition (4):  int_{[e, R]^p} prod dr_i / (r_1 ... r_p ln^beta M_f(r))
In t_i = ln r_i the measure prod dr_i / r_i becomes dt, so the integral is a
plain box integral over [1, ln R]^p and is taken by the midpoint rule.

tail_delta = value(2R) - value(R) is integrated directly over the shell
[1, ln 2R]^p minus [1, ln R]^p, so it is positive and free of the
cancellation a difference of two separate quadratures would carry.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.stats import linregress

from wiman_lab.core.domain.series import MultiPowerSeries
from wiman_lab.core.errors import DomainError, FitError
from wiman_lab.series.operations import sum_modulus_many

logger = logging.getLogger(__name__)

_MAX_POINTS = 1 << 21


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    tail_delta: float


@dataclass
class Condition4Trend:
    rows: pd.DataFrame
    decay_exponent: float
    converging: bool


def _midpoints(a: float, b: float, n: int):
    h = (b - a) / n
    return a + h * (np.arange(n) + 0.5), np.full(n, h)


def _axis_nodes(log_R: float, steps: int):
    """Midpoint nodes of [1, ln R] followed by nodes of [ln R, ln 2R] at a matching density."""
    inner, w_inner = _midpoints(1.0, log_R, steps)
    outer_steps = max(2, math.ceil(steps * math.log(2.0) / (log_R - 1.0)))
    outer, w_outer = _midpoints(log_R, log_R + math.log(2.0), outer_steps)
    return np.concatenate([inner, outer]), np.concatenate([w_inner, w_outer]), steps


def condition4_integral(f: MultiPowerSeries, beta: float, R: float, steps: int = 64) -> IntegralEstimate:
    if not beta > 0:
        raise DomainError(f"[ERROR] beta must be > 0, got {beta}.")
    if not R > math.e:
        raise DomainError(f"[ERROR] cutoff radius R must exceed e, got {R}.")
    if steps < 2:
        raise ValueError(f"[ERROR] steps must be >= 2, got {steps}.")
    p = f.dimension
    nodes, weights, n_inner = _axis_nodes(math.log(R), steps)
    if len(nodes) ** p > _MAX_POINTS:
        raise ValueError(f"[ERROR] {len(nodes)}^{p} quadrature points exceed the limit {_MAX_POINTS}; lower steps.")

    grids = np.meshgrid(*([nodes] * p), indexing="ij")
    log_radii = np.stack([g.ravel() for g in grids], axis=1)
    cell = np.prod(np.stack(np.meshgrid(*([weights] * p), indexing="ij"), axis=0), axis=0).ravel()
    inner = np.all(np.stack(np.meshgrid(*([np.arange(len(nodes)) < n_inner] * p), indexing="ij"), axis=0), axis=0).ravel()

    log_sum = sum_modulus_many(f, log_radii)
    if np.any(~(log_sum > 0.0)):
        raise DomainError("[ERROR] M_f(r) <= 1 somewhere on [e, 2R]^p; ln^beta M_f is undefined there.")
    integrand = cell * np.exp(-beta * np.log(log_sum))

    value = float(integrand[inner].sum())
    tail_delta = float(integrand[~inner].sum())
    logger.debug(f"condition4 p={p} beta={beta} ln R={math.log(R):.3f} value={value:.6g} tail_delta={tail_delta:.3g}")
    return IntegralEstimate(value, tail_delta)


def condition4_trend(f: MultiPowerSeries, beta: float, R: float, doublings: int = 4, steps: int = 64) -> Condition4Trend:
    """
    tail_delta at R, 2R, 4R, ... and the exponent k of tail_delta ~ (ln R)^-k.
    The integral converges when k > 1 (the doubling tails are then summable).
    """
    if doublings < 3:
        raise ValueError(f"[ERROR] a trend needs at least 3 radii, got doublings={doublings}.")
    records = []
    for k in range(doublings):
        R_k = R * 2.0 ** k
        est = condition4_integral(f, beta, R_k, steps)
        records.append({"log_R": math.log(R_k), "value": est.value, "tail_delta": est.tail_delta})
    rows = pd.DataFrame.from_records(records)

    positive = rows["tail_delta"] > 0
    if positive.sum() < 3:
        raise FitError("[ERROR] tail_delta vanished; no decay trend can be fitted.")
    fit = linregress(np.log(rows.loc[positive, "log_R"]), np.log(rows.loc[positive, "tail_delta"]))
    decay = float(-fit.slope)
    logger.info(f"condition4 trend beta={beta}: decay exponent {decay:.3f} over {len(rows)} radii")
    return Condition4Trend(rows, decay, decay > 1.0)


def h_membership_integral(p: int, delta1: float, upper: float, steps: int = 256) -> IntegralEstimate:
    """
    int_{[e, upper]^p} du / h(u) with h(u) = prod u_i ln^{1+delta1} u_i.

    The integrand factorises; each factor is int_1^{ln upper} dv / v^{1+delta1}, taken by
    the midpoint rule in w = ln v where it is smooth. tail_delta compares against
    upper^2 (ln upper doubled).
    """
    if p < 1 or not delta1 > 0:
        raise ValueError(f"[ERROR] need p >= 1 and delta1 > 0, got p={p}, delta1={delta1}.")
    if not upper > math.e:
        raise DomainError(f"[ERROR] upper limit must exceed e, got {upper}.")

    def one_axis(log_upper: float) -> float:
        w, h = _midpoints(0.0, math.log(log_upper), steps)
        return float((h * np.exp(-delta1 * w)).sum())

    log_upper = math.log(upper)
    value = one_axis(log_upper) ** p
    tail_delta = one_axis(2.0 * log_upper) ** p - value
    return IntegralEstimate(value, tail_delta)

"""
Right-hand sides of the Wiman-type inequalities, as natural logarithms.

Each ``*_from_logs`` variant takes ln mu_f(r) (or ln M_f(r)) and ln r directly
so scans can evaluate thousands of cells without touching the series again.
Brackets are assembled from iterated logarithms and never exponentiated.
"""
import math
from typing import Sequence

import numpy as np

from wiman_lab.core.domain.series import MultiPowerSeries, as_log_radii
from wiman_lab.core.errors import DomainError
from wiman_lab.core.utils.logmath import MIN_LOG_RADIUS, ln2_from_log, require_log_radii
from wiman_lab.series.operations import maximal_term, sum_modulus

HALF, QUARTER = "half", "quarter"
P_HALF, P_QUARTER = "p_half", "p_quarter"

_BASE_EXPONENT = {HALF: 0.5, QUARTER: 0.25}
_REDUCED_DIVISOR = {P_HALF: 2.0, P_QUARTER: 4.0}


def _require_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise DomainError(f"[ERROR] {name} must be > 0, got {value!r}.")


def _require_mu(mu_log: float, what: str = "mu_f(r)") -> None:
    if not mu_log > 1.0:
        raise DomainError(f"[ERROR] {what} must exceed e, got ln = {mu_log!r}.")


def rhs_power(mu_log: float, exponent: float) -> float:
    """ln(mu * ln^exponent mu) for any real exponent; needs mu > 1."""
    if not mu_log > 0.0:
        raise DomainError(f"[ERROR] ln mu must be > 0, got {mu_log!r}.")
    return mu_log + exponent * math.log(mu_log)


def rhs_classical(mu_log: float, eps: float) -> float:
    """ln(mu * ln^{1/2+eps} mu)."""
    _require_mu(mu_log)
    _require_positive("eps", eps)
    return rhs_power(mu_log, 0.5 + eps)


def log_bracket(mu_log: float, log_radii: Sequence[float]) -> float:
    """ln(prod_i ln^{p-1} r_i * ln^p mu) for r_i > e and mu > e."""
    _require_mu(mu_log)
    logs = np.asarray(log_radii, dtype=float)
    if np.any(~(logs > 1.0)):
        raise DomainError(f"[ERROR] every r_i must exceed e, got ln r = {np.round(logs, 6).tolist()}.")
    p = len(logs)
    return (p - 1) * float(np.log(logs).sum()) + p * ln2_from_log(mu_log, "mu")


def rhs_multivariate_from_logs(mu_log: float, log_radii: Sequence[float], delta: float, exponent_kind: str) -> float:
    """ln(mu * (prod_i ln^{p-1} r_i * ln^p mu)^{x+delta}) with x = 1/2 or 1/4."""
    if exponent_kind not in _BASE_EXPONENT:
        raise ValueError(f"[ERROR] exponent_kind must be one of {sorted(_BASE_EXPONENT)}, got {exponent_kind!r}.")
    _require_positive("delta", delta)
    _require_mu(mu_log)
    return mu_log + (_BASE_EXPONENT[exponent_kind] + delta) * log_bracket(mu_log, log_radii)


def rhs_multivariate(f: MultiPowerSeries, r, delta: float, exponent_kind: str) -> float:
    mu_log, _ = maximal_term(f, r)
    return rhs_multivariate_from_logs(mu_log, as_log_radii(r, f.dimension), delta, exponent_kind)


def rhs_reduced_from_logs(mu_log: float, p: int, delta: float, exponent_kind: str) -> float:
    """ln(mu * ln^{p/x+delta} mu) with x = 2 or 4."""
    if exponent_kind not in _REDUCED_DIVISOR:
        raise ValueError(f"[ERROR] exponent_kind must be one of {sorted(_REDUCED_DIVISOR)}, got {exponent_kind!r}.")
    _require_positive("delta", delta)
    _require_mu(mu_log)
    return mu_log + (p / _REDUCED_DIVISOR[exponent_kind] + delta) * math.log(mu_log)


def rhs_reduced(f: MultiPowerSeries, r, delta: float, exponent_kind: str) -> float:
    mu_log, _ = maximal_term(f, r)
    return rhs_reduced_from_logs(mu_log, f.dimension, delta, exponent_kind)


def h_value(log_args: Sequence[float], delta1: float) -> float:
    """h(u) = prod_i u_i ln^{1+delta1} u_i, given u_i > 1."""
    args = [float(u) for u in log_args]
    if any(not u > 1.0 for u in args):
        raise DomainError(f"[ERROR] h needs every argument > 1, got {args}.")
    return math.prod(u * math.log(u) ** (1.0 + delta1) for u in args)


def lemma23_rhs_from_logs(sum_log: float, log_radii: Sequence[float], s: int, delta1: float) -> float:
    """h(ln r_1, ..., ln M_f(r), ..., ln r_p) with ln M_f(r) in slot s (1-based)."""
    _require_positive("delta1", delta1)
    logs = require_log_radii(log_radii, MIN_LOG_RADIUS)
    if not 1 <= s <= len(logs):
        raise ValueError(f"[ERROR] axis s must lie in 1..{len(logs)}, got {s}.")
    _require_mu(sum_log, "M_f(r)")
    args = logs.tolist()
    args[s - 1] = sum_log
    return h_value(args, delta1)


def lemma23_rhs(f: MultiPowerSeries, r, s: int, delta1: float) -> float:
    return lemma23_rhs_from_logs(sum_modulus(f, r), as_log_radii(r, f.dimension), s, delta1)

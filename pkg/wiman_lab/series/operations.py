"""
Log-domain evaluation of the classical quantities of a power series at a
radius vector r: the maximal term mu_f(r), the majorant sum M_f(r) (written
``sum_modulus``), logarithmic derivatives and tails.

All results are natural logarithms unless the name says otherwise. Axis
arguments are 1-based (s in {1, ..., p}).
"""
import logging
import math
from typing import Iterator, Tuple

import numpy as np
from scipy.special import logsumexp

from wiman_lab.core.domain.multi_index import MultiIndex
from wiman_lab.core.domain.series import MultiPowerSeries, as_log_radii
from wiman_lab.core.errors import DomainError, ZeroSeriesError
from wiman_lab.core.utils.logmath import ln2_from_log, ln3_from_log, log_sum, require_log_radii

logger = logging.getLogger(__name__)

# cap on rows * terms held in memory by the *_many evaluators
_CHUNK_ELEMENTS = 1 << 22
# relative slack under which two term weights count as a tie
_TIE_RTOL = 1e-12


def term_weights(f: MultiPowerSeries, r) -> np.ndarray:
    """ln(|a_n| r^n) for every stored n."""
    logs = as_log_radii(r, f.dimension)
    return f.log_modulus + f.indices @ logs


def _require_nonempty(f: MultiPowerSeries, what: str) -> None:
    if f.is_empty:
        raise ZeroSeriesError(f"[ERROR] {what} of the zero series is undefined.")


def _axis(f: MultiPowerSeries, s: int) -> int:
    if not 1 <= s <= f.dimension:
        raise ValueError(f"[ERROR] axis s must lie in 1..{f.dimension}, got {s}.")
    return s - 1


def sum_modulus(f: MultiPowerSeries, r) -> float:
    """ln sum |a_n| r^n; -inf for the zero series."""
    if f.is_empty:
        logger.debug("sum_modulus of the zero series")
        return -math.inf
    return log_sum(term_weights(f, r))


def maximal_term(f: MultiPowerSeries, r) -> Tuple[float, MultiIndex]:
    """
    (ln mu_f(r), argmax). Ties within a relative 1e-12 are broken towards the
    lexicographically smallest multi-index.
    """
    _require_nonempty(f, "maximal term")
    w = term_weights(f, r)
    top = float(w.max())
    candidates = np.flatnonzero(np.isclose(w, top, rtol=_TIE_RTOL, atol=_TIE_RTOL))
    best = min(candidates, key=lambda k: tuple(f.indices[k]))
    return float(w[best]), MultiIndex(tuple(f.indices[best]))


def partial_log_derivative(f: MultiPowerSeries, r, s: int) -> float:
    """d_s ln M_f(r) = r_s d/dr_s ln M_f(r) = sum n_s |a_n| r^n / M_f(r)."""
    _require_nonempty(f, "logarithmic derivative")
    axis = _axis(f, s)
    w = term_weights(f, r)
    numerator = log_sum(w, weights=f.indices[:, axis])
    if numerator == -math.inf:
        return 0.0
    return math.exp(numerator - log_sum(w))


def total_log_derivative(f: MultiPowerSeries, r) -> float:
    """sum_s d_s ln M_f(r) = sum ||n|| |a_n| r^n / M_f(r)."""
    _require_nonempty(f, "logarithmic derivative")
    w = term_weights(f, r)
    numerator = log_sum(w, weights=f.orders)
    if numerator == -math.inf:
        return 0.0
    return math.exp(numerator - log_sum(w))


def log_tail_cut_index(mu_log: float, log_radii, delta2: float, shifted: bool = False) -> float:
    """
    ln d for d = ln^{p/2+1+delta2} mu * prod_i (ln^p r_i * ln_2^2 r_i)^{1+delta2}.

    ``shifted`` replaces mu by e*mu, which gives the d_1 used to pick truncations.
    """
    if not delta2 >= 0.0:
        raise DomainError(f"[ERROR] delta2 must be >= 0, got {delta2}.")
    logs = require_log_radii(log_radii)
    p = len(logs)
    mu = mu_log + 1.0 if shifted else mu_log
    if not mu >= 1.0:
        raise DomainError(f"[ERROR] tail-cut index needs mu_f(r) >= e, got ln mu = {mu_log!r}.")
    radial = sum(p * ln2_from_log(x, "r") + 2.0 * ln3_from_log(x, "r") for x in logs)
    return (p / 2.0 + 1.0 + delta2) * ln2_from_log(mu, "mu") + (1.0 + delta2) * radial


def tail_cut_index_from_logs(mu_log: float, log_radii, delta2: float, shifted: bool = False) -> float:
    try:
        return math.exp(log_tail_cut_index(mu_log, log_radii, delta2, shifted))
    except OverflowError:
        return math.inf


def tail_cut_index(f: MultiPowerSeries, r, delta2: float, shifted: bool = False) -> float:
    """The degree d(r) beyond which the tail sum is dominated by mu_f(r)."""
    logs = as_log_radii(r, f.dimension)
    require_log_radii(logs)
    mu_log, _ = maximal_term(f, r)
    return tail_cut_index_from_logs(mu_log, logs, delta2, shifted)


def tail_sum(f: MultiPowerSeries, r, d: float) -> float:
    """ln sum_{||n|| >= d} |a_n| r^n over stored terms; -inf for an empty tail."""
    if d < 0:
        raise ValueError(f"[ERROR] tail start d must be >= 0, got {d}.")
    if f.is_empty:
        return -math.inf
    w = term_weights(f, r)
    return log_sum(w[f.orders >= d])


def top_layer_gap(f: MultiPowerSeries, r) -> float:
    """ln mu_f(r) minus ln of the stored degree-N layer; +inf when that layer is empty."""
    mu_log, _ = maximal_term(f, r)
    w = term_weights(f, r)
    layer = log_sum(w[f.orders == f.truncation])
    return math.inf if layer == -math.inf else mu_log - layer


def in_lambda_p(f: MultiPowerSeries) -> bool:
    """Every partial derivative d f / d z_j is not identically zero."""
    if f.is_empty:
        return False
    return bool((f.indices >= 1).any(axis=0).all())


def axis_divergence(f: MultiPowerSeries, r, s: int, bound_log: float, max_doublings: int = 4096) -> int:
    """
    Number of doublings of r_s (other radii fixed) after which ln mu_f exceeds
    ``bound_log``. Radii are doubled in log form, so the probe never overflows.
    """
    axis = _axis(f, s)
    _require_nonempty(f, "maximal term")
    if not (f.indices[:, axis] >= 1).any():
        raise DomainError(f"[ERROR] d f / d z_{s} vanishes identically; mu_f cannot grow along axis {s}.")
    logs = as_log_radii(r, f.dimension).copy()
    for doublings in range(max_doublings + 1):
        if float((f.log_modulus + f.indices @ logs).max()) > bound_log:
            return doublings
        logs[axis] += math.log(2.0)
    raise DomainError(f"[ERROR] ln mu_f stayed below {bound_log} after {max_doublings} doublings.")


def _chunks(f: MultiPowerSeries, log_radii: np.ndarray) -> Iterator[Tuple[slice, np.ndarray]]:
    rows = max(1, _CHUNK_ELEMENTS // max(1, len(f)))
    for start in range(0, len(log_radii), rows):
        block = log_radii[start:start + rows]
        yield slice(start, start + len(block)), f.log_modulus[None, :] + block @ f.indices.T


def _as_rows(f: MultiPowerSeries, log_radii) -> np.ndarray:
    log_radii = np.atleast_2d(np.asarray(log_radii, dtype=float))
    if log_radii.shape[1] != f.dimension:
        raise ValueError(f"[ERROR] radius rows have dimension {log_radii.shape[1]}, series has p = {f.dimension}.")
    return log_radii


def sum_modulus_many(f: MultiPowerSeries, log_radii) -> np.ndarray:
    """ln M_f at every row of ``log_radii`` (rows of ln r)."""
    log_radii = _as_rows(f, log_radii)
    out = np.full(len(log_radii), -np.inf)
    if f.is_empty:
        return out
    for rows, w in _chunks(f, log_radii):
        out[rows] = logsumexp(w, axis=1)
    return out


def maximal_term_many(f: MultiPowerSeries, log_radii) -> np.ndarray:
    """ln mu_f at every row of ``log_radii``."""
    _require_nonempty(f, "maximal term")
    log_radii = _as_rows(f, log_radii)
    out = np.empty(len(log_radii))
    for rows, w in _chunks(f, log_radii):
        out[rows] = w.max(axis=1)
    return out

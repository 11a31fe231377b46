"""
Guarded iterated logarithms and log-domain reductions.

Every quantity of the theory lives on log scales, so the helpers here take
logarithms as input (``log_x = ln x``) and never exponentiate.
"""
import math

import numpy as np
from scipy.special import logsumexp

from wiman_lab.core.errors import DomainError

# radii must satisfy ln r >= 1.1 wherever ln_2 r or ln_3 r appears
MIN_LOG_RADIUS = 1.1


def ln2_from_log(log_x: float, what: str = "x") -> float:
    """ln ln x given ln x; requires ln x > 0."""
    if not log_x > 0.0:
        raise DomainError(f"[ERROR] ln_2 {what} needs ln {what} > 0, got ln {what} = {log_x!r}.")
    return math.log(log_x)


def ln3_from_log(log_x: float, what: str = "x") -> float:
    """ln ln ln x given ln x; requires ln ln x > 0."""
    inner = ln2_from_log(log_x, what)
    if not inner > 0.0:
        raise DomainError(f"[ERROR] ln_3 {what} needs ln {what} > 1, got ln {what} = {log_x!r}.")
    return math.log(inner)


def require_log_radii(log_radii, floor: float = MIN_LOG_RADIUS, what: str = "r") -> np.ndarray:
    log_radii = np.asarray(log_radii, dtype=float)
    if np.any(~(log_radii >= floor)):
        raise DomainError(
            f"[ERROR] every ln {what}_i must be >= {floor:g} here, got {np.round(log_radii, 6).tolist()}."
        )
    return log_radii


def log_sum(values, weights=None) -> float:
    """ln sum(w * exp(values)) with -inf for an empty or all-zero sum."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return -math.inf
    if weights is None:
        return float(logsumexp(values))
    weights = np.asarray(weights, dtype=float)
    mask = weights > 0
    if not mask.any():
        return -math.inf
    return float(logsumexp(values[mask], b=weights[mask]))


def log_diff(log_a: float, log_b: float) -> float:
    """ln(a - b) for a >= b >= 0 given in log form; -inf when a == b."""
    if log_b == -math.inf:
        return log_a
    if log_b > log_a:
        raise DomainError("[ERROR] log_diff needs a >= b.")
    return log_a + math.log1p(-math.exp(log_b - log_a)) if log_b < log_a else -math.inf

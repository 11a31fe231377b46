import numpy as np
from scipy.special import gammaln

from wiman_lab.core.domain.multi_index import enumerate_indices
from wiman_lab.core.domain.series import MultiPowerSeries


def make_exp_sum(p: int, N: int) -> MultiPowerSeries:
    """Total-degree-N truncation of exp(z_1 + ... + z_p): a_n = 1 / (n_1! ... n_p!)."""
    idx = enumerate_indices(p, N)
    log_modulus = -gammaln(idx + 1.0).sum(axis=1)
    return MultiPowerSeries(p, N, idx, log_modulus, np.zeros(len(idx)))


def make_unit(p: int, N: int) -> MultiPowerSeries:
    """All coefficients 1 for ||n|| <= N."""
    idx = enumerate_indices(p, N)
    return MultiPowerSeries(p, N, idx, np.zeros(len(idx)), np.zeros(len(idx)))


def make_log_square(p: int, N: int) -> MultiPowerSeries:
    """
    a_n = exp(-n^2 / 4) in one variable, an entire function with
    ln M(r) = ln^2 r + O(1): slow enough growth to break condition (4) for small beta.
    """
    if p != 1:
        raise ValueError(f"[ERROR] log_square is a one-variable family, got p={p}.")
    idx = enumerate_indices(1, N)
    n = idx[:, 0].astype(float)
    return MultiPowerSeries(1, N, idx, -n * n / 4.0, np.zeros(len(idx)))

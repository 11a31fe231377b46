"""
The regions A_t = {r_1 = t, r_i in (t_1, t_2) for i >= 2} on which the lower
bound for randomized exp(z_1 + ... + z_p) is checked, with
t_1 = psi^{-1}(psi(t) / 2) and t_2 = psi^{-1}(2 psi(t)).

For log-measure accounting each slice r_1 = t is thickened to
r_1 in [t, t(1 + eta)].
"""
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.stats import linregress

from wiman_lab.core.errors import DomainError
from wiman_lab.levy.psi import PsiTable, psi, psi_inverse

DEFAULT_ETA = 0.05
MIN_PSI = 2.0


def product_sum_constant(p: int) -> float:
    """1 / (2^{p-1} (2p - 1))."""
    return 1.0 / (2.0 ** (p - 1) * (2 * p - 1))


@dataclass(frozen=True)
class RegionA:
    t: float
    p: int
    t1: float
    t2: float
    eta: float = DEFAULT_ETA

    @property
    def free_axes(self) -> int:
        return self.p - 1

    def log_measure(self) -> float:
        """Log measure of the thickened region."""
        return math.log1p(self.eta) * (math.log(self.t2) - math.log(self.t1)) ** self.free_axes

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """``count`` radius vectors (rows) with r_1 = t and the rest log-uniform in (t_1, t_2)."""
        if self.free_axes == 0:
            return np.full((1, 1), self.t)
        logs = rng.uniform(math.log(self.t1), math.log(self.t2), size=(count, self.free_axes))
        return np.hstack([np.full((count, 1), self.t), np.exp(logs)])


def region_A(t: float, p: int, table: Optional[PsiTable] = None, eta: float = DEFAULT_ETA) -> RegionA:
    if p < 1:
        raise ValueError(f"[ERROR] dimension must be >= 1, got {p}.")
    psi_t = psi(t)
    if psi_t < MIN_PSI:
        raise DomainError(f"[ERROR] region A_t needs psi(t) >= {MIN_PSI}, got psi({t}) = {psi_t:.4f}.")
    inverse = table.inverse if table is not None else psi_inverse
    return RegionA(float(t), p, inverse(psi_t / 2.0), inverse(2.0 * psi_t), eta)


def product_sum_margin(points: np.ndarray) -> float:
    """min over rows of prod psi(r_i) - c (sum psi(r_i))^p."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    p = points.shape[1]
    values = np.vectorize(psi)(points)
    margins = values.prod(axis=1) - product_sum_constant(p) * values.sum(axis=1) ** p
    return float(margins.min())


def product_sum_holds(points: np.ndarray) -> bool:
    return product_sum_margin(points) >= 0.0


def region_measure_slope(t_lo: float, t_hi: float, p: int, points: int = 64, table: Optional[PsiTable] = None) -> float:
    """
    Slope in ln t of the accumulated log measure of the union of A_s, s in [t_lo, t],
    i.e. the average of (ln t_2 - ln t_1)^{p-1} over ln t.
    """
    if not t_hi > t_lo:
        raise ValueError(f"[ERROR] need t_hi > t_lo, got {t_lo}, {t_hi}.")
    if p == 1:
        return 1.0
    log_t = np.linspace(math.log(t_lo), math.log(t_hi), points)
    widths = []
    for lt in log_t:
        region = region_A(math.exp(lt), p, table)
        widths.append((math.log(region.t2) - math.log(region.t1)) ** (p - 1))
    accumulated = cumulative_trapezoid(widths, log_t, initial=0.0)
    return float(linregress(log_t, accumulated).slope)


def sample_regions(t_values: Sequence[float], p: int, count: int, seed: int, table: Optional[PsiTable] = None):
    """(region, points) per t, each with its own stream keyed by (seed, t index)."""
    out = []
    for k, t in enumerate(t_values):
        region = region_A(t, p, table)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1 << 30, k)))
        out.append((region, region.sample(count, rng)))
    return out

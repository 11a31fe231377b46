"""
psi(r) = ln mu_g(r) for g(z) = e^z and its inverse.

The maximal term of e^z at radius r sits at n = floor(r) (consecutive terms have
ratio r / (n + 1)), so psi(r) = floor(r) ln r - ln floor(r)! and psi is 0 on (0, 1].
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import gammaln

from wiman_lab.core.errors import DomainError

_RTOL = 1e-13


def psi(r: float) -> float:
    if not r > 0:
        raise DomainError(f"[ERROR] psi needs r > 0, got {r}.")
    if r < 1.0:
        return 0.0
    n = math.floor(r)
    return n * math.log(r) - float(gammaln(n + 1.0))


def _bracket(t: float):
    if not t >= 0 or not math.isfinite(t):
        raise DomainError(f"[ERROR] psi_inverse needs a finite t >= 0, got {t}.")
    return 1.0, max(2.0, 2.0 * t + 2.0)


def psi_inverse(t: float) -> float:
    """The r >= 1 with psi(r) = t, by bisection."""
    lo, hi = _bracket(t)
    if t == 0:
        return 1.0
    return float(bisect(lambda r: psi(r) - t, lo, hi, xtol=1e-14, rtol=_RTOL, maxiter=400))


@dataclass(frozen=True)
class PsiTable:
    """psi on a log-spaced radius table; inversion bisects inside the bracketing row."""

    radii: np.ndarray
    values: np.ndarray

    @classmethod
    def build(cls, r_max: float, points: int = 512) -> "PsiTable":
        if not r_max > 1 or points < 2:
            raise ValueError(f"[ERROR] need r_max > 1 and points >= 2, got r_max={r_max}, points={points}.")
        radii = np.geomspace(1.0, r_max, points)
        values = np.asarray([psi(r) for r in radii])
        return cls(radii, values)

    def inverse(self, t: float) -> float:
        _bracket(t)
        if t == 0:
            return 1.0
        if t > self.values[-1]:
            return psi_inverse(t)
        k = int(np.searchsorted(self.values, t))
        lo, hi = self.radii[max(k - 1, 0)], self.radii[k]
        if psi(hi) == t:
            return float(hi)
        return float(bisect(lambda r: psi(r) - t, lo, hi, xtol=1e-14, rtol=_RTOL, maxiter=400))

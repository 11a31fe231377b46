"""
The trigonometric polynomial theta -> f(r_1 e^{i theta_1}, ..., r_p e^{i theta_p}),
scaled by 1 / mu_f(r) so that it can be evaluated in double precision.

|f| on the torus does not change when every multi-index is shifted by a common
vector, so indices are shifted to start at zero on each axis; the grid size
then depends on the index spread only.
"""
import math

import numpy as np
from scipy.special import logsumexp

from wiman_lab.core.domain.series import MultiPowerSeries, as_log_radii
from wiman_lab.core.errors import ZeroSeriesError

_CHUNK_ELEMENTS = 1 << 22


class TorusPolynomial:
    def __init__(self, f: MultiPowerSeries, r, cutoff: float):
        if f.is_empty:
            raise ZeroSeriesError("[ERROR] max modulus of the zero series is undefined.")
        weights = f.log_modulus + f.indices @ as_log_radii(r, f.dimension)
        self.log_scale = float(weights.max())
        self.log_sum_modulus = float(logsumexp(weights))
        keep = weights >= self.log_scale - cutoff
        # total scaled mass of the dropped terms; subtracted from every value
        self.dropped = float(np.exp(logsumexp(weights[~keep]) - self.log_scale)) if (~keep).any() else 0.0
        shifted = f.indices[keep]
        self.indices = shifted - shifted.min(axis=0)
        self.spread = tuple(int(s) for s in self.indices.max(axis=0))
        self.coefficients = np.exp(weights[keep] - self.log_scale + 1j * f.phase[keep])
        self.dimension = f.dimension

    def evaluate(self, angles) -> np.ndarray:
        """Scaled values at rows of ``angles`` (S x p)."""
        angles = np.atleast_2d(np.asarray(angles, dtype=float))
        out = np.empty(len(angles), dtype=complex)
        rows = max(1, _CHUNK_ELEMENTS // len(self.coefficients))
        for start in range(0, len(angles), rows):
            phases = angles[start:start + rows] @ self.indices.T
            out[start:start + rows] = np.exp(1j * phases) @ self.coefficients
        return out

    def grid_values(self, sizes) -> np.ndarray:
        """Scaled values on the product grid theta_j = 2 pi k_j / sizes[j]."""
        table = np.zeros(tuple(sizes), dtype=complex)
        np.add.at(table, tuple(self.indices.T), self.coefficients)
        return np.fft.ifftn(table) * float(np.prod(sizes))

    def axis_restriction(self, angles: np.ndarray, axis: int) -> np.ndarray:
        """
        Coefficients b_k of x -> f(angles with angles[axis] = x) = sum_k b_k e^{ikx},
        so a line search along one axis costs O(spread) per evaluation.
        """
        others = np.delete(np.arange(self.dimension), axis)
        rotation = np.exp(1j * (self.indices[:, others] @ angles[others])) if len(others) else 1.0
        weights = self.coefficients * rotation
        size = self.spread[axis] + 1
        b = np.bincount(self.indices[:, axis], weights=weights.real, minlength=size)
        b = b + 1j * np.bincount(self.indices[:, axis], weights=weights.imag, minlength=size)
        return b

    def log_lower_bound(self, scaled_abs: float) -> float:
        """ln of |f| at a point minus the dropped mass, in unscaled units."""
        value = scaled_abs - self.dropped
        return self.log_scale + math.log(value) if value > 0.0 else -math.inf

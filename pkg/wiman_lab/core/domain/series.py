"""
Domain types of the laboratory: truncated power series in p variables stored
in log-modulus/phase form, and radius vectors stored as logarithms.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from wiman_lab.core.domain.multi_index import MultiIndex, as_index_array, canonical_order

TWO_PI = 2.0 * math.pi


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MultiPowerSeries:
    """
    sum a_n z^n over the stored multi-indices, with a_n = exp(log_modulus) * exp(i * phase).

    Zero coefficients are absent. Rows are kept in graded-lexicographic order and
    the arrays are read-only, so a series can be shared freely between workers.
    """

    dimension: int
    truncation: int
    indices: np.ndarray
    log_modulus: np.ndarray
    phase: np.ndarray
    orders: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"[ERROR] dimension must be >= 1, got {self.dimension}.")
        if self.truncation < 0:
            raise ValueError(f"[ERROR] truncation must be >= 0, got {self.truncation}.")
        idx = as_index_array(self.indices, self.dimension)
        log_modulus = np.asarray(self.log_modulus, dtype=float).reshape(-1)
        phase = np.asarray(self.phase, dtype=float).reshape(-1)
        if not (len(idx) == len(log_modulus) == len(phase)):
            raise ValueError("[ERROR] indices, log_modulus and phase must have equal length.")
        if not np.all(np.isfinite(log_modulus)) or not np.all(np.isfinite(phase)):
            raise ValueError("[ERROR] stored coefficients must have finite log-modulus and phase.")
        orders = idx.sum(axis=1)
        if (orders > self.truncation).any():
            raise ValueError(f"[ERROR] every stored index must satisfy ||n|| <= N = {self.truncation}.")
        perm = canonical_order(idx) if len(idx) else np.arange(0)
        idx = idx[perm]
        if len(idx) > 1 and (np.diff(idx, axis=0) == 0).all(axis=1).any():
            raise ValueError("[ERROR] duplicate multi-index in coefficient table.")
        object.__setattr__(self, "indices", _frozen(idx))
        object.__setattr__(self, "log_modulus", _frozen(log_modulus[perm]))
        object.__setattr__(self, "phase", _frozen(np.mod(phase[perm], TWO_PI)))
        object.__setattr__(self, "orders", _frozen(orders[perm]))

    @classmethod
    def from_terms(
        cls, p: int, truncation: int, terms: Mapping[Tuple[int, ...], Tuple[float, float]]
    ) -> "MultiPowerSeries":
        """Build from {n: (log_modulus, phase)}."""
        keys = list(terms)
        idx = as_index_array(keys, p)
        values = np.asarray([terms[k] for k in keys], dtype=float).reshape(-1, 2)
        return cls(p, truncation, idx, values[:, 0], values[:, 1])

    @classmethod
    def from_complex(
        cls, p: int, truncation: int, coefficients: Mapping[Tuple[int, ...], complex]
    ) -> "MultiPowerSeries":
        """Build from {n: a_n}; zero coefficients are dropped."""
        kept = {tuple(k): complex(v) for k, v in coefficients.items() if v != 0}
        return cls.from_terms(
            p, truncation, {k: (math.log(abs(v)), math.atan2(v.imag, v.real)) for k, v in kept.items()}
        )

    def __len__(self) -> int:
        return len(self.log_modulus)

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    @property
    def coeffs(self) -> Dict[MultiIndex, Tuple[float, float]]:
        return {
            MultiIndex(tuple(n)): (float(lm), float(ph))
            for n, lm, ph in zip(self.indices.tolist(), self.log_modulus, self.phase)
        }

    def complex_coefficients(self) -> np.ndarray:
        return np.exp(self.log_modulus + 1j * self.phase)

    def with_coefficients(self, log_modulus: np.ndarray, phase: np.ndarray) -> "MultiPowerSeries":
        """Same index set, new coefficients (aligned with ``self.indices``)."""
        return MultiPowerSeries(self.dimension, self.truncation, self.indices, log_modulus, phase)

    def restrict(self, mask: np.ndarray) -> "MultiPowerSeries":
        return MultiPowerSeries(
            self.dimension, self.truncation, self.indices[mask], self.log_modulus[mask], self.phase[mask]
        )

    def scaled(self, log_factor: float) -> "MultiPowerSeries":
        return self.with_coefficients(self.log_modulus + log_factor, self.phase)

    def equals(self, other: "MultiPowerSeries", atol: float = 0.0) -> bool:
        if (self.dimension, self.truncation, len(self)) != (other.dimension, other.truncation, len(other)):
            return False
        if not np.array_equal(self.indices, other.indices):
            return False
        dphase = np.angle(np.exp(1j * (self.phase - other.phase)))
        return bool(
            np.allclose(self.log_modulus, other.log_modulus, rtol=0.0, atol=atol)
            and np.allclose(dphase, 0.0, rtol=0.0, atol=atol)
        )


@dataclass(frozen=True)
class RadiusVector:
    """r = (r_1, ..., r_p), held as ln r_i so radii far beyond float range stay usable."""

    log_radii: Tuple[float, ...]

    def __post_init__(self):
        logs = tuple(float(x) for x in self.log_radii)
        if not logs:
            raise ValueError("[ERROR] a radius vector needs at least one coordinate.")
        if not all(math.isfinite(x) for x in logs):
            raise ValueError(f"[ERROR] radii must be positive and finite, got ln r = {logs}.")
        object.__setattr__(self, "log_radii", logs)

    @classmethod
    def from_radii(cls, radii: Iterable[float]) -> "RadiusVector":
        radii = [float(r) for r in radii]
        if any(not r > 0.0 for r in radii):
            raise ValueError(f"[ERROR] all radii must be > 0, got {radii}.")
        return cls(tuple(math.log(r) for r in radii))

    @classmethod
    def from_logs(cls, log_radii: Iterable[float]) -> "RadiusVector":
        return cls(tuple(float(x) for x in log_radii))

    @property
    def dimension(self) -> int:
        return len(self.log_radii)

    @property
    def logs(self) -> np.ndarray:
        return np.asarray(self.log_radii, dtype=float)

    @property
    def radii(self) -> np.ndarray:
        return np.exp(self.logs)

    @property
    def wedge(self) -> float:
        """r^ = min_i r_i."""
        return math.exp(min(self.log_radii))

    def with_axis(self, axis: int, log_radius: float) -> "RadiusVector":
        logs = list(self.log_radii)
        logs[axis] = log_radius
        return RadiusVector(tuple(logs))


def as_radius(r) -> RadiusVector:
    if isinstance(r, RadiusVector):
        return r
    if np.isscalar(r):
        r = [r]
    return RadiusVector.from_radii(r)


def as_log_radii(r, p: int) -> np.ndarray:
    logs = as_radius(r).logs
    if len(logs) != p:
        raise ValueError(f"[ERROR] radius vector has dimension {len(logs)}, series has p = {p}.")
    return logs

"""
Random multiplicative systems (MS) attached to the coefficients of a series.

A draw is keyed by (seed, trial) and indexed by the graded-lexicographic rank
of each multi-index, so the multiplier of a given n does not depend on which
other indices are drawn alongside it or in what order.

Multipliers are produced in polar form (log-modulus, phase). Every supported
kind has modulus exactly 1, which keeps randomization exact in the log domain.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from wiman_lab.core.domain.multi_index import as_index_array, graded_lex_rank
from wiman_lab.core.domain.series import TWO_PI, MultiPowerSeries
from wiman_lab.core.errors import CoefficientSystemError

logger = logging.getLogger(__name__)

SYSTEM_KINDS = ("rademacher", "steinhaus", "complex_ms", "identity")


@dataclass(frozen=True)
class CoefficientSystem:
    """
    kind:
      rademacher  independent +-1 signs
      steinhaus   exp(2 pi i w), w uniform on [0, 1)
      complex_ms  (X + iY) / sqrt(2) with X, Y independent Rademacher
      identity    every multiplier is +1 (deterministic control)
    """

    kind: str
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SYSTEM_KINDS:
            raise CoefficientSystemError(f"[ERROR] Unknown system kind '{self.kind}'. Known: {list(SYSTEM_KINDS)}.")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise CoefficientSystemError(f"[ERROR] seed must be a 64-bit unsigned integer, got {self.seed}.")
        object.__setattr__(self, "seed", int(self.seed))

    def rng(self, trial: int = 0) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(int(trial),)))


@dataclass(frozen=True, eq=False)
class SystemDraw:
    """One multiplier per multi-index, aligned with ``indices``."""

    indices: np.ndarray
    log_modulus: np.ndarray
    phase: np.ndarray

    @property
    def multipliers(self) -> np.ndarray:
        return np.exp(self.log_modulus + 1j * self.phase)

    def as_mapping(self) -> Dict[Tuple[int, ...], complex]:
        return {tuple(n): complex(z) for n, z in zip(self.indices.tolist(), self.multipliers)}


def polar_stream(sys: CoefficientSystem, trial: int, positions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(log-modulus, phase) of the multipliers at stream ``positions`` for one trial."""
    positions = np.asarray(positions, dtype=np.int64)
    zeros = np.zeros(len(positions))
    if sys.kind == "identity" or len(positions) == 0:
        return zeros, zeros.copy()

    size = int(positions.max()) + 1
    rng = sys.rng(trial)
    if sys.kind == "rademacher":
        signs = rng.integers(0, 2, size=size)[positions]
        phase = np.where(signs == 1, 0.0, math.pi)
    elif sys.kind == "steinhaus":
        phase = TWO_PI * rng.random(size)[positions]
    else:
        signs = 2 * rng.integers(0, 2, size=(2, size))[:, positions] - 1
        phase = np.mod(np.arctan2(signs[1], signs[0]), TWO_PI)
    return zeros, phase


def draw_system(sys: CoefficientSystem, indices: Sequence, trial: int = 0) -> SystemDraw:
    idx = indices if isinstance(indices, np.ndarray) else as_index_array(indices)
    idx = np.asarray(idx, dtype=np.int64)
    if len(idx) and len(np.unique(idx, axis=0)) != len(idx):
        raise CoefficientSystemError("[ERROR] draw_system needs distinct multi-indices.")
    ranks = graded_lex_rank(idx) if len(idx) else np.zeros(0, dtype=np.int64)
    log_modulus, phase = polar_stream(sys, trial, ranks)
    return SystemDraw(idx, log_modulus, phase)


def randomize(f: MultiPowerSeries, draw: SystemDraw) -> MultiPowerSeries:
    """The series sum a_n Z_n z^n of the class K(f, Z) for this draw."""
    if draw.indices.shape == f.indices.shape and np.array_equal(draw.indices, f.indices):
        log_modulus, phase = draw.log_modulus, draw.phase
    else:
        lookup = {tuple(n): k for k, n in enumerate(draw.indices.tolist())}
        missing = [tuple(n) for n in f.indices.tolist() if tuple(n) not in lookup]
        if missing:
            raise CoefficientSystemError(f"[ERROR] draw has no multiplier for {len(missing)} indices, e.g. {missing[:3]}.")
        pos = np.asarray([lookup[tuple(n)] for n in f.indices.tolist()], dtype=np.int64)
        log_modulus, phase = draw.log_modulus[pos], draw.phase[pos]
    return f.with_coefficients(f.log_modulus + log_modulus, f.phase + phase)


def randomize_series(f: MultiPowerSeries, sys: CoefficientSystem, trial: int = 0) -> MultiPowerSeries:
    return randomize(f, draw_system(sys, f.indices, trial))


def ms_orthogonality_stat(kind: str, seed: int, index_tuple: Sequence[int], trials: int, part: str = "real") -> float:
    """
    |(1/T) sum_t prod_j X_{i_j}(t)| over T independent draws; O(T^{-1/2}) for a
    multiplicative system. ``part`` selects the real part of complex kinds
    ("real") or the complex multipliers themselves ("complex").
    """
    positions = np.asarray(index_tuple, dtype=np.int64)
    if len(positions) < 1:
        raise ValueError("[ERROR] the index tuple needs k >= 1 entries.")
    if positions[0] < 1 or (np.diff(positions) <= 0).any():
        raise ValueError(f"[ERROR] indices must satisfy 1 <= i_1 < ... < i_k, got {list(index_tuple)}.")
    if trials < 100:
        raise ValueError(f"[ERROR] need at least 100 trials, got {trials}.")
    if part not in ("real", "complex"):
        raise ValueError(f"[ERROR] part must be 'real' or 'complex', got {part!r}.")

    sys = CoefficientSystem(kind, seed)
    total = 0.0 + 0.0j
    for trial in range(trials):
        log_modulus, phase = polar_stream(sys, trial, positions)
        z = np.exp(log_modulus + 1j * phase)
        total += np.prod(z.real) if part == "real" else np.prod(z)
    stat = abs(total / trials)
    logger.debug(f"ms_orthogonality_stat kind={kind} seed={seed} k={len(positions)} T={trials} -> {stat:.4g}")
    return float(stat)

"""
Log-spaced radial grids over boxes prod_i [lo_i, hi_i] and their logarithmic measure
int prod dr_i / r_i.

Cells are numbered in C order over (j_1, ..., j_p), 0 <= j_i < cells_per_axis,
and evaluated at their centers in ln r.
"""
import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from wiman_lab.core.errors import DomainError

Bound = Union[float, Sequence[float]]


def _per_axis(value: Bound, p: int, what: str) -> Tuple[float, ...]:
    values = [float(value)] * p if np.isscalar(value) else [float(v) for v in value]
    if len(values) != p:
        raise ValueError(f"[ERROR] {what} has {len(values)} entries, grid has p = {p}.")
    return tuple(values)


@dataclass(frozen=True)
class RadialGrid:
    p: int
    log_lo: Tuple[float, ...]
    log_hi: Tuple[float, ...]
    cells_per_axis: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"[ERROR] grid dimension must be >= 1, got {self.p}.")
        if self.cells_per_axis < 0:
            raise ValueError(f"[ERROR] cells_per_axis must be >= 0, got {self.cells_per_axis}.")
        lo = _per_axis(self.log_lo, self.p, "lo")
        hi = _per_axis(self.log_hi, self.p, "hi")
        if not all(math.isfinite(a) and math.isfinite(b) and b > a for a, b in zip(lo, hi)):
            raise DomainError(f"[ERROR] need 0 < lo_i < hi_i on every axis, got ln lo = {lo}, ln hi = {hi}.")
        object.__setattr__(self, "log_lo", lo)
        object.__setattr__(self, "log_hi", hi)

    @classmethod
    def box(cls, p: int, lo: Bound, hi: Bound, cells_per_axis: int) -> "RadialGrid":
        """Grid over prod [lo_i, hi_i] given in radii."""
        lo, hi = _per_axis(lo, p, "lo"), _per_axis(hi, p, "hi")
        if any(not x > 0 for x in lo + hi):
            raise DomainError(f"[ERROR] radii must be > 0, got lo = {lo}, hi = {hi}.")
        return cls(p, tuple(math.log(x) for x in lo), tuple(math.log(x) for x in hi), cells_per_axis)

    @property
    def lo(self) -> np.ndarray:
        return np.exp(self.log_lo)

    @property
    def hi(self) -> np.ndarray:
        return np.exp(self.log_hi)

    @property
    def n_cells(self) -> int:
        return self.cells_per_axis ** self.p

    @property
    def cell_widths(self) -> np.ndarray:
        if self.cells_per_axis == 0:
            return np.zeros(self.p)
        return (np.asarray(self.log_hi) - np.asarray(self.log_lo)) / self.cells_per_axis

    @property
    def cell_log_volume(self) -> float:
        return float(np.prod(self.cell_widths))

    @property
    def log_volume(self) -> float:
        return float(np.prod(np.asarray(self.log_hi) - np.asarray(self.log_lo)))

    def cell_ids(self) -> np.ndarray:
        return np.arange(self.n_cells, dtype=np.int64)

    def cell_coordinates(self, cell_ids: Iterable[int]) -> np.ndarray:
        ids = self.validate_ids(cell_ids)
        if len(ids) == 0:
            return np.zeros((0, self.p), dtype=np.int64)
        return np.stack(np.unravel_index(ids, (self.cells_per_axis,) * self.p), axis=1)

    def centers(self, cell_ids: Iterable[int] = None) -> np.ndarray:
        """ln r at the center of each cell (rows)."""
        ids = self.cell_ids() if cell_ids is None else cell_ids
        coords = self.cell_coordinates(ids)
        return np.asarray(self.log_lo) + (coords + 0.5) * self.cell_widths

    def upper_edges(self, cell_ids: Iterable[int] = None) -> np.ndarray:
        ids = self.cell_ids() if cell_ids is None else cell_ids
        return np.asarray(self.log_lo) + (self.cell_coordinates(ids) + 1) * self.cell_widths

    def scaled(self, factor: float) -> "RadialGrid":
        """The grid of c * r; log-volumes are unchanged."""
        shift = math.log(factor)
        return replace(
            self,
            log_lo=tuple(x + shift for x in self.log_lo),
            log_hi=tuple(x + shift for x in self.log_hi),
        )

    def validate_ids(self, cell_ids: Iterable[int]) -> np.ndarray:
        ids = np.asarray(list(cell_ids) if not isinstance(cell_ids, np.ndarray) else cell_ids, dtype=np.int64)
        foreign = ids[(ids < 0) | (ids >= self.n_cells)]
        if len(foreign):
            raise ValueError(f"[ERROR] cell ids {foreign[:5].tolist()} do not belong to this grid ({self.n_cells} cells).")
        return ids

    def describe(self) -> dict:
        return {
            "p": self.p,
            "log_lo": list(self.log_lo),
            "log_hi": list(self.log_hi),
            "cells_per_axis": self.cells_per_axis,
        }


def log_measure(cells: Iterable[int], grid: RadialGrid) -> float:
    """Logarithmic measure of a union of grid cells."""
    ids = np.unique(grid.validate_ids(cells))
    return float(len(ids) * grid.cell_log_volume)

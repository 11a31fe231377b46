from dataclasses import dataclass, replace
from typing import List, Optional, Tuple


def next_power_of_two(n: int) -> int:
    return 1 << max(0, int(n) - 1).bit_length()


@dataclass(frozen=True)
class TorusBudget:
    """
    Search effort for max_modulus.

    grid_per_axis: finest dense grid size per axis. Every power of two up to
        next_power_of_two(grid_per_axis) is searched (each clamped to at least
        2 * spread + 1), so a larger budget searches a superset of grids.
    refine_steps: coordinate-ascent sweeps from each candidate.
    sample_count: random starting angle tuples in sampled mode (p >= 3).
    candidates: how many local maxima per grid (best samples in sampled mode)
        are refined.
    cutoff: terms lighter than mu_f * exp(-cutoff) are dropped; their mass is
        subtracted from the result so it stays a lower bound.
    """

    grid_per_axis: int = 64
    refine_steps: int = 3
    sample_count: int = 256
    candidates: int = 8
    cutoff: float = 40.0
    dense_max_dimension: int = 2
    max_dense_points: int = 1 << 24
    sample_seed: int = 0

    def __post_init__(self):
        if self.grid_per_axis < 2:
            raise ValueError(f"[ERROR] grid_per_axis must be >= 2, got {self.grid_per_axis}.")
        if self.refine_steps < 0:
            raise ValueError(f"[ERROR] refine_steps must be >= 0, got {self.refine_steps}.")
        if self.sample_count < 1 or self.candidates < 1:
            raise ValueError("[ERROR] sample_count and candidates must be >= 1.")
        if not self.cutoff > 0:
            raise ValueError(f"[ERROR] cutoff must be > 0, got {self.cutoff}.")

    def dense_sizes(self, spread: Tuple[int, ...], grid: Optional[int] = None) -> Tuple[int, ...]:
        grid = self.grid_per_axis if grid is None else grid
        return tuple(next_power_of_two(max(grid, 2 * int(s) + 1)) for s in spread)

    def dense_levels(self, spread: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        """Nested grid sizes, coarsest first; the last one is dense_sizes(spread)."""
        levels = []
        grid = next_power_of_two(self.grid_per_axis)
        while grid >= 2:
            sizes = self.dense_sizes(spread, grid)
            if sizes not in levels:
                levels.append(sizes)
            grid //= 2
        return levels[::-1]

    def doubled(self) -> "TorusBudget":
        return replace(
            self,
            grid_per_axis=2 * self.grid_per_axis,
            refine_steps=max(1, 2 * self.refine_steps),
            sample_count=2 * self.sample_count,
        )


@dataclass(frozen=True)
class SupEstimate:
    """ln of a certified lower bound for M_f(r), where it was found, and how."""

    log_value: float
    argmax_angles: Tuple[float, ...]
    mode: str

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import comb


@dataclass(frozen=True, order=True)
class MultiIndex:
    """n = (n_1, ..., n_p) with order ||n|| = sum n_j."""

    order: int = field(init=False, repr=False)
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise ValueError("[ERROR] a multi-index needs at least one entry.")
        if any(e < 0 for e in entries):
            raise ValueError(f"[ERROR] multi-index entries must be >= 0, got {entries}.")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "order", sum(entries))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _comb(n, k) -> np.ndarray:
    return np.rint(comb(n, k, exact=False)).astype(np.int64)


def graded_lex_rank(indices) -> np.ndarray:
    """
    Position of each row of ``indices`` in the enumeration of Z_+^p ordered by
    total degree first and lexicographically within a degree.

    The rank does not depend on any truncation, so the same multi-index gets
    the same rank in every series of the same dimension.
    """
    idx = np.atleast_2d(np.asarray(indices, dtype=np.int64))
    p = idx.shape[1]
    order = idx.sum(axis=1)
    rank = _comb(order + p - 1, p) if p > 1 else order.copy()
    prefix = np.zeros_like(order)
    for j in range(p - 1):
        m = order - prefix
        q = p - j - 2
        rank += _comb(m + q + 1, q + 1) - _comb(m - idx[:, j] + q + 1, q + 1)
        prefix += idx[:, j]
    return rank


@lru_cache(maxsize=64)
def _compositions_upto(p: int, total: int) -> np.ndarray:
    if p == 1:
        return np.arange(total + 1, dtype=np.int64).reshape(-1, 1)
    blocks = []
    for first in range(total + 1):
        rest = _compositions_upto(p - 1, total - first)
        blocks.append(np.column_stack([np.full(len(rest), first, dtype=np.int64), rest]))
    return np.vstack(blocks)


def canonical_order(indices) -> np.ndarray:
    """Permutation sorting rows by (total degree, entries lexicographically)."""
    idx = np.asarray(indices, dtype=np.int64)
    keys = tuple(idx[:, j] for j in reversed(range(idx.shape[1]))) + (idx.sum(axis=1),)
    return np.lexsort(keys)


def enumerate_indices(p: int, truncation: int) -> np.ndarray:
    """All n in Z_+^p with ||n|| <= truncation, in graded-lexicographic order."""
    if p < 1 or truncation < 0:
        raise ValueError(f"[ERROR] need p >= 1 and N >= 0, got p={p}, N={truncation}.")
    idx = _compositions_upto(p, truncation)
    return idx[canonical_order(idx)]


def as_index_array(indices: Sequence, p: int = None) -> np.ndarray:
    rows = [tuple(n.entries) if isinstance(n, MultiIndex) else tuple(n) for n in indices]
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, p or 1), dtype=np.int64)
    if arr.ndim != 2 or (p is not None and arr.shape[1] != p):
        raise ValueError(f"[ERROR] expected multi-indices of dimension {p}.")
    if (arr < 0).any():
        raise ValueError("[ERROR] multi-index entries must be >= 0.")
    return arr

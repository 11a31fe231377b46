"""
Lower-bound estimation of M_f(r) = max |f| over the p-torus of polyradius r.

Dense mode (p <= 2): each nested grid of the budget is evaluated with one inverse
FFT and its best local maxima become candidates. A coarse grid point is also a
fine grid point, so a larger budget refines a superset of candidates.
Sampled mode (p >= 3, or a dense grid over the point limit): random angle tuples
plus the zero tuple. In both modes candidates are refined by golden-section
coordinate ascent with steps fixed by the index spread, and only improvements
are accepted.
"""
import logging
import math
from typing import Tuple

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import logsumexp

from wiman_lab.core.domain.series import TWO_PI, MultiPowerSeries, as_log_radii
from wiman_lab.torus.budget import SupEstimate, TorusBudget
from wiman_lab.torus.polynomial import TorusPolynomial

logger = logging.getLogger(__name__)


def _line_search(poly: TorusPolynomial, angles: np.ndarray, axis: int, step: float, current: float) -> Tuple[float, float]:
    b = poly.axis_restriction(angles, axis)
    coeffs = b[::-1]

    def neg_abs(x: float) -> float:
        return -abs(np.polyval(coeffs, np.exp(1j * x)))

    x0 = angles[axis]
    lo, hi = x0 - step, x0 + step
    f_lo, f_mid, f_hi = neg_abs(lo), neg_abs(x0), neg_abs(hi)
    if not (f_mid < f_lo and f_mid < f_hi):
        # not a strict bracket; move to the better neighbour if it improves
        best_x, best_f = min(((lo, f_lo), (hi, f_hi)), key=lambda t: t[1])
        return (best_x % TWO_PI, -best_f) if -best_f > current else (x0, current)
    try:
        res = minimize_scalar(neg_abs, bracket=(lo, x0, hi), method="golden", options={"xtol": 1e-10})
    except ValueError:
        return x0, current
    if -res.fun > current:
        return float(res.x) % TWO_PI, float(-res.fun)
    return x0, current


def _refine(poly: TorusPolynomial, start: np.ndarray, value: float, steps: Tuple[float, ...], sweeps: int):
    angles = np.array(start, dtype=float)
    for _ in range(sweeps):
        before = value
        for axis in range(poly.dimension):
            angles[axis], value = _line_search(poly, angles, axis, steps[axis], value)
        if value <= before:
            break
    return angles, value


def _grid_peaks(poly: TorusPolynomial, sizes, k: int):
    """The k largest local maxima of |f| on one grid (periodic neighbours per axis)."""
    magnitudes = np.abs(poly.grid_values(sizes))
    peak = np.ones(magnitudes.shape, dtype=bool)
    for axis, m in enumerate(sizes):
        if m > 1:
            peak &= magnitudes >= np.roll(magnitudes, 1, axis=axis)
            peak &= magnitudes >= np.roll(magnitudes, -1, axis=axis)
    flat = magnitudes.ravel()
    idx = np.flatnonzero(peak.ravel())
    idx = idx[np.lexsort((idx, -flat[idx]))][:k]
    grid_idx = np.stack(np.unravel_index(idx, sizes), axis=1)
    angles = TWO_PI * grid_idx / np.asarray(sizes, dtype=float)
    return angles, flat[idx]


def _dense_candidates(poly: TorusPolynomial, levels, k: int):
    seen = set()
    starts, values = [], []
    for sizes in levels:
        for angles, value in zip(*_grid_peaks(poly, sizes, k)):
            key = tuple(angles.tolist())
            if key not in seen:
                seen.add(key)
                starts.append(angles)
                values.append(value)
    return np.asarray(starts), np.asarray(values)


def _sampled_candidates(poly: TorusPolynomial, budget: TorusBudget):
    rng = np.random.default_rng(budget.sample_seed)
    angles = np.vstack([np.zeros(poly.dimension), TWO_PI * rng.random((budget.sample_count, poly.dimension))])
    magnitudes = np.abs(poly.evaluate(angles))
    order = np.lexsort((np.arange(len(angles)), -magnitudes))[: budget.candidates]
    return angles[order], magnitudes[order]


def max_modulus(f: MultiPowerSeries, r, budget: TorusBudget = TorusBudget()) -> SupEstimate:
    poly = TorusPolynomial(f, r, budget.cutoff)

    sizes = budget.dense_sizes(poly.spread)
    dense = poly.dimension <= budget.dense_max_dimension and math.prod(sizes) <= budget.max_dense_points
    if dense:
        starts, values = _dense_candidates(poly, budget.dense_levels(poly.spread), budget.candidates)
    else:
        starts, values = _sampled_candidates(poly, budget)
    steps = tuple(TWO_PI / (2 * s + 1) for s in poly.spread)

    best = int(np.argmax(values))
    best_angles, best_value = starts[best], float(values[best])
    for start, value in zip(starts, values):
        angles, refined = _refine(poly, start, float(value), steps, budget.refine_steps)
        if refined > best_value:
            best_angles, best_value = angles, refined

    log_value = min(poly.log_lower_bound(best_value), poly.log_sum_modulus)
    mode = "dense" if dense else "sampled"
    logger.debug(f"max_modulus p={f.dimension} spread={poly.spread} mode={mode} -> {log_value:.6g}")
    return SupEstimate(float(log_value), tuple(float(a) for a in best_angles), mode)


def s_norm(f: MultiPowerSeries, r) -> float:
    """ln sqrt(sum |a_n|^2 r^{2n})."""
    if f.is_empty:
        return -math.inf
    weights = f.log_modulus + f.indices @ as_log_radii(r, f.dimension)
    return float(0.5 * logsumexp(2.0 * weights))

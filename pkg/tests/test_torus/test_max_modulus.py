import math

import numpy as np
import pytest

from wiman_lab.core.domain.series import MultiPowerSeries, RadiusVector
from wiman_lab.core.errors import ZeroSeriesError
from wiman_lab.randomization.systems import CoefficientSystem, randomize_series
from wiman_lab.series.families import make_exp_sum, make_unit
from wiman_lab.series.operations import maximal_term, sum_modulus
from wiman_lab.torus.budget import TorusBudget, next_power_of_two
from wiman_lab.torus.max_modulus import max_modulus, s_norm
from wiman_lab.torus.polynomial import TorusPolynomial


def test_monomial_is_exact():
    f = MultiPowerSeries.from_terms(2, 5, {(2, 3): (0.7, 1.2)})
    est = max_modulus(f, RadiusVector.from_logs([1.0, 2.0]))
    assert est.log_value == pytest.approx(0.7 + 2.0 + 6.0, abs=1e-12)
    assert est.mode == "dense"


def test_nonnegative_coefficients_peak_at_zero_angles():
    f = make_exp_sum(2, 60)
    r = RadiusVector.from_logs([1.0, 1.0])
    assert max_modulus(f, r).log_value == pytest.approx(sum_modulus(f, r), abs=1e-9)


def test_one_minus_z_reaches_two():
    f = MultiPowerSeries.from_complex(1, 1, {(0,): 1.0, (1,): -1.0})
    est = max_modulus(f, RadiusVector.from_logs([0.0]))
    assert est.log_value == pytest.approx(math.log(2.0), abs=1e-9)
    assert est.argmax_angles[0] == pytest.approx(math.pi, abs=1e-6)


def test_estimate_lies_between_s_norm_and_majorant():
    g = randomize_series(make_exp_sum(2, 40), CoefficientSystem("steinhaus", 5))
    r = RadiusVector.from_logs([1.0, 1.2])
    est = max_modulus(g, r)
    assert s_norm(g, r) - 1e-9 <= est.log_value <= sum_modulus(g, r) + 1e-12
    assert est.log_value >= maximal_term(g, r)[0]


def test_larger_budget_never_loses_ground():
    g = randomize_series(make_exp_sum(2, 40), CoefficientSystem("steinhaus", 9))
    r = RadiusVector.from_logs([1.5, 1.0])
    base = TorusBudget(grid_per_axis=16, refine_steps=0)
    assert max_modulus(g, r, base.doubled()).log_value >= max_modulus(g, r, base).log_value - 1e-12


def test_three_variables_use_sampling():
    f = make_exp_sum(3, 20)
    r = RadiusVector.from_logs([0.5, 0.5, 0.5])
    est = max_modulus(f, r)
    assert est.mode == "sampled"
    # the zero angle tuple is always a candidate
    assert est.log_value == pytest.approx(sum_modulus(f, r), abs=1e-9)
    g = randomize_series(f, CoefficientSystem("rademacher", 1))
    assert max_modulus(g, r).log_value <= sum_modulus(g, r) + 1e-12


def test_zero_series_has_no_maximum():
    zero = MultiPowerSeries(1, 3, np.zeros((0, 1), dtype=np.int64), [], [])
    with pytest.raises(ZeroSeriesError):
        max_modulus(zero, RadiusVector.from_logs([0.0]))
    assert s_norm(zero, RadiusVector.from_logs([0.0])) == -math.inf


def test_s_norm_of_unit_polynomial():
    assert s_norm(make_unit(1, 24), RadiusVector.from_logs([0.0])) == pytest.approx(0.5 * math.log(25.0))


def test_polynomial_drops_light_terms_and_shifts_indices():
    f = MultiPowerSeries.from_terms(1, 12, {(10,): (0.0, 0.0), (11,): (0.0, 0.0), (12,): (-60.0, 0.0)})
    poly = TorusPolynomial(f, RadiusVector.from_logs([0.0]), cutoff=40.0)
    assert poly.spread == (1,)
    assert poly.dropped == pytest.approx(math.exp(-60.0))
    assert np.abs(poly.grid_values((4,))).max() == pytest.approx(2.0)


def test_budget_validation_and_sizes():
    assert [next_power_of_two(n) for n in (1, 2, 64, 65)] == [1, 2, 64, 128]
    assert TorusBudget(grid_per_axis=64).dense_sizes((40, 3)) == (128, 64)
    doubled = TorusBudget(refine_steps=0).doubled()
    assert (doubled.grid_per_axis, doubled.refine_steps, doubled.sample_count) == (128, 1, 512)
    with pytest.raises(ValueError, match="grid_per_axis"):
        TorusBudget(grid_per_axis=1)
    with pytest.raises(ValueError, match="cutoff"):
        TorusBudget(cutoff=0.0)


def test_finer_grids_never_lower_the_estimate():
    r = RadiusVector.from_logs([0.0, 0.0])
    for seed in range(40):
        g = randomize_series(make_unit(2, 12), CoefficientSystem("steinhaus", seed))
        estimates = [max_modulus(g, r, TorusBudget(grid_per_axis=m)).log_value for m in (8, 16, 32, 64)]
        assert estimates == sorted(estimates), f"seed {seed}: {estimates}"


def test_dense_levels_are_nested():
    budget = TorusBudget(grid_per_axis=64)
    assert budget.dense_levels((12,)) == [(32,), (64,)]
    assert budget.dense_levels((3, 0)) == [(8, 2), (8, 4), (8, 8), (16, 16), (32, 32), (64, 64)]
    assert TorusBudget(grid_per_axis=128).dense_levels((12,))[:2] == budget.dense_levels((12,))


@pytest.mark.parametrize("seed", range(20))
def test_trinomial_maximum_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    j, k = sorted(rng.choice(np.arange(1, 13), size=2, replace=False).tolist())
    coeffs = rng.normal(size=3) + 1j * rng.normal(size=3)
    f = MultiPowerSeries.from_complex(1, 12, {(0,): coeffs[0], (j,): coeffs[1], (k,): coeffs[2]})
    theta = np.linspace(0.0, 2.0 * math.pi, 1 << 18, endpoint=False)
    z = np.exp(1j * theta)
    brute = np.abs(coeffs[0] + coeffs[1] * z ** j + coeffs[2] * z ** k).max()
    est = max_modulus(f, RadiusVector.from_logs([0.0]))
    assert est.log_value == pytest.approx(math.log(brute), abs=1e-6)

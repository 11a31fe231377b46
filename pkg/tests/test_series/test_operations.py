import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gammaln

from wiman_lab.core.domain.series import MultiPowerSeries, RadiusVector
from wiman_lab.core.errors import DomainError, ZeroSeriesError
from wiman_lab.randomization.systems import CoefficientSystem, randomize_series
from wiman_lab.series.families import make_exp_sum, make_unit
from wiman_lab.series.operations import (
    axis_divergence,
    in_lambda_p,
    log_tail_cut_index,
    maximal_term,
    maximal_term_many,
    partial_log_derivative,
    sum_modulus,
    sum_modulus_many,
    tail_cut_index,
    tail_cut_index_from_logs,
    tail_sum,
    top_layer_gap,
    total_log_derivative,
)
from wiman_lab.torus.max_modulus import s_norm

E2 = RadiusVector.from_logs([2.0])
E2_E2 = RadiusVector.from_logs([2.0, 2.0])


def test_maximal_term_of_exponential():
    f = make_exp_sum(1, 80)
    mu_log, argmax = maximal_term(f, E2)
    # the central index of e^z at r is floor(r) = 7 for r = e^2
    assert argmax.entries == (7,)
    assert mu_log == pytest.approx(14.0 - gammaln(8.0), rel=1e-12)


def test_sum_modulus_of_exponential_sum():
    assert sum_modulus(make_exp_sum(1, 80), E2) == pytest.approx(math.e ** 2, rel=1e-12)
    assert sum_modulus(make_exp_sum(2, 80), E2_E2) == pytest.approx(2.0 * math.e ** 2, rel=1e-10)


def test_maximal_term_tie_breaks_to_smallest_index():
    f = MultiPowerSeries.from_terms(2, 1, {(1, 0): (0.0, 0.0), (0, 1): (0.0, 1.0)})
    _, argmax = maximal_term(f, E2_E2)
    assert argmax.entries == (0, 1)


def test_zero_series():
    zero = MultiPowerSeries(1, 5, np.zeros((0, 1), dtype=np.int64), [], [])
    assert sum_modulus(zero, E2) == -math.inf
    assert tail_sum(zero, E2, 0) == -math.inf
    with pytest.raises(ZeroSeriesError, match="zero series"):
        maximal_term(zero, E2)
    with pytest.raises(ZeroSeriesError):
        partial_log_derivative(zero, E2, 1)


def test_log_derivatives_of_exponential_sum():
    # d_s ln exp(r_1 + r_2) = r_s
    f = make_exp_sum(2, 80)
    r = RadiusVector.from_logs([1.5, 2.0])
    assert partial_log_derivative(f, r, 1) == pytest.approx(math.exp(1.5), rel=1e-10)
    assert partial_log_derivative(f, r, 2) == pytest.approx(math.exp(2.0), rel=1e-10)
    assert total_log_derivative(f, r) == pytest.approx(math.exp(1.5) + math.exp(2.0), rel=1e-10)
    with pytest.raises(ValueError, match="axis s"):
        partial_log_derivative(f, r, 0)


def test_log_derivative_along_a_silent_axis_is_zero():
    f = MultiPowerSeries.from_terms(2, 3, {(0, 0): (0.0, 0.0), (3, 0): (0.0, 0.0)})
    assert partial_log_derivative(f, E2_E2, 2) == 0.0


def test_tail_sum_counts_orders_from_d():
    f = make_unit(1, 10)
    one = RadiusVector.from_logs([0.0])
    assert tail_sum(f, one, 5) == pytest.approx(math.log(6.0))
    assert tail_sum(f, one, 11) == -math.inf
    with pytest.raises(ValueError, match=">= 0"):
        tail_sum(f, one, -1)


def test_top_layer_gap():
    f = make_exp_sum(1, 80)
    mu_log, _ = maximal_term(f, E2)
    assert top_layer_gap(f, E2) == pytest.approx(mu_log - (80 * 2.0 - gammaln(81.0)))
    assert top_layer_gap(f, E2) > 36.0


def test_lambda_p_membership():
    assert in_lambda_p(make_exp_sum(2, 3))
    assert not in_lambda_p(MultiPowerSeries.from_terms(2, 4, {(0, 0): (0.0, 0.0), (4, 0): (0.0, 0.0)}))


def test_axis_divergence_crosses_the_bound():
    f = make_exp_sum(1, 200)
    r = RadiusVector.from_logs([1.0])
    k = axis_divergence(f, r, 1, bound_log=10.0)
    assert k > 0
    below, _ = maximal_term(f, RadiusVector.from_logs([1.0 + (k - 1) * math.log(2.0)]))
    above, _ = maximal_term(f, RadiusVector.from_logs([1.0 + k * math.log(2.0)]))
    assert below <= 10.0 < above


def test_axis_divergence_needs_a_live_axis():
    f = MultiPowerSeries.from_terms(2, 2, {(2, 0): (0.0, 0.0)})
    with pytest.raises(DomainError, match="vanishes"):
        axis_divergence(f, E2_E2, 2, bound_log=5.0)


def test_tail_cut_index_formula():
    expected = 1.6 * math.log(10.0) + 1.1 * (math.log(3.0) + 2.0 * math.log(math.log(3.0)))
    assert log_tail_cut_index(10.0, [3.0], 0.1) == pytest.approx(expected)
    # shifted replaces mu by e * mu
    assert log_tail_cut_index(10.0, [3.0], 0.1, shifted=True) == pytest.approx(
        expected + 1.6 * (math.log(11.0) - math.log(10.0))
    )
    with pytest.raises(DomainError, match="delta2"):
        log_tail_cut_index(10.0, [3.0], -0.1)
    with pytest.raises(DomainError, match="exceed e|mu_f"):
        log_tail_cut_index(0.5, [3.0], 0.1)
    with pytest.raises(DomainError):
        log_tail_cut_index(10.0, [1.0], 0.1)


def test_tail_cut_index_at_unit_iterated_logs():
    # ln mu = 1 and ln r = e make every iterated log equal 1 or 0
    assert log_tail_cut_index(1.0, [math.e], 0.0) == pytest.approx(1.0, abs=1e-12)
    assert tail_cut_index_from_logs(1.0, [math.e], 0.0) == pytest.approx(math.e)


def test_tail_cut_index_of_exponential_sum():
    f = make_exp_sum(2, 80)
    mu_log = 2.0 * (14.0 - gammaln(8.0))
    factor = (4.0 * math.log(2.0) ** 2) ** 1.1
    assert tail_cut_index(f, E2_E2, 0.1) == pytest.approx(mu_log ** 2.1 * factor ** 2, rel=1e-10)
    assert tail_cut_index(f, E2_E2, 0.1) < tail_cut_index(f, RadiusVector.from_logs([3.0, 3.0]), 0.1)


def test_tail_sum_matches_direct_summation():
    f = make_exp_sum(1, 50)
    r = RadiusVector.from_radii([2.5])
    direct = sum(2.5 ** n / math.factorial(n) for n in range(3, 51))
    assert tail_sum(f, r, 3) == pytest.approx(math.log(direct), rel=1e-12)
    assert tail_sum(f, r, 0) == pytest.approx(sum_modulus(f, r), rel=1e-12)
    assert tail_sum(f, r, 51) == -math.inf


def test_log_domain_agrees_with_naive_summation():
    g = randomize_series(make_exp_sum(2, 30), CoefficientSystem("steinhaus", 3))
    assert len(g) <= 500
    radii = (1.7, 2.3)
    terms = [
        math.exp(lm) * radii[0] ** int(n[0]) * radii[1] ** int(n[1])
        for n, lm in zip(g.indices, g.log_modulus)
    ]
    r = RadiusVector.from_radii(radii)
    assert math.exp(sum_modulus(g, r)) == pytest.approx(sum(terms), rel=1e-10)
    assert math.exp(maximal_term(g, r)[0]) == pytest.approx(max(terms), rel=1e-10)
    assert math.exp(s_norm(g, r)) == pytest.approx(math.sqrt(sum(t * t for t in terms)), rel=1e-10)


def test_vectorised_evaluators_match_pointwise():
    f = make_exp_sum(2, 60)
    rows = np.array([[1.2, 1.5], [2.0, 1.1], [2.5, 2.5]])
    assert sum_modulus_many(f, rows) == pytest.approx([sum_modulus(f, RadiusVector.from_logs(r)) for r in rows])
    assert maximal_term_many(f, rows) == pytest.approx([maximal_term(f, RadiusVector.from_logs(r))[0] for r in rows])
    with pytest.raises(ValueError, match="dimension"):
        sum_modulus_many(f, [[1.0, 1.0, 1.0]])


@settings(max_examples=50, deadline=None)
@given(
    log_modulus=st.lists(st.floats(-30.0, 30.0), min_size=1, max_size=12),
    log_r=st.floats(-3.0, 3.0),
)
def test_maximal_term_is_bracketed_by_the_majorant(log_modulus, log_r):
    n = len(log_modulus)
    f = MultiPowerSeries(1, n - 1, np.arange(n).reshape(-1, 1), log_modulus, np.zeros(n))
    r = RadiusVector.from_logs([log_r])
    mu_log, _ = maximal_term(f, r)
    total = sum_modulus(f, r)
    assert mu_log <= total + 1e-12
    assert total <= mu_log + math.log(n) + 1e-12


@settings(max_examples=50, deadline=None)
@given(
    log_modulus=st.lists(st.floats(-20.0, 20.0), min_size=2, max_size=10),
    phases=st.lists(st.floats(-10.0, 10.0), min_size=10, max_size=10),
    log_r=st.floats(-2.0, 2.0),
    d=st.integers(0, 9),
)
def test_phases_do_not_change_modulus_quantities(log_modulus, phases, log_r, d):
    n = len(log_modulus)
    indices = np.arange(n).reshape(-1, 1)
    plain = MultiPowerSeries(1, n - 1, indices, log_modulus, np.zeros(n))
    turned = MultiPowerSeries(1, n - 1, indices, log_modulus, phases[:n])
    r = RadiusVector.from_logs([log_r])
    assert maximal_term(turned, r) == maximal_term(plain, r)
    assert sum_modulus(turned, r) == sum_modulus(plain, r)
    assert partial_log_derivative(turned, r, 1) == partial_log_derivative(plain, r, 1)
    assert tail_sum(turned, r, d) == tail_sum(plain, r, d)


@settings(max_examples=50, deadline=None)
@given(
    log_modulus=st.lists(st.integers(-30, 30), min_size=1, max_size=10, unique=True),
    log_r=st.integers(-2, 2),
    log_c=st.floats(-20.0, 20.0),
)
def test_scaling_shifts_both_sums(log_modulus, log_r, log_c):
    n = len(log_modulus)
    indices = np.arange(n).reshape(-1, 1)
    f = MultiPowerSeries(1, n - 1, indices, np.asarray(log_modulus, dtype=float), np.zeros(n))
    scaled = MultiPowerSeries(1, n - 1, indices, np.asarray(log_modulus, dtype=float) + log_c, np.zeros(n))
    r = RadiusVector.from_logs([float(log_r)])
    mu_log, argmax = maximal_term(f, r)
    scaled_mu, scaled_argmax = maximal_term(scaled, r)
    assert scaled_argmax == argmax
    assert scaled_mu == pytest.approx(mu_log + log_c, abs=1e-9)
    assert sum_modulus(scaled, r) == pytest.approx(sum_modulus(f, r) + log_c, abs=1e-9)

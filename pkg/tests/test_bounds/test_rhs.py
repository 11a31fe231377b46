import math

import pytest

from wiman_lab.bounds.params import BoundParams
from wiman_lab.bounds.rhs import (
    HALF,
    P_HALF,
    P_QUARTER,
    QUARTER,
    h_value,
    lemma23_rhs,
    lemma23_rhs_from_logs,
    log_bracket,
    rhs_classical,
    rhs_multivariate,
    rhs_multivariate_from_logs,
    rhs_power,
    rhs_reduced_from_logs,
)
from wiman_lab.core.domain.series import RadiusVector
from wiman_lab.core.errors import DomainError
from wiman_lab.series.families import make_exp_sum
from wiman_lab.series.operations import maximal_term


def test_classical_right_hand_side():
    assert rhs_classical(100.0, 0.05) == pytest.approx(102.533, abs=1e-3)
    assert rhs_classical(100.0, 0.1) == pytest.approx(102.763, abs=1e-3)
    assert rhs_power(100.0, -0.15) == pytest.approx(100.0 - 0.15 * math.log(100.0))
    with pytest.raises(DomainError, match="eps"):
        rhs_classical(100.0, 0.0)
    with pytest.raises(DomainError, match="exceed e"):
        rhs_classical(1.0, 0.05)


def test_multivariate_bracket():
    bracket = math.log(2.0) + math.log(3.0) + 2.0 * math.log(math.log(100.0))
    assert log_bracket(100.0, [2.0, 3.0]) == pytest.approx(bracket)
    assert rhs_multivariate_from_logs(100.0, [2.0, 3.0], 0.05, HALF) == pytest.approx(100.0 + 0.55 * bracket)
    assert rhs_multivariate_from_logs(100.0, [2.0, 3.0], 0.05, QUARTER) == pytest.approx(100.0 + 0.30 * bracket)
    # for p = 1 the radial factor drops out
    assert log_bracket(100.0, [5.0]) == pytest.approx(math.log(math.log(100.0)))


def test_multivariate_bracket_domain():
    with pytest.raises(DomainError, match="exceed e"):
        log_bracket(100.0, [1.0, 3.0])
    with pytest.raises(DomainError):
        log_bracket(0.9, [2.0, 3.0])
    with pytest.raises(ValueError, match="exponent_kind"):
        rhs_multivariate_from_logs(100.0, [2.0, 3.0], 0.05, "third")
    with pytest.raises(DomainError, match="delta"):
        rhs_multivariate_from_logs(100.0, [2.0, 3.0], -0.05, HALF)


def test_series_level_wrappers_agree():
    f = make_exp_sum(2, 120)
    r = RadiusVector.from_logs([2.0, 2.5])
    mu_log, _ = maximal_term(f, r)
    assert rhs_multivariate(f, r, 0.05, HALF) == pytest.approx(rhs_multivariate_from_logs(mu_log, [2.0, 2.5], 0.05, HALF))


def test_reduced_right_hand_sides():
    assert rhs_reduced_from_logs(100.0, 2, 0.05, P_HALF) == pytest.approx(100.0 + 1.05 * math.log(100.0))
    assert rhs_reduced_from_logs(100.0, 2, 0.05, P_QUARTER) == pytest.approx(100.0 + 0.55 * math.log(100.0))
    with pytest.raises(ValueError, match="exponent_kind"):
        rhs_reduced_from_logs(100.0, 2, 0.05, HALF)


def test_h_and_log_derivative_bound():
    assert h_value([math.e, math.e], 0.05) == pytest.approx(math.e ** 2)
    with pytest.raises(DomainError, match="argument > 1"):
        h_value([1.0, 3.0], 0.05)
    expected = 10.0 * math.log(10.0) ** 1.05 * 3.0 * math.log(3.0) ** 1.05
    assert lemma23_rhs_from_logs(10.0, [2.0, 3.0], 1, 0.05) == pytest.approx(expected)
    with pytest.raises(ValueError, match="axis s"):
        lemma23_rhs_from_logs(10.0, [2.0, 3.0], 3, 0.05)
    with pytest.raises(DomainError):
        lemma23_rhs_from_logs(10.0, [1.0, 3.0], 1, 0.05)


def test_log_derivative_bound_holds_for_exponential_sum():
    f = make_exp_sum(2, 80)
    r = RadiusVector.from_logs([2.0, 2.0])
    # d_s ln M = r_s = e^2 for exp(z_1 + z_2)
    assert math.e ** 2 <= lemma23_rhs(f, r, 1, 0.05)
    assert math.e ** 2 <= lemma23_rhs(f, r, 2, 0.05)


def test_bound_params():
    params = BoundParams(delta=0.1)
    assert params.as_dict() == {"delta": 0.1, "delta1": 0.05, "delta2": 0.1, "eps": 0.05}
    with pytest.raises(ValueError, match="delta1"):
        BoundParams(delta1=0.0)

import numpy as np
import pytest

from wiman_lab.core.domain.series import RadiusVector
from wiman_lab.core.errors import InadequateTruncationError
from wiman_lab.series.families import make_exp_sum
from wiman_lab.series.operations import top_layer_gap
from wiman_lab.series.truncation import (
    check_truncation,
    check_truncation_from_logs,
    required_truncation_from_logs,
    top_layer_gaps,
)


def test_negligible_top_layer_is_accepted():
    # the formula asks for far more than 640, but the degree-640 layer is negligible up to e^6
    f = make_exp_sum(1, 640)
    rows = np.array([[2.0], [6.0]])
    assert required_truncation_from_logs(f, rows, 0.1) > 640
    check_truncation_from_logs(f, rows, 0.1)


def test_inadequate_truncation_reports_the_requirement():
    f = make_exp_sum(1, 60)
    with pytest.raises(InadequateTruncationError, match="inadequate") as err:
        check_truncation(f, [RadiusVector.from_logs([2.0]), RadiusVector.from_logs([6.0])], 0.1)
    assert err.value.required_truncation > 60


def test_layer_gaps_match_pointwise():
    f = make_exp_sum(2, 100)
    rows = np.array([[1.5, 2.0], [3.0, 3.0]])
    expected = [top_layer_gap(f, RadiusVector.from_logs(r)) for r in rows]
    assert top_layer_gaps(f, rows) == pytest.approx(expected)

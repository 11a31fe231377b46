import pytest

from wiman_lab.randomization.systems import CoefficientSystem, randomize_series
from wiman_lab.series.families import make_exp_sum
from wiman_lab.series.io import dumps, load_series, loads, save_series


def test_text_format_reproduces_the_table_exactly(tmp_path):
    f = randomize_series(make_exp_sum(2, 8), CoefficientSystem("steinhaus", 3))
    path = save_series(f, tmp_path / "f.txt")
    g = load_series(path)
    assert g.equals(f)
    assert dumps(g) == dumps(f)


def test_header_and_comments():
    f = loads("# e^z, three terms\n1 2\n0 0.0 0.0\n1 0.0 0.0\n2 -0.6931471805599453 0.0\n")
    assert (f.dimension, f.truncation, len(f)) == (1, 2, 3)
    empty = loads("2 5\n")
    assert empty.is_empty and empty.dimension == 2


def test_malformed_text():
    with pytest.raises(ValueError, match="header"):
        loads("")
    with pytest.raises(ValueError, match="malformed header"):
        loads("a b\n")
    with pytest.raises(ValueError, match="fields per term"):
        loads("2 3\n1 0.0 0.0\n")

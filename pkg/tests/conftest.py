import os
import sys

import pytest

# Ensure the project root directory is on sys.path for imports
ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))
if ROOT_DIR not in sys.path:
    sys.path.insert(0, ROOT_DIR)

from wiman_lab.series.families import make_exp_sum  # noqa: E402


@pytest.fixture(scope="session")
def exp_sum_2d():
    """exp(z_1 + z_2) truncated where radii up to e^4 are still adequate."""
    return make_exp_sum(2, 220)


@pytest.fixture(scope="session")
def exp_sum_1d():
    return make_exp_sum(1, 200)

from pathlib import Path

import pytest

from adpbounds.families import additive, coverage, exponential
from adpbounds.instances import builtin_tiny

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def tiny():
    return builtin_tiny()


@pytest.fixture
def tiny_tables():
    """TINY as plain lists for the independent oracles."""
    r = [[[1.0, 2.0], [1.0, 1.0]], [[5.0, 1.0], [1.0, 1.0]]]
    h = [[[0, 1], [0, 1]]]
    return r, h, 0


@pytest.fixture
def additive_f():
    return additive(2, max_len=6)


@pytest.fixture
def cover_f():
    # S_0 = {1}, S_1 = {1, 2}, unit weights
    return coverage([[1], [1, 2]], max_len=6)


@pytest.fixture
def exp_f():
    return exponential(1, max_len=6)

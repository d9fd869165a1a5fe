import pytest
from hypothesis import given
from hypothesis import strategies as st

from adpbounds.errors import EnumerationBudgetExceeded, StringTooLong
from adpbounds.strings import (
    StringFunction,
    concat,
    enumerate_strings,
    enumerate_upto,
    is_prefix,
    prefixes,
)

strings = st.lists(st.integers(0, 3), max_size=5).map(tuple)


def test_concat_examples():
    assert concat((), (1, 2)) == (1, 2)
    assert concat((1,), (2, 1)) == (1, 2, 1)
    assert concat((0, 1), ()) == (0, 1)


def test_is_prefix_examples():
    assert is_prefix((1,), (1, 2))
    assert is_prefix((), (0,))
    assert not is_prefix((2,), (1, 2))
    assert not is_prefix((1, 2), (1,))


def test_enumerate_examples():
    assert list(enumerate_strings(2, 0)) == [()]
    assert list(enumerate_strings(2, 2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    nine = list(enumerate_strings(3, 2))
    assert len(nine) == 9 and nine[0] == (0, 0) and nine[-1] == (2, 2)


def test_enumerate_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_strings(10, 8)
    with pytest.raises(EnumerationBudgetExceeded):
        list(enumerate_upto(2, 4, budget=30))
    assert len(list(enumerate_upto(2, 4, budget=31))) == 31


def test_enumerate_rejects_bad_args():
    with pytest.raises(ValueError):
        enumerate_strings(0, 2)
    with pytest.raises(ValueError):
        enumerate_strings(2, -1)


@given(strings, strings, strings)
def test_concat_associative(a, b, c):
    assert concat(concat(a, b), c) == concat(a, concat(b, c))


@given(strings, strings)
def test_mutual_prefix_iff_equal(m, n):
    assert (is_prefix(m, n) and is_prefix(n, m)) == (m == n)


@given(strings, strings)
def test_prefix_definition(m, tail):
    assert is_prefix(m, concat(m, tail))


@given(st.integers(1, 4), st.integers(0, 4))
def test_enumeration_counts(c, length):
    seen = list(enumerate_strings(c, length))
    assert len(seen) == c**length == len(set(seen))
    assert seen == sorted(seen)


def test_prefixes():
    assert prefixes((1, 2)) == [(), (1,), (1, 2)]


def test_string_function_marginalizes():
    f = StringFunction(lambda s: 10.0 + len(s), 2, 3)
    assert f(()) == 0.0
    assert f((0, 1)) == 2.0
    assert f.offset == 10.0


def test_string_function_domain():
    f = StringFunction(lambda s: float(len(s)), 2, 2)
    with pytest.raises(StringTooLong):
        f((0, 0, 0))
    with pytest.raises(ValueError):
        f((2,))


def test_string_function_deterministic():
    calls = []
    f = StringFunction(lambda s: calls.append(s) or 0.1 * len(s), 3, 4)
    assert f((1, 2)) == f((1, 2))
    assert calls.count((1, 2)) == 1

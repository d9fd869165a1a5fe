import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adpbounds import curvature as cv
from adpbounds.errors import DomainTooSmall, InfiniteCurvature, ZeroDenominator
from adpbounds.families import additive, random_coverage, random_discounted
from adpbounds.strings import StringFunction


def test_backward_examples(additive_f, cover_f):
    assert cv.total_backward_curvature(additive_f, 2) == 0.0
    assert cv.total_backward_curvature(cover_f, 2) == 1.0
    assert cv.total_backward_curvature(additive(3, 4), 1) == 0.0


def test_coverage_backward_oracle(cover_f):
    # by hand: a = 0 in front of M = (1,) adds nothing, the worst possible
    worst = max(
        1 - (cover_f((a,) + m) - cover_f(m)) / cover_f((a,))
        for a in (0, 1)
        for m in [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    )
    assert worst == 1.0 == cv.total_backward_curvature(cover_f, 2)


def test_backward_wrt_examples(additive_f, cover_f):
    assert cv.total_backward_wrt(cover_f, (), 1) == 0.0
    assert cv.total_backward_wrt(additive_f, (0, 1), 2) == 0.0
    assert cv.total_backward_wrt(cover_f, (1,), 1) == 1.0


def test_forward_examples(additive_f, cover_f):
    assert cv.total_forward_curvature(additive_f, 2) == 0.0
    assert cv.total_forward_curvature(cover_f, 2) == 1.0
    assert cv.total_forward_curvature(cover_f, 0) == 0.0


def test_forward_wrt_examples(additive_f, cover_f):
    assert cv.total_forward_wrt(cover_f, (), 2) == 0.0
    assert cv.total_forward_wrt(additive_f, (1,), 2) == 0.0
    assert cv.total_forward_wrt(cover_f, (1,), 1) == 1.0


def test_elemental_examples(additive_f, cover_f, exp_f):
    assert cv.elemental_forward_curvature(additive_f, 1) == 1.0
    assert cv.elemental_forward_curvature(cover_f, 1) == 1.0
    assert cv.elemental_forward_curvature(exp_f, 1) == 2.0


def test_domain_too_small(cover_f):
    short = StringFunction(lambda s: float(len(s)), 2, 2)
    with pytest.raises(DomainTooSmall):
        cv.total_backward_curvature(short, 2)
    with pytest.raises(DomainTooSmall):
        cv.elemental_forward_curvature(short, 1)
    with pytest.raises(DomainTooSmall):
        cv.total_forward_wrt(short, (0, 0), 1)


def test_zero_denominator():
    f = StringFunction(lambda s: float(sum(s)), 2, 4)  # f((0,)) = 0
    with pytest.raises(ZeroDenominator):
        cv.total_forward_curvature(f, 1)
    with pytest.raises(ZeroDenominator):
        cv.total_backward_wrt(f, (1,), 1)


def test_infinite_elemental():
    # appending 0 gains nothing at first but something after a 1
    def raw(s):
        return float(len(s)) if 1 in s else 0.0

    f = StringFunction(raw, 2, 4)
    with pytest.raises(InfiniteCurvature):
        cv.elemental_forward_curvature(f, 1)


def test_submodularity_examples(additive_f, cover_f, exp_f):
    rep = cv.check_string_submodular(additive_f, 2)
    assert rep.forward_monotone and rep.diminishing_returns
    rep = cv.check_string_submodular(cover_f, 3)
    assert rep.string_submodular and rep.counterexample is None and rep.exhaustive
    rep = cv.check_string_submodular(exp_f, 2)
    assert rep.forward_monotone and not rep.diminishing_returns
    assert rep.counterexample == ((), (0,)) and rep.counterexample_action == 0


def test_monotone_failure_reported():
    f = StringFunction(lambda s: 1.0 if len(s) == 1 else 0.0, 1, 3)
    rep = cv.check_string_submodular(f, 1)
    assert not rep.forward_monotone
    assert rep.counterexample == ((0,), (0, 0))


def test_global_curvatures_record(cover_f):
    g = cv.global_curvatures(cover_f, 2, m=(1,), k_max=1)
    assert (g.sigma, g.epsilon, g.eta) == (1.0, 1.0, 1.0)
    assert g.sigma_wrt == 1.0 and g.epsilon_wrt == 1.0
    assert g.exhaustive  # coverage is set valued and cap >= 2 actions
    g = cv.global_curvatures(additive(2, 10), 2)
    assert not g.exhaustive


def test_backward_monotone(cover_f, additive_f):
    assert cv.check_backward_monotone(cover_f, 3)
    assert cv.check_backward_monotone(additive_f, 3)
    # only the first action counts: prepending a 0 to (1,) loses value
    f = StringFunction(lambda s: float(s[0]) if s else 0.0, 2, 3)
    assert not cv.check_backward_monotone(f, 1)


seeds = st.integers(0, 10_000)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3))
def test_submodular_eta_at_most_one(seed, n):
    f = random_coverage(seed, n, 5, max_len=n + 3) if seed % 2 else random_discounted(seed, n, max_len=n + 3)
    rep = cv.check_string_submodular(f, n)
    assert rep.string_submodular
    assert cv.elemental_forward_curvature(f, n) <= 1 + 1e-9


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(0, 2))
def test_cap_monotone(seed, cap):
    f = random_discounted(seed, 2, max_len=6)
    lo = cv.global_curvatures(f, cap)
    hi = cv.global_curvatures(f, cap + 1)
    assert hi.sigma >= lo.sigma and hi.epsilon >= lo.epsilon and hi.eta >= lo.eta


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 3))
def test_wrt_empty_is_zero(seed, k):
    f = random_coverage(seed, 3, 5, max_len=6)
    assert cv.total_forward_wrt(f, (), k) == 0.0
    assert cv.total_backward_wrt(f, (), k) == 0.0

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from adpbounds.errors import DomainTooSmall, NonpositiveCurvature
from adpbounds.families import additive, coverage, exponential, random_coverage
from adpbounds.greedy import (
    FLOOR_NAMES,
    UNIVERSAL,
    all_optima,
    bound_thm1_i,
    bound_thm1_i_limit,
    bound_thm1_ii,
    bound_thm2,
    brute_force_optimum,
    greedy_string,
    k_eta,
    verify_greedy_bounds,
)


def test_greedy_examples(additive_f, cover_f):
    g = greedy_string(additive_f, 2)
    assert g.actions == (0, 0) and g.value == 2.0 and g.ties == [2, 2]
    g = greedy_string(cover_f, 2)
    assert g.actions == (1, 0) and g.values == [2.0, 2.0]
    assert g.ties == [1, 2]


def test_greedy_domain(additive_f):
    with pytest.raises(DomainTooSmall):
        greedy_string(additive_f, 7)


def test_optimum_lex_first(cover_f):
    assert brute_force_optimum(cover_f, 2) == ((0, 1), 2.0)
    assert all_optima(cover_f, 2) == [(0, 1), (1, 0), (1, 1)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4), st.integers(1, 4))
def test_greedy_matches_oracle(seed, n, K):
    f = random_coverage(seed, n, 5, max_len=K)
    assert greedy_string(f, K).actions == oracles.greedy(f, n, K)
    s, v = brute_force_optimum(f, K)
    assert (s, v) == oracles.lex_first_max(f, n, K)


def test_bound_formulas():
    assert bound_thm1_i(1.0, 1) == 1.0
    assert bound_thm1_i(1.0, 2) == 0.75
    assert bound_thm1_i_limit(1.0) == pytest.approx(UNIVERSAL)
    assert bound_thm1_ii([0.25, 0.5]) == 0.5
    assert k_eta(1.0, 4) == 4.0
    assert k_eta(0.0, 4) == 1.0
    assert k_eta(0.5, 3) == 1.75
    assert bound_thm2(1.0, 2) == 0.75
    with pytest.raises(NonpositiveCurvature):
        bound_thm1_i(0.0, 3)
    with pytest.raises(ValueError):
        k_eta(-0.1, 3)


@given(st.floats(0.01, 1.0), st.integers(1, 30))
def test_backward_limit_below_finite(s, K):
    assert bound_thm1_i_limit(s) < bound_thm1_i(s, K) + 1e-12
    assert bound_thm1_i(1.0, K) > UNIVERSAL


@given(st.floats(0.0, 3.0), st.integers(1, 20))
def test_k_eta_is_geometric_sum(eta, K):
    assert k_eta(eta, K) == pytest.approx(math.fsum(eta**i for i in range(K)), rel=1e-6)


def test_certificate_additive():
    cert = verify_greedy_bounds(additive(2, 8), 3, cap=2)
    assert cert.ratio == 1.0
    # submodular up to the cap, but a finite search cannot certify a
    # non set-valued function, so every curvature floor is withheld
    assert cert.submodularity.string_submodular
    assert not cert.submodularity.exhaustive
    assert not any(c.applicable for c in cert.checks)
    assert "not certified" in cert.check("forward_floor").note


def test_certificate_coverage(cover_f):
    cert = verify_greedy_bounds(coverage([[1], [1, 2]], max_len=6), 2, cap=2)
    assert cert.ratio == 1.0 and cert.passed
    assert cert.check("universal").applicable and cert.check("universal").holds


def test_certificate_not_submodular():
    cert = verify_greedy_bounds(exponential(1, 6), 2, cap=2)
    assert not cert.submodularity.string_submodular
    for name in FLOOR_NAMES[:5]:
        assert not cert.check(name).applicable
    assert cert.passed  # no applicable check fails


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 3))
def test_applicable_floors_hold(seed, n, K):
    f = random_coverage(seed, n, 5, max_len=max(2 * K, n + 2))
    cert = verify_greedy_bounds(f, K, cap=n)
    assert cert.passed

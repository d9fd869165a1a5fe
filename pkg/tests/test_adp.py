import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from adpbounds.adp import (
    induced_f,
    myopic_vtg,
    optimal_vtg,
    random_vtg_table,
    reachable_states,
    rollout_vtg,
    run_adp,
    table_vtg,
)
from adpbounds.control import constant_policy, myopic_policy
from adpbounds.corpus import corpus_entry
from adpbounds.errors import PolicyUndefined
from adpbounds.greedy import greedy_string
from adpbounds.instances import gen_random_instance


def test_tiny_myopic(tiny):
    tr = run_adp(tiny, myopic_vtg())
    assert tr.actions == (1, 0) and tr.total == 3.0
    f = induced_f(tiny, myopic_vtg())
    assert f((1,)) == 2.0 and f((0, 0)) == 6.0


def test_tiny_rollout_const0(tiny, tiny_tables):
    r, h, x1 = tiny_tables
    w = rollout_vtg(tiny, constant_policy(tiny, 0))
    tr = run_adp(tiny, w)
    assert tr.actions == (0, 0) and tr.total == 6.0
    ow = oracles.rollout_w(r, h, lambda k, x: 0)
    assert oracles.greedy(lambda s: oracles.induced(r, h, x1, ow, s), 2, 2) == (0, 0)


def test_tiny_optimal(tiny):
    tr = run_adp(tiny, optimal_vtg(tiny))
    assert tr.actions == (0, 0) and tr.total == 6.0


def test_reachable(tiny):
    assert reachable_states(tiny) == [{0}, {0, 1}]


def test_table_vtg_requires_table(tiny):
    with pytest.raises(ValueError):
        table_vtg(tiny)
    w = table_vtg(tiny, [[[0.0, 4.0], [0.0, 0.0]]])
    assert run_adp(tiny, w).actions == (1, 0)


def test_undefined_vtg_entry(tiny):
    w = table_vtg(tiny, [[[np.nan, 0.0], [0.0, 0.0]]])
    with pytest.raises(PolicyUndefined):
        run_adp(tiny, w)


def test_random_table_seeded():
    inst = gen_random_instance(3, 3, 2, 4)
    a = random_vtg_table(inst, 7)
    assert np.array_equal(a, random_vtg_table(inst, 7))
    assert (a >= 0).all() and a.shape == (3, 3, 2)


def _schemes(entry):
    return entry.schemes() + [rollout_vtg(entry.instance, myopic_policy(entry.instance))]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_adp_equals_greedy_on_induced(seed):
    entry = corpus_entry(seed)
    inst = entry.instance
    for w in _schemes(entry):
        assert run_adp(inst, w).actions == greedy_string(induced_f(inst, w), inst.horizon).actions


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_induced_matches_oracle(seed):
    entry = corpus_entry(seed)
    inst = entry.instance
    r, h, x1 = inst.rewards.tolist(), inst.transitions.tolist(), inst.initial_state
    base = entry.base.tolist()
    pairs = [
        (myopic_vtg(), lambda k, x, a: 0.0),
        (optimal_vtg(inst), oracles.optimal_w(r, h)),
        (rollout_vtg(inst, entry.base), oracles.rollout_w(r, h, lambda k, x: base[k][x])),
    ]
    A, K = inst.action_count, inst.horizon
    for w, ow in pairs:
        f = induced_f(inst, w)

        def g(s):
            return oracles.induced(r, h, x1, ow, s)

        assert run_adp(inst, w).actions == oracles.greedy(g, A, K)
        for s in [(), (0,), tuple([A - 1] * K)]:
            assert f(s) == pytest.approx(g(s), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_full_length_induced_is_objective(seed):
    entry = corpus_entry(seed)
    inst = entry.instance
    for w in _schemes(entry):
        tr = run_adp(inst, w)
        assert induced_f(inst, w)(tr.actions) == tr.total

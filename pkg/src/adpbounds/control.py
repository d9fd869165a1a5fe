"""Finite-horizon deterministic optimal control: instances, trajectories, exact DP.

Stages are 1-based in the public API (``k = 1..K``) to match the usual
notation; arrays are 0-based, so stage ``k`` lives at row ``k - 1``.
Totals are always accumulated left to right, stage 1 first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .errors import (
    PolicyUndefined,
    StringTooLong,
    ValidationError,
    WrongTailLength,
)
from .strings import DEFAULT_BUDGET, ActionString, check_budget, string_count


@dataclass(eq=False)
class ControlInstance:
    """Rewards ``r[k-1, x, a] > 0`` for k = 1..K and transitions
    ``h[k-1, x, a]`` for k = 1..K-1 (the last stage has no successor)."""

    rewards: np.ndarray
    transitions: np.ndarray
    initial_state: int = 0
    name: str = "instance"
    action_names: Optional[list[str]] = None
    vtg_table: Optional[np.ndarray] = None
    _r: list = field(init=False, repr=False)
    _h: list = field(init=False, repr=False)

    def __post_init__(self):
        self.rewards = np.asarray(self.rewards, dtype=float)
        if self.rewards.ndim != 3:
            raise ValidationError(f"rewards must be 3-D [stage][state][action], got {self.rewards.shape}")
        K, S, A = self.rewards.shape
        if K < 1 or S < 1 or A < 1:
            raise ValidationError(f"rewards shape {self.rewards.shape} has an empty axis")
        h = np.asarray(self.transitions, dtype=np.int64)
        if h.size == 0:
            h = h.reshape(0, S, A)
        if h.shape != (K - 1, S, A):
            raise ValidationError(f"transitions shape {h.shape} != {(K - 1, S, A)}")
        self.transitions = h
        bad = np.argwhere(~(self.rewards > 0))
        if len(bad):
            k, x, a = bad[0]
            raise ValidationError(
                f"rewards[{k}][{x}][{a}] = {self.rewards[k, x, a]!r} must be > 0"
            )
        bad = np.argwhere((h < 0) | (h >= S))
        if len(bad):
            k, x, a = bad[0]
            raise ValidationError(f"transitions[{k}][{x}][{a}] = {h[k, x, a]} not in 0..{S - 1}")
        if not 0 <= self.initial_state < S:
            raise ValidationError(f"initial_state {self.initial_state} not in 0..{S - 1}")
        if self.action_names is not None and len(self.action_names) != A:
            raise ValidationError(f"action_names has {len(self.action_names)} entries, expected {A}")
        if self.vtg_table is not None:
            vt = np.asarray(self.vtg_table, dtype=float)
            if vt.size == 0:
                vt = vt.reshape(0, S, A)
            if vt.shape != (K - 1, S, A):
                raise ValidationError(f"vtg_table shape {vt.shape} != {(K - 1, S, A)}")
            if not np.all(np.isfinite(vt)):
                raise ValidationError("vtg_table entries must be finite")
            self.vtg_table = vt
        self.initial_state = int(self.initial_state)
        self._r = self.rewards.tolist()
        self._h = self.transitions.tolist()

    @property
    def horizon(self) -> int:
        return self.rewards.shape[0]

    @property
    def state_count(self) -> int:
        return self.rewards.shape[1]

    @property
    def action_count(self) -> int:
        return self.rewards.shape[2]

    def reward(self, k: int, x: int, a: int) -> float:
        return self._r[k - 1][x][a]

    def next_state(self, k: int, x: int, a: int) -> int:
        return self._h[k - 1][x][a]

    def __eq__(self, other):
        if not isinstance(other, ControlInstance):
            return NotImplemented
        same_vtg = (self.vtg_table is None and other.vtg_table is None) or (
            self.vtg_table is not None
            and other.vtg_table is not None
            and np.array_equal(self.vtg_table, other.vtg_table)
        )
        return (
            np.array_equal(self.rewards, other.rewards)
            and np.array_equal(self.transitions, other.transitions)
            and self.initial_state == other.initial_state
            and self.action_names == other.action_names
            and same_vtg
        )


@dataclass(frozen=True)
class Trajectory:
    total: float
    states: list[int]
    stage_rewards: list[float]


def evaluate_trajectory(inst: ControlInstance, actions: Sequence[int]) -> Trajectory:
    """Run ``actions`` from x_1; ``states`` holds x_1..x_n for an n-action string."""
    if len(actions) > inst.horizon:
        raise StringTooLong(f"|actions|={len(actions)} exceeds horizon {inst.horizon}")
    r, h = inst._r, inst._h
    x = inst.initial_state
    total = 0.0
    states, rewards = [], []
    for i, a in enumerate(actions):
        states.append(x)
        ri = r[i][x][a]
        rewards.append(ri)
        total += ri
        if i < len(actions) - 1:
            x = h[i][x][a]
    return Trajectory(total, states, rewards)


def value_to_go(inst: ControlInstance, k: int, x: int, tail: Sequence[int]) -> float:
    """Reward collected from stage k at state x by the actions in ``tail``."""
    K = inst.horizon
    if len(tail) != K - k + 1:
        raise WrongTailLength(f"stage {k} needs a tail of {K - k + 1} actions, got {len(tail)}")
    total = 0.0
    for i, a in enumerate(tail):
        stage = k + i
        total += inst.reward(stage, x, a)
        if stage < K:
            x = inst.next_state(stage, x, a)
    return total


@dataclass(frozen=True)
class ValueTable:
    """``values[k-1, x]`` is V_k(x) for k = 1..K+1 (last row zero);
    ``policy[k-1, x]`` the smallest maximizing action."""

    values: np.ndarray
    policy: np.ndarray

    def value(self, k: int, x: int) -> float:
        return float(self.values[k - 1, x])

    def action(self, k: int, x: int) -> int:
        return int(self.policy[k - 1, x])


def solve_exact_dp(inst: ControlInstance) -> ValueTable:
    """Backward Bellman recursion from stage K down to stage 1."""
    K, S, A = inst.horizon, inst.state_count, inst.action_count
    r, h = inst._r, inst._h
    V = [[0.0] * S for _ in range(K + 1)]
    pol = [[0] * S for _ in range(K)]
    for k in range(K - 1, -1, -1):
        nxt = V[k + 1]
        for x in range(S):
            if k == K - 1:
                scores = [r[k][x][a] + 0.0 for a in range(A)]
            else:
                scores = [r[k][x][a] + nxt[h[k][x][a]] for a in range(A)]
            best = max(scores)
            V[k][x] = best
            pol[k][x] = scores.index(best)
    return ValueTable(np.array(V), np.array(pol, dtype=np.int64))


def extract_optimal(inst: ControlInstance, table: ValueTable) -> ActionString:
    """Follow the DP policy forward from x_1."""
    x = inst.initial_state
    actions = []
    for k in range(1, inst.horizon + 1):
        a = table.action(k, x)
        actions.append(a)
        if k < inst.horizon:
            x = inst.next_state(k, x, a)
    return tuple(actions)


def brute_force_optimal(
    inst: ControlInstance, budget: int | None = DEFAULT_BUDGET
) -> tuple[ActionString, float]:
    """Enumerate every length-K string; return the lexicographically first best one."""
    K, A = inst.horizon, inst.action_count
    check_budget(string_count(A, K), budget)
    best_s, best_v = None, -float("inf")
    for s in itertools.product(range(A), repeat=K):
        v = evaluate_trajectory(inst, s).total
        if v > best_v:
            best_s, best_v = s, v
    return best_s, best_v


PolicyLike = Union[
    Callable[[int, int], int], Mapping[tuple[int, int], int], Sequence[Sequence[int]], np.ndarray
]


def policy_table(inst: ControlInstance, policy: PolicyLike) -> np.ndarray:
    """Materialize a policy as a ``[K, S]`` integer array; -1 marks undefined entries.

    Accepts a callable ``policy(k, x)``, a mapping ``{(k, x): a}`` or a
    ``[stage][state]`` array, all with 1-based stages.
    """
    K, S, A = inst.horizon, inst.state_count, inst.action_count
    table = np.full((K, S), -1, dtype=np.int64)
    if callable(policy):
        for k in range(1, K + 1):
            for x in range(S):
                try:
                    a = policy(k, x)
                except (KeyError, IndexError, LookupError):
                    continue
                if a is not None:
                    table[k - 1, x] = a
    elif isinstance(policy, Mapping):
        for (k, x), a in policy.items():
            if 1 <= k <= K and 0 <= x < S:
                table[k - 1, x] = a
    else:
        arr = np.asarray(policy, dtype=np.int64)
        if arr.shape != (K, S):
            raise ValidationError(f"policy shape {arr.shape} != {(K, S)}")
        table[:] = arr
    bad = (table >= A) | (table < -1)
    if bad.any():
        k, x = np.argwhere(bad)[0]
        raise ValidationError(f"policy[{k}][{x}] = {table[k, x]} not in 0..{A - 1}")
    return table


def constant_policy(inst: ControlInstance, action: int) -> np.ndarray:
    if not 0 <= action < inst.action_count:
        raise ValidationError(f"action {action} not in 0..{inst.action_count - 1}")
    return np.full((inst.horizon, inst.state_count), action, dtype=np.int64)


def myopic_policy(inst: ControlInstance) -> np.ndarray:
    """Per-stage reward argmax, smallest index on ties."""
    return np.array(
        [[row.index(max(row)) for row in stage] for stage in inst._r], dtype=np.int64
    )


def simulate_policy(inst: ControlInstance, policy: PolicyLike) -> tuple[ActionString, float]:
    table = policy_table(inst, policy)
    x = inst.initial_state
    actions = []
    for k in range(1, inst.horizon + 1):
        a = int(table[k - 1, x])
        if a < 0:
            raise PolicyUndefined(f"policy undefined at stage {k}, state {x}")
        actions.append(a)
        if k < inst.horizon:
            x = inst.next_state(k, x, a)
    actions = tuple(actions)
    return actions, evaluate_trajectory(inst, actions).total

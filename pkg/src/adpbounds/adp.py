"""Approximate dynamic programming with value-to-go (VTG) approximators.

An approximator is stored as a dense table ``W[k-1, x, a]`` holding the
estimate W_{k+1}(x, a) used when action ``a`` is taken at stage ``k`` from
state ``x``; the stage-K slice is identically zero. Tables cover every kind
(myopic, rollout, optimal, user table), so the ADP loop and the induced
string function share one code path.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .control import (
    ControlInstance,
    PolicyLike,
    ValueTable,
    policy_table,
    solve_exact_dp,
)
from .errors import PolicyUndefined, ValidationError
from .greedy import GreedyTrace
from .strings import ActionString, StringFunction


@dataclass(frozen=True, eq=False)
class VtgApproximator:
    kind: str
    table: Optional[np.ndarray] = None
    label: str = ""
    base: Optional[np.ndarray] = None

    def w(self, k: int, x: int, a: int) -> float:
        """W_{k+1}(x, a); zero at the last stage and for the myopic kind."""
        if self.table is None or k >= self.table.shape[0]:
            return 0.0
        v = float(self.table[k - 1, x, a])
        if math.isnan(v):
            raise PolicyUndefined(f"base policy undefined along rollout from stage {k}, state {x}, action {a}")
        return v

    def dense(self, inst: ControlInstance) -> np.ndarray:
        K, S, A = inst.horizon, inst.state_count, inst.action_count
        if self.table is None:
            return np.zeros((K, S, A))
        if self.table.shape != (K, S, A):
            raise ValidationError(f"VTG table shape {self.table.shape} != {(K, S, A)}")
        return self.table

    @property
    def name(self) -> str:
        return self.label or self.kind


def reachable_states(inst: ControlInstance) -> list[set[int]]:
    """States reachable at each stage (index k-1) under some action string."""
    reach = [{inst.initial_state}]
    for k in range(1, inst.horizon):
        reach.append({inst.next_state(k, x, a) for x in reach[-1] for a in range(inst.action_count)})
    return reach


def myopic_vtg() -> VtgApproximator:
    return VtgApproximator("myopic", None, "myopic")


def optimal_vtg(inst: ControlInstance, table: Optional[ValueTable] = None) -> VtgApproximator:
    """W_{k+1}(x, a) = V_{k+1}(h_k(x, a)) from the exact DP solution."""
    table = table if table is not None else solve_exact_dp(inst)
    K, S, A = inst.horizon, inst.state_count, inst.action_count
    W = np.zeros((K, S, A))
    for k in range(1, K):
        for x in range(S):
            for a in range(A):
                W[k - 1, x, a] = table.values[k, inst.next_state(k, x, a)]
    return VtgApproximator("optimal", W, "optimal")


def base_values(inst: ControlInstance, base: np.ndarray) -> np.ndarray:
    """``B[k-1, x]``: reward from following ``base`` from stage k at x through K.

    Each entry is summed forward, stage k first. NaN marks a start whose
    path hits an undefined policy entry.
    """
    K, S = inst.horizon, inst.state_count
    B = np.full((K + 1, S), np.nan)
    B[K, :] = 0.0
    for k in range(1, K + 1):
        for x0 in range(S):
            x, total = x0, 0.0
            for i in range(k, K + 1):
                a = int(base[i - 1, x])
                if a < 0:
                    total = math.nan
                    break
                total += inst.reward(i, x, a)
                if i < K:
                    x = inst.next_state(i, x, a)
            B[k - 1, x0] = total
    return B


def rollout_vtg(inst: ControlInstance, base: PolicyLike, label: str = "") -> VtgApproximator:
    """W_{k+1}(x, g): reward of following ``base`` from stage k+1 at h_k(x, g) to K."""
    pol = policy_table(inst, base)
    B = base_values(inst, pol)
    K, S, A = inst.horizon, inst.state_count, inst.action_count
    W = np.zeros((K, S, A))
    reach = reachable_states(inst)
    for k in range(1, K):
        for x in range(S):
            for a in range(A):
                v = B[k, inst.next_state(k, x, a)]
                if math.isnan(v) and x in reach[k - 1]:
                    raise PolicyUndefined(
                        f"base policy undefined on the rollout from stage {k}, state {x}, action {a}"
                    )
                W[k - 1, x, a] = v
    return VtgApproximator("rollout", W, label or "rollout", pol)


def table_vtg(inst: ControlInstance, table=None, label: str = "table") -> VtgApproximator:
    """User-supplied W_{k+1} for k = 1..K-1 as a ``[K-1][S][A]`` array.

    Defaults to the instance's own ``vtg_table``.
    """
    if table is None:
        table = inst.vtg_table
    if table is None:
        raise ValidationError(f"{inst.name}: no vtg_table available")
    K, S, A = inst.horizon, inst.state_count, inst.action_count
    t = np.asarray(table, dtype=float)
    if t.size == 0:
        t = t.reshape(0, S, A)
    if t.shape != (K - 1, S, A):
        raise ValidationError(f"VTG table shape {t.shape} != {(K - 1, S, A)}")
    W = np.concatenate([t, np.zeros((1, S, A))])
    return VtgApproximator("table", W, label)


def random_vtg_table(
    inst: ControlInstance, seed: int, high: float = 2.0, grid: Optional[float] = 2.0**-8
) -> np.ndarray:
    """Nonnegative random W table (``[K-1][S][A]``), on a dyadic grid by default."""
    rng = random.Random(seed)
    K, S, A = inst.horizon, inst.state_count, inst.action_count
    vals = []
    for _ in range((K - 1) * S * A):
        v = rng.uniform(0.0, high)
        vals.append(round(v / grid) * grid if grid else v)
    return np.array(vals, dtype=float).reshape(K - 1, S, A)


class InducedStringFunction(StringFunction):
    """The string function whose greedy strategy is the ADP scheme.

    f(()) = 0 and f((a_1..a_k)) = sum_i r_i(x_i, a_i) + W_{k+1}(x_k, a_k),
    summed stage 1 first with W added last. Full-length strings give the
    control objective because W_{K+1} = 0.

    If some string would score negative, a constant ``shifts[k-1]`` is
    added to every W_{k+1} at that stage (k < K). Shifts do not move any
    argmax but do change curvature values, so they are kept on the object.
    """

    def __init__(self, inst: ControlInstance, vtg: VtgApproximator):
        self.inst = inst
        self.vtg = vtg
        W = vtg.dense(inst)
        self.shifts = _nonnegativity_shifts(inst, W)
        if any(self.shifts):
            W = W + np.array(self.shifts)[:, None, None]
        self._w = W.tolist()
        super().__init__(self._eval, inst.action_count, inst.horizon, name=f"f[{vtg.name}]")

    @property
    def shift_applied(self) -> float:
        return max(self.shifts) if self.shifts else 0.0

    def w(self, k: int, x: int, a: int) -> float:
        """Effective (shifted) W_{k+1}(x, a)."""
        v = self._w[k - 1][x][a]
        if v != v:
            raise PolicyUndefined(f"VTG undefined at stage {k}, state {x}, action {a}")
        return v

    def _eval(self, s: ActionString) -> float:
        if not s:
            return 0.0
        r, h = self.inst._r, self.inst._h
        x = self.inst.initial_state
        total = 0.0
        last = len(s) - 1
        for i, a in enumerate(s):
            total += r[i][x][a]
            if i < last:
                x = h[i][x][a]
        return total + self.w(len(s), x, s[-1])


def _nonnegativity_shifts(inst: ControlInstance, W: np.ndarray) -> list[float]:
    K, S, A = inst.horizon, inst.state_count, inst.action_count
    shifts = [0.0] * K
    inf = float("inf")
    # cheapest reward sum reaching each state, over all action strings
    low = [inf] * S
    low[inst.initial_state] = 0.0
    for k in range(1, K):
        worst = inf
        nxt = [inf] * S
        for x in range(S):
            if low[x] == inf:
                continue
            for a in range(A):
                base = low[x] + inst.reward(k, x, a)
                w = W[k - 1, x, a]
                if not math.isnan(w):
                    worst = min(worst, base + w)
                y = inst.next_state(k, x, a)
                nxt[y] = min(nxt[y], base)
        if worst < 0:
            shifts[k - 1] = -worst
        low = nxt
    return shifts


def induced_f(inst: ControlInstance, w: VtgApproximator) -> InducedStringFunction:
    return InducedStringFunction(inst, w)


@dataclass
class AdpTrace(GreedyTrace):
    """Greedy trace plus the visited states and the control objective."""

    states: list[int] = field(default_factory=list)
    stage_rewards: list[float] = field(default_factory=list)

    @property
    def total(self) -> float:
        t = 0.0
        for r in self.stage_rewards:
            t += r
        return t


def run_adp(inst: ControlInstance, w: VtgApproximator) -> AdpTrace:
    """Pick argmax_a r_k(x, a) + W_{k+1}(x, a) stage by stage, smallest index on ties.

    ``values`` holds the (unshifted) induced objective of each prefix.
    """
    K, A = inst.horizon, inst.action_count
    trace = AdpTrace()
    x = inst.initial_state
    running = 0.0
    prefix: ActionString = ()
    for k in range(1, K + 1):
        scores = [inst.reward(k, x, a) + w.w(k, x, a) for a in range(A)]
        best = max(scores)
        a = scores.index(best)
        r = inst.reward(k, x, a)
        trace.states.append(x)
        trace.stage_rewards.append(r)
        running += r
        prefix = prefix + (a,)
        trace.prefixes.append(prefix)
        trace.values.append(running + w.w(k, x, a))
        trace.ties.append(scores.count(best))
        if k < K:
            x = inst.next_state(k, x, a)
    return trace

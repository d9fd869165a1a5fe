"""Trajectory curvatures and the ADP performance factor beta.

For a greedy trace G and an optimal string O of the induced function f:

    eps_k = 1 - (f(G_{k+1}) - f(G_k)) / f(G_1)
    eta_k = (f(O_{k+1}) - f(O_k)) / f((o_{k+1}))
    beta  = sum(1 - eps_k) / sum(eta_k),           k = 0..K-1

and the claimed guarantee is f(G_K) >= beta * f(O_K). :func:`verify_thm3`
checks that claim alongside the intermediate steps of its derivation. The
second step, f(O_K) <= sum(eta_k) * f(G_1), bounds each
eta_k * f((o_{k+1})) by eta_k * f(G_1) and is only valid when every eta_k is
nonnegative, so the report flags runs with a negative eta_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .adp import (
    VtgApproximator,
    induced_f,
    myopic_vtg,
    rollout_vtg,
    run_adp,
)
from .control import ControlInstance, PolicyLike, myopic_policy, policy_table
from .errors import ZeroDenominator
from .greedy import GreedyTrace, all_optima, brute_force_optimum
from .strings import DEFAULT_BUDGET, EMPTY, ActionString, StringFunction

TOL = 1e-9


def trajectory_forward_curvatures(
    f: StringFunction, trace: GreedyTrace, tol: float = TOL
) -> list[float]:
    """eps_0..eps_{K-1} along the greedy prefixes (eps_0 is 0 by construction)."""
    prefixes = [EMPTY] + list(trace.prefixes)
    values = [f(p) for p in prefixes]
    den = values[1] - values[0] if len(values) > 1 else 0.0
    if den <= tol:
        raise ZeroDenominator(f"f(G_1) - f(()) = {den!r} is not positive")
    eps = [1.0 - (values[k + 1] - values[k]) / den for k in range(len(values) - 1)]
    assert eps[0] == 0.0, eps[0]
    return eps


def trajectory_elemental_curvatures(
    f: StringFunction, optimal: ActionString, tol: float = TOL
) -> list[float]:
    """eta_0..eta_{K-1} along the prefixes of ``optimal`` (eta_0 is 1)."""
    optimal = tuple(optimal)
    f0 = f(EMPTY)
    etas = []
    for k in range(len(optimal)):
        den = f((optimal[k],)) - f0
        if den <= tol:
            raise ZeroDenominator(f"f(({optimal[k]},)) - f(()) = {den!r} is not positive")
        etas.append((f(optimal[: k + 1]) - f(optimal[:k])) / den)
    if etas:
        assert etas[0] == 1.0, etas[0]
    return etas


def beta(epsilons: Sequence[float], etas: Sequence[float], tol: float = TOL) -> float:
    den = math.fsum(etas)
    if den <= tol:
        raise ZeroDenominator(f"sum of eta = {den!r} is not positive")
    return math.fsum(1.0 - e for e in epsilons) / den


@dataclass
class Check:
    name: str
    holds: bool
    margin: float
    note: str = ""


@dataclass
class CurvatureReport:
    scheme: str
    greedy: ActionString
    optimal: ActionString
    epsilons: list[float]
    etas: list[float]
    beta: float
    greedy_value: float
    optimal_value: float
    first_value: float
    bound_holds: bool
    sum_condition_holds: bool
    shift_applied: float
    checks: list[Check] = field(default_factory=list)
    betas_all_optima: Optional[list[float]] = None

    @property
    def ratio(self) -> float:
        return self.greedy_value / self.optimal_value

    @property
    def eta_nonnegative(self) -> bool:
        return all(e >= -TOL for e in self.etas)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def verify_thm3(
    inst: ControlInstance,
    w: VtgApproximator,
    tol: float = TOL,
    budget: int | None = DEFAULT_BUDGET,
    all_optimal: bool = False,
) -> CurvatureReport:
    """Run the ADP scheme and check the beta guarantee against brute force.

    Checks, all with tolerance ``tol * f(O_K)``:

    ``beta_floor``       f(G_K) >= beta f(O_K)
    ``telescoping``      f(G_K) == sum(1 - eps_i) f(G_1)
    ``first_step``       f(G_1) >= f(O_K) / sum(eta_i)
    ``curvature_sum``    f(G_K) == f(O_K) whenever sum(eps_i + eta_i) <= K
    """
    f = induced_f(inst, w)
    trace = run_adp(inst, w)
    K = inst.horizon
    opt, f_opt = brute_force_optimum(f, K, budget)
    eps = trajectory_forward_curvatures(f, trace, tol)
    etas = trajectory_elemental_curvatures(f, opt, tol)
    b = beta(eps, etas, tol)
    f_g = f(trace.prefixes[-1])
    f_1 = f(trace.prefixes[0])
    scale = tol * max(abs(f_opt), 1.0)

    checks = []
    floor_margin = f_g - b * f_opt
    checks.append(Check("beta_floor", floor_margin >= -scale, floor_margin))
    tele = math.fsum(1.0 - e for e in eps) * f_1
    checks.append(Check("telescoping", abs(f_g - tele) <= scale, -abs(f_g - tele)))
    eta_sum = math.fsum(etas)
    first_margin = f_1 - f_opt / eta_sum
    note = "" if all(e >= -tol for e in etas) else "negative eta_k along O_K"
    checks.append(Check("first_step", first_margin >= -scale, first_margin, note))
    applies = math.fsum(e + n for e, n in zip(eps, etas)) <= K + tol
    if applies:
        gap = f_g - f_opt
        checks.append(Check("curvature_sum", abs(gap) <= scale, -abs(gap)))
    betas = None
    if all_optimal:
        betas = [
            beta(eps, trajectory_elemental_curvatures(f, o, tol), tol)
            for o in all_optima(f, K, 0.0, budget)
        ]
    return CurvatureReport(
        scheme=w.name,
        greedy=trace.actions,
        optimal=opt,
        epsilons=eps,
        etas=etas,
        beta=b,
        greedy_value=f_g,
        optimal_value=f_opt,
        first_value=f_1,
        bound_holds=checks[0].holds,
        sum_condition_holds=applies,
        shift_applied=f.shift_applied,
        checks=checks,
        betas_all_optima=betas,
    )


def expanded_curvatures_general(
    inst: ControlInstance,
    w: VtgApproximator,
    trace: GreedyTrace,
    optimal: ActionString,
    tol: float = TOL,
) -> tuple[list[float], list[float]]:
    """eps_k, eta_k written out in rewards and W:

        eps_k = 1 - (r_{k+1}(x_{k+1}, g_{k+1}) + W_{k+2}(x_{k+1}, g_{k+1}) - W_{k+1}(x_k, g_k))
                    / (r_1(x_1, g_1) + W_2(x_1, g_1))
        eta_k = (r_{k+1}(x_{k+1}, o_{k+1}) + W_{k+2}(x_{k+1}, o_{k+1}) - W_{k+1}(x_k, o_k))
                    / (r_1(x_1, o_{k+1}) + W_2(x_1, o_{k+1}))

    with W_1 := 0 for k = 0. Uses the same (possibly shifted) W as the
    induced function.
    """
    f = induced_f(inst, w)
    x1 = inst.initial_state

    def states(actions):
        xs = [x1]
        for k, a in enumerate(actions[:-1], start=1):
            xs.append(inst.next_state(k, xs[-1], a))
        return xs

    def increments(actions):
        xs = states(actions)
        out = []
        for k in range(len(actions)):
            inc = inst.reward(k + 1, xs[k], actions[k]) + f.w(k + 1, xs[k], actions[k])
            if k > 0:
                inc -= f.w(k, xs[k - 1], actions[k - 1])
            out.append(inc)
        return out

    g = tuple(trace.actions)
    den = inst.reward(1, x1, g[0]) + f.w(1, x1, g[0])
    if den <= tol:
        raise ZeroDenominator(f"r_1 + W_2 at g_1 = {den!r}")
    eps = [1.0 - inc / den for inc in increments(g)]
    etas = []
    for k, inc in enumerate(increments(tuple(optimal))):
        d = inst.reward(1, x1, optimal[k]) + f.w(1, x1, optimal[k])
        if d <= tol:
            raise ZeroDenominator(f"r_1 + W_2 at o_{k + 1} = {d!r}")
        etas.append(inc / d)
    return eps, etas


def _base_sum(inst, base, start_stage, x):
    """sum_{i=start}^{K} r_i(x_i, pi(x_i)) following ``base`` from x at ``start_stage``."""
    K = inst.horizon
    total = 0.0
    for i in range(start_stage, K + 1):
        a = int(base[i - 1, x])
        total += inst.reward(i, x, a)
        if i < K:
            x = inst.next_state(i, x, a)
    return total


def _rollout_term(inst, base, actions, k):
    """Numerator of the rollout expansion at index k: r_{k+1} + R_1 - R_2.

    ``actions`` is the greedy or optimal string (g or o). State sequences:
    x follows ``actions`` through stage k+1 and then the base policy;
    x-hat starts at h_k(x_k, a_k) on stage k+1 and follows the base; x-tilde
    starts at h_1(x_1, a_{k+1}) on stage 2 and follows the base.
    """
    K = inst.horizon
    x1 = inst.initial_state
    xs = [x1]
    for i in range(1, k + 1):
        xs.append(inst.next_state(i, xs[-1], actions[i - 1]))
    x_k1 = xs[k]  # x_{k+1}
    a_k1 = actions[k]  # a_{k+1}
    r_head = inst.reward(k + 1, x_k1, a_k1)
    # R1 / R3: base rollout after taking a_{k+1} at x_{k+1}
    if k + 2 <= K:
        r1 = _base_sum(inst, base, k + 2, inst.next_state(k + 1, x_k1, a_k1))
    else:
        r1 = 0.0
    # R2 / R4: base rollout from x-hat_{k+1} = h_k(x_k, a_k); empty when k = 0
    if k >= 1:
        r2 = _base_sum(inst, base, k + 1, inst.next_state(k, xs[k - 1], actions[k - 1]))
    else:
        r2 = 0.0
    return r_head + r1 - r2


def _rollout_den(inst, base, a):
    """r_1(x_1, a) plus the base rollout along x-tilde from h_1(x_1, a)."""
    x1 = inst.initial_state
    den = inst.reward(1, x1, a)
    if inst.horizon >= 2:
        den += _base_sum(inst, base, 2, inst.next_state(1, x1, a))
    return den


def expanded_curvatures_rollout(
    inst: ControlInstance,
    base: PolicyLike,
    trace: GreedyTrace,
    optimal: ActionString,
    tol: float = TOL,
) -> tuple[list[float], list[float]]:
    """eps_k and eta_k for rollout, evaluated through the R_1..R_4 base-policy sums."""
    pol = policy_table(inst, base)
    g = tuple(trace.actions)
    o = tuple(optimal)
    K = inst.horizon
    den_g = _rollout_den(inst, pol, g[0])
    if den_g <= tol:
        raise ZeroDenominator(f"rollout denominator at g_1 = {den_g!r}")
    eps = []
    for k in range(K):
        num = _rollout_term(inst, pol, g, k)
        eps.append(1.0 - num / den_g)
    etas = []
    for k in range(K):
        num = _rollout_term(inst, pol, o, k)
        den = _rollout_den(inst, pol, o[k])
        if den <= tol:
            raise ZeroDenominator(f"rollout denominator at o_{k + 1} = {den!r}")
        etas.append(num / den)
    return eps, etas


@dataclass
class CrossCheck:
    epsilons: list[float]
    etas: list[float]
    expanded_epsilons: list[float]
    expanded_etas: list[float]
    max_discrepancy: float
    agrees: bool


def cross_check(reference, expanded, tol: float = TOL) -> CrossCheck:
    """Compare (eps, eta) lists; discrepancies are reported, not reconciled."""
    (eps, etas), (xe, xn) = reference, expanded
    diffs = [abs(a - b) for a, b in zip(eps + etas, xe + xn)]
    worst = max(diffs, default=0.0)
    same_len = len(eps) == len(xe) and len(etas) == len(xn)
    return CrossCheck(eps, etas, xe, xn, worst, same_len and worst <= tol)


@dataclass
class ImprovementReport:
    myopic_actions: ActionString
    rollout_actions: ActionString
    myopic_value: float
    rollout_value: float
    rollout_first: float
    optimal_value: float
    epsilons: list[float]
    etas: list[float]
    lhs: float
    bound: float
    bound_via_optimum: float
    claim_holds: bool
    holds_first: bool
    holds_second: bool

    @property
    def holds(self) -> bool:
        return self.claim_holds and self.holds_first and self.holds_second


def rollout_myopic_improvement(
    inst: ControlInstance, tol: float = TOL, budget: int | None = DEFAULT_BUDGET
) -> ImprovementReport:
    """How much rollout over the myopic base policy gains on the myopic policy.

    lhs   = f_RM(G_K) - f_M(G_K)
    bound = sum_{i>=1}(1 - eps_i) f_RM(G_1)
    bound_via_optimum = sum_{i>=1}(1 - eps_i) / sum(eta_i) * f_RM(O_K)

    with eps, eta taken on the rollout-of-myopic induced function and O_K
    its lexicographically first brute-force maximizer (equivalently an
    optimum of the control problem, since full-length strings score the
    control objective).
    """
    f_m_trace = run_adp(inst, myopic_vtg())
    w_rm = rollout_vtg(inst, myopic_policy(inst), "rollout:myopic")
    f_rm = induced_f(inst, w_rm)
    rm_trace = run_adp(inst, w_rm)
    K = inst.horizon
    opt, f_opt = brute_force_optimum(f_rm, K, budget)
    eps = trajectory_forward_curvatures(f_rm, rm_trace, tol)
    etas = trajectory_elemental_curvatures(f_rm, opt, tol)
    f_m = f_m_trace.total
    f_rm_g = f_rm(rm_trace.actions)
    f_rm_1 = f_rm(rm_trace.prefixes[0])
    tail = math.fsum(1.0 - e for e in eps[1:])
    lhs = f_rm_g - f_m
    bound = tail * f_rm_1
    bound_opt = tail / math.fsum(etas) * f_opt
    scale = tol * max(abs(f_opt), 1.0)
    return ImprovementReport(
        myopic_actions=f_m_trace.actions,
        rollout_actions=rm_trace.actions,
        myopic_value=f_m,
        rollout_value=f_rm_g,
        rollout_first=f_rm_1,
        optimal_value=f_opt,
        epsilons=eps,
        etas=etas,
        lhs=lhs,
        bound=bound,
        bound_via_optimum=bound_opt,
        claim_holds=f_rm_1 >= f_m - scale,
        holds_first=lhs >= bound - scale,
        holds_second=lhs >= bound_opt - scale,
    )


def optimal_base_pattern(K: int) -> tuple[list[float], list[float]]:
    """Curvatures expected when the VTG is exact: eps = (0, 1, ..), eta = (1, 0, ..)."""
    return [0.0] + [1.0] * (K - 1), [1.0] + [0.0] * (K - 1)

"""Greedy strings, brute-force optima and the classical greedy bounds.

The bound calculators implement the total-curvature bounds, their universal
forms, and the elemental-curvature bound. :func:`verify_greedy_bounds`
evaluates each against a brute-force optimum, checking hypotheses rather
than assuming them: a bound whose hypothesis fails or cannot be certified is
reported as not applicable, never as violated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import curvature as cv
from .errors import InfiniteCurvature, NonpositiveCurvature, ZeroDenominator
from .strings import DEFAULT_BUDGET, ActionString, StringFunction, enumerate_strings

UNIVERSAL = 1.0 - math.exp(-1.0)
FLOOR_NAMES = (
    "backward_floor",
    "forward_floor",
    "global_backward_floor",
    "global_forward_floor",
    "universal",
    "elemental_floor",
)


@dataclass
class GreedyTrace:
    """Greedy prefixes G_1..G_K, their values, and per-step argmax tie counts."""

    prefixes: list[ActionString] = field(default_factory=list)
    values: list[float] = field(default_factory=list)
    ties: list[int] = field(default_factory=list)

    @property
    def actions(self) -> ActionString:
        return self.prefixes[-1] if self.prefixes else ()

    @property
    def horizon(self) -> int:
        return len(self.prefixes)

    @property
    def value(self) -> float:
        return self.values[-1] if self.values else 0.0


def greedy_string(f: StringFunction, horizon: int) -> GreedyTrace:
    """Extend the prefix one action at a time, maximizing f; ties go to the smallest index."""
    f.require_len(horizon)
    trace = GreedyTrace()
    prefix: ActionString = ()
    for _ in range(horizon):
        scores = [f(prefix + (g,)) for g in range(f.action_count)]
        best = max(scores)
        g = scores.index(best)
        prefix = prefix + (g,)
        trace.prefixes.append(prefix)
        trace.values.append(best)
        trace.ties.append(scores.count(best))
    return trace


def brute_force_optimum(
    f: StringFunction, horizon: int, budget: int | None = DEFAULT_BUDGET
) -> tuple[ActionString, float]:
    """Lexicographically first maximizer of f over strings of length exactly ``horizon``."""
    f.require_len(horizon)
    best_s, best_v = None, -math.inf
    for s in enumerate_strings(f.action_count, horizon, budget):
        v = f(s)
        if v > best_v:
            best_s, best_v = s, v
    return best_s, best_v


def all_optima(
    f: StringFunction, horizon: int, tol: float = 0.0, budget: int | None = DEFAULT_BUDGET
) -> list[ActionString]:
    """Every length-``horizon`` string within ``tol`` of the maximum, in lexicographic order."""
    _, best = brute_force_optimum(f, horizon, budget)
    return [
        s for s in enumerate_strings(f.action_count, horizon, budget) if f(s) >= best - tol
    ]


def bound_thm1_i(sigma_o: float, horizon: int) -> float:
    """(1/s)(1 - (1 - s/K)^K) for backward curvature s = sigma(O)."""
    if sigma_o <= 0:
        raise NonpositiveCurvature(f"sigma(O) = {sigma_o!r} must be positive")
    return (1.0 - (1.0 - sigma_o / horizon) ** horizon) / sigma_o


def bound_thm1_i_limit(sigma_o: float) -> float:
    """Horizon-free form (1/s)(1 - e^-s), strictly below :func:`bound_thm1_i`."""
    if sigma_o <= 0:
        raise NonpositiveCurvature(f"sigma(O) = {sigma_o!r} must be positive")
    return -math.expm1(-sigma_o) / sigma_o


def bound_thm1_ii(epsilons: list[float]) -> float:
    if not epsilons:
        raise ValueError("need at least one forward curvature")
    return 1.0 - max(epsilons)


def k_eta(eta: float, horizon: int, tol: float = 1e-9) -> float:
    if eta < 0:
        raise ValueError(f"eta = {eta!r} must be nonnegative")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if abs(eta - 1.0) <= tol:
        return float(horizon)
    return (1.0 - eta**horizon) / (1.0 - eta)


def bound_thm2(eta: float, horizon: int, tol: float = 1e-9) -> float:
    return 1.0 - (1.0 - 1.0 / k_eta(eta, horizon, tol)) ** horizon


@dataclass
class BoundCheck:
    name: str
    applicable: bool
    floor: Optional[float] = None
    holds: Optional[bool] = None
    note: str = ""


@dataclass
class BoundCertificate:
    greedy: GreedyTrace
    optimum: ActionString
    optimal_value: float
    ratio: float
    submodularity: cv.SubmodularityReport
    backward_monotone: bool
    sigma_o: Optional[float]
    epsilons_g: list[float]
    eta: Optional[float]
    checks: list[BoundCheck]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks if c.applicable)

    def check(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _floor_check(name, floor, ratio, tol, note=""):
    return BoundCheck(name, True, floor, ratio >= floor - tol, note)


def verify_greedy_bounds(
    f: StringFunction,
    horizon: int,
    cap: int,
    tol: float = 1e-9,
    budget: int | None = DEFAULT_BUDGET,
) -> BoundCertificate:
    """Compare greedy against brute force under every applicable greedy bound.

    ``f`` must accept strings of length ``2 * horizon`` (for the curvatures
    with respect to O and the f(G_i + O) hypothesis) and ``cap + 2``.
    """
    K = horizon
    trace = greedy_string(f, K)
    opt, f_opt = brute_force_optimum(f, K, budget)
    f_g = trace.value
    if f_opt > tol:
        ratio = f_g / f_opt
    else:
        ratio = 1.0 if f_g >= f_opt - tol else 0.0

    sub = cv.check_string_submodular(f, cap, tol, budget)
    bmono = cv.check_backward_monotone(f, cap, tol, budget)
    certified = sub.string_submodular and sub.exhaustive
    checks: list[BoundCheck] = []
    sigma_o = None
    eps_g: list[float] = []
    eta = None

    if not certified:
        why = "string submodularity not certified" if sub.string_submodular else (
            "not string submodular"
        )
        for name in FLOOR_NAMES[:5]:
            checks.append(BoundCheck(name, False, note=why))
    else:
        sigma_o = cv.total_backward_wrt(f, opt, K, tol, budget)
        if sigma_o > tol:
            checks.append(_floor_check("backward_floor", bound_thm1_i(sigma_o, K), ratio, tol))
        else:
            checks.append(BoundCheck("backward_floor", False, note=f"sigma(O) = {sigma_o:.3g} <= 0"))

        eps_g = [cv.total_forward_wrt(f, trace.prefixes[i - 1], K, tol, budget) for i in range(1, K)]
        if eps_g:
            checks.append(_floor_check("forward_floor", bound_thm1_ii(eps_g), ratio, tol))
        else:
            checks.append(BoundCheck("forward_floor", False, note="K = 1: empty index range"))

        if bmono and f.covers(cap, 1):
            sigma = cv.total_backward_curvature(f, cap, tol, budget)
            epsilon = cv.total_forward_curvature(f, cap, tol, budget)
            if sigma > tol:
                checks.append(_floor_check("global_backward_floor", bound_thm1_i(sigma, K), ratio, tol))
            else:
                checks.append(BoundCheck("global_backward_floor", False, note=f"sigma = {sigma:.3g} <= 0"))
            checks.append(_floor_check("global_forward_floor", 1.0 - epsilon, ratio, tol))
            checks.append(BoundCheck("universal", True, UNIVERSAL, ratio > UNIVERSAL))
        else:
            why = "not backward monotone" if not bmono else "global search truncated"
            for name in FLOOR_NAMES[2:5]:
                checks.append(BoundCheck(name, False, note=why))

    if not (sub.forward_monotone and sub.exhaustive):
        checks.append(BoundCheck("elemental_floor", False, note="forward monotonicity not certified"))
    else:
        hyp_ok = all(f(trace.prefixes[i - 1] + opt) >= f_opt - tol for i in range(1, K))
        eta_cap = min(cap, f.max_len - 2)
        if not hyp_ok:
            checks.append(BoundCheck("elemental_floor", False, note="f(G_i + O) >= f(O) fails"))
        elif not f.covers(eta_cap, 2):
            checks.append(BoundCheck("elemental_floor", False, note="eta search truncated"))
        else:
            try:
                eta = cv.elemental_forward_curvature(f, eta_cap, tol, budget)
            except (InfiniteCurvature, ZeroDenominator) as exc:
                checks.append(BoundCheck("elemental_floor", False, note=str(exc)))
            else:
                if eta < 0:
                    checks.append(BoundCheck("elemental_floor", False, note=f"eta = {eta:.3g} < 0"))
                else:
                    checks.append(_floor_check("elemental_floor", bound_thm2(eta, K, tol), ratio, tol))

    return BoundCertificate(
        greedy=trace,
        optimum=opt,
        optimal_value=f_opt,
        ratio=ratio,
        submodularity=sub,
        backward_monotone=bmono,
        sigma_o=sigma_o,
        epsilons_g=eps_g,
        eta=eta,
        checks=checks,
    )

"""Global curvatures of a string function by exhaustive search.

All searches range over strings up to a caller-chosen length cap. Because
the true curvatures are maxima over every string, a truncated search yields
a lower bound; :func:`global_curvatures` records whether the cap reached the
whole admissible domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InfiniteCurvature, ZeroDenominator
from .strings import (
    DEFAULT_BUDGET,
    EMPTY,
    ActionString,
    StringFunction,
    enumerate_upto,
    prefixes,
)


@dataclass(frozen=True)
class GlobalCurvatures:
    sigma: float
    epsilon: float
    eta: float
    search_cap: int
    exhaustive: bool
    sigma_wrt: Optional[float] = None
    epsilon_wrt: Optional[float] = None


@dataclass(frozen=True)
class SubmodularityReport:
    forward_monotone: bool
    diminishing_returns: bool
    counterexample: Optional[tuple[ActionString, ActionString]]
    counterexample_action: Optional[int]
    search_cap: int
    exhaustive: bool

    @property
    def string_submodular(self) -> bool:
        return self.forward_monotone and self.diminishing_returns


def _singleton_gains(f: StringFunction, tol: float) -> list[float]:
    gains = []
    for a in range(f.action_count):
        g = f((a,)) - f(EMPTY)
        if g <= tol:
            raise ZeroDenominator(f"f(({a},)) - f(()) = {g!r} is not positive")
        gains.append(g)
    return gains


def total_backward_curvature(
    f: StringFunction, cap: int, tol: float = 1e-9, budget: int | None = DEFAULT_BUDGET
) -> float:
    """max over actions a and |M| <= cap of 1 - (f((a)+M) - f(M)) / f((a))."""
    f.require_len(cap + 1)
    gains = _singleton_gains(f, tol)
    best = -float("inf")
    for m in enumerate_upto(f.action_count, cap, budget):
        fm = f(m)
        for a, ga in enumerate(gains):
            best = max(best, 1.0 - (f((a,) + m) - fm) / ga)
    return best


def total_forward_curvature(
    f: StringFunction, cap: int, tol: float = 1e-9, budget: int | None = DEFAULT_BUDGET
) -> float:
    """max over actions a and |M| <= cap of 1 - (f(M+(a)) - f(M)) / f((a))."""
    f.require_len(cap + 1)
    gains = _singleton_gains(f, tol)
    best = -float("inf")
    for m in enumerate_upto(f.action_count, cap, budget):
        fm = f(m)
        for a, ga in enumerate(gains):
            best = max(best, 1.0 - (f(m + (a,)) - fm) / ga)
    return best


def _wrt(f, m, k_max, tol, budget, backward):
    m = tuple(m)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    f.require_len(k_max + len(m))
    fm = f(m)
    best = -float("inf")
    for n in enumerate_upto(f.action_count, k_max, budget):
        if not n:
            continue
        fn = f(n) - f(EMPTY)
        if fn <= tol:
            raise ZeroDenominator(f"f({n}) = {fn!r} is not positive")
        joined = n + m if backward else m + n
        best = max(best, 1.0 - (f(joined) - fm) / fn)
    return best


def total_backward_wrt(
    f: StringFunction,
    m: ActionString,
    k_max: int,
    tol: float = 1e-9,
    budget: int | None = DEFAULT_BUDGET,
) -> float:
    """Backward curvature with respect to ``m``: N ranges over 0 < |N| <= k_max."""
    return _wrt(f, m, k_max, tol, budget, backward=True)


def total_forward_wrt(
    f: StringFunction,
    m: ActionString,
    k_max: int,
    tol: float = 1e-9,
    budget: int | None = DEFAULT_BUDGET,
) -> float:
    """Forward curvature with respect to ``m``: N ranges over 0 < |N| <= k_max."""
    return _wrt(f, m, k_max, tol, budget, backward=False)


def elemental_forward_curvature(
    f: StringFunction, cap: int, tol: float = 1e-9, budget: int | None = DEFAULT_BUDGET
) -> float:
    """max over a_i, a_j, |M| <= cap of
    (f(M+(a_i)+(a_j)) - f(M+(a_i))) / (f(M+(a_j)) - f(M)).

    Pairs where both numerator and denominator are within ``tol`` of zero are
    skipped; a vanishing denominator under a positive numerator raises
    :class:`InfiniteCurvature`.
    """
    f.require_len(cap + 2)
    n_act = f.action_count
    best = -float("inf")
    for m in enumerate_upto(n_act, cap, budget):
        fm = f(m)
        for ai in range(n_act):
            mi = m + (ai,)
            fmi = f(mi)
            for aj in range(n_act):
                num = f(mi + (aj,)) - fmi
                den = f(m + (aj,)) - fm
                if den <= tol:
                    if num <= tol:
                        continue
                    raise InfiniteCurvature(
                        f"M={m}, a_i={ai}, a_j={aj}: gain {num!r} over zero denominator"
                    )
                best = max(best, num / den)
    return best if best > -float("inf") else 0.0


def global_curvatures(
    f: StringFunction,
    cap: int,
    m: Optional[ActionString] = None,
    k_max: Optional[int] = None,
    tol: float = 1e-9,
    budget: int | None = DEFAULT_BUDGET,
) -> GlobalCurvatures:
    sigma = total_backward_curvature(f, cap, tol, budget)
    epsilon = total_forward_curvature(f, cap, tol, budget)
    eta_cap = min(cap, f.max_len - 2)
    eta = elemental_forward_curvature(f, eta_cap, tol, budget)
    sigma_m = epsilon_m = None
    if m is not None:
        k = k_max if k_max is not None else cap
        sigma_m = total_backward_wrt(f, m, k, tol, budget)
        epsilon_m = total_forward_wrt(f, m, k, tol, budget)
    return GlobalCurvatures(
        sigma=sigma,
        epsilon=epsilon,
        eta=eta,
        search_cap=cap,
        exhaustive=f.covers(cap, 1) and f.covers(eta_cap, 2),
        sigma_wrt=sigma_m,
        epsilon_wrt=epsilon_m,
    )


def check_string_submodular(
    f: StringFunction, cap: int, tol: float = 1e-9, budget: int | None = DEFAULT_BUDGET
) -> SubmodularityReport:
    """Test forward monotonicity and diminishing returns over prefix pairs.

    Monotonicity is checked for every prefix pair M <= N with |N| <= cap + 1;
    diminishing returns for every M <= N with |N| <= cap and every action.
    The first counterexample in enumeration order is reported, monotonicity
    failures taking precedence.
    """
    f.require_len(cap + 1)
    monotone = True
    dimret = True
    witness = None
    witness_action = None
    for n in enumerate_upto(f.action_count, cap + 1, budget):
        fn = f(n)
        for m in prefixes(n)[:-1]:
            if monotone and f(m) > fn + tol:
                monotone = False
                witness, witness_action = (m, n), None
        if len(n) > cap:
            continue
        for m in prefixes(n):
            fm = f(m)
            for a in range(f.action_count):
                if dimret and f(m + (a,)) - fm < f(n + (a,)) - fn - tol:
                    dimret = False
                    if monotone:
                        witness, witness_action = (m, n), a
    return SubmodularityReport(
        forward_monotone=monotone,
        diminishing_returns=dimret,
        counterexample=witness,
        counterexample_action=witness_action,
        search_cap=cap,
        exhaustive=f.covers(cap, 1),
    )


def check_backward_monotone(
    f: StringFunction, cap: int, tol: float = 1e-9, budget: int | None = DEFAULT_BUDGET
) -> bool:
    """f(M+N) >= f(N) for every split of every string of length <= cap + 1."""
    f.require_len(cap + 1)
    for s in enumerate_upto(f.action_count, cap + 1, budget):
        fs = f(s)
        for i in range(1, len(s) + 1):
            if fs < f(s[i:]) - tol:
                return False
    return True

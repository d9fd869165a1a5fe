"""Scheme parsing and the full per-run verification used by the CLI and sweeps."""

from __future__ import annotations

import math
import numpy as np

from . import bounds
from .adp import (
    VtgApproximator,
    induced_f,
    myopic_vtg,
    optimal_vtg,
    random_vtg_table,
    rollout_vtg,
    run_adp,
    table_vtg,
)
from .control import ControlInstance, constant_policy, myopic_policy, solve_exact_dp
from .corpus import random_policy
from .errors import EnumerationBudgetExceeded
from .instances import load_json_array
from .report import CheckResult, RunReport
from .strings import DEFAULT_BUDGET, check_budget, string_count

TOL = 1e-9


def parse_base(spec: str, inst: ControlInstance, seed: int = 0) -> np.ndarray:
    """``const<k>``, ``myopic``, ``random`` (seeded) or ``table:<file>`` with a [stage][state] array."""
    if spec == "myopic":
        return myopic_policy(inst)
    if spec == "random":
        return random_policy(inst, seed)
    if spec.startswith("const"):
        try:
            k = int(spec[5:])
        except ValueError:
            raise ValueError(f"bad base policy {spec!r}") from None
        return constant_policy(inst, k)
    if spec.startswith("table:"):
        return np.asarray(load_json_array(spec[6:], "policy"), dtype=np.int64)
    raise ValueError(f"unknown base policy {spec!r}")


def parse_scheme(spec: str, inst: ControlInstance, seed: int = 0) -> VtgApproximator:
    """``myopic``, ``optimal``, ``rollout:<base>``, ``table`` (the instance's own
    vtg_table), ``table:random`` (seeded) or ``table:<file>``."""
    if spec == "myopic":
        return myopic_vtg()
    if spec == "optimal":
        return optimal_vtg(inst)
    if spec.startswith("rollout:"):
        return rollout_vtg(inst, parse_base(spec[8:], inst, seed), spec)
    if spec == "table":
        return table_vtg(inst, None, "table")
    if spec == "table:random":
        return table_vtg(inst, random_vtg_table(inst, seed), spec)
    if spec.startswith("table:"):
        return table_vtg(inst, load_json_array(spec[6:], "vtg_table"), spec)
    raise ValueError(f"unknown scheme {spec!r}")


def verify_run(
    inst: ControlInstance,
    w: VtgApproximator,
    budget: int | None = DEFAULT_BUDGET,
    tol: float = TOL,
    all_optima: bool = False,
) -> RunReport:
    """Every applicable check for one (instance, scheme) pair.

    Oracle-dependent checks are marked skipped when brute force would
    exceed ``budget``.
    """
    trace = run_adp(inst, w)
    K = inst.horizon
    report = RunReport(
        instance_id=inst.name,
        scheme=w.name,
        adp_value=trace.total,
        optimal_value=None,
        ratio=None,
        beta=None,
        adp_actions=trace.actions,
    )
    try:
        check_budget(string_count(inst.action_count, K), budget)
    except EnumerationBudgetExceeded as exc:
        report.checks.append(CheckResult("oracle", None, note=str(exc)))
        f = induced_f(inst, w)
        if w.kind == "rollout":
            report.checks.append(_rollout_monotone(f, trace, tol))
        return report

    cr = bounds.verify_thm3(inst, w, tol, budget, all_optimal=all_optima)
    f = induced_f(inst, w)
    report.optimal_value = cr.optimal_value
    report.optimal_actions = cr.optimal
    report.ratio = cr.ratio
    report.beta = cr.beta
    report.epsilons = cr.epsilons
    report.etas = cr.etas
    report.eta_nonnegative = cr.eta_nonnegative
    report.shift_applied = cr.shift_applied
    if cr.betas_all_optima is not None:
        report.notes.append(
            "beta over all optima: " + ", ".join(f"{b:.6g}" for b in cr.betas_all_optima)
        )
    for c in cr.checks:
        report.checks.append(CheckResult(c.name, c.holds, c.margin, c.note))

    ref = (cr.epsilons, cr.etas)
    xg = bounds.cross_check(ref, bounds.expanded_curvatures_general(inst, w, trace, cr.optimal, tol), tol)
    report.checks.append(CheckResult("expanded_general", xg.agrees, -xg.max_discrepancy))
    if w.kind == "rollout":
        xr = bounds.cross_check(
            ref, bounds.expanded_curvatures_rollout(inst, w.base, trace, cr.optimal, tol), tol
        )
        report.checks.append(CheckResult("expanded_rollout", xr.agrees, -xr.max_discrepancy))
        report.checks.append(_rollout_monotone(f, trace, tol))
        if np.array_equal(w.base, myopic_policy(inst)):
            imp = bounds.rollout_myopic_improvement(inst, tol, budget)
            report.checks.append(
                CheckResult(
                    "improvement",
                    imp.holds,
                    min(imp.lhs - imp.bound, imp.lhs - imp.bound_via_optimum),
                    f"gain {imp.lhs:.6g} over myopic {imp.myopic_value:.6g}",
                )
            )
            report.notes.append("improvement bound uses O_K of the control problem")
    elif w.kind == "myopic":
        ok = all(e < 1.0 for e in cr.epsilons) and cr.beta > 0
        report.checks.append(CheckResult("myopic_eps", ok, 1.0 - max(cr.epsilons)))
    elif w.kind == "optimal":
        eps_p, eta_p = bounds.optimal_base_pattern(K)
        v1 = solve_exact_dp(inst).value(1, inst.initial_state)
        ok = (
            cr.epsilons == eps_p
            and cr.etas == eta_p
            and abs(cr.beta - 1.0) <= 1e-12
            and cr.greedy_value == v1
        )
        report.checks.append(CheckResult("optimal_pattern", ok, -abs(cr.beta - 1.0)))
    return report


def _rollout_monotone(f, trace, tol) -> CheckResult:
    vals = [0.0] + [f(p) for p in trace.prefixes]
    worst = min((b - a for a, b in zip(vals, vals[1:])), default=0.0)
    return CheckResult("rollout_monotone", worst >= -tol, worst)


def summarize(reports: list[RunReport]) -> dict[str, dict]:
    """Per-scheme aggregate: run count, violations per check, worst ratio - beta."""
    out: dict[str, dict] = {}
    for r in reports:
        s = out.setdefault(
            r.scheme,
            {"runs": 0, "violations": {}, "negative_eta": 0, "min_margin": math.inf, "skipped": 0},
        )
        s["runs"] += 1
        if r.eta_nonnegative is False:
            s["negative_eta"] += 1
        for c in r.checks:
            if c.holds is False:
                s["violations"][c.name] = s["violations"].get(c.name, 0) + 1
            if c.holds is None:
                s["skipped"] += 1
        if r.ratio is not None and r.beta is not None:
            s["min_margin"] = min(s["min_margin"], r.ratio - r.beta)
    return out

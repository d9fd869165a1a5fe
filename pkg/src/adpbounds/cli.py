"""Command-line interface.

Exit codes: 0 success, 1 a check was violated, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import curvature as cv
from .control import brute_force_optimal, extract_optimal, solve_exact_dp
from .errors import AdpBoundsError, EnumerationBudgetExceeded
from .families import parse_family
from .greedy import verify_greedy_bounds
from .instances import gen_random_instance, resolve_instance
from .report import RunReport, to_csv, to_jsonl, to_text
from .runner import parse_scheme, summarize, verify_run
from .strings import DEFAULT_BUDGET

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_seeds(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        n = int(text)
        return range(n, n + 1)
    except ValueError:
        raise UsageError(f"bad seed range {text!r}; expected a..b") from None


def _emit(reports: list[RunReport], fmt: str, out) -> None:
    if fmt == "json":
        out.write(to_jsonl(reports))
    elif fmt == "csv":
        out.write(to_csv(reports))
    else:
        out.write("\n\n".join(to_text(r) for r in reports) + "\n")


def _cmd_solve(args, out) -> int:
    inst = resolve_instance(args.instance)
    table = solve_exact_dp(inst)
    o = extract_optimal(inst, table)
    v1 = table.value(1, inst.initial_state)
    record = {"instance_id": inst.name, "dp_value": v1, "dp_actions": list(o)}
    code = EXIT_OK
    try:
        s, v = brute_force_optimal(inst, args.budget)
    except EnumerationBudgetExceeded as exc:
        record.update(oracle="skipped", note=str(exc))
    else:
        agrees = v == v1 and s == o
        record.update(oracle_value=v, oracle_actions=list(s), oracle="pass" if agrees else "FAIL")
        code = EXIT_OK if agrees else EXIT_VIOLATION
    if args.format == "json":
        out.write(json.dumps(record) + "\n")
    elif args.format == "csv":
        keys = list(record)
        out.write(",".join(keys) + "\n")
        out.write(",".join(" ".join(map(str, v)) if isinstance(v, list) else str(v) for v in record.values()) + "\n")
    else:
        out.write(f"instance {inst.name}: K={inst.horizon} states={inst.state_count} actions={inst.action_count}\n")
        out.write(f"  DP      V_1(x_1) = {v1:.10g}  via {o}\n")
        if record["oracle"] == "skipped":
            out.write(f"  oracle  skipped ({record['note']})\n")
        else:
            out.write(f"  oracle  {record['oracle_value']:.10g}  via {tuple(record['oracle_actions'])}  [{record['oracle']}]\n")
    return code


def _cmd_adp(args, out) -> int:
    from .adp import induced_f, run_adp

    inst = resolve_instance(args.instance)
    w = parse_scheme(args.scheme, inst, args.seed)
    trace = run_adp(inst, w)
    f = induced_f(inst, w)
    rows = []
    for k, (a, x, r) in enumerate(zip(trace.actions, trace.states, trace.stage_rewards), start=1):
        rows.append(
            {"stage": k, "state": x, "action": a, "reward": r, "w": w.w(k, x, a),
             "f": f(trace.prefixes[k - 1]), "ties": trace.ties[k - 1]}
        )
    if args.format == "json":
        out.write(json.dumps({"instance_id": inst.name, "scheme": w.name, "actions": list(trace.actions),
                              "value": trace.total, "trace": rows}) + "\n")
    elif args.format == "csv":
        out.write("stage,state,action,reward,w,f,ties\n")
        for row in rows:
            out.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row.values()) + "\n")
    else:
        out.write(f"instance {inst.name}  scheme {w.name}\n")
        out.write("  k  state  action  reward      W_k+1       f(G_k)     ties\n")
        for row in rows:
            out.write(f"  {row['stage']:<2} {row['state']:<6} {row['action']:<7} {row['reward']:<11.6g} "
                      f"{row['w']:<11.6g} {row['f']:<10.6g} {row['ties']}\n")
        out.write(f"  actions {trace.actions}  value {trace.total:.10g}\n")
    return EXIT_OK


def _cmd_curvature(args, out) -> int:
    inst = resolve_instance(args.instance)
    w = parse_scheme(args.scheme, inst, args.seed)
    report = verify_run(inst, w, args.budget, all_optima=args.all_optima)
    report.checks = [c for c in report.checks if c.name in ("oracle",)]
    _emit([report], args.format, out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    inst = resolve_instance(args.instance)
    w = parse_scheme(args.scheme, inst, args.seed)
    report = verify_run(inst, w, args.budget, all_optima=args.all_optima)
    _emit([report], args.format, out)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _sweep_one(job):
    seed, states, actions, horizon, schemes, budget = job
    inst = gen_random_instance(seed, states, actions, horizon)
    return [verify_run(inst, parse_scheme(s, inst, seed), budget) for s in schemes]


def _cmd_sweep(args, out) -> int:
    seeds = _parse_seeds(args.seeds)
    schemes = [s for s in args.schemes.split(",") if s]
    jobs = [(s, args.states, args.actions, args.horizon, schemes, args.budget) for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            batches = list(pool.map(_sweep_one, jobs, chunksize=16))
    else:
        batches = [_sweep_one(j) for j in jobs]
    reports = [r for batch in batches for r in batch]
    if args.format in ("json", "csv"):
        _emit(reports, args.format, out)
    else:
        agg = summarize(reports)
        out.write(f"bounds sweep: seeds {seeds.start}..{seeds.stop - 1}, "
                  f"{args.states} states, {args.actions} actions, K={args.horizon}\n")
        out.write(f"  {'scheme':<18} {'runs':>5} {'beta viol':>9} {'other viol':>10} {'eta<0':>6} {'min(ratio-beta)':>16}\n")
        for scheme, s in agg.items():
            v3 = s["violations"].get("beta_floor", 0)
            other = sum(n for k, n in s["violations"].items() if k != "beta_floor")
            out.write(f"  {scheme:<18} {s['runs']:>5} {v3:>9} {other:>10} {s['negative_eta']:>6} {s['min_margin']:>16.6g}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def _cmd_submodular(args, out) -> int:
    K = args.horizon
    if args.cap is None:
        args.cap = parse_family(args.function).action_count
    f = parse_family(args.function, max_len=max(2 * K, args.cap + 2))
    cert = verify_greedy_bounds(f, K, args.cap, budget=args.budget)
    glob = cv.global_curvatures(f, args.cap)
    record = {
        "function": f.name,
        "horizon": K,
        "cap": args.cap,
        "sigma": glob.sigma,
        "epsilon": glob.epsilon,
        "eta": glob.eta,
        "exhaustive": glob.exhaustive,
        "forward_monotone": cert.submodularity.forward_monotone,
        "diminishing_returns": cert.submodularity.diminishing_returns,
        "counterexample": cert.submodularity.counterexample,
        "counterexample_action": cert.submodularity.counterexample_action,
        "backward_monotone": cert.backward_monotone,
        "greedy": list(cert.greedy.actions),
        "greedy_value": cert.greedy.value,
        "optimum": list(cert.optimum),
        "optimal_value": cert.optimal_value,
        "ratio": cert.ratio,
        "sigma_O": cert.sigma_o,
        "checks": [c.__dict__ for c in cert.checks],
    }
    if args.format == "json":
        out.write(json.dumps(record) + "\n")
    elif args.format == "csv":
        out.write("name,applicable,floor,holds,note\n")
        for c in cert.checks:
            out.write(f"{c.name},{c.applicable},{'' if c.floor is None else repr(c.floor)},"
                      f"{'' if c.holds is None else c.holds},{c.note}\n")
    else:
        out.write(f"{f.name}: K={K}, cap={args.cap}, {'exhaustive' if glob.exhaustive else 'truncated'} search\n")
        out.write(f"  sigma={glob.sigma:.6g}  epsilon={glob.epsilon:.6g}  eta={glob.eta:.6g}\n")
        sub = cert.submodularity
        out.write(f"  forward monotone {sub.forward_monotone}, diminishing returns {sub.diminishing_returns}, "
                  f"backward monotone {cert.backward_monotone}\n")
        if sub.counterexample is not None:
            out.write(f"  counterexample M={sub.counterexample[0]} N={sub.counterexample[1]}"
                      f" action={sub.counterexample_action}\n")
        out.write(f"  greedy {cert.greedy.actions} = {cert.greedy.value:.6g}, "
                  f"optimum {cert.optimum} = {cert.optimal_value:.6g}, ratio {cert.ratio:.6g}\n")
        for c in cert.checks:
            if c.applicable:
                status = "pass" if c.holds else "FAIL"
                out.write(f"  [{status:>6}] {c.name:<22} floor {c.floor:.6g}\n")
            else:
                out.write(f"  [   n/a] {c.name:<22} {c.note}\n")
    return EXIT_OK if cert.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for random base policies / VTG tables")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max strings enumerated by oracles")

    p = argparse.ArgumentParser(prog="adpbounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="exact DP with brute-force cross-check")
    s.add_argument("instance", help="instance file, or TINY")
    s.set_defaults(func=_cmd_solve)

    scheme_help = "myopic | optimal | rollout:<const<k>|myopic|random|table:FILE> | table[:FILE|:random]"
    for name, func, helptext in (
        ("adp", _cmd_adp, "run the ADP scheme and print its trace"),
        ("curvature", _cmd_curvature, "trajectory curvatures and beta"),
        ("verify", _cmd_verify, "all bound checks; exit 1 on violation"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("instance", help="instance file, or TINY")
        s.add_argument("--scheme", required=True, help=scheme_help)
        if name != "adp":
            s.add_argument("--all-optima", action="store_true", help="also report beta for every optimal string")
        s.set_defaults(func=func)

    s = sub.add_parser("bounds-sweep", parents=[common], help="batch verification over seeded random instances")
    s.add_argument("--seeds", required=True, help="seed range a..b (inclusive)")
    s.add_argument("--states", type=int, required=True)
    s.add_argument("--actions", type=int, required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--schemes", default="myopic,optimal,rollout:myopic,rollout:const0,rollout:random,table:random")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=_cmd_sweep)

    s = sub.add_parser("submodular", parents=[common], help="greedy bounds for a built-in string function")
    s.add_argument("function", help="additive[:n] | exponential[:n] | coverage:<seed>[:n[:universe]] | discounted:<seed>[:n[:gamma]]")
    s.add_argument("--horizon", type=int, default=3)
    s.add_argument("--cap", type=int, default=None, help="curvature search cap (default: action count)")
    s.set_defaults(func=_cmd_submodular)
    return p


def run_cli(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, AdpBoundsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

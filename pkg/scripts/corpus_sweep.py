"""Run every check on the seeded corpus and summarize per VTG kind.

    python scripts/corpus_sweep.py --n 1000 --csv sweep.csv
"""

import argparse
import sys

from adpbounds.control import myopic_policy
from adpbounds.adp import rollout_vtg
from adpbounds.corpus import corpus
from adpbounds.report import to_csv
from adpbounds.runner import summarize, verify_run


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--csv", help="write per-run rows here")
    args = p.parse_args(argv)

    reports = []
    for e in corpus(args.n, args.start):
        schemes = e.schemes() + [rollout_vtg(e.instance, myopic_policy(e.instance), "rollout:myopic")]
        reports.extend(verify_run(e.instance, w) for w in schemes)

    print(f"{'scheme':<16} {'runs':>5} {'eta<0':>6} {'min ratio-beta':>15}  violations")
    for scheme, s in summarize(reports).items():
        viol = ", ".join(f"{k}={v}" for k, v in sorted(s["violations"].items())) or "-"
        print(f"{scheme:<16} {s['runs']:>5} {s['negative_eta']:>6} {s['min_margin']:>15.6g}  {viol}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(to_csv(reports))
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

"""Greedy vs optimum on random weighted-coverage string functions.

Prints the worst observed ratio next to each curvature floor.

    python scripts/coverage_bounds.py --count 300 --max-horizon 5
"""

import argparse

from adpbounds.families import random_coverage
from adpbounds.greedy import UNIVERSAL, verify_greedy_bounds


def main(argv=None):
    p = argparse.ArgumentParser(description="greedy bounds on coverage functions")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-actions", type=int, default=4)
    p.add_argument("--max-horizon", type=int, default=5)
    p.add_argument("--universe", type=int, default=10)
    p.add_argument("--max-set-size", type=int, default=4)
    args = p.parse_args(argv)

    worst_ratio, slack = 1.0, {}
    for seed in range(args.count):
        A = 2 + seed % (args.max_actions - 1)
        K = 1 + (seed // 3) % args.max_horizon
        f = random_coverage(seed, A, args.universe, max_len=max(2 * K, A + 2), max_set_size=args.max_set_size)
        cert = verify_greedy_bounds(f, K, cap=A)
        worst_ratio = min(worst_ratio, cert.ratio)
        for c in cert.checks:
            if c.applicable:
                slack[c.name] = min(slack.get(c.name, 1.0), cert.ratio - c.floor)
    print(f"worst greedy/optimal ratio {worst_ratio:.4f}  (1-1/e = {UNIVERSAL:.4f})")
    for name, s in sorted(slack.items()):
        print(f"  {name:<22} min(ratio - floor) = {s:+.4f}")


if __name__ == "__main__":
    main()

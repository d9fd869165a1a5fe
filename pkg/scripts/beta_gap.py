"""Relate failures of the beta floor to negative elemental curvatures.

For every corpus run the script records whether f(G_K) >= beta f(O_K)
holds and whether every eta_k along O_K is nonnegative, then prints the
two-way table and the worst offenders.

    python scripts/beta_gap.py --n 2000
"""

import argparse
from collections import Counter

from adpbounds import bounds
from adpbounds.corpus import corpus


def main(argv=None):
    p = argparse.ArgumentParser(description="beta floor vs sign of eta")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--show", type=int, default=5)
    args = p.parse_args(argv)

    table = Counter()
    worst = []
    for e in corpus(args.n):
        for w in e.schemes():
            cr = bounds.verify_thm3(e.instance, w)
            holds = cr.check("beta_floor").holds
            table[(w.name, cr.eta_nonnegative, holds)] += 1
            if not holds:
                worst.append((cr.check("beta_floor").margin / cr.optimal_value, e.seed, w.name, cr))

    print(f"{'scheme':<16} {'eta>=0':>7} {'floor holds':>12} {'runs':>6}")
    for (name, nonneg, holds), n in sorted(table.items()):
        print(f"{name:<16} {str(nonneg):>7} {str(holds):>12} {n:>6}")
    worst.sort(key=lambda t: t[0])
    for rel, seed, name, cr in worst[: args.show]:
        print(f"\nseed {seed} {name}: relative shortfall {rel:.4g}")
        print(f"  G={cr.greedy} f={cr.greedy_value:.6g}  O={cr.optimal} f={cr.optimal_value:.6g}")
        print(f"  eps={[round(x, 4) for x in cr.epsilons]}")
        print(f"  eta={[round(x, 4) for x in cr.etas]}  beta={cr.beta:.4g}")


if __name__ == "__main__":
    main()

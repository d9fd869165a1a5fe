"""Built-in string-function families used by tests and the ``submodular`` command."""

from __future__ import annotations

import random
from typing import Sequence

from .strings import StringFunction


def additive(action_count: int = 2, max_len: int = 8) -> StringFunction:
    """f(M) = |M|."""
    return StringFunction(lambda s: float(len(s)), action_count, max_len, name="additive")


def exponential(action_count: int = 1, max_len: int = 8) -> StringFunction:
    """f(M) = 2^|M| - 1: forward monotone but with increasing returns."""
    return StringFunction(
        lambda s: float(2 ** len(s) - 1), action_count, max_len, name="exponential"
    )


def coverage(
    sets: Sequence[Sequence[int]],
    weights: dict[int, float] | None = None,
    max_len: int = 8,
) -> StringFunction:
    """Weighted coverage: f(M) = total weight of the union of the sets chosen by M.

    Action ``a`` selects ``sets[a]``; ``weights`` defaults to unit weight.
    """
    frozen = [frozenset(s) for s in sets]
    weights = dict(weights) if weights is not None else {}

    def value(s):
        covered = set()
        for a in s:
            covered |= frozen[a]
        return sum(weights.get(e, 1.0) for e in sorted(covered))

    return StringFunction(value, len(frozen), max_len, name="coverage", set_valued=True)


def random_coverage(
    seed: int,
    action_count: int = 3,
    universe: int = 6,
    max_len: int = 8,
    max_set_size: int | None = None,
) -> StringFunction:
    """Coverage function with random nonempty sets and weights in (0, 1].

    Small ``max_set_size`` leaves more of the universe uncovered, which is
    where greedy can fall short of the optimum.
    """
    rng = random.Random(seed)
    weights = {e: round(rng.uniform(0.05, 1.0), 6) for e in range(universe)}
    top = universe if max_set_size is None else max(1, min(max_set_size, universe))
    sets = []
    for _ in range(action_count):
        size = rng.randint(1, top)
        sets.append(sorted(rng.sample(range(universe), size)))
    f = coverage(sets, weights, max_len=max_len)
    f.name = f"coverage:{seed}"
    f.sets = sets
    f.weights = weights
    return f


def discounted_additive(
    values: Sequence[float], gamma: float, max_len: int = 8
) -> StringFunction:
    """f(M) = sum_i gamma^(i-1) * values[m_i]; string submodular for 0 < gamma <= 1."""
    vals = [float(v) for v in values]

    def value(s):
        total = 0.0
        weight = 1.0
        for a in s:
            total += weight * vals[a]
            weight *= gamma
        return total

    return StringFunction(value, len(vals), max_len, name=f"discounted:{gamma}")


def random_discounted(
    seed: int, action_count: int = 3, gamma: float | None = None, max_len: int = 8
) -> StringFunction:
    rng = random.Random(seed)
    if gamma is None:
        gamma = round(rng.uniform(0.3, 1.0), 6)
    values = [round(rng.uniform(0.1, 1.0), 6) for _ in range(action_count)]
    f = discounted_additive(values, gamma, max_len=max_len)
    f.name = f"discounted:{seed}"
    return f


def parse_family(spec: str, max_len: int = 8) -> StringFunction:
    """Build a family member from a CLI spec.

    ``additive[:n]``, ``exponential[:n]``, ``coverage:<seed>[:n[:universe]]``,
    ``discounted:<seed>[:n[:gamma]]``.
    """
    name, *args = spec.split(":")
    try:
        if name == "additive":
            return additive(int(args[0]) if args else 2, max_len)
        if name == "exponential":
            return exponential(int(args[0]) if args else 1, max_len)
        if name == "coverage":
            seed = int(args[0]) if args else 0
            n = int(args[1]) if len(args) > 1 else 3
            universe = int(args[2]) if len(args) > 2 else 6
            return random_coverage(seed, n, universe, max_len)
        if name == "discounted":
            seed = int(args[0]) if args else 0
            n = int(args[1]) if len(args) > 1 else 3
            gamma = float(args[2]) if len(args) > 2 else None
            return random_discounted(seed, n, gamma, max_len)
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad function spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown function family {name!r}")

"""The seeded random corpus shared by the acceptance suite, sweeps and scripts.

Every corpus instance is paired with the four VTG kinds: myopic, exact
(optimal base), rollout over a random stage-dependent base policy, and a
random nonnegative W table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adp import VtgApproximator, myopic_vtg, optimal_vtg, random_vtg_table, rollout_vtg, table_vtg
from .control import ControlInstance
from .instances import gen_random_instance

MAX_STATES = 4
MAX_ACTIONS = 3
MAX_HORIZON = 6


@dataclass(frozen=True)
class CorpusEntry:
    seed: int
    instance: ControlInstance
    base: np.ndarray

    def schemes(self) -> list[VtgApproximator]:
        return [
            myopic_vtg(),
            optimal_vtg(self.instance),
            rollout_vtg(self.instance, self.base, "rollout:random"),
            table_vtg(self.instance, random_vtg_table(self.instance, self.seed), "table:random"),
        ]


def random_policy(inst: ControlInstance, seed: int) -> np.ndarray:
    rng = np.random.default_rng([seed, 1])
    return rng.integers(0, inst.action_count, size=(inst.horizon, inst.state_count))


def corpus_entry(seed: int) -> CorpusEntry:
    rng = np.random.default_rng([seed, 0])
    S = int(rng.integers(1, MAX_STATES + 1))
    A = int(rng.integers(1, MAX_ACTIONS + 1))
    K = int(rng.integers(1, MAX_HORIZON + 1))
    inst = gen_random_instance(seed, S, A, K)
    return CorpusEntry(seed, inst, random_policy(inst, seed))


def corpus(n: int, start: int = 0) -> list[CorpusEntry]:
    return [corpus_entry(s) for s in range(start, start + n)]

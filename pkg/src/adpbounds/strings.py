"""Action strings and evaluable string functions.

An action string is a plain tuple of dense action indices ``0..n-1``; the
empty tuple is the empty string. String functions wrap a callable and are
marginalized at construction so that ``f(()) == 0``.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator, Sequence

from .errors import DomainTooSmall, EnumerationBudgetExceeded, StringTooLong

ActionString = tuple[int, ...]

EMPTY: ActionString = ()
DEFAULT_BUDGET = 10**7
TOL = 1e-9


def concat(m: Sequence[int], n: Sequence[int]) -> ActionString:
    return tuple(m) + tuple(n)


def is_prefix(m: Sequence[int], n: Sequence[int]) -> bool:
    """True iff ``n == m + L`` for some string ``L``."""
    return len(m) <= len(n) and tuple(n[: len(m)]) == tuple(m)


def prefixes(s: Sequence[int]) -> list[ActionString]:
    """All prefixes of ``s`` from the empty string up to ``s`` itself."""
    s = tuple(s)
    return [s[:k] for k in range(len(s) + 1)]


def string_count(action_count: int, length: int) -> int:
    return action_count**length


def check_budget(count: int, budget: int | None = DEFAULT_BUDGET) -> None:
    if budget is not None and count > budget:
        raise EnumerationBudgetExceeded(
            f"{count} strings exceeds enumeration budget {budget}"
        )


def enumerate_strings(
    action_count: int, length: int, budget: int | None = DEFAULT_BUDGET
) -> Iterator[ActionString]:
    """Yield every string of exactly ``length`` actions in lexicographic order."""
    if action_count < 1:
        raise ValueError("action_count must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    check_budget(string_count(action_count, length), budget)
    return itertools.product(range(action_count), repeat=length)


def enumerate_upto(
    action_count: int, max_length: int, budget: int | None = DEFAULT_BUDGET
) -> Iterator[ActionString]:
    """Strings of length ``0..max_length``, shortest first, lexicographic within a length."""
    total = sum(string_count(action_count, n) for n in range(max_length + 1))
    check_budget(total, budget)
    for n in range(max_length + 1):
        yield from itertools.product(range(action_count), repeat=n)


class StringFunction:
    """A real-valued function on action strings of bounded length.

    ``raw`` is called on tuples; the value at the empty string is subtracted
    once here so every evaluation satisfies ``f(()) == 0``. Values are cached,
    which keeps repeated curvature searches cheap and makes evaluation
    bit-for-bit deterministic.

    ``set_valued`` marks functions that depend only on the *set* of actions
    in the string (e.g. coverage). For those, searching strings of length up
    to ``action_count`` already visits every distinct value, which lets the
    curvature routines report an exhaustive search.
    """

    def __init__(
        self,
        raw: Callable[[ActionString], float],
        action_count: int,
        max_len: int,
        name: str = "f",
        set_valued: bool = False,
    ):
        if action_count < 1:
            raise ValueError("action_count must be >= 1")
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        self._raw = raw
        self.action_count = action_count
        self.max_len = max_len
        self.name = name
        self.set_valued = set_valued
        self.offset = float(raw(EMPTY))
        self._cache: dict[ActionString, float] = {EMPTY: 0.0}

    def __call__(self, s: Sequence[int]) -> float:
        s = tuple(s)
        try:
            return self._cache[s]
        except KeyError:
            pass
        if len(s) > self.max_len:
            raise StringTooLong(f"|s|={len(s)} exceeds max_len={self.max_len}")
        for a in s:
            if not 0 <= a < self.action_count:
                raise ValueError(f"action {a} out of range 0..{self.action_count - 1}")
        value = float(self._raw(s)) - self.offset
        self._cache[s] = value
        return value

    def __repr__(self) -> str:
        return (
            f"StringFunction({self.name!r}, action_count={self.action_count}, "
            f"max_len={self.max_len})"
        )

    def require_len(self, needed: int) -> None:
        if self.max_len < needed:
            raise DomainTooSmall(
                f"{self.name}: needs strings of length {needed}, max_len={self.max_len}"
            )

    def covers(self, cap: int, extra: int) -> bool:
        """Whether a search over prefixes of length <= cap is exhaustive."""
        if cap + extra >= self.max_len:
            return True
        return self.set_valued and cap >= self.action_count

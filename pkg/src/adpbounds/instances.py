"""Instance files, the TINY worked example, and random instance generation.

Instance files are JSON with an explicit ``schema_version``. Arrays are
row-major with index order ``[stage][state][action]`` and 0-based stage rows:
``rewards`` has K rows (stages 1..K), ``transitions`` K-1 rows (stages
1..K-1), and the optional ``vtg_table`` K-1 rows holding W_{k+1}(x, a) for
k = 1..K-1.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .control import ControlInstance
from .errors import ParseError, ValidationError

SCHEMA_VERSION = 1
DEFAULT_GRID = 2.0**-8


def builtin_tiny() -> ControlInstance:
    """Two states, two actions, K = 2, x_1 = 0, h_k(x, a) = a."""
    return ControlInstance(
        rewards=[[[1.0, 2.0], [1.0, 1.0]], [[5.0, 1.0], [1.0, 1.0]]],
        transitions=[[[0, 1], [0, 1]]],
        initial_state=0,
        name="TINY",
    )


def gen_random_instance(
    seed: int,
    state_count: int,
    action_count: int,
    horizon: int,
    reward_range: tuple[float, float] = (0.5, 2.0),
    grid: Optional[float] = DEFAULT_GRID,
) -> ControlInstance:
    """Seeded random instance with uniform rewards and uniform transitions.

    With ``grid`` set, rewards are drawn uniformly from the multiples of
    ``grid`` inside ``reward_range``; a dyadic grid keeps every sum of a few
    rewards exact in double precision, so equality checks between
    independently summed totals are meaningful. ``grid=None`` draws from the
    continuous uniform distribution.
    """
    low, high = reward_range
    if not low > 0:
        raise ValueError(f"reward_range lower bound must be > 0, got {low!r}")
    if high < low:
        raise ValueError(f"empty reward_range {reward_range!r}")
    rng = np.random.default_rng(seed)
    shape = (horizon, state_count, action_count)
    if grid:
        lo, hi = math.ceil(low / grid), math.floor(high / grid)
        if hi < lo:
            raise ValueError(f"no multiple of {grid} inside {reward_range!r}")
        rewards = rng.integers(lo, hi + 1, size=shape) * grid
    else:
        rewards = rng.uniform(low, high, size=shape)
    transitions = rng.integers(0, state_count, size=(horizon - 1, state_count, action_count))
    return ControlInstance(rewards, transitions, 0, name=f"random-{seed}")


def _to_jsonable(inst: ControlInstance) -> dict[str, Any]:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": inst.name,
        "state_count": inst.state_count,
        "action_count": inst.action_count,
        "horizon": inst.horizon,
        "initial_state": inst.initial_state,
        "rewards": inst.rewards.tolist(),
        "transitions": inst.transitions.tolist(),
    }
    if inst.action_names is not None:
        doc["action_names"] = list(inst.action_names)
    if inst.vtg_table is not None:
        doc["vtg_table"] = inst.vtg_table.tolist()
    return doc


def dumps_instance(inst: ControlInstance) -> str:
    return json.dumps(_to_jsonable(inst), indent=1)


def save_instance(inst: ControlInstance, path) -> None:
    Path(path).write_text(dumps_instance(inst) + "\n")


def _check_shape(field: str, value, shape: tuple[int, ...], prefix: str = "") -> None:
    where = f"{field}{prefix}"
    if not shape:
        if isinstance(value, (list, dict)) or isinstance(value, bool):
            raise ValidationError(f"{where}: expected a number, got {type(value).__name__}")
        if not isinstance(value, (int, float)):
            raise ValidationError(f"{where}: expected a number, got {value!r}")
        return
    if not isinstance(value, list):
        raise ValidationError(f"{where}: expected a list of length {shape[0]}")
    if len(value) != shape[0]:
        raise ValidationError(f"{where}: length {len(value)} != {shape[0]}")
    for i, item in enumerate(value):
        _check_shape(field, item, shape[1:], f"{prefix}[{i}]")


def _require_int(doc, key, minimum):
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise ValidationError(f"{key}: expected an integer >= {minimum}, got {v!r}")
    return v


def parse_instance(doc: Any, name: str = "instance") -> ControlInstance:
    if not isinstance(doc, dict):
        raise ValidationError("instance file must hold a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValidationError(f"schema_version: expected {SCHEMA_VERSION}, got {version!r}")
    S = _require_int(doc, "state_count", 1)
    A = _require_int(doc, "action_count", 1)
    K = _require_int(doc, "horizon", 1)
    x1 = _require_int(doc, "initial_state", 0)
    if x1 >= S:
        raise ValidationError(f"initial_state: {x1} not in 0..{S - 1}")
    for key in ("rewards", "transitions"):
        if key not in doc:
            raise ValidationError(f"{key}: missing")
    _check_shape("rewards", doc["rewards"], (K, S, A))
    _check_shape("transitions", doc["transitions"], (K - 1, S, A))
    for k, stage in enumerate(doc["rewards"]):
        for x, row in enumerate(stage):
            for a, v in enumerate(row):
                if not (math.isfinite(v) and v > 0):
                    raise ValidationError(f"rewards[{k}][{x}][{a}] = {v!r} must be a finite value > 0")
    for k, stage in enumerate(doc["transitions"]):
        for x, row in enumerate(stage):
            for a, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < S:
                    raise ValidationError(f"transitions[{k}][{x}][{a}] = {v!r} not in 0..{S - 1}")
    names = doc.get("action_names")
    if names is not None:
        if not isinstance(names, list) or len(names) != A or not all(isinstance(n, str) for n in names):
            raise ValidationError(f"action_names: expected {A} strings")
    vtg = doc.get("vtg_table")
    if vtg is not None:
        _check_shape("vtg_table", vtg, (K - 1, S, A))
    rewards = np.array(doc["rewards"], dtype=float)
    transitions = np.array(doc["transitions"], dtype=np.int64).reshape(K - 1, S, A)
    vtg_arr = None if vtg is None else np.array(vtg, dtype=float).reshape(K - 1, S, A)
    return ControlInstance(
        rewards, transitions, x1, name=doc.get("name", name), action_names=names, vtg_table=vtg_arr
    )


def loads_instance(text: str, name: str = "instance") -> ControlInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: {exc}") from None
    return parse_instance(doc, name)


def load_instance(path) -> ControlInstance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return loads_instance(text, name=path.stem)


def load_json_array(path, key: str):
    """Read ``key`` from a JSON file holding either an object or a bare array."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    if isinstance(doc, dict):
        if key not in doc:
            raise ValidationError(f"{path}: missing {key!r}")
        return doc[key]
    return doc


def resolve_instance(ref: str) -> ControlInstance:
    """A path to an instance file, or the name of the built-in ``TINY`` instance."""
    if ref.upper() == "TINY" and not Path(ref).exists():
        return builtin_tiny()
    return load_instance(ref)

"""Run reports and their JSON-lines / CSV / text renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

# stable check column order for CSV output
CHECK_NAMES = (
    "beta_floor",
    "telescoping",
    "first_step",
    "curvature_sum",
    "expanded_general",
    "expanded_rollout",
    "rollout_monotone",
    "myopic_eps",
    "optimal_pattern",
    "improvement",
    "oracle",
)
COLUMNS = ("instance_id", "scheme", "adp_value", "optimal_value", "ratio", "beta")


@dataclass
class CheckResult:
    name: str
    holds: Optional[bool]  # None means skipped
    margin: Optional[float] = None
    note: str = ""

    @property
    def status(self) -> str:
        return "skipped" if self.holds is None else ("pass" if self.holds else "FAIL")


@dataclass
class RunReport:
    instance_id: str
    scheme: str
    adp_value: float
    optimal_value: Optional[float]
    ratio: Optional[float]
    beta: Optional[float]
    epsilons: list[float] = field(default_factory=list)
    etas: list[float] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)
    adp_actions: tuple = ()
    optimal_actions: Optional[tuple] = None
    eta_nonnegative: Optional[bool] = None
    shift_applied: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def violations(self) -> list[CheckResult]:
        return [c for c in self.checks if c.holds is False]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = asdict(self)
        d["adp_actions"] = list(self.adp_actions)
        d["optimal_actions"] = None if self.optimal_actions is None else list(self.optimal_actions)
        return d


def to_jsonl(reports: Iterable[RunReport]) -> str:
    return "".join(json.dumps(r.to_dict()) + "\n" for r in reports)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(reports: Iterable[RunReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS + ("epsilons", "etas") + CHECK_NAMES)
    for r in reports:
        status = {c.name: c.status for c in r.checks}
        writer.writerow(
            [_fmt(getattr(r, c)) for c in COLUMNS]
            + [" ".join(map(repr, r.epsilons)), " ".join(map(repr, r.etas))]
            + [status.get(n, "") for n in CHECK_NAMES]
        )
    return buf.getvalue()


def _seq(xs) -> str:
    return "(" + ", ".join(f"{x:.6g}" for x in xs) + ")"


def to_text(report: RunReport) -> str:
    lines = [f"instance {report.instance_id}  scheme {report.scheme}"]
    lines.append(f"  ADP actions     {tuple(report.adp_actions)}  value {report.adp_value:.10g}")
    if report.optimal_value is not None:
        lines.append(
            f"  optimal actions {tuple(report.optimal_actions)}  value {report.optimal_value:.10g}"
        )
    if report.ratio is not None:
        lines.append(f"  ratio           {report.ratio:.10g}")
    if report.beta is not None:
        lines.append(f"  beta            {report.beta:.10g}")
    if report.epsilons:
        lines.append(f"  eps             {_seq(report.epsilons)}")
        lines.append(f"  eta             {_seq(report.etas)}")
    if report.shift_applied:
        lines.append(f"  W shift         {report.shift_applied:.6g}")
    if report.eta_nonnegative is False:
        lines.append("  note            some eta_k < 0 (f not monotone along O_K)")
    for c in report.checks:
        margin = "" if c.margin is None else f"  margin {c.margin:+.3g}"
        note = f"  ({c.note})" if c.note else ""
        lines.append(f"  [{c.status:>7}] {c.name}{margin}{note}")
    for n in report.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines)

"""Verification reports: tallies, serialization, and trace export."""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

SCHEMA_VERSION = 1

# outcome kinds a predicate may return
NOT_APPLICABLE = "not-applicable"
BELOW_BOUND = "below-bound"
CLASS_MEMBER = "class-member"
PASSED = "passed"
VIOLATION = "violation"
OUTCOME_KINDS = (NOT_APPLICABLE, BELOW_BOUND, CLASS_MEMBER, PASSED, VIOLATION)


@dataclass(frozen=True)
class Outcome:
    kind: str
    label: str | None = None
    diagnosis: str = ""

    def __post_init__(self):
        if self.kind not in OUTCOME_KINDS:
            raise ValueError(f"unknown outcome kind {self.kind!r}")


@dataclass
class Tally:
    """Outcome counts for one (n, k) cell.  ``checked`` always equals the sum of the kinds."""

    kinds: Counter = field(default_factory=Counter)
    labels: Counter = field(default_factory=Counter)
    max_edges: int | None = None

    def add(self, outcome: Outcome, edges: int | None = None) -> None:
        self.kinds[outcome.kind] += 1
        if outcome.kind == CLASS_MEMBER:
            self.labels[outcome.label or "?"] += 1
        if edges is not None and outcome.kind != NOT_APPLICABLE:
            self.max_edges = edges if self.max_edges is None else max(self.max_edges, edges)

    def merge(self, other: "Tally") -> None:
        self.kinds.update(other.kinds)
        self.labels.update(other.labels)
        if other.max_edges is not None:
            self.max_edges = other.max_edges if self.max_edges is None else max(self.max_edges, other.max_edges)

    @property
    def checked(self) -> int:
        return sum(self.kinds.values())

    def as_dict(self) -> dict:
        out = {
            "checked": self.checked,
            "not_applicable": self.kinds[NOT_APPLICABLE],
            "passed": self.kinds[PASSED] + self.kinds[BELOW_BOUND] + self.kinds[CLASS_MEMBER],
            "below_bound": self.kinds[BELOW_BOUND],
            "class_member": {k: self.labels[k] for k in sorted(self.labels)},
            "violations": self.kinds[VIOLATION],
        }
        if self.max_edges is not None:
            out["max_edges"] = self.max_edges
        return out


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    coverage_mode: str = "exhaustive"
    cells: dict[tuple[int, int], Tally] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    runtime_ms: int = 0
    notes: list[str] = field(default_factory=list)

    def record(self, n: int, k: int, outcome: Outcome, graph6: str | None = None,
               edges: int | None = None) -> None:
        self.cells.setdefault((n, k), Tally()).add(outcome, edges)
        if outcome.kind == VIOLATION:
            self.violations.append({"graph6": graph6 or "", "n": n, "k": k, "diagnosis": outcome.diagnosis})

    def merge(self, other: "VerificationReport") -> None:
        for key, tally in other.cells.items():
            self.cells.setdefault(key, Tally()).merge(tally)
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    def totals(self) -> Tally:
        total = Tally()
        for key in sorted(self.cells):
            total.merge(self.cells[key])
        return total

    @property
    def checked(self) -> int:
        return self.totals().checked

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        counts = self.totals().as_dict()
        counts["by_cell"] = [{"n": n, "k": k, **self.cells[(n, k)].as_dict()} for n, k in sorted(self.cells)]
        return {
            "schema_version": SCHEMA_VERSION,
            "theorem": self.theorem,
            "params": self.params,
            "counts": counts,
            "violations": list(self.violations),
            "runtime_ms": self.runtime_ms,
            "coverage_mode": self.coverage_mode,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema_version')!r}")
        rep = cls(data["theorem"], data["params"], data["coverage_mode"], runtime_ms=data["runtime_ms"],
                  violations=list(data["violations"]), notes=list(data.get("notes", [])))
        for cell in data["counts"]["by_cell"]:
            t = Tally()
            t.kinds[NOT_APPLICABLE] = cell["not_applicable"]
            t.kinds[BELOW_BOUND] = cell["below_bound"]
            t.labels.update(cell["class_member"])
            t.kinds[CLASS_MEMBER] = sum(cell["class_member"].values())
            t.kinds[VIOLATION] = cell["violations"]
            t.kinds[PASSED] = cell["passed"] - cell["below_bound"] - t.kinds[CLASS_MEMBER]
            t.kinds = +t.kinds
            t.max_edges = cell.get("max_edges")
            rep.cells[(cell["n"], cell["k"])] = t
        return rep


CSV_COLUMNS = ("theorem", "n", "k", "checked", "not_applicable", "passed", "below_bound",
               "class_member", "violations", "coverage_mode")


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.as_dict(), indent=2) + "\n"


def report_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for n, k in sorted(report.cells):
        d = report.cells[(n, k)].as_dict()
        members = ";".join(f"{lab}={c}" for lab, c in d["class_member"].items())
        w.writerow([report.theorem, n, k, d["checked"], d["not_applicable"], d["passed"], d["below_bound"],
                    members, d["violations"], report.coverage_mode])
    return buf.getvalue()


def report_text(report: VerificationReport) -> str:
    tot = report.totals().as_dict()
    lines = [
        f"{report.theorem} [{report.coverage_mode}] params={json.dumps(report.params, sort_keys=False)}",
        f"  checked={tot['checked']} passed={tot['passed']} below_bound={tot['below_bound']} "
        f"not_applicable={tot['not_applicable']} violations={tot['violations']}",
    ]
    if tot["class_member"]:
        lines.append("  class members: " + ", ".join(f"{k}={v}" for k, v in tot["class_member"].items()))
    for note in report.notes:
        lines.append(f"  note: {note}")
    for v in report.violations[:20]:
        lines.append(f"  VIOLATION n={v['n']} k={v['k']} {v['graph6']}: {v['diagnosis']}")
    if len(report.violations) > 20:
        lines.append(f"  ... {len(report.violations) - 20} more")
    lines.append(f"  runtime {report.runtime_ms} ms")
    return "\n".join(lines) + "\n"


_FORMATTERS = {"json": report_json, "csv": report_csv, "text": report_text}


def emit_report(report: VerificationReport, fmt: str = "json", out: str | Path | TextIO | None = None) -> str:
    """Render ``report`` in ``fmt`` and write it to ``out`` (path or stream) when given."""
    if fmt not in _FORMATTERS:
        raise ValueError(f"unknown report format {fmt!r}")
    text = _FORMATTERS[fmt](report)
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
    else:
        Path(out).write_text(text)
    return text


def load_report(path: str | Path) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(Path(path).read_text()))


def trace_json(trace, audit=None) -> str:
    """Serialize a procedure trace (and optionally its audit) as JSON."""
    from .graph6 import encode

    data = {
        "schema_version": SCHEMA_VERSION,
        "k": trace.k,
        "t": trace.t,
        "initial": encode(trace.initial),
        "final": encode(trace.final),
        "m": trace.m,
        "within_hypotheses": trace.within_hypotheses,
        "notes": list(trace.notes),
        "steps": [s.as_dict() for s in trace.steps],
    }
    if audit is not None:
        data["audit"] = {
            "checks": audit.checks,
            "violations": list(audit.violations),
            "final_structure": audit.final_structure,
        }
    return json.dumps(data, indent=2) + "\n"

"""Check records and their JSON serialization."""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["CheckRecord", "Report", "STATUSES", "jsonable"]

STATUSES = ("pass", "fail", "skip")
FORMAT = "spindex-report"
VERSION = 1


def jsonable(x):
    """Convert exact values (Fractions, tuples, objects with __str__) to JSON-safe data."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    return str(x)


@dataclass
class CheckRecord:
    name: str
    anchor: str
    status: str
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}")
        self.witness = jsonable(self.witness)

    def to_dict(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "status": self.status, "witness": self.witness}

    @classmethod
    def from_dict(cls, d: dict) -> CheckRecord:
        return cls(d["name"], d["anchor"], d["status"], d.get("witness", {}))

    def line(self) -> str:
        tag = self.status.upper()
        extra = ""
        if self.witness:
            brief = ", ".join(f"{k}={_brief(v)}" for k, v in self.witness.items())
            extra = f"  ({brief})"
        return f"{tag:<4}  {self.name}  [{self.anchor}]{extra}"


def _brief(v, limit: int = 60) -> str:
    s = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
    return s if len(s) <= limit else s[: limit - 3] + "..."


@dataclass
class Report:
    command: str
    records: list = field(default_factory=list)
    lines: list = field(default_factory=list)  # extra human-readable output, e.g. verdicts

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def extend(self, records: Iterable[CheckRecord]) -> None:
        self.records.extend(records)

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts()["fail"] == 0

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "version": VERSION,
            "command": self.command,
            "records": [r.to_dict() for r in self.records],
            "lines": list(self.lines),
            "summary": self.counts(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        if d.get("format") != FORMAT or d.get("version") != VERSION:
            raise ValueError("not a spindex report (format/version mismatch)")
        rep = cls(d["command"], [CheckRecord.from_dict(r) for r in d["records"]], list(d.get("lines", [])))
        if rep.counts() != d.get("summary"):
            raise ValueError("report summary does not match its records")
        return rep

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def text(self) -> str:
        out = [r.line() for r in self.records]
        out.extend(self.lines)
        c = self.counts()
        out.append(f"summary: {c['pass']} pass, {c['fail']} fail, {c['skip']} skip")
        return "\n".join(out)

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_dict() == other.to_dict()

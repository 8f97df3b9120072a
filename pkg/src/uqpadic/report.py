"""Verification reports: an ordered list of check records plus a header."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    header: dict = field(default_factory=dict)

    def add(self, check: str, instance, passed: bool, **witness) -> bool:
        rec = {"check": check, "instance": instance, "pass": bool(passed)}
        rec.update(witness)
        self.checks.append(rec)
        return bool(passed)

    def extend(self, other: "Report") -> None:
        for rec in other.checks:
            rec = dict(rec)
            rec["check"] = f"{other.suite}/{rec['check']}" if other.suite != self.suite else rec["check"]
            self.checks.append(rec)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c["pass"]]

    def min_of(self, key: str):
        vals = [c[key] for c in self.checks if key in c and c[key] is not None]
        return min(vals) if vals else None

    def sorted(self) -> "Report":
        key = lambda c: (c["check"], json.dumps(c["instance"], sort_keys=True, default=str))
        return Report(self.suite, sorted(self.checks, key=key), dict(self.header))

    def to_json(self) -> dict:
        return {"suite": self.suite, "header": self.header, "pass": self.passed, "checks": self.checks}

    def summary(self) -> str:
        bad = len(self.failures)
        return f"{self.suite}: {len(self.checks) - bad}/{len(self.checks)} checks passed"

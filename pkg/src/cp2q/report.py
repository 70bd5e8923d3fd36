"""Structured pass/fail reports shared by the verification routines."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    residual: Any = None
    value: Any = None
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("passed")
        d["status"] = self.status
        for key in ("residual", "value"):
            if d[key] is not None and not isinstance(d[key], (int, float, str, bool, list, dict)):
                d[key] = str(d[key])
        return d


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def add(self, name: str, anchor: str, passed: bool, residual=None, value=None, detail: str = "") -> Check:
        c = Check(name, anchor, bool(passed), residual, value, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.anchor, c.passed, c.residual, c.value, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks], "config": self.config}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def __bool__(self) -> bool:
        return self.passed

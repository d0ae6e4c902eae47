"""Tiny pass/fail check aggregation shared by verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass" | "fail" | "inconclusive"
    witness: object = None

    @staticmethod
    def of(name: str, ok: bool, witness: object = None) -> "Check":
        return Check(name, "pass" if ok else "fail", witness)


@dataclass
class CheckReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: object = None) -> None:
        self.checks.append(Check.of(name, ok, witness))

    def add_inconclusive(self, name: str, witness: object = None) -> None:
        self.checks.append(Check(name, "inconclusive", witness))

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "pass": self.ok,
            "checks": [
                {"name": c.name, "status": c.status}
                | ({"witness": c.witness} if c.witness is not None else {})
                for c in self.checks
            ],
        }

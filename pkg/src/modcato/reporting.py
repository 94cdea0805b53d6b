"""Structured pass/fail reports for the verification entry points."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckRecord:
    identity: str
    left: object
    right: object

    @property
    def passed(self) -> bool:
        return self.left == self.right

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "left": self.left,
            "right": self.right,
            "passed": self.passed,
        }


@dataclass
class Report:
    title: str
    checks: list[CheckRecord] = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    def record(self, identity: str, left, right) -> CheckRecord:
        rec = CheckRecord(identity, left, right)
        self.checks.append(rec)
        return rec

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "payload": self.payload,
        }

    def format_text(self) -> str:
        lines = [self.title]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.identity}: {c.left} == {c.right}")
        lines.append(f"result: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines)

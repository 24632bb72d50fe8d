"""Verification reports shared by every checker in the package."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    check_id: str
    passed: bool
    max_error: float = 0.0
    detail: str = ""
    data: dict[str, Any] = field(default_factory=dict)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        text = f"[{flag}] {self.check_id}: max_error={self.max_error:.3e}"
        if self.detail:
            text += f"  ({self.detail})"
        return text


@dataclass
class VerificationReport:
    """An ordered collection of checks.

    The report passes iff every check passes. ``sampled`` is set when a sweep
    fell back to seeded sampling instead of exhaustive enumeration.
    """

    title: str
    category: str = ""
    tol: float = 0.0
    seed: int | None = None
    parameters: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    sampled: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_error(self) -> float:
        return max((c.max_error for c in self.checks), default=0.0)

    def add(self, check_id: str, passed: bool, max_error: float = 0.0, detail: str = "", **data: Any) -> Check:
        check = Check(check_id, bool(passed), float(max_error), detail, dict(data))
        self.checks.append(check)
        return check

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.check_id, c.passed, c.max_error, c.detail, dict(c.data)))
        self.sampled = self.sampled or other.sampled

    def summary(self) -> str:
        head = f"{self.title} [{self.category}] -> {'PASS' if self.passed else 'FAIL'}"
        if self.sampled:
            head += " (SAMPLED)"
        return "\n".join([head] + ["  " + c.line() for c in self.checks])

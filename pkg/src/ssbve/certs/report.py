"""Verification report shared by the certificate checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckRow:
    constraint_id: str
    lhs: float
    rhs: float
    slack: float  # violation amount; 0.0 when satisfied

    def as_dict(self) -> dict:
        return {"id": self.constraint_id, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack}


@dataclass
class VerifyReport:
    checks: list[CheckRow] = field(default_factory=list)
    tolerance: float = 0.0
    extra: dict = field(default_factory=dict)

    def add(self, constraint_id: str, lhs, rhs, violation) -> None:
        self.checks.append(CheckRow(constraint_id=constraint_id,
                                    lhs=float(lhs), rhs=float(rhs),
                                    slack=max(0.0, float(violation))))

    def add_exact(self, constraint_id: str, ok: bool, lhs, rhs) -> None:
        """Row for an exact (rational) check: slack is 0 or 1."""
        self.add(constraint_id, lhs, rhs, 0.0 if ok else 1.0)

    @property
    def max_violation(self) -> float:
        return max((row.slack for row in self.checks), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def failing(self) -> list[CheckRow]:
        return [r for r in self.checks if r.slack > self.tolerance]

    def as_dict(self) -> dict:
        rows = sorted(self.checks, key=lambda r: -r.slack)
        return {
            "passed": self.passed,
            "max_violation": self.max_violation,
            "tolerance": self.tolerance,
            "num_checks": len(self.checks),
            "checks": [r.as_dict() for r in rows[:200]],
            **self.extra,
        }

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        # NaN residuals fail
        return bool(self.residual <= self.tolerance)


@dataclass
class VerificationReport:
    """Named residuals with their tolerances."""

    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float) -> Check:
        check = Check(name, float(residual), float(tolerance))
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.residual, c.tolerance))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def max_residual(self, prefix: str = "") -> float:
        vals = [c.residual for c in self.checks if c.name.startswith(prefix)]
        return float(np.max(vals)) if vals else 0.0

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_records(self, trial: int = 0) -> list[dict]:
        return [
            {"check": c.name, "trial": trial, "residual": c.residual,
             "tolerance": c.tolerance, "pass": c.passed}
            for c in self.checks
        ]


def rel_diff(a, b) -> float:
    """``|a - b|_F / max(1, |b|_F)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.linalg.norm(a - b) / max(1.0, np.linalg.norm(b)))

"""Check lines and reports.

Every check renders as one line::

    CHECK <name> lhs=<v> rhs=<v> const=<c> margin=<v> PASS|FAIL

For inequalities ``lhs <= rhs`` (``rhs`` already includes the constant) the
margin is ``rhs - lhs``. For identities the margin is ``-|lhs - rhs|``. A
check passes when its margin is at least ``-tol``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import numeric


def _const_text(const) -> str:
    if isinstance(const, Fraction):
        return f"{const.numerator}/{const.denominator}"
    return str(const)


def _tidy(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def _scale(*values):
    return max([mpmath.mpf(1)] + [abs(numeric.to_mpf(v)) for v in values])


@dataclass(frozen=True)
class Check:
    name: str
    lhs: object
    rhs: object
    const: str
    margin: object
    passed: bool

    @classmethod
    def inequality(cls, name, lhs, rhs, const=Fraction(1), tol=None) -> "Check":
        if tol is None:
            tol = numeric.tolerance() * _scale(lhs, rhs)
        if isinstance(lhs, (int, Fraction)) and isinstance(rhs, (int, Fraction)):
            margin = _tidy(Fraction(rhs) - Fraction(lhs))
            passed = margin >= 0
        else:
            margin = numeric.to_mpf(rhs) - numeric.to_mpf(lhs)
            passed = margin >= -tol
        return cls(name, lhs, rhs, _const_text(const), margin, bool(passed))

    @classmethod
    def identity(cls, name, lhs, rhs, const=Fraction(1), tol=None) -> "Check":
        if isinstance(lhs, (int, Fraction)) and isinstance(rhs, (int, Fraction)):
            margin = _tidy(-abs(Fraction(lhs) - Fraction(rhs)))
            return cls(name, lhs, rhs, _const_text(const), margin, margin == 0)
        if tol is None:
            tol = numeric.tolerance() * _scale(lhs, rhs)
        margin = -abs(numeric.to_mpf(lhs) - numeric.to_mpf(rhs))
        return cls(name, lhs, rhs, _const_text(const), margin, bool(margin >= -tol))

    @classmethod
    def flag(cls, name, passed: bool, detail: str = "") -> "Check":
        """A yes/no check; rendered with ``lhs``/``rhs`` both set to ``detail``."""
        return cls(name, detail or "-", detail or "-", "1", 0 if passed else -1, bool(passed))

    @classmethod
    def failure(cls, name, message: str) -> "Check":
        return cls(name, "error", message.replace(" ", "_"), "-", "-", False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"CHECK {self.name} lhs={numeric.fmt(self.lhs) if not isinstance(self.lhs, str) else self.lhs}"
            f" rhs={numeric.fmt(self.rhs) if not isinstance(self.rhs, str) else self.rhs}"
            f" const={self.const}"
            f" margin={numeric.fmt(self.margin) if not isinstance(self.margin, str) else self.margin}"
            f" {status}"
        )


@dataclass
class Report:
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def warn(self, message: str) -> None:
        self.notes.append(f"WARN {message}")

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def lines(self) -> list[str]:
        return self.notes + [c.line() for c in self.checks]

    def render(self) -> str:
        summary = f"SUMMARY checks={len(self.checks)} failed={sum(not c.passed for c in self.checks)}"
        return "\n".join(self.lines() + [summary]) + "\n"

"""Structured per-check outcomes shared by the verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["VerificationReport", "format_report_line"]


@dataclass
class VerificationReport:
    """One measured quantity against one bound.

    ``passed`` is derived, never stored independently: a report passes
    exactly when measured <= bound.
    """

    name: str
    measured: float
    bound: float
    grid_n: int
    notes: str = ""
    passed: bool = field(init=False)

    def __post_init__(self):
        self.measured = float(self.measured)
        self.bound = float(self.bound)
        self.passed = bool(self.measured <= self.bound)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def format_report_line(report: VerificationReport) -> str:
    return (
        f"{report.name} {report.status} "
        f"{report.measured:.6g} {report.bound:.6g} {report.grid_n}"
    )

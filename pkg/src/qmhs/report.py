"""Structured pass/fail records shared by the verification suites and CLI."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
REPORT_ONLY = "report-only"


@dataclass
class VerificationReport:
    """One verified identity instance.

    Both sides are rendered exactly (rational or cyclotomic string form,
    decimal for complex).  report-only entries never influence exit codes.
    """

    suite: str
    params: dict = field(default_factory=dict)
    status: str = PASS
    lhs: str = ""
    rhs: str = ""
    micros: int = 0

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def as_dict(self) -> dict:
        return asdict(self)


class Stopwatch:
    """Microsecond wall-clock timer for report rows."""

    def __enter__(self):
        self._t0 = time.perf_counter_ns()
        return self

    def __exit__(self, *exc):
        self.micros = (time.perf_counter_ns() - self._t0) // 1000
        return False


def compare(suite: str, params: dict, lhs, rhs, render=str) -> VerificationReport:
    """Report equality of two exactly comparable values."""
    status = PASS if lhs == rhs else FAIL
    return VerificationReport(
        suite=suite, params=params, status=status, lhs=render(lhs), rhs=render(rhs)
    )

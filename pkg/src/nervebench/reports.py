"""Verification reports shared by the axiom and enlargement checkers."""

import time
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    check: str
    instance: str
    verdict: str
    truncation: str = "exact"
    witnesses: dict = field(default_factory=dict)
    notes: str = ""
    seconds: float = 0.0

    @property
    def passed(self):
        return self.verdict == PASS

    @property
    def failed(self):
        return self.verdict == FAIL

    def as_record(self):
        return {
            "check": self.check,
            "instance": self.instance,
            "verdict": self.verdict,
            "truncation": str(self.truncation),
            "witnesses": self.witnesses,
            "notes": self.notes,
            "seconds": round(self.seconds, 6),
        }

    def __str__(self):
        extra = f" [{self.notes}]" if self.notes else ""
        return f"{self.check:28s} {self.instance:40s} {self.verdict}{extra}"


class timed:
    """Context manager stamping the elapsed wall time onto a report."""

    def __init__(self):
        self.start = 0.0
        self.seconds = 0.0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
        return False

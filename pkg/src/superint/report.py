"""Verification reports shared by the algebra suites and the CLI.

A report is a flat list of named checks, each carrying one of three
statuses.  ``pass`` and ``fail`` mean what they say and decide exit
codes; ``reported-mismatch`` marks a place where our computed result
disagrees with a printed source expression while the underlying
mathematical claim (conservation, closure) still verifies.  Mismatch
entries are informational and never fail a run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["Check", "VerificationReport", "PASS", "FAIL", "MISMATCH"]

PASS = "pass"
FAIL = "fail"
MISMATCH = "reported-mismatch"

_STATUSES = (PASS, FAIL, MISMATCH)


@dataclass(frozen=True)
class Check:
    """One named check outcome.

    ``residual`` is free-form text: an exact residual ("0"), a float
    ("3.2e-14"), or a diff description for mismatches.
    """

    name: str
    status: str
    residual: str = "0"

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError("unknown check status %r" % (self.status,))


@dataclass
class VerificationReport:
    suite: str
    version: str = "1"
    conventions: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, name, status, residual="0"):
        self.checks.append(Check(name, status, str(residual)))

    def ok(self, name, residual="0"):
        self.add(name, PASS, residual)

    def fail(self, name, residual):
        self.add(name, FAIL, residual)

    def mismatch(self, name, diff):
        self.add(name, MISMATCH, diff)

    @property
    def passed(self) -> bool:
        """True when no check failed (mismatch entries do not count)."""
        return all(c.status != FAIL for c in self.checks)

    def extend(self, other: "VerificationReport"):
        # fold another suite's checks in, prefixing with its name
        for c in other.checks:
            self.checks.append(Check("%s: %s" % (other.suite, c.name),
                                     c.status, c.residual))
        for key, val in other.conventions.items():
            self.conventions.setdefault("%s: %s" % (other.suite, key), val)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "conventions": dict(self.conventions),
            "checks": [
                {"name": c.name, "status": c.status, "residual": c.residual}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def summary_lines(self):
        for c in self.checks:
            yield "[%s] %s (%s)" % (c.status.upper(), c.name, c.residual)

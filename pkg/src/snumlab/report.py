"""Verification records shared by the witness and verify modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import __version__

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-uncertified"


@dataclass
class CheckRecord:
    check_id: str
    status: str
    operands: dict
    margin: float | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        out = {"check_id": self.check_id, "status": self.status, "operands": self.operands,
               "margin": self.margin}
        if self.note:
            out["note"] = self.note
        return out


def check_le(check_id, lhs, rhs, rel=0.0, abs_tol=0.0, note=None, **extra) -> CheckRecord:
    """Pass iff lhs <= rhs * (1 + rel) + abs_tol.

    ``None`` on either side (an uncertified operand) yields a skipped record.
    """
    operands = {"lhs": lhs, "rhs": rhs, **extra}
    if lhs is None or rhs is None or (isinstance(rhs, float) and math.isinf(rhs)):
        return CheckRecord(check_id, SKIPPED, operands, None, note)
    margin = rhs * (1.0 + rel) + abs_tol - lhs
    return CheckRecord(check_id, PASS if margin >= 0 else FAIL, operands, margin, note)


def check_close(check_id, value, target, tol, note=None, **extra) -> CheckRecord:
    operands = {"value": value, "target": target, "tol": tol, **extra}
    margin = tol - abs(value - target)
    return CheckRecord(check_id, PASS if margin >= 0 else FAIL, operands, margin, note)


def check_true(check_id, ok, note=None, **operands) -> CheckRecord:
    return CheckRecord(check_id, PASS if ok else FAIL, operands, None, note)


@dataclass
class VerificationReport:
    suite: str
    records: list = field(default_factory=list)
    corpus: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    version: str = __version__

    def add(self, record: CheckRecord):
        self.records.append(record)
        return record

    def extend(self, records):
        self.records.extend(records)

    @property
    def failures(self):
        return [r for r in self.records if r.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "toolkit_version": self.version,
            "passed": self.passed,
            "counts": self.counts(),
            "corpus": self.corpus,
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
        }

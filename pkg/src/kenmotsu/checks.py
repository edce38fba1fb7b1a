"""Check records shared by the verifier, the soliton analyzer and the reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .exact import first_difference, format_scalar, to_strings

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
NOT_APPLICABLE = "not-applicable"

FRAME_NOTE = (
    "identities quantified over all vector fields are checked on every tuple of "
    "frame vectors; with constant components this is equivalent by multilinearity"
)


@dataclass(frozen=True)
class Witness:
    part: str
    slot: tuple[int, ...]  # 1-based array index of the first disagreeing component
    left: object
    right: object

    def to_dict(self) -> dict:
        return {
            "part": self.part,
            "slot": list(self.slot),
            "left": format_scalar(self.left),
            "right": format_scalar(self.right),
        }


@dataclass(frozen=True)
class CheckRecord:
    """One identity, its verdict, and the exact values on both sides.

    ``left``/``right`` map a part name to the full component array of that side.
    Multi-part identities (e.g. the four clauses of the almost contact axioms)
    carry several parts; ``witness`` points at the first failing component.
    """

    identity: str
    status: str
    left: Mapping[str, np.ndarray] = field(default_factory=dict)
    right: Mapping[str, np.ndarray] = field(default_factory=dict)
    witness: Witness | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "status": self.status,
            "left": {k: to_strings(v) for k, v in self.left.items()},
            "right": {k: to_strings(v) for k, v in self.right.items()},
            "witness": None if self.witness is None else self.witness.to_dict(),
            "note": self.note,
        }


def compare(identity: str, parts: Sequence[tuple[str, object, object]], note: str = "") -> CheckRecord:
    """Exact comparison of each ``(part, left, right)``; first mismatch is the witness."""
    left, right = {}, {}
    witness = None
    for name, lhs, rhs in parts:
        lhs = np.asarray(lhs, dtype=object)
        rhs = np.asarray(rhs, dtype=object)
        left[name], right[name] = lhs, rhs
        if witness is None:
            idx = first_difference(lhs, rhs)
            if idx is not None:
                witness = Witness(name, tuple(i + 1 for i in idx), lhs[idx], rhs[idx])
    return CheckRecord(identity, PASS if witness is None else FAIL, left, right, witness, note)


def skipped(identity: str, note: str, status: str = SKIPPED) -> CheckRecord:
    return CheckRecord(identity, status, note=note)


def scalar_check(identity: str, left, right, note: str = "") -> CheckRecord:
    return compare(identity, [("value", left, right)], note)


def flag_check(identity: str, ok: bool, note: str = "") -> CheckRecord:
    return CheckRecord(identity, PASS if ok else FAIL, note=note)


@dataclass(frozen=True)
class VerificationReport:
    records: tuple[CheckRecord, ...]
    note: str = FRAME_NOTE

    @property
    def passed(self) -> bool:
        return all(not r.failed and r.status != SKIPPED for r in self.records)

    def __getitem__(self, identity: str) -> CheckRecord:
        for r in self.records:
            if r.identity == identity:
                return r
        raise KeyError(identity)

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.records + other.records, self.note)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.failed]

    def to_dict(self) -> dict:
        return {"note": self.note, "records": [r.to_dict() for r in self.records]}

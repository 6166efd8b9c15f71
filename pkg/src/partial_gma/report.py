"""Checker reports: one entry per identity, with capped basis-index witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

WITNESS_CAP = 16


@dataclass
class IdentityCheck:
    tag: str
    passed: bool
    witnesses: list[tuple] = field(default_factory=list)
    failures: int = 0
    informational: bool = False
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "tag": self.tag,
            "passed": self.passed,
            "failures": self.failures,
            "witnesses": [list(w) for w in self.witnesses],
        }
        if self.informational:
            d["informational"] = True
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    subject: str
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    @property
    def first_failure(self) -> str | None:
        for c in self.checks:
            if not c.passed and not c.informational:
                return c.tag
        return None

    def failed_tags(self) -> list[str]:
        return [c.tag for c in self.checks if not c.passed and not c.informational]

    def get(self, tag: str) -> IdentityCheck:
        for c in self.checks:
            if c.tag == tag:
                return c
        raise KeyError(tag)

    def has(self, tag: str) -> bool:
        return any(c.tag == tag for c in self.checks)

    def add(self, tag: str, passed: bool, witnesses: Iterable[tuple] = (), failures: int | None = None,
            informational: bool = False, note: str = "") -> IdentityCheck:
        ws = [tuple(_plain(x) for x in w) for w in witnesses]
        n = len(ws) if failures is None else failures
        if passed:
            n = 0
        chk = IdentityCheck(tag, passed, ws[:WITNESS_CAP], n, informational, note)
        self.checks.append(chk)
        return chk

    def add_equal(self, tag: str, lhs, rhs, out_axes: int = 1, informational: bool = False,
                  note: str = "") -> IdentityCheck:
        """Compare two tensors; the trailing out_axes are output coordinates."""
        lhs = np.asarray(lhs, dtype=object)
        rhs = np.asarray(rhs, dtype=object)
        if lhs.shape != rhs.shape:
            raise ValueError(f"{tag}: shape {lhs.shape} vs {rhs.shape}")
        diff = lhs - rhs
        if diff.size == 0:
            return self.add(tag, True, [], 0, informational, note)
        lead = diff.shape[: diff.ndim - out_axes]
        flat = diff.reshape(lead + (-1,)) if out_axes else diff.reshape(lead + (1,))
        bad = []
        for idx in np.ndindex(*lead) if lead else [()]:
            row = flat[idx] if lead else flat.reshape(-1)
            if any(x != 0 for x in row):
                bad.append(idx)
        return self.add(tag, not bad, bad, len(bad), informational, note)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(IdentityCheck(prefix + c.tag, c.passed, list(c.witnesses), c.failures,
                                             c.informational, c.note))

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "checks": [c.to_dict() for c in self.checks],
        }

    def text(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            status = "pass" if c.passed else ("info-fail" if c.informational else "FAIL")
            line = f"  {c.tag}: {status}"
            if c.witnesses and not c.passed:
                shown = ", ".join(str(tuple(w)) for w in c.witnesses[:4])
                more = f" (+{c.failures - 4} more)" if c.failures > 4 else ""
                line += f"  witnesses {shown}{more}"
            if c.note:
                line += f"  [{c.note}]"
            lines.append(line)
        return "\n".join(lines)

    def __str__(self):
        return self.text()


def _plain(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


class CheckFailure(ValueError):
    """Raised when a construction needs a certificate that did not pass."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report

"""Verdict records shared by every checker."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


class TruncationEscape(Exception):
    """A required coefficient lies outside the truncation contract."""


class WitnessError(Exception):
    """An error that carries the concrete tuple exhibiting the problem."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Check:
    name: str
    verdict: Verdict
    witness: Optional[Any] = None
    tag: str = ""
    detail: Dict[str, Any] = field(default_factory=dict)
    contract: Optional[Dict[str, Any]] = None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "tag": self.tag,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "detail": self.detail,
            "contract": self.contract,
        }


@dataclass
class AxiomReport:
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, verdict: Verdict, witness=None, tag: str = "",
            contract=None, **detail) -> Check:
        if verdict is Verdict.FAIL and witness is None:
            raise ValueError(f"failing check {name!r} needs a witness")
        c = Check(name, verdict, witness, tag, detail, contract)
        self.checks.append(c)
        return c

    def extend(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for c in other.checks:
            if prefix:
                c = Check(prefix + c.name, c.verdict, c.witness, c.tag, c.detail, c.contract)
            self.checks.append(c)
        return self

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> List[str]:
        return [c.name for c in self.checks]

    @property
    def verdict(self) -> Verdict:
        vs = {c.verdict for c in self.checks}
        if Verdict.FAIL in vs:
            return Verdict.FAIL
        if Verdict.INCONCLUSIVE in vs:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.PASS

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.verdict is Verdict.FAIL]

    def as_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict.value, "checks": [c.as_dict() for c in self.checks]}

    def __repr__(self):
        lines = [f"AxiomReport({self.verdict.value})"]
        for c in self.checks:
            w = f" witness={c.witness!r}" if c.witness is not None else ""
            lines.append(f"  {c.verdict.value:12s} {c.name}{w}")
        return "\n".join(lines)


def tally(name: str, failures: List[Any], checked: int, skipped: int = 0) -> Verdict:
    """Common rule: any failure fails; nothing decidable is inconclusive."""
    if failures:
        return Verdict.FAIL
    if checked == 0:
        return Verdict.INCONCLUSIVE
    return Verdict.PASS

"""Verdicts returned by the identity and theorem checks."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "hypothesis not met"


@dataclass(frozen=True)
class CheckResult:
    name: str
    verdict: Verdict
    detail: str = ""
    first_failure: int | None = None

    def __bool__(self):
        return self.verdict is Verdict.PASS

    @classmethod
    def of(cls, name: str, ok: bool, detail: str = "", first_failure: int | None = None) -> CheckResult:
        return cls(name, Verdict.PASS if ok else Verdict.FAIL, detail, first_failure)


def fmt_depth(x) -> str:
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    return str(int(x))

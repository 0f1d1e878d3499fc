"""Report records shared by the Siegel and Hermitian criteria."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any

REPORT_SCHEMA = "hermq2-report-1"


class Verdict(enum.Enum):
    ZERO_MOD_P = "ZERO_MOD_P"
    NONZERO_MOD_P = "NONZERO_MOD_P"
    ZERO = "ZERO"
    NONZERO = "NONZERO"
    P_INTEGRAL = "P_INTEGRAL"
    NOT_P_INTEGRAL = "NOT_P_INTEGRAL"
    WEIGHTS_CONGRUENT = "WEIGHTS_CONGRUENT"
    THEOREM_VIOLATION = "THEOREM_VIOLATION"
    PREMISE_FAILED = "PREMISE_FAILED"


#: verdicts that map to CLI exit status 0
AFFIRMATIVE = {Verdict.ZERO_MOD_P, Verdict.ZERO, Verdict.P_INTEGRAL, Verdict.WEIGHTS_CONGRUENT}


@dataclass(frozen=True)
class SturmBox:
    """Integral diagonal ranges 0 <= m <= m_max, 0 <= n <= n_max."""

    field: str
    k: int
    m_max: int
    n_max: int
    n_le_m: bool = False

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(m, n) for m in range(self.m_max + 1) for n in range(self.n_max + 1)
                if not self.n_le_m or n <= m]

    @property
    def max_trace(self) -> int:
        return max((m + n for m, n in self.pairs), default=0)

    def contains(self, m: int, n: int) -> bool:
        return 0 <= m <= self.m_max and 0 <= n <= self.n_max and (not self.n_le_m or n <= m)

    def to_json(self) -> dict:
        return {"field": self.field, "k": self.k, "m_max": self.m_max, "n_max": self.n_max,
                "n_le_m": self.n_le_m}


@dataclass
class CongruenceReport:
    verdict: Verdict
    check: str
    p: int | None = None
    l: int | None = None
    trunc: int | None = None
    witness: Any = None
    box: SturmBox | None = None
    corroborated: bool | None = None
    details: dict = field(default_factory=dict)

    @property
    def affirmative(self) -> bool:
        return self.verdict in AFFIRMATIVE

    def to_json(self) -> dict:
        w = self.witness
        if w is not None and hasattr(w, "_asdict"):
            w = dict(w._asdict())
        return {
            "schema": REPORT_SCHEMA,
            "check": self.check,
            "verdict": self.verdict.value,
            "p": self.p,
            "l": self.l,
            "trunc": self.trunc,
            "witness": w,
            "box": self.box.to_json() if self.box else None,
            "corroborated": self.corroborated,
            "details": self.details,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

"""Check reports: named residual statistics with a pass/fail verdict."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .expr import FieldElem, Point

PASS, FAIL, INAPPLICABLE = "pass", "fail", "inapplicable"


def magnitude(x) -> float:
    """Largest absolute value in a scalar, vector or nested list.

    An exact nonzero value never reports as 0.0, so exact-zero tolerance
    checks stay exact.
    """
    if isinstance(x, (list, tuple)):
        return max((magnitude(v) for v in x), default=0.0)
    if isinstance(x, FieldElem):
        if not x:
            return 0.0
        return max(abs(float(x)), sys.float_info.min)
    if isinstance(x, Fraction):
        return max(abs(float(x)), sys.float_info.min) if x else 0.0
    return abs(float(x))


def jsonable(x):
    if isinstance(x, FieldElem):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(float(x))
    if isinstance(x, Point):
        return [jsonable(c) for c in x.coords]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "tolist"):
        return jsonable(x.tolist())
    return x


@dataclass
class CheckReport:
    """Outcome of one named check.

    ``residuals`` holds the largest residual seen at each sample point,
    ``parts`` the largest residual per sub-identity, and ``conditions`` the
    logical requirements (e.g. a biconditional) that must also hold.  The
    verdict is ``pass`` iff every residual is within ``tolerance`` and every
    condition is true, unless the check was declared inapplicable.
    """

    name: str
    statement: str
    tolerance: float = 0.0
    residuals: dict = field(default_factory=dict)
    parts: dict = field(default_factory=dict)
    conditions: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    verdict: str | None = None
    reason: str = ""

    def record(self, part: str, value, sample=None) -> float:
        r = magnitude(value)
        self.parts[part] = max(self.parts.get(part, 0.0), r)
        key = "-" if sample is None else str(sample)
        self.residuals[key] = max(self.residuals.get(key, 0.0), r)
        return r

    def observe(self, part: str, value) -> float:
        """Record a magnitude in the evidence without letting it gate the verdict."""
        r = magnitude(value)
        obs = self.evidence.setdefault("observed", {})
        obs[part] = max(obs.get(part, 0.0), r)
        return r

    def require(self, condition: str, ok: bool):
        self.conditions[condition] = bool(ok) and self.conditions.get(condition, True)

    def inapplicable(self, reason: str) -> "CheckReport":
        self.verdict = INAPPLICABLE
        self.reason = reason
        return self

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def finalize(self) -> "CheckReport":
        if self.verdict == INAPPLICABLE:
            return self
        ok = self.max_residual <= self.tolerance and all(self.conditions.values())
        self.verdict = PASS if ok else FAIL
        if not ok and not self.reason:
            bad = [k for k, v in self.conditions.items() if not v]
            over = [k for k, v in self.parts.items() if v > self.tolerance]
            self.reason = "; ".join(
                ([f"residual above tolerance in {', '.join(over)}"] if over else [])
                + ([f"condition failed: {', '.join(bad)}"] if bad else [])
            )
        return self

    @property
    def passed(self) -> bool:
        return self.finalize().verdict == PASS

    def to_dict(self) -> dict:
        self.finalize()
        return {
            "name": self.name,
            "statement": self.statement,
            "verdict": self.verdict,
            "reason": self.reason,
            "tolerance": repr(float(self.tolerance)),
            "max_residual": repr(self.max_residual),
            "residuals": {k: repr(v) for k, v in self.residuals.items()},
            "parts": {k: repr(v) for k, v in self.parts.items()},
            "conditions": dict(self.conditions),
            "evidence": jsonable(self.evidence),
            "notes": list(self.notes),
        }

    def summary_line(self) -> str:
        self.finalize()
        return f"{self.verdict.upper():<12} {self.name:<18} max residual {self.max_residual:.3e} (tol {self.tolerance:g})"

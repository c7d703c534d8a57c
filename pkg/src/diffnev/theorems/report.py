"""Margin reports shared by every harness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from ..poly import FactoredPoly, Poly
from ..rational import RationalFunction
from ..scalar import GaussianRational

__all__ = ["Precondition", "MarginReport", "PreconditionFailed", "decide", "jsonable"]

HOLDS, VIOLATED, INCONCLUSIVE, PRECONDITION = "holds", "violated", "inconclusive", "precondition_failed"


def jsonable(x: Any):
    """Convert library objects into JSON-ready values (exact scalars become strings)."""
    if isinstance(x, (GaussianRational, Poly, RationalFunction)):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, FactoredPoly):
        return {"lead": str(x.lead), "roots": [[jsonable(w), m] for w, m in x.roots]}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return x.item()
    return x


@dataclass(frozen=True)
class Precondition:
    name: str
    status: str  # "ok", "failed" or "waived"
    witness: Any = None
    detail: str = ""

    @classmethod
    def check(cls, name: str, ok: bool, witness=None, detail: str = "") -> "Precondition":
        return cls(name, "ok" if ok else "failed", witness, detail)

    @property
    def failed(self) -> bool:
        return self.status == "failed"

    def to_json(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = jsonable(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d


def decide(grid: Sequence[float], margin: Sequence[float], tol: float = 0.0, exceptional: bool = True) -> tuple[str, list]:
    """Verdict for a margin curve.

    Radii with margin < -tol are violations.  With ``exceptional`` set, a
    theorem may fail on a thin radius set, so violations only count as a
    verdict when they occur in at least two distinct decades; anything less
    is "inconclusive".
    """
    bad = [r for r, m in zip(grid, margin) if m < -tol]
    if not bad:
        return HOLDS, []
    if not exceptional:
        return VIOLATED, bad
    decades = {math.floor(math.log10(r) + 1e-12) for r in bad if r > 0}
    return (VIOLATED if len(decades) >= 2 else INCONCLUSIVE), bad


@dataclass
class MarginReport:
    theorem: str
    inputs: dict
    grid: list
    lhs: list
    rhs: list
    preconditions: list[Precondition]
    tolerance: float = 0.0
    exceptional: bool = True
    extra: dict = field(default_factory=dict)
    verdict: str = field(init=False)
    violated_at: list = field(init=False)

    def __post_init__(self):
        if any(p.failed for p in self.preconditions):
            self.verdict, self.violated_at = PRECONDITION, []
        else:
            self.verdict, self.violated_at = decide(self.grid, self.margin, self.tolerance, self.exceptional)

    @property
    def margin(self) -> list:
        return [b - a for a, b in zip(self.lhs, self.rhs)]

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "inputs": jsonable(self.inputs),
            "grid": jsonable(list(self.grid)),
            "lhs": jsonable(list(self.lhs)),
            "rhs": jsonable(list(self.rhs)),
            "margin": jsonable(self.margin),
            "preconditions": [p.to_json() for p in self.preconditions],
            "verdict": self.verdict,
            "tolerance": self.tolerance,
        }
        if self.violated_at:
            out["violated_at"] = jsonable(self.violated_at)
        if self.extra:
            out["extra"] = jsonable(self.extra)
        return out


class PreconditionFailed(Exception):
    """A harness input does not meet the theorem's hypotheses.

    ``report`` carries every checked precondition, so callers can still emit
    a complete JSON report.
    """

    def __init__(self, failed: Precondition, report: MarginReport | None = None):
        super().__init__(f"precondition failed: {failed.name}" + (f" ({failed.detail})" if failed.detail else ""))
        self.precondition = failed
        self.report = report

    @property
    def name(self) -> str:
        return self.precondition.name

    @property
    def witness(self):
        return self.precondition.witness


def gate(report: MarginReport) -> MarginReport:
    """Raise PreconditionFailed for the first failed precondition of ``report``."""
    for p in report.preconditions:
        if p.failed:
            raise PreconditionFailed(p, report)
    return report

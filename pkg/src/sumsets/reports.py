"""Verdict records produced by the verifiers and the convexification checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

HOLDS = "holds"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

Quantity = Union[Fraction, float, Tuple[float, float], None]


@dataclass
class VerifierReport:
    """Outcome of checking one inequality (or a batch of instances of it).

    ``lhs``/``rhs`` are exact rationals when ``exact`` is true; otherwise
    floats or (lower, upper) brackets.  A ``violated`` verdict is refused
    unless both sides are exact.
    """

    name: str
    verdict: str
    lhs: Quantity = None
    rhs: Quantity = None
    relation: str = "<="
    exact: bool = False
    instance: Dict[str, Any] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    trials: List["VerifierReport"] = field(default_factory=list)
    runtime: float = 0.0
    seed: Optional[int] = None

    def __post_init__(self):
        if self.verdict not in (HOLDS, VIOLATED, INCONCLUSIVE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == VIOLATED:
            exact_sides = isinstance(self.lhs, Fraction) and isinstance(self.rhs, Fraction)
            if not (self.exact and (exact_sides or self.trials)):
                raise ValueError("a violation can only be reported from exact arithmetic")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED


def _relation_holds(lhs, rhs, relation: str) -> bool:
    return {
        "<=": lhs <= rhs,
        "<": lhs < rhs,
        ">=": lhs >= rhs,
        ">": lhs > rhs,
        "=": lhs == rhs,
    }[relation]


def exact_report(name: str, lhs: Fraction, rhs: Fraction, relation: str = "<=", **kw) -> VerifierReport:
    """Compare two rationals exactly."""
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    verdict = HOLDS if _relation_holds(lhs, rhs, relation) else VIOLATED
    return VerifierReport(name, verdict, lhs, rhs, relation, True, **kw)


def bounds_report(
    name: str,
    lhs: Tuple[float, float],
    rhs: Tuple[float, float],
    relation: str = "<=",
    tol: float = 1e-9,
    **kw,
) -> VerifierReport:
    """Compare brackets: holds when the worst case satisfies the relation
    within ``tol``; otherwise inconclusive (never violated)."""
    (l_lo, l_hi), (r_lo, r_hi) = lhs, rhs
    if relation in ("<=", "<"):
        ok = l_hi <= r_lo + tol
    elif relation in (">=", ">"):
        ok = l_lo + tol >= r_hi
    else:
        ok = abs(l_hi - r_lo) <= tol and abs(l_lo - r_hi) <= tol
    return VerifierReport(name, HOLDS if ok else INCONCLUSIVE, (l_lo, l_hi), (r_lo, r_hi), relation, False, **kw)


def combine(name: str, trials: List[VerifierReport], **kw) -> VerifierReport:
    """Batch verdict: violated if any trial is, else inconclusive if any is, else holds."""
    if any(t.verdict == VIOLATED for t in trials):
        verdict = VIOLATED
    elif any(t.verdict == INCONCLUSIVE for t in trials):
        verdict = INCONCLUSIVE
    else:
        verdict = HOLDS
    exact = all(t.exact for t in trials) if trials else True
    if verdict == VIOLATED:
        exact = True
    details = dict(kw.pop("details", {}))
    details.setdefault("counts", {v: sum(t.verdict == v for t in trials) for v in (HOLDS, VIOLATED, INCONCLUSIVE)})
    return VerifierReport(name, verdict, exact=exact, trials=trials, details=details, **kw)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False

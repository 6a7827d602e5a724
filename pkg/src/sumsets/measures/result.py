"""Container for a measured quantity together with its certified bracket."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional


@dataclass(frozen=True)
class MeasureResult:
    """A measure value with a bracket ``lower <= value <= upper``.

    ``exact`` holds the rational value when it is known; ``exact_squared``
    holds the rational square of a value whose square root may be
    irrational (Euclidean distances).  Either one being set pins
    ``lower == upper``.
    """

    name: str
    value: float
    lower: float
    upper: float
    exact: Optional[Fraction] = None
    exact_squared: Optional[Fraction] = None
    certificate: Dict[str, Any] = field(default_factory=dict)
    flags: tuple = ()

    def __post_init__(self):
        if not (self.lower <= self.value <= self.upper or math.isnan(self.value)):
            raise ValueError(f"{self.name}: value {self.value} outside [{self.lower}, {self.upper}]")
        if (self.exact is not None or self.exact_squared is not None) and self.lower != self.upper:
            raise ValueError(f"{self.name}: an exact result must have lower == upper")

    @property
    def is_exact(self) -> bool:
        return self.exact is not None or self.exact_squared is not None

    @property
    def squared(self) -> Optional[Fraction]:
        if self.exact_squared is not None:
            return self.exact_squared
        if self.exact is not None:
            return self.exact * self.exact
        return None

    @classmethod
    def from_exact(cls, name: str, q: Fraction, **kw) -> "MeasureResult":
        v = float(q)
        return cls(name, v, v, v, exact=Fraction(q), **kw)

    @classmethod
    def from_squared(cls, name: str, sq: Fraction, **kw) -> "MeasureResult":
        from ..rational import sqrt_fraction

        root = sqrt_fraction(sq)
        v = math.sqrt(float(sq))
        if root is not None:
            v = float(root)
        return cls(name, v, v, v, exact=root, exact_squared=Fraction(sq), **kw)

    @classmethod
    def bounds(cls, name: str, lower: float, upper: float, value: Optional[float] = None, **kw) -> "MeasureResult":
        if lower > upper:
            # rounding noise on a pinched bracket
            if lower - upper <= 1e-12 * max(1.0, abs(upper)):
                upper = lower
            else:
                raise ValueError(f"{name}: lower {lower} above upper {upper}")
        return cls(name, upper if value is None else value, lower, upper, **kw)

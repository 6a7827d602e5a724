"""Conversions between exact rationals and their text/float forms.

Every coordinate in the library is a :class:`fractions.Fraction`.  Floats are
accepted on input and converted *exactly* (a binary float is a dyadic
rational), while decimal strings such as ``"0.1"`` become ``1/10``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Convert ints, floats, Fractions and ``"p/q"`` / decimal strings exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite coordinate {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        # Fraction() already parses "p/q", integers and finite decimals exactly.
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def vec(values: Iterable) -> tuple:
    return tuple(to_fraction(v) for v in values)


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dot(u: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, w)), Fraction(0))


def sub(u, w) -> tuple:
    return tuple(a - b for a, b in zip(u, w))


def add(u, w) -> tuple:
    return tuple(a + b for a, b in zip(u, w))


def scale(t, u) -> tuple:
    return tuple(t * a for a in u)


def norm2(u) -> Fraction:
    """Squared Euclidean length, exact."""
    return sum((a * a for a in u), Fraction(0))


def sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact square root when ``q`` is the square of a rational, else ``None``."""
    from math import isqrt

    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def common_denominator(values: Iterable[Fraction]) -> int:
    from math import lcm

    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    return den


# Fast exact rationals for inner loops.  gmpy2's mpq is an order of magnitude
# quicker than Fraction; values are converted back to Fraction at the API edge.
try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _mpq

    def fast(q):
        if type(q) is Fraction:
            return _mpq(q.numerator, q.denominator)
        return _mpq(q)

    def slow(m) -> Fraction:
        return Fraction(int(m.numerator), int(m.denominator))

except ImportError:  # pragma: no cover
    def fast(q):
        return Fraction(q)

    def slow(m) -> Fraction:
        return Fraction(m)

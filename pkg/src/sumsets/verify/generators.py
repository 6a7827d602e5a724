"""Seeded random instances for the verifiers and the property suites.

Coordinates are rationals with denominators at most 64 so every instance
stays exact and small enough to print in a report.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Tuple

from ..sets import BoxUnion, PointSet

DENOMINATOR = 64


def rng_for(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def rational(rng: random.Random, lo: int = 0, hi: int = 1, den: int = DENOMINATOR) -> Fraction:
    """Uniform on the grid of step 1/den inside [lo, hi]."""
    return Fraction(rng.randint(lo * den, hi * den), den)


def point_set(rng: random.Random, dim: int, size: int, span: int = 1) -> PointSet:
    """``size`` distinct rational points in [0, span]^dim."""
    seen = {}
    while len(seen) < size:
        p = tuple(rational(rng, 0, span) for _ in range(dim))
        seen[p] = None
    return PointSet(list(seen))


def general_point_set(rng: random.Random, dim: int, size: int, span: int = 1) -> PointSet:
    """Like ``point_set`` but redrawn until the hull is full-dimensional."""
    from ..hull import convex_hull

    while True:
        a = point_set(rng, dim, size, span)
        if convex_hull(a).affine_dim == dim:
            return a


def box(rng: random.Random, dim: int, span: int = 2, solid: bool = True) -> Tuple[tuple, tuple]:
    lo, hi = [], []
    for _ in range(dim):
        a, b = sorted((rational(rng, 0, span), rational(rng, 0, span)))
        if solid and a == b:
            b = a + Fraction(1, DENOMINATOR)
        lo.append(a)
        hi.append(b)
    return tuple(lo), tuple(hi)


def box_union(rng: random.Random, dim: int, count: int, span: int = 2) -> BoxUnion:
    return BoxUnion([box(rng, dim, span) for _ in range(count)])


def interval_union(rng: random.Random, count: int, span: int = 2) -> BoxUnion:
    """A 1-D union of intervals, some of them possibly points."""
    out = []
    for _ in range(count):
        a, b = sorted((rational(rng, 0, span), rational(rng, 0, span)))
        if rng.random() < 0.2:
            b = a
        out.append(((a,), (b,)))
    return BoxUnion(out)


def psd_matrix(rng: random.Random, n: int, rank: int | None = None) -> List[List[Fraction]]:
    """M^T M for a random rational M, so positive semidefinite by construction."""
    rank = n if rank is None else rank
    m = [[Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(n)] for _ in range(rank)]
    return [[sum((m[r][i] * m[r][j] for r in range(rank)), Fraction(0)) for j in range(n)] for i in range(n)]


def within_hull(rng, a: PointSet, count: int) -> PointSet:
    """Rational convex combinations of points of A."""
    pts = a.points
    extra = []
    for _ in range(count):
        w = [Fraction(rng.randint(0, 8)) for _ in pts]
        if sum(w) == 0:
            w[0] = Fraction(1)
        s = sum(w)
        extra.append(tuple(sum((wi * p[j] for wi, p in zip(w, pts)), Fraction(0)) / s for j in range(a.dim)))
    return PointSet(list(pts) + extra)

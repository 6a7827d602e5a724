"""Schneider's non-convexity index c(A) = inf{lam >= 0 : A + lam conv(A) is convex}.

The index is affine invariant, so every computation runs in the exact affine
chart of the set.  On a line the index is the largest gap divided by the
length of the hull.  In the plane, A + lam conv(A) is convex exactly when it
covers (1 + lam) conv(A); that predicate is decided with exact polygon
subtraction and lam is bisected.  Sets may be given as finite point sets,
box unions, or lists of convex pieces (each piece a point set whose hull is
the piece).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import List, Sequence, Tuple

from ..config import DEFAULT, Config
from ..hull import affine_chart, convex_hull
from ..rational import fast
from ..sets import BoxUnion, PointSet
from .polygons import area2, ccw_hull, covered, minkowski_convex
from .result import MeasureResult

_ZERO = Fraction(0)


def as_pieces(a) -> List[Tuple[Tuple[Fraction, ...], ...]]:
    """Normalise the accepted set representations to a list of convex pieces."""
    if isinstance(a, PointSet):
        return [(p,) for p in a.points]
    if isinstance(a, BoxUnion):
        return [tuple(itertools.product(*zip(lo, hi))) for lo, hi in a.boxes]
    pieces = []
    for piece in a:
        pts = piece.points if isinstance(piece, PointSet) else tuple(tuple(Fraction(c) for c in p) for p in piece)
        pieces.append(tuple(pts))
    if not pieces:
        raise ValueError("empty set")
    return pieces


def _c_line(pieces, axis) -> MeasureResult:
    spans = sorted((min(p[axis] for p in pc), max(p[axis] for p in pc)) for pc in pieces)
    total = spans[-1][1] - spans[0][0]
    biggest = _ZERO
    reach = spans[0][1]
    for lo, hi in spans[1:]:
        if lo > reach:
            biggest = max(biggest, lo - reach)
        reach = max(reach, hi)
    return MeasureResult.from_exact("c", biggest / total, certificate={"largest_gap": biggest, "length": total})


def coverage_holds(pieces2d, hull2d, lam, eps=0) -> bool:
    """Decide (1 + lam) H  subset of  union(piece + lam H).

    Exact for rational input; with floats and a positive ``eps`` it is only a
    screen used to aim the exact tests."""
    target = [((1 + lam) * x, (1 + lam) * y) for x, y in hull2d]
    scaled = [(lam * x, lam * y) for x, y in hull2d]
    covers = [minkowski_convex(list(pc), scaled) for pc in pieces2d]
    covers.sort(key=lambda poly: -area2(poly) if len(poly) >= 3 else 0)
    return covered(target, covers, eps)


def _float_bracket(pieces2d, hull2d, tol: float):
    """Approximate threshold of the coverage test, found in floating point."""
    fp = [[(float(x), float(y)) for x, y in pc] for pc in pieces2d]
    fh = [(float(x), float(y)) for x, y in hull2d]
    floor = 1e-11 * abs(area2(fh))
    lo, hi = 0.0, 2.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if coverage_holds(fp, fh, mid, floor):
            hi = mid
        else:
            lo = mid
    return lo, hi


def _c_plane(pieces, chart, config: Config) -> MeasureResult:
    pieces2d = [ccw_hull([(p[chart[0]], p[chart[1]]) for p in pc]) for pc in pieces]
    hull2d = ccw_hull([q for pc in pieces2d for q in pc])
    if coverage_holds(pieces2d, hull2d, _ZERO):
        return MeasureResult.from_exact("c", _ZERO, certificate={"bracket": (_ZERO, _ZERO)})
    # the probes run on gmpy2 rationals, which keeps the clipping affordable
    fast_pieces = [[(fast(x), fast(y)) for x, y in pc] for pc in pieces2d]
    fast_hull = [(fast(x), fast(y)) for x, y in hull2d]
    steps = 0

    def holds(lam: Fraction) -> bool:
        nonlocal steps
        steps += 1
        return coverage_holds(fast_pieces, fast_hull, fast(lam))

    lo, hi = _ZERO, Fraction(2)
    # the plane bound c <= 2 is checked, not assumed
    if not holds(hi):
        raise ArithmeticError("coverage fails at lam = 2, contradicting c <= 2 in the plane")
    tol = config.bisection_tol
    # A float bisection guesses the threshold; the exact probes then close in
    # on it from both sides with steps that double after every miss.
    approx_lo, approx_hi = _float_bracket(pieces2d, hull2d, tol / 8)
    grid = 1 << 30

    def snap(t: float) -> Fraction:
        return Fraction(round(t * grid), grid)

    # thresholds are often simple rationals; try the nearest one first
    simple = Fraction((approx_lo + approx_hi) / 2).limit_denominator(256)
    if approx_lo - tol <= simple <= approx_hi + tol and lo < simple < hi and holds(simple):
        hi = simple
        below = simple - snap(tol / 2)
        if lo < below and not holds(below):
            lo = below
    gap = tol / 4
    while hi - lo > tol:
        q = snap(approx_hi + gap)
        if not lo < q < hi:
            break
        if holds(q):
            hi = q
            break
        lo = q
        gap *= 2
    gap = tol / 4
    while hi - lo > tol:
        q = snap(approx_lo - gap)
        if not lo < q < hi:
            break
        if not holds(q):
            lo = q
            break
        hi = q
        gap *= 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return MeasureResult.bounds(
        "c", float(lo), float(hi), float(hi), certificate={"bracket": (lo, hi), "bisection_steps": steps}
    )


def gauge_form_value(a: PointSet, x: Sequence[Fraction], hull=None) -> Fraction:
    """min over a of the gauge of x - a with respect to conv(A) - x, for
    x in the interior of conv(A) (exact)."""
    hull = hull or convex_hull(a)
    x = tuple(Fraction(c) for c in x)
    slack = []
    for nrm, off in hull.facets:
        s = off - sum((p * q for p, q in zip(nrm, x)), _ZERO)
        if s <= 0:
            raise ValueError("x must lie in the interior of conv(A)")
        slack.append((nrm, s))
    best = None
    for p in a.points:
        y = tuple(s - t for s, t in zip(x, p))
        val = max(sum((u * v for u, v in zip(nrm, y)), _ZERO) / s for nrm, s in slack)
        if best is None or val < best:
            best = val
    return max(best, _ZERO)


def _c_high(a: PointSet, m: int) -> MeasureResult:
    from .empty_sphere import empty_sphere_simplices

    hull = convex_hull(a)
    if not hull.full_dimensional:
        _, chart, _ = affine_chart(a.points)
        a = PointSet([tuple(p[c] for c in chart) for p in a.points])
        hull = convex_hull(a)
    verts = hull.vertices
    cands = [tuple(sum((v[j] for v in verts), _ZERO) / len(verts) for j in range(a.dim))]
    for cell in empty_sphere_simplices(a):
        cands.append(cell.center)
        cands.append(tuple(sum((a.points[i][j] for i in cell.indices), _ZERO) / len(cell.indices) for j in range(a.dim)))
    best, best_x = _ZERO, None
    for x in cands:
        if not hull.contains(x, strict=True):
            continue
        val = gauge_form_value(a, x, hull)
        if val > best:
            best, best_x = val, x
    return MeasureResult.bounds(
        "c", float(best), float(m), float(best), certificate={"x": best_x, "lower": best}, flags=("bounds",)
    )


def schneider_c(a, config: Config = DEFAULT) -> MeasureResult:
    """c(A) for point sets, box unions or lists of convex pieces."""
    pieces = as_pieces(a)
    allpts = list(dict.fromkeys(p for pc in pieces for p in pc))
    if len(allpts) == 1:
        return MeasureResult.from_exact("c", _ZERO)
    _, chart, _ = affine_chart(allpts)
    m = len(chart)
    if m == 1:
        return _c_line(pieces, chart[0])
    if m == 2:
        return _c_plane(pieces, chart, config)
    if not isinstance(a, PointSet):
        raise ValueError("c in dimension >= 3 is only bounded for finite point sets")
    return _c_high(a, m)

"""Exact convex-polygon clipping and coverage tests in the plane.

Polygons are lists of rational vertices in counter-clockwise order.  The
coverage test subtracts convex polygons one at a time; the part of a convex
region outside a convex polygon splits into convex pieces, one per edge of
the subtrahend.  Pieces of zero area are dropped, which is harmless because
every set involved is closed and the target is a convex body.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Pt = Tuple[Fraction, Fraction]
Poly = List[Pt]

_ZERO = Fraction(0)


def area2(poly: Sequence[Pt]) -> Fraction:
    """Twice the signed area."""
    s = 0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def ccw_hull(points: Sequence[Pt]) -> Poly:
    """Counter-clockwise strictly convex hull of planar points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return list(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: Poly = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: Poly = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def clip(poly: Poly, a: Fraction, b: Fraction, c: Fraction) -> Poly:
    """Part of a convex polygon where a*x + b*y <= c."""
    out: Poly = []
    n = len(poly)
    if n == 0:
        return out
    vals = [a * p[0] + b * p[1] - c for p in poly]
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = vals[i], vals[(i + 1) % n]
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def edges_as_halfplanes(poly: Poly) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Inequalities a*x + b*y <= c, one per edge, describing a CCW convex polygon."""
    out = []
    n = len(poly)
    for i in range(n):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
        a, b = y2 - y1, x1 - x2
        out.append((a, b, a * x1 + b * y1))
    return out


def _bbox(poly: Poly):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def subtract(region: Poly, cutter: Poly, cutter_planes=None, eps=0) -> List[Poly]:
    """Convex pieces of area above ``eps`` covering region minus cutter.

    ``eps`` stays zero for exact input; float callers pass a small area floor
    so that rounding slivers do not survive as uncovered pieces."""
    planes = cutter_planes or edges_as_halfplanes(cutter)
    pieces = []
    rest = region
    for a, b, c in planes:
        outside = clip(rest, -a, -b, -c)
        if len(outside) >= 3 and area2(outside) > eps:
            pieces.append(outside)
        rest = clip(rest, a, b, c)
        if len(rest) < 3 or area2(rest) <= eps:
            break
    return pieces


def covered(target: Poly, covers: Sequence[Poly], eps=0) -> bool:
    """True when the convex target lies inside the union of convex covers."""
    remaining = [target] if len(target) >= 3 and area2(target) > eps else []
    prepared = [(cov, edges_as_halfplanes(cov), _bbox(cov)) for cov in covers if len(cov) >= 3]
    for cov, planes, (x0, y0, x1, y1) in prepared:
        nxt = []
        for region in remaining:
            rx0, ry0, rx1, ry1 = _bbox(region)
            if rx1 <= x0 or rx0 >= x1 or ry1 <= y0 or ry0 >= y1:
                nxt.append(region)
                continue
            nxt.extend(subtract(region, cov, planes, eps))
        remaining = nxt
        if not remaining:
            return True
    return not remaining


def minkowski_convex(p: Poly, q: Poly) -> Poly:
    return ccw_hull([(a[0] + b[0], a[1] + b[1]) for a in p for b in q])

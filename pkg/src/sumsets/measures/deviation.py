"""Effective standard deviation v(A) and the pointwise quantities
v_A, w_A, rho_A and d_A.

For a finite set the squared pointwise deviation v_A(x)^2 equals f(x) - |x|^2,
where f is the lower convex envelope of the lifted points (a, |a|^2).  Over
one empty-circumsphere cell S with centre c and radius R this becomes
R^2 - |x - c|^2, so the supremum over conv(A) is the largest value of
R^2 - dist(c, conv S)^2 over the cells.  Everything is rational; only the
final square root is a float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..ball import min_enclosing_ball
from ..config import DEFAULT, Config
from ..hull import Polytope, convex_hull
from ..lp import ConvexCombination, LinearProgram, Optimal, solve
from ..rational import vec
from ..sets import PointSet
from .empty_sphere import EnumerationBudgetExceeded, empty_sphere_simplices, project_onto_simplex
from .result import MeasureResult

_ZERO = Fraction(0)


def _sq(u) -> Fraction:
    return sum((c * c for c in u), _ZERO)


def _sq_dist(u, w) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(u, w)), _ZERO)


def effective_stddev_v(a: PointSet, config: Config = DEFAULT) -> MeasureResult:
    """v(A) (equal to the inner radius r(A)) with its maximising point and cell."""
    pts = a.points
    if len(pts) == 1:
        return MeasureResult.from_squared("v", _ZERO, certificate={"x": pts[0], "simplex": (0,)})
    try:
        cells = empty_sphere_simplices(a, budget=config.simplex_budget)
    except EnumerationBudgetExceeded:
        return _sampled_v(a, config)
    best = None
    # R^2 bounds the cell's value, so larger spheres go first and the scan
    # stops once no remaining sphere can beat the incumbent
    for cell in sorted(cells, key=lambda c: (-c.radius_sq, c.indices)):
        if best is not None and cell.radius_sq <= best[0]:
            break
        verts = [pts[i] for i in cell.indices]
        y, dist2 = project_onto_simplex(cell.center, verts)
        val = cell.radius_sq - dist2
        if best is None or val > best[0]:
            best = (val, y, cell)
    val, y, cell = best
    cert = {
        "x": y,
        "simplex": cell.indices,
        "circumcenter": cell.center,
        "circumradius_sq": cell.radius_sq,
        "cells": len(cells),
    }
    return MeasureResult.from_squared("v", val, certificate=cert)


def inner_radius_r(a: PointSet, config: Config = DEFAULT) -> MeasureResult:
    """r(A), reported through the equality r = v for finite sets."""
    v = effective_stddev_v(a, config)
    return MeasureResult(
        "r", v.value, v.lower, v.upper, v.exact, v.exact_squared, dict(v.certificate), v.flags
    )


def _sampled_v(a: PointSet, config: Config) -> MeasureResult:
    rng = np.random.default_rng(config.seed)
    pts = a.points
    best = _ZERO
    best_x = pts[0]
    for _ in range(64):
        w = rng.dirichlet(np.ones(len(pts)))
        w = [Fraction(float(t)).limit_denominator(10**6) for t in w]
        s = sum(w, _ZERO)
        x = tuple(sum((wi * p[j] for wi, p in zip(w, pts)), _ZERO) / s for j in range(a.dim))
        val = pointwise_v_squared(a, x)
        if val > best:
            best, best_x = val, x
    lo = math.sqrt(float(best))
    _, radius = min_enclosing_ball(a)
    return MeasureResult.bounds("v", lo, max(lo, radius), certificate={"x": best_x}, flags=("budget",))


# ---------------------------------------------------------------------------
# pointwise quantities
# ---------------------------------------------------------------------------


def _membership_rows(pts, x):
    dim = len(x)
    cons = [(tuple(p[j] for p in pts), "=", x[j]) for j in range(dim)]
    cons.append(((Fraction(1),) * len(pts), "=", Fraction(1)))
    return tuple(cons)


def pointwise_v_squared(a: PointSet, x: Sequence) -> Fraction:
    """v_A(x)^2 = min over barycentric weights of sum p_i |a_i|^2 - |x|^2, exact LP."""
    x = vec(x)
    pts = a.points
    lp = LinearProgram(tuple(_sq(p) for p in pts), _membership_rows(pts, x))
    res = solve(lp)
    if not isinstance(res, Optimal):
        raise ValueError("x lies outside conv(A)")
    return res.value - _sq(x)


def pointwise_v_weights(a: PointSet, x: Sequence) -> ConvexCombination:
    x = vec(x)
    pts = a.points
    res = solve(LinearProgram(tuple(_sq(p) for p in pts), _membership_rows(pts, x)))
    if not isinstance(res, Optimal):
        raise ValueError("x lies outside conv(A)")
    keep = [(p, w) for p, w in zip(pts, res.x) if w > 0]
    return ConvexCombination(tuple(p for p, _ in keep), tuple(w for _, w in keep))


def pointwise_v(a: PointSet, x: Sequence) -> float:
    return math.sqrt(float(pointwise_v_squared(a, x)))


def pointwise_w(a: PointSet, x: Sequence) -> float:
    """w_A(x) = min sum p_i |a_i - x| over barycentric weights (float LP)."""
    from scipy.optimize import linprog

    pts = a.as_array()
    xf = np.array([float(c) for c in x])
    costs = np.linalg.norm(pts - xf, axis=1)
    a_eq = np.vstack([pts.T, np.ones(len(pts))])
    b_eq = np.concatenate([xf, [1.0]])
    res = linprog(costs, A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * len(pts), method="highs")
    if res.status != 0:
        raise ValueError("x lies outside conv(A)")
    return float(res.fun)


def pointwise_d_squared(a: PointSet, x: Sequence) -> Fraction:
    x = vec(x)
    return min(_sq_dist(p, x) for p in a.points)


def pointwise_d(a: PointSet, x: Sequence) -> float:
    return math.sqrt(float(pointwise_d_squared(a, x)))


def minimal_face_points(hull: Polytope, a: PointSet, x: Sequence) -> Tuple[Tuple[Fraction, ...], ...]:
    """Points of A on the smallest face of conv(A) containing x."""
    x = vec(x)
    if hull.facets is None:
        raise ValueError("face structure needs the exact hull facets")
    if not hull.contains(x):
        raise ValueError("x lies outside conv(A)")
    tight = [(n, o) for n, o in hull.facets if sum((p * q for p, q in zip(n, x)), _ZERO) == o]
    return tuple(p for p in a.points if all(sum((s * t for s, t in zip(n, p)), _ZERO) == o for n, o in tight))


def pointwise_rho_squared(a: PointSet, x: Sequence, hull: Optional[Polytope] = None) -> Fraction:
    """rho_A(x)^2: squared distance to the points of A on the minimal face containing x.

    When x is in the relative interior of a face F, each point a of A on F
    satisfies x = (1 - t) a + t b for some b in F and t < 1, while points off
    F never do; so the admissible set at x is A cap F."""
    x = vec(x)
    hull = hull or convex_hull(a)
    face = minimal_face_points(hull, a, x)
    return min(_sq_dist(p, x) for p in face)


def pointwise_rho(a: PointSet, x: Sequence, hull: Optional[Polytope] = None) -> float:
    return math.sqrt(float(pointwise_rho_squared(a, x, hull)))


def rho_maximiser_candidates(a: PointSet, hull: Optional[Polytope] = None) -> List[Tuple[Fraction, ...]]:
    """Circumcentres of empty-sphere cells of A cap F, for every face F of the
    hull down to edges, kept when they lie in conv(A cap F)."""
    hull = hull or convex_hull(a)
    out = []
    seen = set()
    faces = [a]
    if hull.facets is not None and hull.affine_dim >= 2:
        # facets, then recursively their facets
        stack = [a]
        while stack:
            cur = stack.pop()
            sub_hull = convex_hull(cur)
            if sub_hull.affine_dim < 2 or sub_hull.facets is None:
                continue
            for normal, off in sub_hull.facets:
                pts = [p for p in cur.points if sum((s * t for s, t in zip(normal, p)), _ZERO) == off]
                key = frozenset(pts)
                if key in seen:
                    continue
                seen.add(key)
                face = PointSet(pts)
                faces.append(face)
                stack.append(face)
    for face in faces:
        if len(face) == 1:
            out.append(face.points[0])
            continue
        cells = empty_sphere_simplices(face)
        sub_hull = convex_hull(face)
        for cell in cells:
            if sub_hull.contains(cell.center):
                out.append(cell.center)
    return list(dict.fromkeys(out))

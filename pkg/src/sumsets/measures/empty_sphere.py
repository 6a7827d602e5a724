"""Affinely independent subsets of a finite set whose circumsphere is empty.

A subset S of A with |S| = (affine dimension of A) + 1 is kept when no point
of A lies strictly inside the sphere through S (taken inside aff A).  These
are exactly the cells of the Delaunay subdivision and all their
triangulations, so they cover conv(A) even for co-spherical inputs.

Two exact-verified routes are provided.  For small inputs every subset is
screened in batched floating point and each survivor is re-checked with
rational arithmetic.  For large inputs a floating-point Delaunay
triangulation proposes the cells and every one of them is checked exactly;
the proposal is accepted only when the exact cell volumes add up to the
exact hull volume.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .. import linalg
from ..hull import affine_chart, convex_hull, polytope_volume, simplex_volume
from ..rational import common_denominator, fast, slow
from ..sets import PointSet

_ZERO = Fraction(0)


class EnumerationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EmptySphereSimplex:
    indices: Tuple[int, ...]
    center: Tuple[Fraction, ...]
    radius_sq: Fraction


def circumsphere(points: Sequence[Tuple[Fraction, ...]]):
    """Exact centre (in the affine hull of the points) and squared radius, or
    None when the points are affinely dependent."""
    p0 = points[0]
    if len(points) == 1:
        return tuple(p0), _ZERO
    q0 = [fast(c) for c in p0]
    diffs = [[fast(a) - b for a, b in zip(p, q0)] for p in points[1:]]
    zero = fast(_ZERO)
    gram = [[sum((x * y for x, y in zip(u, w)), zero) for w in diffs] for u in diffs]
    rhs = [sum((x * x for x in u), zero) / 2 for u in diffs]
    beta = linalg.solve_unique(gram, rhs)
    if beta is None:
        return None
    beta = [fast(b) for b in beta]
    offset = [sum((b * u[j] for b, u in zip(beta, diffs)), zero) for j in range(len(p0))]
    centre = tuple(slow(a + o) for a, o in zip(q0, offset))
    return centre, slow(sum((o * o for o in offset), zero))


def project_onto_simplex(x: Sequence[Fraction], verts: Sequence[Tuple[Fraction, ...]]):
    """Exact nearest point of conv(verts) to x (verts affinely independent)
    and the squared distance."""
    best = None
    n_v = len(verts)
    for size in range(n_v, 0, -1):
        for face in itertools.combinations(range(n_v), size):
            p0 = verts[face[0]]
            if size == 1:
                y = tuple(p0)
            else:
                diffs = [[a - b for a, b in zip(verts[i], p0)] for i in face[1:]]
                gram = [[sum((s * t for s, t in zip(u, w)), _ZERO) for w in diffs] for u in diffs]
                rhs = [sum((s * (a - b) for s, a, b in zip(u, x, p0)), _ZERO) for u in diffs]
                beta = linalg.solve_unique(gram, rhs)
                if beta is None or any(b < 0 for b in beta) or sum(beta, _ZERO) > 1:
                    continue
                y = tuple(p0[j] + sum((b * u[j] for b, u in zip(beta, diffs)), _ZERO) for j in range(len(p0)))
            d2 = sum(((a - b) ** 2 for a, b in zip(x, y)), _ZERO)
            if best is None or d2 < best[1]:
                best = (y, d2)
        if best is not None and size == n_v:
            return best  # x projects into the relative interior of the whole simplex
    return best


def float_chart(pts: np.ndarray, rank: int) -> np.ndarray:
    """Orthonormal coordinates of points in their affine hull (floats)."""
    centred = pts - pts[0]
    if rank == pts.shape[1]:
        return centred
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    return centred @ vt[:rank].T


def _sphere_is_empty(fast_points, centre, r2) -> bool:
    c = [fast(x) for x in centre]
    rr = fast(r2)
    zero = fast(_ZERO)
    for p in fast_points:
        if sum(((a - b) * (a - b) for a, b in zip(p, c)), zero) < rr:
            return False
    return True


def _on_sphere(fast_points, subset, centre, r2) -> bool:
    c = [fast(x) for x in centre]
    rr = fast(r2)
    zero = fast(_ZERO)
    return all(sum(((a - b) * (a - b) for a, b in zip(fast_points[i], c)), zero) == rr for i in subset)


def _exact_check(points, subset, fast_points=None) -> Optional[EmptySphereSimplex]:
    sphere = circumsphere([points[i] for i in subset])
    if sphere is None:
        return None
    centre, r2 = sphere
    if fast_points is None:
        fast_points = [[fast(c) for c in p] for p in points]
    if not _sphere_is_empty(fast_points, centre, r2):
        return None
    return EmptySphereSimplex(tuple(subset), centre, r2)


def _integer_chart(points) -> List[Tuple[int, ...]]:
    """Chart coordinates scaled to integers, for exact orientation tests."""
    _, chart, _ = affine_chart(points)
    den = common_denominator(c for p in points for c in (p[j] for j in chart))
    return [tuple(int(p[j] * den) for j in chart) for p in points]


def _enumerate(points, chart_pts: np.ndarray, size: int, chunk: int = 20000) -> List[EmptySphereSimplex]:
    out = []
    n_pts = len(points)
    fast_points = [[fast(c) for c in p] for p in points]
    int_chart = _integer_chart(points)
    combos = itertools.combinations(range(n_pts), size)
    all_sq = np.einsum("ij,ij->i", chart_pts, chart_pts)
    spread = float(np.ptp(chart_pts, axis=0).max()) or 1.0
    # Co-spherical inputs produce many simplices sharing one sphere.  The
    # sphere is solved exactly once; later members only confirm that their
    # vertices lie on it, which pins their circumsphere to the same one.
    spheres = {}
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        y = chart_pts[block]  # (C, size, m)
        y0 = y[:, 0, :]
        d = y[:, 1:, :] - y0[:, None, :]
        rhs = 0.5 * np.einsum("cij,cij->ci", d, d)
        scale = np.prod(np.linalg.norm(d, axis=2), axis=1)
        det = np.linalg.det(d)
        good = np.abs(det) > 1e-10 * np.maximum(scale, 1e-300)
        suspicious = np.nonzero(~good)[0]
        idx = np.nonzero(good)[0]
        keys = {}
        if idx.size:
            cprime = np.linalg.solve(d[idx], rhs[idx][..., None])[..., 0]
            centre = y0[idx] + cprime
            r2 = np.einsum("ci,ci->c", cprime, cprime)
            dist2 = all_sq[None, :] - 2 * centre @ chart_pts.T + np.einsum("ci,ci->c", centre, centre)[:, None]
            margin = 1e-7 * (r2 + 1.0)
            inside = (dist2 < (r2 - margin)[:, None]).any(axis=1)
            keep = ~inside
            survivors = idx[keep]
            rounded = np.round(np.column_stack([centre[keep], r2[keep]]) / (spread * 1e-6)).astype(np.int64)
            keys = {int(k): tuple(row) for k, row in zip(survivors, rounded)}
        else:
            survivors = idx
        for k in survivors:
            subset = tuple(int(i) for i in block[k])
            known = spheres.get(keys[int(k)])
            if known is not None and _on_sphere(fast_points, subset, known[0], known[1]):
                if known[2]:
                    out.append(EmptySphereSimplex(subset, known[0], known[1]))
                continue
            sphere = circumsphere([points[i] for i in subset])
            if sphere is None:
                continue
            empty = _sphere_is_empty(fast_points, *sphere)
            spheres[keys[int(k)]] = (sphere[0], sphere[1], empty)
            if empty:
                out.append(EmptySphereSimplex(subset, sphere[0], sphere[1]))
        for k in suspicious:
            subset = tuple(int(i) for i in block[k])
            base = int_chart[subset[0]]
            if linalg.integer_det([[a - b for a, b in zip(int_chart[i], base)] for i in subset[1:]]) == 0:
                continue
            cell = _exact_check(points, subset, fast_points)
            if cell is not None:
                out.append(cell)
    out.sort(key=lambda c: c.indices)
    return out


def _delaunay_route(points, chart_pts: np.ndarray, exact_chart) -> List[EmptySphereSimplex]:
    from scipy.spatial import Delaunay, cKDTree

    tri = Delaunay(chart_pts)
    ambient = np.array([[float(c) for c in p] for p in points])
    tree = cKDTree(ambient)
    cells = []
    total = _ZERO
    for simplex in tri.simplices:
        subset = tuple(sorted(int(i) for i in simplex))
        vol = simplex_volume([exact_chart[i] for i in subset])
        if vol == 0:
            continue
        sphere = circumsphere([points[i] for i in subset])
        if sphere is None:
            continue
        centre, r2 = sphere
        c_float = np.array([float(c) for c in centre])
        # a slightly inflated ball surely contains every point inside the sphere
        radius = float(r2) ** 0.5 * (1 + 1e-9) + 1e-12
        near = [[fast(c) for c in points[j]] for j in tree.query_ball_point(c_float, radius)]
        if not _sphere_is_empty(near, centre, r2):
            raise EnumerationBudgetExceeded("floating-point triangulation is not Delaunay")
        cells.append(EmptySphereSimplex(subset, centre, r2))
        total += vol
    hull_vol, _ = polytope_volume(convex_hull(PointSet(exact_chart)))
    if total != hull_vol:
        raise EnumerationBudgetExceeded("floating-point triangulation does not cover the hull")
    cells.sort(key=lambda c: c.indices)
    return cells


def empty_sphere_simplices(a: PointSet, budget: Optional[int] = None, route: str = "auto") -> List[EmptySphereSimplex]:
    """All full-size empty-circumsphere simplices of A (indices into ``a.points``)."""
    from ..config import DEFAULT

    budget = DEFAULT.simplex_budget if budget is None else budget
    # v and the d bounds both ask for the same cells; keep recent answers
    return list(_cells(a.points, budget, route))


@lru_cache(maxsize=16)
def _cells(points, budget: int, route: str) -> Tuple[EmptySphereSimplex, ...]:
    return tuple(_compute_cells(PointSet(points), budget, route))


def _compute_cells(a: PointSet, budget: int, route: str) -> List[EmptySphereSimplex]:
    points = a.points
    if len(points) == 1:
        return [EmptySphereSimplex((0,), tuple(points[0]), _ZERO)]
    _, chart, _ = affine_chart(points)
    m = len(chart)
    if m == 1:
        axis = chart[0]
        order = sorted(range(len(points)), key=lambda i: points[i][axis])
        cells = []
        for i, j in zip(order, order[1:]):
            centre = tuple((x + y) / 2 for x, y in zip(points[i], points[j]))
            r2 = sum(((x - y) ** 2 for x, y in zip(points[i], centre)), _ZERO)
            cells.append(EmptySphereSimplex(tuple(sorted((i, j))), centre, r2))
        return cells
    arr = a.as_array()
    chart_pts = float_chart(arr, m)
    total = comb(len(points), m + 1)
    if route == "enumerate" or (route == "auto" and total <= budget and len(points) <= 40):
        return _enumerate(points, chart_pts, m + 1)
    exact_chart = [tuple(p[c] for c in chart) for p in points]
    try:
        return _delaunay_route(points, chart_pts, exact_chart)
    except EnumerationBudgetExceeded:
        if total <= budget:
            return _enumerate(points, chart_pts, m + 1)
        raise

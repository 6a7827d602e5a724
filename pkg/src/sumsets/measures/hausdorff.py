"""Distance from the convex hull, d^(K)(A) = sup over x in conv(A) of the gauge
distance from x to A.

The function x -> min_a ||x - a|| is maximised over the hull at a vertex of
the arrangement formed by the equal-distance loci and the hull facets.  For
the Euclidean gauge those loci are the Voronoi faces, which are dual to the
faces of the empty-sphere cells; for a polytope gauge they are the hyperplanes
<nu_j, x - a> = t h_j.  Both cases are handled by enumerating small linear
systems exactly and evaluating the distance at every solution inside the
hull.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .. import linalg
from ..config import DEFAULT, Config
from ..gauges import EuclideanBall, PolytopeGauge, gauge_norm_exact
from ..hull import Polytope, affine_chart, convex_hull
from ..rational import fast
from ..sets import BoxUnion, PointSet
from .empty_sphere import empty_sphere_simplices
from .result import MeasureResult

_ZERO = Fraction(0)


def _sq_dist(u, w) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(u, w)), _ZERO)


def _d_sq_at(points, x) -> Fraction:
    return min(_sq_dist(p, x) for p in points)


# ---------------------------------------------------------------------------
# Euclidean
# ---------------------------------------------------------------------------


def _d_line(a: PointSet) -> MeasureResult:
    """Collinear sets: half the largest gap, measured along the line."""
    pts = a.points
    _, chart, _ = affine_chart(pts)
    axis = chart[0]
    order = sorted(pts, key=lambda p: p[axis])
    best = None
    for p, q in zip(order, order[1:]):
        gap = _sq_dist(p, q)
        if best is None or gap > best[0]:
            best = (gap, p, q)
    gap, p, q = best
    mid = tuple((s + t) / 2 for s, t in zip(p, q))
    return MeasureResult.from_squared("d", gap / 4, certificate={"x": mid, "gap": (p, q)})


def voronoi_candidates(a: PointSet, hull: Polytope, cells=None) -> List[Tuple[Fraction, ...]]:
    """Every point of the hull where a Voronoi face of A meets hull facets of
    complementary dimension (hull vertices excluded, since they lie in A)."""
    pts = a.points
    n = a.dim
    m = hull.affine_dim
    cells = cells if cells is not None else empty_sphere_simplices(a)
    facets = list(hull.facets)
    eq_rows = [list(nrm) for nrm, _ in hull.equations]
    eq_rhs = [off for _, off in hull.equations]
    subsets = set()
    for cell in cells:
        for s in range(2, len(cell.indices) + 1):
            for t in itertools.combinations(cell.indices, s):
                subsets.add(t)
    facet_combos = {}
    out = []
    seen = set()
    arr = np.array([[float(c) for c in p] for p in pts])
    f_norm = np.array([[float(c) for c in nrm] for nrm, _ in facets]).reshape(len(facets), n)
    f_off = np.array([float(off) for _, off in facets])
    e_norm = np.array([[float(c) for c in r] for r in eq_rows]).reshape(len(eq_rows), n)
    e_off = np.array([float(c) for c in eq_rhs])
    scale = float(np.abs(arr).max()) + 1.0
    zero = fast(_ZERO)
    fast_facets = [([fast(c) for c in nrm], fast(off)) for nrm, off in facets]
    fast_eq = [[fast(c) for c in r] for r in eq_rows]
    fast_eq_rhs = [fast(c) for c in eq_rhs]
    solved = {}
    for t in sorted(subsets):
        k = m - len(t) + 1
        if k not in facet_combos:
            choices = list(itertools.combinations(range(len(facets)), k))
            facet_combos[k] = np.array(choices, dtype=np.int64).reshape(len(choices), k)
        combos = facet_combos[k]
        p0 = pts[t[0]]
        base_rows = []
        base_rhs = []
        sq0 = sum((c * c for c in p0), _ZERO)
        for j in t[1:]:
            pj = pts[j]
            base_rows.append([2 * (x - y) for x, y in zip(pj, p0)])
            base_rhs.append(sum((c * c for c in pj), _ZERO) - sq0)
        # Screen every facet choice in floating point: the system must be
        # regular, its solution must lie in the hull, and the points of t must
        # be nearest there.  Only clear failures are dropped; the rest are
        # solved exactly.
        brow = np.array([[float(c) for c in r] for r in base_rows]).reshape(len(base_rows), n)
        brhs = np.array([float(c) for c in base_rhs])
        mats = np.concatenate(
            [np.broadcast_to(brow, (len(combos),) + brow.shape), f_norm[combos], np.broadcast_to(e_norm, (len(combos),) + e_norm.shape)],
            axis=1,
        )
        vecs = np.concatenate(
            [np.broadcast_to(brhs, (len(combos), len(brhs))), f_off[combos], np.broadcast_to(e_off, (len(combos), len(e_off)))],
            axis=1,
        )
        keep = np.ones(len(combos), dtype=bool)
        regular_any = False
        if mats.shape[1] == n:
            dets = np.linalg.det(mats)
            rowscale = np.prod(np.linalg.norm(mats, axis=2), axis=1)
            regular = np.abs(dets) > 1e-9 * np.maximum(rowscale, 1e-300)
            regular_any = bool(np.any(regular))
            if regular_any:
                xs = np.linalg.solve(mats[regular], vecs[regular][..., None])[..., 0]
                solutions = np.zeros((len(combos), n))
                solutions[regular] = xs
                slack = 1e-7 * scale
                inside = np.all(xs @ f_norm.T - f_off <= slack, axis=1)
                d_t = np.linalg.norm(xs - arr[t[0]], axis=1)
                d_all = np.sqrt(((xs[:, None, :] - arr[None, :, :]) ** 2).sum(axis=2)).min(axis=1)
                nearest = d_all >= d_t - slack
                keep[np.flatnonzero(regular)] = inside & nearest
        fast_base = [[fast(c) for c in r] for r in base_rows]
        fast_brhs = [fast(c) for c in base_rhs]
        for ci in np.flatnonzero(keep):
            combo = combos[ci]
            if regular_any and regular[ci]:
                # symmetric inputs reach one point through many systems; a
                # regular system is settled by checking a known solution
                key = tuple(np.round(solutions[ci] / (scale * 1e-9)).astype(np.int64))
                known = solved.get(key)
                if known is not None:
                    xq = known[1]
                    rows_q = fast_base + [fast_facets[f][0] for f in combo] + fast_eq
                    rhs_q = fast_brhs + [fast_facets[f][1] for f in combo] + fast_eq_rhs
                    if all(sum((a * b for a, b in zip(r, xq)), zero) == v for r, v in zip(rows_q, rhs_q)):
                        continue
            else:
                key = None
            rows = base_rows + [list(facets[f][0]) for f in combo] + eq_rows
            rhs = base_rhs + [facets[f][1] for f in combo] + eq_rhs
            sol = linalg.solve_unique(rows, rhs) if len(rows) >= n else None
            if sol is None:
                continue
            x = tuple(sol)
            if key is not None:
                solved[key] = (x, [fast(c) for c in x])
            if x in seen:
                continue
            seen.add(x)
            if hull.contains(x):
                out.append(x)
    return out


def _d_euclid_exact(a: PointSet, hull: Polytope, cells=None) -> MeasureResult:
    pts = a.points
    cands = voronoi_candidates(a, hull, cells)
    best_val, best_x = _ZERO, pts[0]
    for x in cands:
        val = _d_sq_at(pts, x)
        if val > best_val:
            best_val, best_x = val, x
    return MeasureResult.from_squared("d", best_val, certificate={"x": best_x, "candidates": len(cands)})


def _d_euclid_float(a: PointSet) -> MeasureResult:
    """Largest empty circle centred in the hull, planar sets, floating point."""
    from scipy.spatial import ConvexHull, Delaunay, cKDTree

    arr = a.as_array()
    tree = cKDTree(arr)
    hull = ConvexHull(arr)
    eqs = hull.equations  # normal . x + offset <= 0 inside
    scale = float(np.max(np.abs(arr))) + 1.0
    tol = 1e-12 * scale
    tri = Delaunay(arr)
    cands = [arr[hull.vertices]]
    # circumcentres
    p = arr[tri.simplices]
    a0 = p[:, 0, :]
    d = p[:, 1:, :] - a0[:, None, :]
    rhs = 0.5 * np.einsum("cij,cij->ci", d, d)
    det = np.linalg.det(d)
    ok = np.abs(det) > 1e-14 * scale * scale
    centres = a0[ok] + np.linalg.solve(d[ok], rhs[ok][..., None])[..., 0]
    inside = np.all(centres @ eqs[:, :2].T + eqs[:, 2] <= tol, axis=1)
    cands.append(centres[inside])
    # bisectors of Delaunay edges against hull edges
    edges = set()
    for s in tri.simplices:
        for i, j in ((0, 1), (1, 2), (0, 2)):
            edges.add((min(s[i], s[j]), max(s[i], s[j])))
    edges = np.array(sorted(edges))
    mids = 0.5 * (arr[edges[:, 0]] + arr[edges[:, 1]])
    dirs = arr[edges[:, 1]] - arr[edges[:, 0]]
    for simplex in hull.simplices:
        u, w = arr[simplex[0]], arr[simplex[1]]
        e = w - u
        # points u + s e with dirs . (u + s e - mids) = 0
        denom = dirs @ e
        good = np.abs(denom) > 1e-15
        s = np.full(len(edges), -1.0)
        s[good] = np.einsum("ij,ij->i", dirs[good], mids[good] - u) / denom[good]
        sel = (s >= -1e-12) & (s <= 1 + 1e-12)
        cands.append(u + np.clip(s[sel], 0, 1)[:, None] * e)
    allc = np.vstack(cands)
    dist, _ = tree.query(allc)
    k = int(np.argmax(dist))
    val = float(dist[k])
    return MeasureResult.bounds("d", val, val, certificate={"x": tuple(allc[k])}, flags=("float",))


# ---------------------------------------------------------------------------
# polytope gauges
# ---------------------------------------------------------------------------


def _gauge_distance(points, x, gauge: PolytopeGauge):
    best = None
    for p in points:
        val = gauge_norm_exact(gauge, tuple(s - t for s, t in zip(x, p)))
        if best is None or val < best:
            best = val
    return best


def _d_gauge_exact(a: PointSet, hull: Polytope, gauge: PolytopeGauge) -> MeasureResult:
    """Enumerate vertices of the arrangement in (x, t)-space, screening in
    floating point and confirming the top candidates exactly."""
    pts = a.points
    n = a.dim
    m = hull.affine_dim
    pool_rows = []
    pool_rhs = []
    for p in pts:
        for nrm, off in gauge.facets:
            pool_rows.append(list(nrm) + [-off])
            pool_rhs.append(sum((s * t for s, t in zip(nrm, p)), _ZERO))
    for nrm, off in hull.facets:
        pool_rows.append(list(nrm) + [_ZERO])
        pool_rhs.append(off)
    eq_rows = [list(nrm) + [_ZERO] for nrm, _ in hull.equations]
    eq_rhs = [off for _, off in hull.equations]
    pr = np.array([[float(c) for c in r] for r in pool_rows])
    pb = np.array([float(c) for c in pool_rhs])
    er = np.array([[float(c) for c in r] for r in eq_rows]).reshape(len(eq_rows), n + 1)
    eb = np.array([float(c) for c in eq_rhs])
    arr = a.as_array()
    gn = np.array([[float(c) for c in nrm] for nrm, _ in gauge.facets])
    go = np.array([float(o) for _, o in gauge.facets])
    hn = np.array([[float(c) for c in nrm] for nrm, _ in hull.facets])
    ho = np.array([float(o) for _, o in hull.facets])
    combos = np.array(list(itertools.combinations(range(len(pool_rows)), m + 1)), dtype=np.int64)
    if combos.size == 0:
        return MeasureResult.from_exact("d", _ZERO)
    mats = np.concatenate([pr[combos], np.broadcast_to(er, (len(combos),) + er.shape)], axis=1)
    rhs = np.concatenate([pb[combos], np.broadcast_to(eb, (len(combos), len(eb)))], axis=1)
    det = np.linalg.det(mats)
    scale = np.prod(np.linalg.norm(mats, axis=2), axis=1)
    good = np.abs(det) > 1e-9 * scale
    exact_pending = list(np.nonzero(~good & (np.abs(det) > 0))[0])
    sols = np.linalg.solve(mats[good], rhs[good][..., None])[..., 0]
    xs = sols[:, :n]
    inside = np.all(xs @ hn.T - ho <= 1e-9 * (1 + np.abs(ho)), axis=1)
    xs_in = xs[inside]
    idx_in = np.nonzero(good)[0][inside]
    if len(xs_in):
        diff = xs_in[:, None, :] - arr[None, :, :]
        vals = np.max(np.einsum("kpi,fi->kpf", diff, gn) / go, axis=2).min(axis=1)
        top = float(vals.max())
        keep = idx_in[vals >= top - 1e-7 * (1 + abs(top))]
        exact_pending.extend(int(i) for i in keep)
    best_val, best_x = _ZERO, pts[0]
    for ci in sorted(set(int(i) for i in exact_pending)):
        rows = [pool_rows[j] for j in combos[ci]] + eq_rows
        rr = [pool_rhs[j] for j in combos[ci]] + eq_rhs
        sol = linalg.solve_unique(rows, rr)
        if sol is None:
            continue
        x = tuple(sol[:n])
        if not hull.contains(x):
            continue
        val = _gauge_distance(pts, x, gauge)
        if val > best_val:
            best_val, best_x = val, x
    return MeasureResult.from_exact("d_K", best_val, certificate={"x": best_x})


def gauge_inner_radius(gauge: PolytopeGauge) -> float:
    """Largest r with r * B_2 inside the gauge body."""
    return min(float(off) / math.sqrt(sum(float(c) ** 2 for c in nrm)) for nrm, off in gauge.facets)


# ---------------------------------------------------------------------------
# public entry
# ---------------------------------------------------------------------------


def hausdorff_from_hull(
    a: PointSet, gauge=None, method: str = "auto", config: Config = DEFAULT, hull: Optional[Polytope] = None
) -> MeasureResult:
    """d^(K)(A) for a finite set.

    ``method``: ``"auto"`` (exact in chart dimension <= 2, bounds above),
    ``"exact"``, ``"bounds"`` (lower from arrangement candidates, upper from
    v(A)), or ``"float"`` (planar Euclidean, floating point, for large sets).
    """
    gauge = gauge or EuclideanBall()
    pts = a.points
    if len(pts) == 1:
        return MeasureResult.from_exact("d", _ZERO, certificate={"x": pts[0]})
    if isinstance(gauge, EuclideanBall) and gauge.radius != 1:
        base = hausdorff_from_hull(a, EuclideanBall(), method, config, hull)
        r = gauge.radius
        sq = base.squared
        if sq is not None:
            return MeasureResult.from_squared("d", sq / (r * r), certificate=base.certificate)
        f = float(r)
        return MeasureResult.bounds("d", base.lower / f, base.upper / f, base.value / f, certificate=base.certificate)
    hull = hull or convex_hull(a)
    m = hull.affine_dim
    if isinstance(gauge, EuclideanBall):
        if method == "float":
            if a.dim != 2 or m != 2:
                raise ValueError("the float route handles full-dimensional planar sets only")
            return _d_euclid_float(a)
        if m == 1:
            return _d_line(a)
        if method == "auto" and m == 2 and len(pts) > config.exact_candidate_limit and a.dim == 2:
            return _d_euclid_float(a)
        if method == "exact" or (method == "auto" and m <= 2):
            return _d_euclid_exact(a, hull)
        return _d_bounds(a, hull, config)
    # polytope gauge
    if method in ("exact", "auto") and m <= 2:
        return _d_gauge_exact(a, hull, gauge)
    if method == "exact":
        return _d_gauge_exact(a, hull, gauge)
    lower = _d_gauge_lower(a, hull, gauge)
    from .deviation import effective_stddev_v

    upper = effective_stddev_v(a, config).upper / gauge_inner_radius(gauge)
    return MeasureResult.bounds("d_K", float(lower), max(float(lower), upper), float(lower), flags=("bounds",))


def _d_gauge_lower(a, hull, gauge) -> Fraction:
    best = _ZERO
    for x in voronoi_candidates(a, hull):
        val = _gauge_distance(a.points, x, gauge)
        if val > best:
            best = val
    return best


def _d_bounds(a: PointSet, hull: Polytope, config: Config) -> MeasureResult:
    from .deviation import effective_stddev_v

    v = effective_stddev_v(a, config)
    x_v = v.certificate.get("x")
    if v.exact_squared is not None and x_v is not None:
        # d <= v always; when the distance at v's maximiser already reaches
        # v the two coincide and no arrangement search is needed
        at_x = _d_sq_at(a.points, x_v)
        if at_x == v.exact_squared:
            return MeasureResult.from_squared("d", at_x, certificate={"x": x_v, "pinched_by": "v"})
    cells = empty_sphere_simplices(a, budget=config.simplex_budget)
    lower = _d_euclid_exact(a, hull, cells)
    lo = lower.value
    up = max(lo, v.upper)
    cert = dict(lower.certificate)
    cert["lower_squared"] = lower.exact_squared
    cert["upper_squared"] = v.exact_squared
    return MeasureResult.bounds("d", lo, up, lo, certificate=cert, flags=("bounds",))


# ---------------------------------------------------------------------------
# unions of boxes and other convex pieces: certified Lipschitz bounds
# ---------------------------------------------------------------------------


def lipschitz_sup(dist_fn, hull: Polytope, tol: float = 1e-4, max_boxes: int = 2_000_000):
    """Bracket [lower, upper] for the sup over conv of a 1-Lipschitz function.

    Branch and bound over axis boxes: a box whose centre value plus
    half-diagonal cannot beat the incumbent by more than ``tol`` is dropped.
    """
    verts = np.array([[float(c) for c in v] for v in hull.vertices])
    normals = np.array([[float(c) for c in n] for n, _ in hull.facets])
    offs = np.array([float(o) for _, o in hull.facets])
    eq_n = np.array([[float(c) for c in n] for n, _ in hull.equations]).reshape(-1, verts.shape[1])
    if len(eq_n):
        raise ValueError("Lipschitz bounds need a full-dimensional hull")
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    centres = ((lo + hi) / 2)[None, :]
    halves = ((hi - lo) / 2)[None, :]
    lower = float(np.max(dist_fn(verts)))
    discarded_max = lower
    processed = 0
    while len(centres):
        processed += len(centres)
        if processed > max_boxes:
            raise RuntimeError("branch and bound exceeded its box budget")
        # drop boxes disjoint from the hull
        reach = np.abs(normals) @ halves.T  # (F, B)
        outside = np.any(normals @ centres.T - offs[:, None] > reach + 1e-15, axis=0)
        centres, halves = centres[~outside], halves[~outside]
        if not len(centres):
            break
        vals = dist_fn(centres)
        inside = np.all(centres @ normals.T - offs <= 0, axis=1)
        if np.any(inside):
            lower = max(lower, float(np.max(vals[inside])))
        ub = vals + np.linalg.norm(halves, axis=1) * (1 + 1e-12) + 1e-15
        done = ub <= lower + tol
        if np.any(done):
            discarded_max = max(discarded_max, float(np.max(ub[done])))
        centres, halves = centres[~done], halves[~done]
        if not len(centres):
            break
        axis = np.argmax(halves, axis=1)
        rows = np.arange(len(centres))
        halves = halves.copy()
        halves[rows, axis] /= 2
        left = centres.copy()
        right = centres.copy()
        left[rows, axis] -= halves[rows, axis]
        right[rows, axis] += halves[rows, axis]
        centres = np.vstack([left, right])
        halves = np.vstack([halves, halves])
    return lower, max(lower, discarded_max)


def box_distance_fn(u: BoxUnion):
    lows = np.array([[float(c) for c in lo] for lo, _ in u.boxes])
    highs = np.array([[float(c) for c in hi] for _, hi in u.boxes])

    def fn(x: np.ndarray) -> np.ndarray:
        gap = np.maximum(np.maximum(lows[None] - x[:, None, :], 0.0), x[:, None, :] - highs[None])
        return np.sqrt(np.einsum("pbi,pbi->pb", gap, gap)).min(axis=1)

    return fn


def hausdorff_boxes(u: BoxUnion, tol: float = 1e-4) -> MeasureResult:
    """d(A) for a full-dimensional union of boxes, as a certified bracket."""
    hull = convex_hull(u.corners())
    lower, upper = lipschitz_sup(box_distance_fn(u), hull, tol)
    return MeasureResult.bounds("d", lower, upper, lower, flags=("bounds",))

"""How c, v and d behave under sums and averages.

Each check returns a VerifierReport.  Rational inputs keep v^2 and (in low
dimension) d^2 exact, so most comparisons are decided exactly, including
the ones with square roots on both sides: sqrt(x) <= sqrt(a) + sqrt(b) is
rewritten as a comparison of rationals.  Measures that are only bracketed
(c in the plane, d in higher dimension) lead to bracket comparisons, which
can hold or stay inconclusive but never report a violation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..ball import min_enclosing_ball
from ..config import DEFAULT, Config
from ..gauges import EuclideanBall
from ..hull import convex_hull
from ..measures import MeasureResult, effective_stddev_v, hausdorff_from_hull, schneider_c, volume_deficit
from ..reports import VerifierReport, bounds_report, combine, exact_report
from ..sets import BoxUnion, PointSet, average_boxes, average_set, diam, iter_average_frames, sum_of_sets

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# comparison helpers
# ---------------------------------------------------------------------------


def sqrt_sum_report(name: str, x2: Fraction, a2: Fraction, b2: Fraction, **kw) -> VerifierReport:
    """Exact verdict on sqrt(x2) <= sqrt(a2) + sqrt(b2).

    When x2 <= a2 + b2 the comparison is immediate.  Otherwise the claim is
    equivalent to (x2 - a2 - b2)^2 <= 4 a2 b2, and that pair of rationals is
    what the report carries."""
    gap = x2 - a2 - b2
    if gap <= 0:
        return exact_report(name, x2, a2 + b2, "<=", details={"form": "x <= a + b"}, **kw)
    return exact_report(name, gap * gap, 4 * a2 * b2, "<=", details={"form": "(x - a - b)^2 <= 4ab"}, **kw)


def _bracket(res):
    return (res.lower, res.upper)


def _d(a, gauge=None, config: Config = DEFAULT):
    return hausdorff_from_hull(a, gauge, config=config)


def _d_exact_sq(res) -> Optional[Fraction]:
    """Squared value when it is known exactly."""
    if res.exact_squared is not None:
        return res.exact_squared
    if res.exact is not None:
        return res.exact * res.exact
    return None


def _d_exact_value(res) -> Optional[Fraction]:
    """Rational value, for gauge distances that come out rational."""
    return res.exact


# ---------------------------------------------------------------------------
# Schneider's index
# ---------------------------------------------------------------------------


def _c_compare(name: str, lhs, rhs, rhs_factor=Fraction(1), config: Config = DEFAULT, **kw) -> VerifierReport:
    """lhs <= rhs_factor * rhs for two c results (exact when both are exact)."""
    if lhs.exact is not None and rhs.exact is not None:
        return exact_report(name, lhs.exact, rhs_factor * rhs.exact, "<=", **kw)
    f = float(rhs_factor)
    tol = 4 * config.bisection_tol
    return bounds_report(name, _bracket(lhs), (f * rhs.lower, f * rhs.upper), "<=", tol=tol, **kw)


def schneider_three_sets(a, b, c, config: Config = DEFAULT) -> VerifierReport:
    """c(A+B+C) <= max(c(A+B), c(B+C))."""
    total = schneider_c(sum_of_sets([a, b, c]), config)
    ab = schneider_c(sum_of_sets([a, b]), config)
    bc = schneider_c(sum_of_sets([b, c]), config)
    if ab.exact is not None and bc.exact is not None:
        bigger = ab if ab.exact >= bc.exact else bc
    else:
        # the max of two bracketed numbers lies in the max of the brackets
        bigger = MeasureResult.bounds("c", max(ab.lower, bc.lower), max(ab.upper, bc.upper))
    return _c_compare("c-three-sets", total, bigger, config=config, instance={"dim": a.dim})


def _average(a, k: int):
    return average_boxes(a, k) if isinstance(a, BoxUnion) else average_set(a, k)


def schneider_average_step(a, k: int, config: Config = DEFAULT) -> VerifierReport:
    """c(A(k)) <= (k-1)/k c(A(k-1))."""
    cur = schneider_c(_average(a, k), config)
    prev = schneider_c(_average(a, k - 1), config)
    return _c_compare("c-average-step", cur, prev, Fraction(k - 1, k), config, instance={"k": k, "dim": a.dim})


def schneider_rate(a, k: int, config: Config = DEFAULT) -> VerifierReport:
    """c(A(k)) <= c(A) / k."""
    cur = schneider_c(_average(a, k), config)
    base = schneider_c(a, config)
    return _c_compare("c-rate", cur, base, Fraction(1, k), config, instance={"k": k, "dim": a.dim})


def schneider_two_point_sequence(kmax: int = 64) -> VerifierReport:
    """For A = {0, 1}: c(A(k)) = 1/k and d(A(k)) = 1/(2k), exactly, for k <= kmax."""
    a = PointSet([(0,), (1,)])
    trials = []
    for k in range(1, kmax + 1):
        ak = average_set(a, k)
        c = schneider_c(ak)
        d = hausdorff_from_hull(ak)
        trials.append(exact_report("c-two-point", c.exact, Fraction(1, k), "=", instance={"k": k}))
        trials.append(exact_report("d-two-point", d.exact, Fraction(1, 2 * k), "=", instance={"k": k}))
    return combine("two-point-sequence", trials, instance={"kmax": kmax})


def verify_c_laws(sets: Sequence, k: Optional[int] = None, config: Config = DEFAULT) -> VerifierReport:
    """Run the c checks that apply: three-set when three sets are given, the
    average step and the 1/k rate when a single set and k are given."""
    trials = []
    if len(sets) == 3:
        trials.append(schneider_three_sets(*sets, config=config))
    if len(sets) == 1 and k is not None and k >= 2:
        trials.append(schneider_average_step(sets[0], k, config))
        trials.append(schneider_rate(sets[0], k, config))
    if not trials:
        raise ValueError("give three sets, or one set and k >= 2")
    return combine("c-laws", trials)


# ---------------------------------------------------------------------------
# effective standard deviation
# ---------------------------------------------------------------------------


def _v2(a, config: Config = DEFAULT) -> Fraction:
    res = effective_stddev_v(a, config)
    if res.exact_squared is None:
        raise ValueError("v could not be computed exactly within the enumeration budget")
    return res.exact_squared


def stddev_subadditive(a: PointSet, b: PointSet, config: Config = DEFAULT) -> VerifierReport:
    """v^2(A+B) <= v^2(A) + v^2(B)."""
    lhs = _v2(sum_of_sets([a, b]), config)
    return exact_report("v-subadditive", lhs, _v2(a, config) + _v2(b, config), "<=", instance={"dim": a.dim})


def stddev_many_summands(sets: Sequence[PointSet], config: Config = DEFAULT) -> VerifierReport:
    """v^2(A_1 + ... + A_k) <= min(k, n) max_i v^2(A_i)."""
    k, n = len(sets), sets[0].dim
    lhs = _v2(sum_of_sets(list(sets)), config)
    rhs = min(k, n) * max(_v2(s, config) for s in sets)
    return exact_report("v-many-summands", lhs, rhs, "<=", instance={"k": k, "dim": n})


def stddev_leave_one_out(sets: Sequence[PointSet], config: Config = DEFAULT) -> VerifierReport:
    """For k >= n + 1: v(sum) is at most the (n+1)-th largest leave-one-out value."""
    k, n = len(sets), sets[0].dim
    if k < n + 1:
        raise ValueError("needs at least n + 1 summands")
    lhs = _v2(sum_of_sets(list(sets)), config)
    outs = sorted(_v2(sum_of_sets([s for j, s in enumerate(sets) if j != i]), config) for i in range(k))
    return exact_report("v-leave-one-out", lhs, outs[n], "<=", instance={"k": k, "dim": n})


def stddev_rate(a: PointSet, k: int, config: Config = DEFAULT) -> VerifierReport:
    """v(A(k)) <= min(1/sqrt(k), sqrt(n)/k) v(A), compared in squares."""
    n = a.dim
    lhs = _v2(average_set(a, k), config)
    factor = min(Fraction(1, k), Fraction(n, k * k))
    return exact_report("v-rate", lhs, factor * _v2(a, config), "<=", instance={"k": k, "dim": n})


def verify_v_laws(sets: Sequence[PointSet], k: Optional[int] = None, config: Config = DEFAULT) -> VerifierReport:
    trials = []
    if len(sets) == 2:
        trials.append(stddev_subadditive(*sets, config=config))
    if len(sets) >= 2:
        trials.append(stddev_many_summands(sets, config))
        if len(sets) >= sets[0].dim + 1:
            trials.append(stddev_leave_one_out(sets, config))
    if len(sets) == 1 and k is not None:
        trials.append(stddev_rate(sets[0], k, config))
    if not trials:
        raise ValueError("give two or more sets, or one set and k")
    return combine("v-laws", trials)


# ---------------------------------------------------------------------------
# Hausdorff distance from the hull
# ---------------------------------------------------------------------------


def _d_sum_report(name: str, lhs_res, parts, tol: float = 1e-9, **kw) -> VerifierReport:
    """lhs <= sum of parts for d results: exact when possible, else brackets."""
    exact_vals = [_d_exact_value(r) for r in [lhs_res] + list(parts)]
    if all(v is not None for v in exact_vals):
        return exact_report(name, exact_vals[0], sum(exact_vals[1:], _ZERO), "<=", **kw)
    squares = [_d_exact_sq(r) for r in [lhs_res] + list(parts)]
    if len(parts) == 2 and all(s is not None for s in squares):
        return sqrt_sum_report(name, squares[0], squares[1], squares[2], **kw)
    lo = sum(r.lower for r in parts)
    hi = sum(r.upper for r in parts)
    return bounds_report(name, _bracket(lhs_res), (lo, hi), "<=", tol=tol, **kw)


def hausdorff_subadditive(a: PointSet, b: PointSet, gauge=None, config: Config = DEFAULT) -> VerifierReport:
    """d^(K)(A+B) <= d^(K)(A) + d^(K)(B)."""
    return _d_sum_report(
        "d-subadditive",
        _d(sum_of_sets([a, b]), gauge, config),
        [_d(a, gauge, config), _d(b, gauge, config)],
        instance={"dim": a.dim, "gauge": _gauge_name(gauge)},
    )


def hausdorff_three_sets(a: PointSet, b: PointSet, c: PointSet, gauge=None, config: Config = DEFAULT) -> VerifierReport:
    """d^(K)(A+B+C) <= d^(K)(A+B) + d^(K)(B+C)."""
    return _d_sum_report(
        "d-three-sets",
        _d(sum_of_sets([a, b, c]), gauge, config),
        [_d(sum_of_sets([a, b]), gauge, config), _d(sum_of_sets([b, c]), gauge, config)],
        instance={"dim": a.dim, "gauge": _gauge_name(gauge)},
    )


def _scaled_compare(name: str, lhs_res, rhs_res, factor: Fraction, **kw) -> VerifierReport:
    """lhs <= factor * rhs for two d results."""
    if lhs_res.exact is not None and rhs_res.exact is not None:
        return exact_report(name, lhs_res.exact, factor * rhs_res.exact, "<=", **kw)
    l2, r2 = _d_exact_sq(lhs_res), _d_exact_sq(rhs_res)
    if l2 is not None and r2 is not None:
        return exact_report(name, l2, factor * factor * r2, "<=", details={"form": "squared"}, **kw)
    f = float(factor)
    return bounds_report(name, _bracket(lhs_res), (f * rhs_res.lower, f * rhs_res.upper), "<=", **kw)


def hausdorff_partial_monotone(a: PointSet, k: int, gauge=None, config: Config = DEFAULT) -> VerifierReport:
    """d^(K)(A(k)) <= 2 (k-1)/k d^(K)(A(k-1))."""
    return _scaled_compare(
        "d-partial-monotone",
        _d(average_set(a, k), gauge, config),
        _d(average_set(a, k - 1), gauge, config),
        Fraction(2 * (k - 1), k),
        instance={"k": k, "dim": a.dim, "gauge": _gauge_name(gauge)},
    )


def hausdorff_rate_from_schneider(a: PointSet, k: int, gauge=None, config: Config = DEFAULT) -> VerifierReport:
    """d^(K)(A(k)) <= min(1, ceil(c(A))/k) d^(K)(A)."""
    c = schneider_c(a, config)
    lo_ceil, hi_ceil = math.ceil(c.lower - 1e-12), math.ceil(c.upper - 1e-12)
    if c.exact is not None:
        lo_ceil = hi_ceil = math.ceil(c.exact)
    instance = {"k": k, "dim": a.dim, "gauge": _gauge_name(gauge), "c": (c.lower, c.upper)}
    lhs = _d(average_set(a, k), gauge, config)
    base = _d(a, gauge, config)
    if lo_ceil == hi_ceil:
        return _scaled_compare("d-rate-c", lhs, base, min(Fraction(1), Fraction(hi_ceil, k)), instance=instance)
    lo_f = min(1.0, lo_ceil / k)
    hi_f = min(1.0, hi_ceil / k)
    return bounds_report("d-rate-c", _bracket(lhs), (lo_f * base.lower, hi_f * base.upper), "<=", instance=instance)


def hausdorff_gauge_sandwich(a: PointSet, p, config: Config = DEFAULT) -> VerifierReport:
    """r d^(K) <= d <= R d^(K) for K the unit ball of l_1 or l_inf, where
    r B_2 is inside K and K is inside R B_2; compared in squares."""
    from ..gauges import lp_ball

    n = a.dim
    gauge = lp_ball(n, p)
    dk = _d(a, gauge, config)
    d = _d(a, None, config)
    if math.isinf(float(p)):
        r2, big2 = Fraction(1), Fraction(n)
    elif p == 1:
        r2, big2 = Fraction(1, n), Fraction(1)
    else:
        raise ValueError("the sandwich check takes p = 1 or p = inf")
    dk2, d2 = _d_exact_sq(dk), _d_exact_sq(d)
    name = "d-gauge-sandwich"
    instance = {"dim": n, "p": str(p)}
    if dk2 is not None and d2 is not None:
        low = exact_report(name + "-lower", r2 * dk2, d2, "<=", instance=instance)
        high = exact_report(name + "-upper", d2, big2 * dk2, "<=", instance=instance)
        return combine(name, [low, high], instance=instance)
    r, big = math.sqrt(float(r2)), math.sqrt(float(big2))
    low = bounds_report(name + "-lower", (r * dk.lower, r * dk.upper), _bracket(d), "<=", instance=instance)
    high = bounds_report(name + "-upper", _bracket(d), (big * dk.lower, big * dk.upper), "<=", instance=instance)
    return combine(name, [low, high], instance=instance)


def verify_d_laws(
    sets: Sequence[PointSet], k: Optional[int] = None, gauge=None, config: Config = DEFAULT
) -> VerifierReport:
    trials = []
    if len(sets) == 2:
        trials.append(hausdorff_subadditive(*sets, gauge=gauge, config=config))
    if len(sets) == 3:
        trials.append(hausdorff_three_sets(*sets, gauge=gauge, config=config))
    if len(sets) == 1 and k is not None and k >= 2:
        trials.append(hausdorff_partial_monotone(sets[0], k, gauge, config))
        trials.append(hausdorff_rate_from_schneider(sets[0], k, gauge, config))
    if not trials:
        raise ValueError("give two or three sets, or one set and k >= 2")
    return combine("d-laws", trials)


def _gauge_name(gauge) -> str:
    if gauge is None or isinstance(gauge, EuclideanBall):
        return "l2"
    return getattr(gauge, "name", None) or "polytope"


# ---------------------------------------------------------------------------
# relations between measures of one set
# ---------------------------------------------------------------------------


def radius_relations(a: PointSet, config: Config = DEFAULT, tol: float = 1e-9) -> VerifierReport:
    """d <= R c and r <= 2c/(1+c) R, with R the smallest enclosing radius."""
    _, big_r = min_enclosing_ball(a)
    c = schneider_c(a, config)
    d = _d(a, None, config)
    v = effective_stddev_v(a, config)
    instance = {"dim": a.dim, "size": len(a.points)}
    first = bounds_report("d-le-Rc", _bracket(d), (big_r * c.lower, big_r * c.upper), "<=", tol=tol, instance=instance)

    def shape(x):
        return 2 * x / (1 + x)

    second = bounds_report(
        "r-le-2c-R", _bracket(v), (shape(c.lower) * big_r, shape(c.upper) * big_r), "<=", tol=tol, instance=instance
    )
    return combine("radius-relations", [first, second], instance=instance)


def line_identity(a: PointSet) -> VerifierReport:
    """On a line r(A) = d(A) = R(A) c(A), all exact."""
    if a.dim != 1:
        raise ValueError("the identity is one-dimensional")
    xs = sorted(p[0] for p in a.points)
    big_r = (xs[-1] - xs[0]) / 2
    c = schneider_c(a).exact
    d = hausdorff_from_hull(a).exact
    v2 = effective_stddev_v(a).exact_squared
    checks = [
        exact_report("d-eq-Rc", d, big_r * c, "="),
        exact_report("r-eq-d", v2, d * d, "="),
    ]
    return combine("line-identity", checks, instance={"size": len(xs)})


def inclusion_monotone(a: PointSet, b: PointSet, config: Config = DEFAULT) -> VerifierReport:
    """A inside B with equal hulls: c, d, r and the volume deficit do not grow from A to B."""
    trials = []
    ca, cb = schneider_c(a, config), schneider_c(b, config)
    trials.append(_c_compare("inclusion-c", cb, ca, config=config))
    da, db = _d(a, None, config), _d(b, None, config)
    trials.append(_scaled_compare("inclusion-d", db, da, Fraction(1)))
    trials.append(exact_report("inclusion-r", _v2(b, config), _v2(a, config), "<="))
    trials.append(exact_report("inclusion-delta", volume_deficit(b).exact, volume_deficit(a).exact, "<="))
    return combine("inclusion-monotone", trials, instance={"dim": a.dim})


# ---------------------------------------------------------------------------
# convergence of A(k) to the hull
# ---------------------------------------------------------------------------


def planar_cover_radius(points: np.ndarray, exact_points: Optional[Sequence] = None) -> float:
    """Upper bound on sup over conv(P) of the distance to P, for planar P.

    Every point of a triangle is within the triangle's cover radius of one
    of its corners: the circumradius for a non-obtuse triangle, and for an
    obtuse one the larger distance from an end of the long edge to the point
    of that edge equidistant from the end and the opposite corner.  The
    triangles of any triangulation of P cover conv(P), so the largest cover
    radius bounds the distance from above (points a triangulation skips only
    make the bound looser).  Triangles of zero area cover nothing the others
    miss; given ``exact_points``, nearly flat triangles are tested exactly
    and dropped when their three corners are collinear."""
    from scipy.spatial import Delaunay

    simplices = Delaunay(points).simplices
    if exact_points is not None:
        p, q, r = (points[simplices[:, i]] for i in range(3))
        ab, ac = q - p, r - p
        flat = np.abs(ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0])
        scale = float(np.max(np.ptp(points, axis=0))) ** 2
        keep = np.ones(len(simplices), dtype=bool)
        for t in np.nonzero(flat <= 1e-9 * scale)[0]:
            u, w, z = (exact_points[i] for i in simplices[t])
            if (w[0] - u[0]) * (z[1] - u[1]) == (w[1] - u[1]) * (z[0] - u[0]):
                keep[t] = False
        simplices = simplices[keep]
    p, q, r = (points[simplices[:, i]] for i in range(3))
    best = 0.0
    obtuse_any = np.zeros(len(p), dtype=bool)
    # roll the corners so that each one takes a turn opposite the long edge;
    # angles are classified by dot products, which stay reliable on the
    # nearly flat triangles that collinear points produce
    for a, b, c in ((p, q, r), (q, r, p), (r, p, q)):
        ab, ac, bc = b - a, c - a, c - b
        obtuse_c = np.einsum("ij,ij->i", a - c, b - c) < 0
        obtuse_any |= obtuse_c
        lac = np.einsum("ij,ij->i", ac, ac)
        lbc = np.einsum("ij,ij->i", bc, bc)
        dot_a = np.einsum("ij,ij->i", ab, ac)
        dot_b = np.einsum("ij,ij->i", -ab, bc)
        root_ab = np.sqrt(np.einsum("ij,ij->i", ab, ab))
        with np.errstate(divide="ignore", invalid="ignore"):
            from_a = lac * root_ab / (2 * dot_a)
            from_b = lbc * root_ab / (2 * dot_b)
        edge_case = np.where(obtuse_c, np.maximum(from_a, from_b), 0.0)
        best = max(best, float(np.max(edge_case, initial=0.0)))
    rest = ~obtuse_any
    if np.any(rest):
        pp, qq, rr = p[rest], q[rest], r[rest]
        ab, ac = qq - pp, rr - pp
        cross = np.abs(ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0])
        sides = np.linalg.norm(ab, axis=1) * np.linalg.norm(rr - qq, axis=1) * np.linalg.norm(ac, axis=1)
        best = max(best, float(np.max(sides / (2 * cross))))
    return best


def _member_mask(rows, queries: np.ndarray) -> np.ndarray:
    """For each integer query row, whether it is one of ``rows`` (exact)."""
    if isinstance(rows, np.ndarray) and queries.dtype != object:
        lo = np.minimum(rows.min(axis=0), queries.min(axis=0))
        spans = np.maximum(rows.max(axis=0), queries.max(axis=0)) - lo + 1
        if float(np.prod(spans.astype(float))) < 2.0**62:
            strides = np.cumprod(np.concatenate([[1], spans[:0:-1]]))[::-1].astype(np.int64)
            return np.isin((queries - lo) @ strides, (rows - lo) @ strides)
    keys = {tuple(int(c) for c in row) for row in rows}
    return np.array([tuple(int(c) for c in q) in keys for q in queries], dtype=bool)


def _fan_lattice(corners: Sequence[Sequence[int]], k: int) -> np.ndarray:
    """The points (i u + j w + l z) / k, i + j + l = k, over the fan triangles
    (u, w, z) = (c0, c_t, c_t+1) of a convex polygon, as integer rows times k."""
    c = np.array(corners, dtype=object)
    steps = [(i, j, k - i - j) for i in range(k + 1) for j in range(k + 1 - i)]
    weights = np.array(steps, dtype=object)
    out = [weights @ np.stack([c[0], c[t], c[t + 1]]) for t in range(1, len(c) - 1)]
    return np.vstack(out)


def verify_containment_rate(
    a,
    kmax: int = 20,
    config: Config = DEFAULT,
    tol: float = 1e-9,
    method: str = "auto",
    exact_limit: int = 400,
    cover_limit: int = 2000,
) -> VerifierReport:
    """conv(A) lies within n diam(A) / k of A(k) for k <= kmax.

    Point sets: every hull vertex is checked to lie in A(k) exactly, then the
    distance from conv(A) to A(k) is bounded by d(A(k)) ("exact") or, in the
    plane, by a triangulation cover radius ("cover", in floating point).
    "auto" uses d while A(k) has at most ``exact_limit`` points.  Above
    ``cover_limit`` points the cover radius is taken over a subset of A(k)
    with the same hull, namely the k-fold averages of hull vertices lying on
    a fan triangulation; every one of them is confirmed to be in A(k) before
    use, and distances to a subset can only be larger.  Box unions:
    k Delta(A(k)) is recorded along k, and Delta is checked to fall along
    powers of two."""
    if isinstance(a, BoxUnion):
        return _box_rate(a, kmax)
    if method not in ("auto", "exact", "cover"):
        raise ValueError("method must be 'auto', 'exact' or 'cover'")
    n = a.dim
    width = diam(a)
    hull = convex_hull(a)
    verts = hull.vertices
    planar = n == 2 and hull.full_dimensional
    if method == "cover" and not planar:
        raise ValueError("the cover-radius bound needs a full-dimensional planar set")
    corners = None
    if planar:
        centre = [sum(v[j] for v in verts) / len(verts) for j in range(2)]
        corners = sorted(verts, key=lambda v: math.atan2(float(v[1] - centre[1]), float(v[0] - centre[0])))
    trials = []
    for k, rows, scale in iter_average_frames(a, kmax, cap=config.average_cap):
        # A(k) = rows / scale; a point x lies in A(k) iff x * scale is a row
        vert_rows = np.array([[int(c * scale) for c in v] for v in verts], dtype=object)
        if isinstance(rows, np.ndarray):
            vert_rows = vert_rows.astype(np.int64)
        found = _member_mask(rows, vert_rows)
        if not found.all():
            raise ArithmeticError(f"hull vertex {verts[int(np.argmin(found))]} is missing from A({k})")
        radius = n * width / k
        use_cover = method == "cover" or (method == "auto" and planar and len(rows) > exact_limit)
        if use_cover and len(rows) > cover_limit:
            unit = [[int(c * scale) // k for c in v] for v in corners]
            subset = _fan_lattice(unit, k)
            if isinstance(rows, np.ndarray):
                subset = subset.astype(np.int64)
            if not _member_mask(rows, subset).all():
                raise ArithmeticError(f"a fan lattice point is missing from A({k})")
            exact_rows = [tuple(int(c) for c in row) for row in subset]
            floats = np.asarray(subset, dtype=float) / scale
            bound = planar_cover_radius(floats, exact_rows)
            lhs, how = (0.0, bound), "cover-subset"
        elif use_cover:
            exact_rows = [tuple(int(c) for c in row) for row in rows]
            floats = np.asarray(rows, dtype=float) / scale
            bound = planar_cover_radius(floats, exact_rows)
            lhs, how = (0.0, bound), "cover"
        else:
            ak = PointSet._trusted(tuple(tuple(Fraction(int(c), scale) for c in row) for row in rows), n)
            lhs, how = _bracket(hausdorff_from_hull(ak, config=config)), "d"
        trials.append(
            bounds_report("containment", lhs, (radius, radius), "<=", tol=tol, instance={"k": k, "bound": how})
        )
    return combine("containment-rate", trials, instance={"dim": n, "kmax": kmax, "diam": width})


def _box_rate(u: BoxUnion, kmax: int) -> VerifierReport:
    deficits = {}
    for k in range(1, kmax + 1):
        deficits[k] = volume_deficit(average_boxes(u, k)).exact
    trials = []
    k = 1
    while 2 * k <= kmax:
        trials.append(exact_report("delta-powers-of-two", deficits[2 * k], deficits[k], "<=", instance={"k": 2 * k}))
        k *= 2
    scaled = {k: k * v for k, v in deficits.items()}
    return combine(
        "containment-rate",
        trials,
        instance={"dim": u.dim, "kmax": kmax, "boxes": len(u.boxes)},
        details={"k_delta": scaled, "max_k_delta": max(scaled.values())},
    )

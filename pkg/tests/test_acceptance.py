"""Acceptance checks, one test per criterion.

Every test records a PASS/FAIL line (printed in the pytest terminal summary,
or directly when this file is run as a script) and asserts its time budget.
Random instances are drawn from fixed seeds.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, Delaunay

from sumsets import (
    PointSet,
    balance_signs,
    convex_hull,
    effective_stddev_v,
    hausdorff_from_hull,
    inner_radius_r,
    lp_ball,
    schneider_c,
    sf_decompose,
    volume_deficit,
)
from sumsets.cli import cli_main
from sumsets.convexify import lp_guarantee_factor
from sumsets.gauges import EuclideanBall
from sumsets.sets import iter_average_sets
from sumsets.verify import (
    counterexample_dyn_farkhi,
    counterexample_thm_nonmonotone,
    inclusion_monotone,
    radius_relations,
    random_fractional_partition,
    simplex_halfsum_ratio,
    threshold_dimension,
    verify_1d_superadditivity,
    verify_1d_supermod_with_hull,
    verify_containment_rate,
    verify_det_supermodularity,
    verify_fractional_superadditivity,
    verify_refined_superadditivity,
    verify_supermodularity_convex,
    verify_supermodularity_counterexample,
)
from sumsets.verify.laws import hausdorff_subadditive, stddev_subadditive
from sumsets.verify.generators import box, box_union, general_point_set, interval_union, psd_matrix, rational

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}


class Budget:
    """Times a criterion and records its summary line whatever the outcome."""

    def __init__(self, number: int, title: str, seconds: float):
        self.number, self.title, self.seconds = number, title, seconds
        self.note = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        over = elapsed >= self.seconds
        ok = exc_type is None and not over
        reason = ""
        if exc_type is not None:
            reason = f" ({exc_type.__name__}: {str(exc).splitlines()[0][:120] if str(exc) else ''})"
        elif over:
            reason = f" (over budget of {self.seconds:g} s)"
        line = (
            f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'}  {self.title}: "
            f"{elapsed:.2f} s / {self.seconds:g} s{'; ' + self.note if self.note else ''}{reason}"
        )
        ACCEPTANCE_LINES[self.number] = line
        print(line)
        if exc_type is None:
            assert not over, line
        return False


# ---------------------------------------------------------------------------
# 1. block-cube counterexample
# ---------------------------------------------------------------------------


def test_criterion_01_thm_nonmonotone(capsys):
    with Budget(1, "block cubes k=2, d=6", 1.0) as b:
        assert threshold_dimension(2) == 12
        rep = counterexample_thm_nonmonotone(2, 6)
        assert rep.details["vol_A_k"] == Fraction(1, 4096)
        assert rep.details["vol_A_k_plus_1"] == Fraction(127, 531441)
        assert Fraction(127, 531441) < Fraction(1, 4096)
        assert rep.violated and rep.exact
        code = cli_main(["counterexample", "thm-nonmonotone", "--k", "2", "--d", "6", "--json"])
        out = json.loads(capsys.readouterr().out)
        assert code == 2
        details = out["results"][0]["details"]
        assert details["vol_A_k"] == "1/4096" and details["vol_A_k_plus_1"] == "127/531441"
        b.note = "Vol(A(2)) = 1/4096, Vol(A(3)) = 127/531441, n_2 = 12"


# ---------------------------------------------------------------------------
# 2. two-point set on the line
# ---------------------------------------------------------------------------


def test_criterion_02_two_point_rate():
    with Budget(2, "A = {0, 1}, k = 1..64", 1.0) as b:
        two = PointSet([(0,), (1,)])
        for k, ak in iter_average_sets(two, 64):
            assert schneider_c(ak).exact == Fraction(1, k)
            assert hausdorff_from_hull(ak).exact == Fraction(1, 2 * k)
        b.note = "c = 1/k and d = 1/(2k) exactly for all 64 values"


# ---------------------------------------------------------------------------
# 3. triangle
# ---------------------------------------------------------------------------


def test_criterion_03_triangle_c():
    with Budget(3, "c of a rational triangle", 5.0) as b:
        res = schneider_c(PointSet([(0, 0), (3, 1), (1, 5)]))
        assert res.lower >= 2 - 1e-6
        assert res.upper <= 2
        b.note = f"c in [{res.lower:.9f}, {res.upper:.9f}]"


# ---------------------------------------------------------------------------
# 4. v = r = sup w = sup rho >= d
# ---------------------------------------------------------------------------


def _w_on_grid(pts: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """w_A at each row of xs by enumerating the basic solutions of its LP.

    In the plane the optimal weights sit on at most three points of A, so the
    minimum over all containing triangles of A is the LP optimum."""
    best = np.full(len(xs), np.inf)
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        tri = pts[[i, j, k]]
        m = np.array([tri[1] - tri[0], tri[2] - tri[0]]).T
        if abs(np.linalg.det(m)) < 1e-12:
            continue
        st = np.linalg.solve(m, (xs - tri[0]).T).T
        lam = np.column_stack([1 - st.sum(axis=1), st])
        inside = np.all(lam >= -1e-12, axis=1)
        dists = np.linalg.norm(xs[:, None, :] - tri[None, :, :], axis=2)
        cost = np.where(inside, (lam * dists).sum(axis=1), np.inf)
        best = np.minimum(best, cost)
    return best


def _w_highs(pts: np.ndarray, x: np.ndarray) -> float:
    costs = np.linalg.norm(pts - x, axis=1)
    a_eq = np.vstack([pts.T, np.ones(len(pts))])
    res = linprog(costs, A_eq=a_eq, b_eq=np.append(x, 1.0), bounds=[(0, None)] * len(pts), method="highs")
    assert res.status == 0
    return float(res.fun)


def _rho(pts: np.ndarray, hull: ConvexHull, x: np.ndarray) -> float:
    """Distance from x to the points of A on the smallest face of conv(A) containing x."""
    slack = hull.equations[:, :2] @ x + hull.equations[:, 2]
    tight = np.abs(slack) <= 1e-10
    if not tight.any():
        face = pts
    else:
        on = np.all(np.abs(pts @ hull.equations[tight, :2].T + hull.equations[tight, 2]) <= 1e-10, axis=1)
        face = pts[on]
    return float(np.min(np.linalg.norm(face - x, axis=1)))


def _circumcentres(pts: np.ndarray) -> np.ndarray:
    out = []
    for simplex in Delaunay(pts).simplices:
        a, b, c = pts[simplex]
        d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if abs(d) < 1e-14:
            continue
        sa, sb, sc = a @ a, b @ b, c @ c
        out.append(
            [
                (sa * (b[1] - c[1]) + sb * (c[1] - a[1]) + sc * (a[1] - b[1])) / d,
                (sa * (c[0] - b[0]) + sb * (a[0] - c[0]) + sc * (b[0] - a[0])) / d,
            ]
        )
    return np.array(out).reshape(-1, 2)


def _edge_midpoints(pts: np.ndarray, hull: ConvexHull) -> np.ndarray:
    out = []
    for eq in hull.equations:
        on = pts[np.abs(pts @ eq[:2] + eq[2]) <= 1e-10]
        direction = np.array([-eq[1], eq[0]])
        on = on[np.argsort(on @ direction)]
        out.extend((on[:-1] + on[1:]) / 2)
    return np.array(out).reshape(-1, 2)


def test_criterion_04_wegmann_chain():
    rng = random.Random(4004)
    with Budget(4, "v = r, grid-LP sup w, grid sup rho, d bracket", 30.0) as b:
        worst_w = worst_rho = 0.0
        for _ in range(200):
            a = general_point_set(rng, 2, rng.randint(3, 8))
            pts = a.as_array()
            v = effective_stddev_v(a)
            r = inner_radius_r(a)
            assert v.exact_squared is not None and v.exact_squared == r.exact_squared
            d = hausdorff_from_hull(a, method="bounds")
            assert d.upper >= d.lower
            assert d.upper == v.value

            fhull = ConvexHull(pts)
            tri = Delaunay(pts)
            lo, hi = pts.min(axis=0), pts.max(axis=0)
            g = np.linspace(0, 1, 14)
            grid = np.array([lo + (hi - lo) * np.array([s, t]) for s in g for t in g])
            grid = grid[tri.find_simplex(grid) >= 0]
            witness = np.array([float(t) for t in v.certificate["x"]])
            candidates = np.vstack([_circumcentres(pts), _edge_midpoints(pts, fhull), witness[None, :]])
            candidates = candidates[tri.find_simplex(candidates, tol=1e-12) >= 0]

            w_grid = _w_on_grid(pts, grid) if len(grid) else np.zeros(0)
            w_cand = np.array([_w_highs(pts, x) for x in candidates])
            sup_w = max(w_grid.max(initial=0.0), w_cand.max(initial=0.0))
            rho_vals = [_rho(pts, fhull, x) for x in np.vstack([grid, candidates])]
            sup_rho = max(rho_vals)
            worst_w = max(worst_w, abs(v.value - sup_w))
            worst_rho = max(worst_rho, abs(v.value - sup_rho))
            assert abs(v.value - sup_w) <= 1e-6, (a.points, v.value, sup_w)
            assert abs(v.value - sup_rho) <= 1e-6, (a.points, v.value, sup_rho)
        b.note = f"max |v - sup w| = {worst_w:.2e}, max |v - sup rho| = {worst_rho:.2e}"


# ---------------------------------------------------------------------------
# 5. squared Hausdorff distance is not subadditive
# ---------------------------------------------------------------------------


def test_criterion_05_dyn_farkhi():
    with Budget(5, "segments in R^3, f = 10", 1.0) as b:
        rep = counterexample_dyn_farkhi(10, check_q1=False)
        assert rep.rhs == Fraction(200, 101)
        assert rep.lhs == Fraction(400, 102)
        assert rep.violated and rep.exact
        b.note = f"d^2(A+B) >= {rep.lhs} > {rep.rhs} = d^2(A) + d^2(B)"


# ---------------------------------------------------------------------------
# 6. supermodularity
# ---------------------------------------------------------------------------


def test_criterion_06_supermodularity():
    rng = random.Random(6006)
    with Budget(6, "supermodularity of volume", 10.0) as b:
        for _ in range(100):
            rep = verify_supermodularity_convex(*(box(rng, 2) for _ in range(3)))
            assert rep.holds and rep.exact
        bad = verify_supermodularity_counterexample()
        assert (bad.lhs, bad.rhs) == (Fraction(3), Fraction(4)) and bad.violated
        fixed = verify_1d_supermod_with_hull()
        assert fixed.holds and fixed.lhs == fixed.rhs
        b.note = "100 box triples hold; A = {0, 1}, B = C = [0, 1] gives 3 < 4; hull version 4 = 4"


# ---------------------------------------------------------------------------
# 7. superadditivity
# ---------------------------------------------------------------------------


def test_criterion_07_superadditivity():
    rng = random.Random(7007)
    with Budget(7, "superadditivity, k = 3", 20.0) as b:
        for _ in range(100):
            rep = verify_1d_superadditivity([interval_union(rng, rng.randint(1, 3)) for _ in range(3)])
            assert rep.holds and rep.exact
        for _ in range(100):
            rep = verify_refined_superadditivity([box_union(rng, 2, rng.randint(1, 2)) for _ in range(3)])
            assert rep.holds and rep.exact
        b.note = "100 interval unions and 100 planar box unions"


# ---------------------------------------------------------------------------
# 8. vector balancing
# ---------------------------------------------------------------------------


def _unit_vectors(rng: random.Random, p, count: int, n: int):
    """Rational vectors with l_p norm at most one."""
    out = []
    while len(out) < count:
        x = [Fraction(rng.randint(-64, 64), 64) for _ in range(n)]
        if p == 1:
            norm = sum(abs(c) for c in x)
            if norm > 1:
                x = [c / norm for c in x]
        elif p == 2:
            if sum(c * c for c in x) > 1:
                continue
        out.append(x)
    return out


def test_criterion_08_balancing():
    rng = random.Random(8008)
    with Budget(8, "vector balancing, k = 50, n = 6", 10.0) as b:
        basis = [[int(i == j) for j in range(6)] for i in range(6)]
        sharp = balance_signs(basis, lp_ball(6, 1))
        assert sharp.achieved_exact == 6
        worst = 0.0
        for trial in range(100):
            p = (1, 2, math.inf)[trial % 3]
            gauge = EuclideanBall() if p == 2 else lp_ball(6, p)
            res = balance_signs(_unit_vectors(rng, p, 50, 6), gauge)
            factor = lp_guarantee_factor(6, p)
            assert abs(factor - 6 ** (0.5 + abs(1 / p - 0.5))) < 1e-12
            limit = math.sqrt(6) if p == 2 else 6.0
            assert res.achieved <= limit + 1e-12
            assert res.achieved <= factor + 1e-12
            worst = max(worst, res.achieved / factor)
        b.note = f"e_1..e_6 under l_1 gives 6; worst achieved/guarantee = {worst:.3f}"


# ---------------------------------------------------------------------------
# 9. decompositions
# ---------------------------------------------------------------------------


def test_criterion_09_shapley_folkman():
    rng = random.Random(9009)
    with Budget(9, "decompositions in R^3, k = 10", 5.0) as b:
        most = 0
        for _ in range(50):
            sets = [
                PointSet([tuple(rational(rng, -2, 2, 8) for _ in range(3)) for _ in range(rng.randint(1, 5))])
                for _ in range(10)
            ]
            target = [Fraction(0)] * 3
            for s in sets:
                weights = [Fraction(rng.randint(1, 9)) for _ in s.points]
                total = sum(weights)
                for p, w in zip(s.points, weights):
                    for j in range(3):
                        target[j] += w / total * p[j]
            dec = sf_decompose(sets, target)
            assert len(dec.fractional) <= 3
            assert dec.reconstruct() == tuple(target)
            most = max(most, len(dec.fractional))
        b.note = f"largest fractional index set has {most} members"


# ---------------------------------------------------------------------------
# 10. containment rate
# ---------------------------------------------------------------------------


def test_criterion_10_containment_rate():
    rng = random.Random(1010)
    with Budget(10, "conv(A) within n diam / k of A(k), k <= 20", 10.0) as b:
        for _ in range(20):
            a = general_point_set(rng, 2, rng.randint(3, 5))
            rep = verify_containment_rate(a, 20, tol=1e-9, method="cover")
            assert rep.holds, rep
        b.note = "20 planar sets, hull vertices exact, cover radius in floats"


# ---------------------------------------------------------------------------
# 11. regular simplex
# ---------------------------------------------------------------------------


def test_criterion_11_simplex_ratio():
    with Budget(11, "regular simplex half-sum ratio", 10.0) as b:
        two = simplex_halfsum_ratio(2)
        assert two.details["ratio_exact"] == Fraction(1, 2)
        notes = ["n=2: 1/2"]
        for n in (3, 5):
            rep = simplex_halfsum_ratio(n)
            lo, hi = rep.details["ratio_bracket"]
            target = math.sqrt((n - 1) / (2 * n))
            assert target - 1e-6 <= lo <= hi <= target + 1e-6, (n, lo, hi)
            notes.append(f"n={n}: [{lo:.9f}, {hi:.9f}]")
        b.note = ", ".join(notes)


# ---------------------------------------------------------------------------
# 12. property suites
# ---------------------------------------------------------------------------


def _affine_invariance(rng) -> None:
    a = general_point_set(rng, 2, rng.randint(3, 5))
    while True:
        m = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det:
            break
    shift = [rational(rng, -2, 2), rational(rng, -2, 2)]
    image = a.mapped(m, shift)
    ca, cb = schneider_c(a), schneider_c(image)
    assert ca.lower <= cb.upper + 1e-6 and cb.lower <= ca.upper + 1e-6
    assert volume_deficit(image).exact == abs(det) * volume_deficit(a).exact
    t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    scaled = a.scaled(t)
    assert effective_stddev_v(scaled).exact_squared == t * t * effective_stddev_v(a).exact_squared
    da, ds = hausdorff_from_hull(a), hausdorff_from_hull(scaled)
    if da.squared is not None and ds.squared is not None:
        assert ds.squared == t * t * da.squared
    else:
        assert ds.lower <= float(t) * da.upper + 1e-9 and float(t) * da.lower <= ds.upper + 1e-9


def _inclusion(rng) -> None:
    a = general_point_set(rng, 2, rng.randint(3, 4))
    hull = convex_hull(a)
    extra = []
    for _ in range(rng.randint(1, 2)):
        w = [Fraction(rng.randint(1, 5)) for _ in hull.vertices]
        s = sum(w)
        extra.append(tuple(sum(wi * v[j] for wi, v in zip(w, hull.vertices)) / s for j in range(2)))
    b = a.union(PointSet(extra))
    assert inclusion_monotone(a, b).holds


def _c_at_most_dim(rng) -> None:
    dim = rng.choice((1, 2))
    a = general_point_set(rng, dim, rng.randint(2 if dim == 1 else 3, 6))
    assert schneider_c(a).upper <= dim


def _radius(rng) -> None:
    assert radius_relations(general_point_set(rng, 2, rng.randint(3, 5))).holds


def _v_sub(rng) -> None:
    dim = rng.choice((1, 2))
    a = general_point_set(rng, dim, rng.randint(2, 4) if dim == 1 else 3)
    b = general_point_set(rng, dim, rng.randint(2, 4) if dim == 1 else 3)
    assert stddev_subadditive(a, b).holds


def _d_sub(rng) -> None:
    p = rng.choice((1, 2, math.inf))
    a = general_point_set(rng, 2, 3)
    b = general_point_set(rng, 2, 3)
    gauge = None if p == 2 else lp_ball(2, p)
    assert hausdorff_subadditive(a, b, gauge).holds


def _det(rng) -> None:
    n = rng.randint(1, 4)
    assert verify_det_supermodularity(*(psd_matrix(rng, n, rng.randint(1, n)) for _ in range(3))).holds


def _fractional(rng) -> None:
    k = rng.randint(2, 4)
    boxes = [box(rng, 2) for _ in range(k)]
    assert verify_fractional_superadditivity(boxes, random_fractional_partition(rng, k)).holds


SUITES = {
    "affine invariance": _affine_invariance,
    "inclusion monotonicity": _inclusion,
    "c <= n": _c_at_most_dim,
    "d <= Rc and r <= 2c/(1+c) R": _radius,
    "v^2 subadditivity": _v_sub,
    "d^K subadditivity": _d_sub,
    "det supermodularity": _det,
    "fractional superadditivity": _fractional,
}


def test_criterion_12_property_suites():
    with Budget(12, "property suites, 100 instances each", 60.0) as b:
        failures = []
        timings = []
        for idx, (name, check) in enumerate(SUITES.items()):
            rng = random.Random(12000 + idx)
            start = time.perf_counter()
            for trial in range(100):
                try:
                    check(rng)
                except AssertionError as exc:
                    failures.append(f"{name} #{trial}: {exc}")
            timings.append(f"{name} {time.perf_counter() - start:.1f}s")
        b.note = "; ".join(timings)
        assert not failures, failures[:5]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

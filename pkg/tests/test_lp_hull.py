"""Exact LP and hull code checked against scipy (HiGHS, Qhull) and brute force."""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, Delaunay

from sumsets import LinearProgram, PointSet, convex_hull, in_hull
from sumsets.hull import polytope_sum, polytope_volume, simplex_volume, vertex_filter_lp
from sumsets.lp import Infeasible, Optimal, Unbounded, solve


def _random_lp(rng, n, m):
    obj = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
    cons = []
    for _ in range(m):
        row = [Fraction(rng.randint(-4, 4)) for _ in range(n)]
        cons.append((row, rng.choice(["<=", ">=", "="]) if rng.random() < 0.3 else "<=", Fraction(rng.randint(-3, 9))))
    return LinearProgram.build(obj, cons, sense=rng.choice(["min", "max"]))


def _scipy(lp):
    sign = 1 if lp.sense == "min" else -1
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row, rel, rhs in lp.constraints:
        r = [float(c) for c in row]
        if rel == "<=":
            a_ub.append(r), b_ub.append(float(rhs))
        elif rel == ">=":
            a_ub.append([-c for c in r]), b_ub.append(-float(rhs))
        else:
            a_eq.append(r), b_eq.append(float(rhs))
    return linprog(
        [sign * float(c) for c in lp.objective],
        A_ub=a_ub or None,
        b_ub=b_ub or None,
        A_eq=a_eq or None,
        b_eq=b_eq or None,
        bounds=[(0, None)] * len(lp.objective),
        method="highs",
    )


@pytest.mark.parametrize("seed", range(60))
def test_simplex_agrees_with_highs(seed):
    rng = random.Random(seed)
    lp = _random_lp(rng, rng.randint(1, 5), rng.randint(1, 6))
    ours = solve(lp)
    ref = _scipy(lp)
    if ref.status == 2:
        assert isinstance(ours, Infeasible)
    elif ref.status == 3:
        assert isinstance(ours, Unbounded)
    else:
        assert isinstance(ours, Optimal)
        sign = 1 if lp.sense == "min" else -1
        assert float(ours.value) == pytest.approx(sign * ref.fun, abs=1e-7)
        # the returned point is feasible in exact arithmetic
        assert all(x >= 0 for x in ours.x)
        for row, rel, rhs in lp.constraints:
            lhs = sum(a * x for a, x in zip(row, ours.x))
            assert {"<=": lhs <= rhs, ">=": lhs >= rhs, "=": lhs == rhs}[rel]


def test_free_and_boxed_variables():
    lp = LinearProgram.build([1, 1], [([1, -1], "=", 0)], sense="min", bounds=[(-3, None), (None, 5)])
    res = solve(lp)
    assert isinstance(res, Optimal) and res.value == -6 and res.x == (-3, -3)


def test_degenerate_lp_terminates():
    # a classic cycling example for the textbook pivot rule
    obj = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    cons = [
        ([Fraction(1, 4), -60, Fraction(-1, 25), 9], "<=", 0),
        ([Fraction(1, 2), -90, Fraction(-1, 50), 3], "<=", 0),
        ([0, 0, 1, 0], "<=", 1),
    ]
    res = solve(LinearProgram.build(obj, cons))
    assert isinstance(res, Optimal) and res.value == Fraction(-1, 20)


def test_malformed_programs_are_rejected():
    with pytest.raises(ValueError):
        LinearProgram.build([1, 2], [([1], "<=", 1)])
    with pytest.raises(ValueError):
        LinearProgram.build([1], [([1], "<", 1)])
    with pytest.raises(ValueError):
        LinearProgram.build([1], [], sense="minimise")


@pytest.mark.parametrize("seed", range(25))
def test_in_hull_matches_triangulation(seed):
    rng = random.Random(100 + seed)
    dim = rng.choice((2, 3))
    pts = PointSet([tuple(Fraction(rng.randint(0, 8), 4) for _ in range(dim)) for _ in range(dim + 4)])
    arr = pts.as_array()
    try:
        tri = Delaunay(arr)
    except Exception:
        pytest.skip("flat sample")
    for _ in range(10):
        x = tuple(Fraction(rng.randint(-1, 17), 8) for _ in range(dim))
        res = in_hull(x, pts)
        xf = np.array([float(c) for c in x])
        if res.feasible:
            assert res.witness.barycenter == x
            assert all(w >= 0 for w in res.witness.weights) and sum(res.witness.weights) == 1
            assert tri.find_simplex(xf, tol=1e-9) >= 0
        else:
            assert tri.find_simplex(xf, tol=-1e-9) < 0


@pytest.mark.parametrize("seed", range(30))
def test_hull_vertices_and_volume(seed):
    rng = random.Random(200 + seed)
    dim = rng.choice((2, 3, 4))
    pts = PointSet([tuple(Fraction(rng.randint(-6, 6), 3) for _ in range(dim)) for _ in range(dim + rng.randint(2, 8))])
    hull = convex_hull(pts)
    assert set(hull.vertices) == set(vertex_filter_lp(pts).points)
    vol, degenerate = polytope_volume(hull)
    if hull.full_dimensional:
        ref = ConvexHull(pts.as_array())
        assert float(vol) == pytest.approx(ref.volume, rel=1e-9)
        assert {tuple(map(float, v)) for v in hull.vertices} == {tuple(pts.as_array()[i]) for i in ref.vertices}
        # every point satisfies every facet, and every facet is tight somewhere
        for normal, off in hull.facets:
            values = [sum(a * b for a, b in zip(normal, p)) for p in pts.points]
            assert max(values) == off
    else:
        assert degenerate and vol == 0


def test_degenerate_hulls():
    line = convex_hull(PointSet([(0, 0, 0), (1, 1, 1), (3, 3, 3), (2, 2, 2)]))
    assert line.affine_dim == 1 and set(line.vertices) == {(0, 0, 0), (3, 3, 3)}
    assert line.contains((Fraction(3, 2),) * 3) and not line.contains((1, 1, 0))
    plane = convex_hull(PointSet([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (Fraction(1, 2), Fraction(1, 2), 1)]))
    assert plane.affine_dim == 2 and len(plane.vertices) == 4
    assert polytope_volume(plane) == (0, True)
    point = convex_hull(PointSet([(5, 5)]))
    assert point.affine_dim == 0 and point.vertices == ((5, 5),)


def test_contains_strict():
    square = convex_hull(PointSet([(0, 0), (2, 0), (0, 2), (2, 2)]))
    assert square.contains((1, 1), strict=True)
    assert square.contains((0, 1)) and not square.contains((0, 1), strict=True)
    assert not square.contains((3, 1))


def test_sum_of_polytopes_matches_sum_of_points():
    rng = random.Random(7)
    for _ in range(10):
        p = PointSet([(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(5)])
        q = PointSet([(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(4)])
        s = polytope_sum(convex_hull(p), convex_hull(q))
        direct = convex_hull(PointSet([(a[0] + b[0], a[1] + b[1]) for a in p.points for b in q.points]))
        assert set(s.vertices) == set(direct.vertices)


def test_simplex_volume_brute_force():
    for corners in itertools.permutations([(0, 0, 0), (1, 0, 0), (0, 2, 0), (0, 0, 3)]):
        assert simplex_volume([tuple(map(Fraction, c)) for c in corners]) == 1

"""Measures against closed forms, brute force and dense sampling."""

import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from sumsets import (
    BoxUnion,
    PointSet,
    effective_stddev_v,
    hausdorff_boxes,
    hausdorff_from_hull,
    lp_ball,
    measure_suite,
    schneider_c,
    volume_deficit,
)
from sumsets.ball import jung_bound, min_enclosing_ball
from sumsets.boxes import box_union_volume, union_volume
from sumsets.gauges import EuclideanBall, gauge_norm, inradius, parse_gauge
from sumsets.hull import convex_hull
from sumsets.measures.deviation import pointwise_d_squared, pointwise_rho_squared, pointwise_v_squared, pointwise_w
from sumsets.verify.generators import general_point_set


# ---------------------------------------------------------------------------
# boxes and balls
# ---------------------------------------------------------------------------


def _cell_count(boxes, dim):
    cells = set()
    for lo, hi in boxes:
        for cell in itertools.product(*(range(int(lo[j]), int(hi[j])) for j in range(dim))):
            cells.add(cell)
    return len(cells)


@pytest.mark.parametrize("seed", range(20))
def test_union_volume_counts_unit_cells(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 3)
    boxes = []
    for _ in range(rng.randint(1, 6)):
        lo = [rng.randint(0, 5) for _ in range(dim)]
        boxes.append((tuple(lo), tuple(c + rng.randint(0, 3) for c in lo)))
    assert union_volume([(tuple(map(Fraction, lo)), tuple(map(Fraction, hi))) for lo, hi in boxes]) == _cell_count(
        boxes, dim
    )


def test_union_volume_rational_and_degenerate():
    u = BoxUnion([((0, 0), (Fraction(1, 2), 1)), ((Fraction(1, 4), 0), (1, Fraction(1, 3))), ((2, 2), (2, 3))])
    assert box_union_volume(u) == Fraction(1, 2) + Fraction(1, 2) * Fraction(1, 3)


def _brute_ball(arr):
    best = None
    cands = []
    for i, j in itertools.combinations(range(len(arr)), 2):
        cands.append(((arr[i] + arr[j]) / 2, np.linalg.norm(arr[i] - arr[j]) / 2))
    for i, j, k in itertools.combinations(range(len(arr)), 3):
        a, b, c = arr[i], arr[j], arr[k]
        d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if abs(d) < 1e-12:
            continue
        ux = ((a @ a) * (b[1] - c[1]) + (b @ b) * (c[1] - a[1]) + (c @ c) * (a[1] - b[1])) / d
        uy = ((a @ a) * (c[0] - b[0]) + (b @ b) * (a[0] - c[0]) + (c @ c) * (b[0] - a[0])) / d
        centre = np.array([ux, uy])
        cands.append((centre, np.linalg.norm(a - centre)))
    for centre, r in cands:
        if np.all(np.linalg.norm(arr - centre, axis=1) <= r + 1e-9) and (best is None or r < best):
            best = r
    return best


@pytest.mark.parametrize("seed", range(15))
def test_min_enclosing_ball_brute_force(seed):
    rng = random.Random(300 + seed)
    a = PointSet([(rng.randint(0, 20), rng.randint(0, 20)) for _ in range(rng.randint(2, 9))])
    centre, radius = min_enclosing_ball(a)
    arr = a.as_array()
    assert radius == pytest.approx(_brute_ball(arr), rel=1e-9)
    assert np.all(np.linalg.norm(arr - centre, axis=1) <= radius * (1 + 1e-12))
    assert radius <= jung_bound(max(np.linalg.norm(p - q) for p in arr for q in arr), 2) + 1e-9


# ---------------------------------------------------------------------------
# gauges
# ---------------------------------------------------------------------------


def test_lp_norms_match_numpy():
    rng = np.random.default_rng(1)
    for n in (1, 2, 3, 5):
        for _ in range(10):
            x = [Fraction(int(v), 7) for v in rng.integers(-20, 20, n)]
            xf = np.array([float(c) for c in x])
            assert gauge_norm(lp_ball(n, 1), x) == pytest.approx(np.abs(xf).sum())
            assert gauge_norm(lp_ball(n, math.inf), x) == pytest.approx(np.abs(xf).max() if n else 0)
            assert gauge_norm(lp_ball(n, 2), x) == pytest.approx(np.linalg.norm(xf))


def test_parse_gauge_and_inradius():
    assert isinstance(parse_gauge("L2", 3), EuclideanBall)
    assert len(parse_gauge("l1", 3).facets) == 8
    with pytest.raises(ValueError):
        parse_gauge("l3", 2)
    assert inradius(convex_hull(PointSet([(0, 0), (4, 0), (0, 3)]))) == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# Hausdorff distance to the hull
# ---------------------------------------------------------------------------


def _hull_samples(a, count, rng):
    verts = np.array([[float(c) for c in v] for v in convex_hull(a).vertices])
    w = rng.dirichlet(np.ones(len(verts)) * 0.5, size=count)
    return w @ verts


def test_line_hausdorff_is_half_the_largest_gap():
    a = PointSet([(0,), (1,), (5,), (6,), (Fraction(13, 2),)])
    assert hausdorff_from_hull(a).exact == 2
    assert hausdorff_from_hull(PointSet([(3,)])).exact == 0


@pytest.mark.parametrize("seed", range(12))
def test_planar_hausdorff_against_sampling(seed):
    rng = random.Random(400 + seed)
    a = general_point_set(rng, 2, rng.randint(3, 7))
    res = hausdorff_from_hull(a)
    assert res.exact_squared is not None
    x = res.certificate["x"]
    assert convex_hull(a).contains(x)
    assert pointwise_d_squared(a, x) == res.exact_squared
    pts = a.as_array()
    samples = _hull_samples(a, 4000, np.random.default_rng(seed))
    sampled = np.max(np.min(np.linalg.norm(samples[:, None, :] - pts[None, :, :], axis=2), axis=1))
    assert sampled <= res.value + 1e-12
    assert sampled >= res.value - 0.1
    # the bracket route agrees with the exact one
    b = hausdorff_from_hull(a, method="bounds")
    assert b.lower - 1e-12 <= res.value <= b.upper + 1e-12


@pytest.mark.parametrize("p", [1, math.inf])
def test_polytope_gauge_hausdorff_against_sampling(p):
    rng = random.Random(11)
    gauge = lp_ball(2, p)
    ord_ = 1 if p == 1 else np.inf
    for _ in range(5):
        a = general_point_set(rng, 2, rng.randint(3, 6))
        res = hausdorff_from_hull(a, gauge)
        pts = a.as_array()
        samples = _hull_samples(a, 3000, np.random.default_rng(0))
        diffs = samples[:, None, :] - pts[None, :, :]
        sampled = np.max(np.min(np.linalg.norm(diffs, ord=ord_, axis=2), axis=1))
        assert sampled <= res.upper + 1e-12
        assert sampled >= res.lower - 0.1


def test_three_dimensional_hausdorff_bracket():
    cube = PointSet(list(itertools.product((0, 1), repeat=3)))
    res = hausdorff_from_hull(cube)
    # the centre is at distance sqrt(3)/2 from every corner and nothing is farther
    assert res.lower <= math.sqrt(3) / 2 + 1e-12 <= res.upper + 2e-12


def test_box_union_hausdorff_bracket():
    ell = BoxUnion([((0, 0), (2, 1)), ((0, 0), (1, 2))])
    res = hausdorff_boxes(ell, tol=1e-5)
    # on the cut edge x + y = 3 the distance to the union is min(x, y) - 1, largest at (3/2, 3/2)
    assert res.lower - 1e-5 <= 0.5 <= res.upper + 1e-5


# ---------------------------------------------------------------------------
# Schneider's index
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "xs, expected",
    [((0, 1), 1), ((0, 1, 3), Fraction(2, 3)), ((0, 1, 2, 3), Fraction(1, 3)), ((5,), 0), ((0, 2, 3, 10), Fraction(7, 10))],
)
def test_line_c_is_largest_gap_over_length(xs, expected):
    assert schneider_c(PointSet([(x,) for x in xs])).exact == expected


def test_planar_c_brackets():
    tri = schneider_c(PointSet([(0, 0), (1, 0), (0, 1)]))
    assert 2 - 1e-6 <= tri.lower <= tri.upper <= 2
    dense = PointSet([(i, j) for i in range(4) for j in range(4)])
    res = schneider_c(dense)
    assert res.upper <= 1 and res.upper - res.lower <= 1e-6
    convex_set = schneider_c(PointSet([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0), (0, 1), (2, 1), (1, 2)]))
    assert convex_set.upper <= schneider_c(PointSet([(0, 0), (2, 0), (0, 2), (2, 2)])).lower


def test_c_of_box_union_in_plane():
    ell = BoxUnion([((0, 0), (2, 1)), ((0, 0), (1, 2))])
    res = schneider_c(ell)
    assert 0 < res.lower <= res.upper <= 2
    assert res.upper - res.lower <= 1e-6


# ---------------------------------------------------------------------------
# effective standard deviation and its pointwise versions
# ---------------------------------------------------------------------------


def test_v_on_triangles():
    acute = effective_stddev_v(PointSet([(0, 0), (4, 0), (1, 3)]))
    # circumcentre (2, 1), squared circumradius 5
    assert acute.exact_squared == 5
    obtuse = effective_stddev_v(PointSet([(0, 0), (4, 0), (1, 1)]))
    # the long edge's midpoint wins: half its length, squared
    assert obtuse.exact_squared == 4


@pytest.mark.parametrize("seed", range(8))
def test_pointwise_orderings(seed):
    rng = random.Random(500 + seed)
    a = general_point_set(rng, 2, rng.randint(3, 6))
    v = effective_stddev_v(a)
    hull = convex_hull(a)
    for y in _hull_samples(a, 15, np.random.default_rng(seed)):
        x = tuple(Fraction(float(c)).limit_denominator(1000) for c in y)
        if not hull.contains(x):
            continue
        v2 = pointwise_v_squared(a, x)
        d2 = pointwise_d_squared(a, x)
        rho2 = pointwise_rho_squared(a, x, hull)
        w = pointwise_w(a, x)
        assert d2 <= rho2 <= v2 <= v.exact_squared
        assert math.sqrt(float(d2)) - 1e-9 <= w <= math.sqrt(float(v2)) + 1e-9


def test_deficit_values():
    assert volume_deficit(PointSet([(0, 0), (2, 0), (0, 3)])).exact == 3
    ell = BoxUnion([((0, 0), (2, 1)), ((0, 0), (1, 2))])
    assert volume_deficit(ell).exact == Fraction(1, 2)
    assert volume_deficit(BoxUnion([((0,), (1,)), ((3,), (4,))])).exact == 2


def test_measure_suite_collects_everything():
    out = measure_suite(PointSet([(0, 0), (4, 0), (1, 3)]))
    assert set(out) >= {"delta", "d", "c", "v"}
    assert out["delta"].exact == 6

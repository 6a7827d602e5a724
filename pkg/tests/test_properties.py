"""Randomised properties, driven by hypothesis."""

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sumsets import (
    BoxUnion,
    PointSet,
    average_set,
    convex_hull,
    effective_stddev_v,
    hausdorff_from_hull,
    minkowski_sum,
    schneider_c,
    sf_decompose,
    volume_deficit,
)
from sumsets.boxes import box_union_volume
from sumsets.sets import average_boxes
from sumsets.verify import line_identity
from sumsets.verify.laws import planar_cover_radius

small = st.fractions(min_value=-4, max_value=4, max_denominator=8)


def points(dim, lo=1, hi=6):
    return st.lists(st.tuples(*[small] * dim), min_size=lo, max_size=hi, unique=True).map(PointSet)


@st.composite
def planar_sets(draw):
    a = draw(points(2, 3, 6))
    assume(convex_hull(a).affine_dim == 2)
    return a


@st.composite
def boxes(draw, dim=2, count=3):
    out = []
    for _ in range(draw(st.integers(1, count))):
        lo = draw(st.tuples(*[small] * dim))
        ext = draw(st.tuples(*[st.fractions(min_value=Fraction(1, 8), max_value=3, max_denominator=8)] * dim))
        out.append((lo, tuple(a + b for a, b in zip(lo, ext))))
    return BoxUnion(out)


@settings(max_examples=40, deadline=None)
@given(points(2), points(2))
def test_minkowski_sum_commutes_and_counts(a, b):
    s, t = minkowski_sum(a, b), minkowski_sum(b, a)
    assert set(s.points) == set(t.points)
    assert max(len(a.points), len(b.points)) <= len(s.points) <= len(a.points) * len(b.points)


@settings(max_examples=30, deadline=None)
@given(points(2, 1, 4), st.integers(1, 4))
def test_average_set_contains_the_original_and_stays_in_the_hull(a, k):
    ak = average_set(a, k)
    assert set(a.points) <= set(ak.points)
    hull = convex_hull(a)
    assert all(hull.contains(p) for p in ak.points)


@settings(max_examples=40, deadline=None)
@given(planar_sets())
def test_distance_chain_in_the_plane(a):
    d = hausdorff_from_hull(a)
    v = effective_stddev_v(a)
    assert d.exact_squared <= v.exact_squared
    cover = planar_cover_radius(a.as_array(), a.points)
    assert d.value <= cover + 1e-9


@settings(max_examples=30, deadline=None)
@given(points(1, 2, 7))
def test_line_identity_holds(a):
    assume(len(a.points) >= 2)
    assert line_identity(a).holds


@settings(max_examples=30, deadline=None)
@given(points(1, 2, 5), st.integers(1, 6))
def test_line_c_decreases_along_averages(a, k):
    assume(len(a.points) >= 2)
    assert schneider_c(average_set(a, k)).exact <= schneider_c(a).exact


@settings(max_examples=40, deadline=None)
@given(boxes())
def test_box_union_deficit_is_nonnegative(u):
    res = volume_deficit(u)
    assert res.exact >= 0
    assert res.certificate["union"] == box_union_volume(u)


@settings(max_examples=25, deadline=None)
@given(boxes(count=2), st.integers(2, 3))
def test_box_averages_do_not_lose_volume_on_the_line(u, k):
    line = BoxUnion([((lo[0],), (hi[0],)) for lo, hi in u.boxes])
    assert box_union_volume(average_boxes(line, k)) >= box_union_volume(line)


@settings(max_examples=30, deadline=None)
@given(st.lists(points(3, 1, 4), min_size=1, max_size=6), st.data())
def test_decomposition_round_trip(sets, data):
    target = [Fraction(0)] * 3
    for s in sets:
        w = [Fraction(data.draw(st.integers(1, 5))) for _ in s.points]
        total = sum(w)
        for j in range(3):
            target[j] += sum(wi * p[j] for wi, p in zip(w, s.points)) / total
    dec = sf_decompose(sets, target)
    assert dec.reconstruct() == tuple(target)
    assert len(dec.fractional) <= 3


@settings(max_examples=30, deadline=None)
@given(points(2, 1, 6), st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4))
def test_deficit_scales_with_area(a, t):
    assert volume_deficit(a.scaled(t)).exact == t * t * volume_deficit(a).exact

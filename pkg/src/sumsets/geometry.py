"""One import point for the geometric primitives."""

from __future__ import annotations

from fractions import Fraction

from .ball import jung_bound, min_enclosing_ball
from .boxes import box_union_volume, union_volume
from .gauges import EuclideanBall, PolytopeGauge, gauge_norm, gauge_norm_exact, inradius, lp_ball
from .hull import Polytope, convex_hull, polytope_sum, polytope_volume
from .sets import BoxUnion, CapExceeded, PointSet, average_boxes, average_set, diam, minkowski_sum, sum_of_sets


def volume(obj) -> Fraction:
    """Exact n-dimensional volume; lower-dimensional bodies and finite sets give 0."""
    if isinstance(obj, BoxUnion):
        return box_union_volume(obj)
    if isinstance(obj, Polytope):
        return polytope_volume(obj)[0]
    if isinstance(obj, PointSet):
        return Fraction(0)
    raise TypeError(f"no volume for {type(obj).__name__}")


def is_degenerate(obj) -> bool:
    if isinstance(obj, Polytope):
        return not obj.full_dimensional
    return False


def hull_of(obj) -> Polytope:
    """Convex hull of a point set, a box union (via its corners) or a polytope."""
    if isinstance(obj, Polytope):
        return obj
    if isinstance(obj, BoxUnion):
        return convex_hull(obj.corners())
    return convex_hull(obj)


__all__ = [
    "BoxUnion",
    "CapExceeded",
    "EuclideanBall",
    "PointSet",
    "Polytope",
    "PolytopeGauge",
    "average_boxes",
    "average_set",
    "box_union_volume",
    "convex_hull",
    "diam",
    "gauge_norm",
    "gauge_norm_exact",
    "hull_of",
    "inradius",
    "is_degenerate",
    "jung_bound",
    "lp_ball",
    "min_enclosing_ball",
    "minkowski_sum",
    "polytope_sum",
    "sum_of_sets",
    "union_volume",
    "volume",
]

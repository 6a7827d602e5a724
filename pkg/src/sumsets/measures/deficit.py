"""Volume deficit Delta(A) = Vol(conv A) - Vol(A)."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from ..boxes import box_union_volume
from ..config import DEFAULT, Config
from ..hull import MAX_FACET_DIM, affine_chart, convex_hull, polytope_volume
from ..sets import BoxUnion, PointSet
from .result import MeasureResult


def _bounding_box(u: BoxUnion):
    lo = tuple(min(b[0][j] for b in u.boxes) for j in range(u.dim))
    hi = tuple(max(b[1][j] for b in u.boxes) for j in range(u.dim))
    return lo, hi


def hull_volume_boxes(u: BoxUnion):
    """Exact hull volume of a box union, or None when it is out of reach."""
    lo, hi = _bounding_box(u)
    # the hull is the bounding box when every corner of it is covered
    if all(u.contains_point(c) for c in itertools.product(*zip(lo, hi))):
        vol = Fraction(1)
        for a, b in zip(lo, hi):
            vol *= b - a
        return vol
    corners = u.corners()
    _, chart, _ = affine_chart(corners.points)
    if len(chart) < u.dim:
        return Fraction(0)
    if u.dim > MAX_FACET_DIM:
        return None
    return polytope_volume(convex_hull(corners))[0]


def volume_deficit(a, config: Config = DEFAULT, samples: int = 4000) -> MeasureResult:
    if isinstance(a, PointSet):
        hull = convex_hull(a)
        vol, degenerate = polytope_volume(hull) if hull.affine_dim <= MAX_FACET_DIM else (Fraction(0), True)
        flags = ("degenerate",) if degenerate else ()
        if hull.affine_dim > MAX_FACET_DIM and hull.full_dimensional:
            raise ValueError("hull volume needs dimension <= 6")
        return MeasureResult.from_exact("delta", vol, flags=flags)
    if isinstance(a, BoxUnion):
        union = box_union_volume(a)
        hv = hull_volume_boxes(a)
        if hv is not None:
            return MeasureResult.from_exact("delta", hv - union, certificate={"hull": hv, "union": union})
        return _monte_carlo(a, union, config, samples)
    raise TypeError(f"no volume deficit for {type(a).__name__}")


def _monte_carlo(u: BoxUnion, union: Fraction, config: Config, samples: int) -> MeasureResult:
    from scipy.optimize import linprog

    rng = np.random.default_rng(config.seed)
    lo, hi = _bounding_box(u)
    lo_f = np.array([float(c) for c in lo])
    hi_f = np.array([float(c) for c in hi])
    corners = u.corners().as_array()
    a_eq = np.vstack([corners.T, np.ones(len(corners))])
    hits = 0
    for _ in range(samples):
        x = lo_f + rng.random(len(lo_f)) * (hi_f - lo_f)
        res = linprog(np.zeros(len(corners)), A_eq=a_eq, b_eq=np.append(x, 1.0), bounds=(0, None), method="highs")
        hits += res.status == 0
    box_vol = float(np.prod(hi_f - lo_f))
    p = hits / samples
    sigma = math.sqrt(max(p * (1 - p), 1.0 / samples) / samples)
    est = p * box_vol - float(union)
    low = max(0.0, (p - 4 * sigma) * box_vol - float(union))
    up = max(low, (p + 4 * sigma) * box_vol - float(union))
    return MeasureResult.bounds(
        "delta", low, up, min(max(est, low), up), certificate={"samples": samples, "hits": hits}, flags=("monte-carlo",)
    )

"""Volume inequalities for Minkowski sums, checked in exact arithmetic.

Box unions stay box unions under Minkowski addition, and their volumes come
from the exact sweep in ``boxes``, so every verdict here is a comparison of
two rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .. import linalg
from ..boxes import box_union_volume
from ..hull import Polytope, convex_hull, polytope_volume
from ..lp import LinearProgram, Optimal, solve
from ..reports import INCONCLUSIVE, VerifierReport, exact_report
from ..sets import BoxUnion, PointSet, average_boxes, minkowski_sum, sum_of_sets

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _vol(obj) -> Fraction:
    if isinstance(obj, BoxUnion):
        return box_union_volume(obj)
    if isinstance(obj, Polytope):
        return polytope_volume(obj)[0]
    if isinstance(obj, PointSet):
        return _ZERO
    raise TypeError(f"no volume for {type(obj).__name__}")


def _leave_one_out(sets: Sequence) -> List:
    return [sum_of_sets([s for j, s in enumerate(sets) if j != i]) for i in range(len(sets))]


def _describe(sets) -> dict:
    return {"k": len(sets), "dim": sets[0].dim, "kinds": [type(s).__name__ for s in sets]}


# ---------------------------------------------------------------------------
# superadditivity
# ---------------------------------------------------------------------------


def verify_1d_superadditivity(sets: Sequence[BoxUnion]) -> VerifierReport:
    """Vol(A_1 + ... + A_k) against the averaged leave-one-out volumes, on the line."""
    if len(sets) < 2:
        raise ValueError("need at least two sets")
    if any(s.dim != 1 for s in sets):
        raise ValueError("the one-dimensional check takes sets on the line")
    return _superadditivity("superadditivity-1d", sets)


def verify_refined_superadditivity(sets: Sequence[BoxUnion]) -> VerifierReport:
    """The same leave-one-out inequality in any dimension up to 6."""
    if len(sets) < 2:
        raise ValueError("need at least two sets")
    if sets[0].dim > 6:
        raise ValueError("exact box volumes are limited to dimension 6 here")
    return _superadditivity("superadditivity", sets)


def _superadditivity(name: str, sets) -> VerifierReport:
    k = len(sets)
    lhs = _vol(sum_of_sets(list(sets)))
    parts = [_vol(s) for s in _leave_one_out(list(sets))]
    rhs = sum(parts, _ZERO) / (k - 1)
    return exact_report(name, lhs, rhs, ">=", instance=_describe(sets), details={"leave_one_out": parts})


def verify_average_growth(u: BoxUnion, k: int) -> VerifierReport:
    """Vol(A(k)) >= ((k-1)/k)^(n-1) Vol(A(k-1)) for a box union A."""
    if k < 2:
        raise ValueError("k must be at least 2")
    cur = box_union_volume(average_boxes(u, k))
    prev = box_union_volume(average_boxes(u, k - 1))
    factor = Fraction(k - 1, k) ** (u.dim - 1)
    return exact_report(
        "average-growth", cur, factor * prev, ">=", instance={"k": k, "dim": u.dim, "boxes": len(u.boxes)}
    )


# ---------------------------------------------------------------------------
# supermodularity
# ---------------------------------------------------------------------------


def _as_convex(body):
    if isinstance(body, BoxUnion):
        if len(body.boxes) != 1:
            raise ValueError("a convex body given as boxes must be a single box")
        return body
    if isinstance(body, Polytope):
        return body
    if isinstance(body, PointSet):
        return convex_hull(body)
    lo, hi = body
    return BoxUnion([(lo, hi)])


def verify_supermodularity_convex(b1, b2, b3) -> VerifierReport:
    """Vol(B1+B2+B3) + Vol(B1) >= Vol(B1+B2) + Vol(B1+B3) for convex bodies
    (single boxes, polytopes, or point sets standing for their hulls)."""
    b1, b2, b3 = (_as_convex(b) for b in (b1, b2, b3))
    lhs = _vol(minkowski_sum(minkowski_sum(b1, b2), b3)) + _vol(b1)
    rhs = _vol(minkowski_sum(b1, b2)) + _vol(minkowski_sum(b1, b3))
    return exact_report("supermodularity", lhs, rhs, ">=", instance={"dim": b1.dim})


def _interval_union(data) -> BoxUnion:
    if isinstance(data, BoxUnion):
        return data
    return BoxUnion([((Fraction(a),), (Fraction(b),)) for a, b in data])


def verify_supermodularity_counterexample(a=None, b=None, c=None) -> VerifierReport:
    """The same inequality for non-convex sets on the line; the default
    instance A = {0, 1}, B = C = [0, 1] breaks it."""
    a = _interval_union(a if a is not None else [(0, 0), (1, 1)])
    b = _interval_union(b if b is not None else [(0, 1)])
    c = _interval_union(c if c is not None else [(0, 1)])
    lhs = _vol(sum_of_sets([a, b, c])) + _vol(a)
    rhs = _vol(minkowski_sum(a, b)) + _vol(minkowski_sum(a, c))
    return exact_report(
        "supermodularity-nonconvex",
        lhs,
        rhs,
        ">=",
        instance={"A": _intervals(a), "B": _intervals(b), "C": _intervals(c)},
    )


def verify_1d_supermod_with_hull(a=None, b=None, c=None) -> VerifierReport:
    """Vol(A+B+C) + Vol(conv A) >= Vol(A+B) + Vol(A+C) on the line."""
    a = _interval_union(a if a is not None else [(0, 0), (1, 1)])
    b = _interval_union(b if b is not None else [(0, 1)])
    c = _interval_union(c if c is not None else [(0, 1)])
    if any(s.dim != 1 for s in (a, b, c)):
        raise ValueError("this check is one-dimensional")
    hull_len = max(hi[0] for _, hi in a.boxes) - min(lo[0] for lo, _ in a.boxes)
    lhs = _vol(sum_of_sets([a, b, c])) + hull_len
    rhs = _vol(minkowski_sum(a, b)) + _vol(minkowski_sum(a, c))
    return exact_report(
        "supermodularity-1d-hull",
        lhs,
        rhs,
        ">=",
        instance={"A": _intervals(a), "B": _intervals(b), "C": _intervals(c)},
        details={"equality": lhs == rhs},
    )


def _intervals(u: BoxUnion):
    return [(lo[0], hi[0]) for lo, hi in u.boxes]


def verify_det_supermodularity(k1, k2, k3) -> VerifierReport:
    """det(K1+K2+K3) + det(K1) >= det(K1+K2) + det(K1+K3) for PSD matrices."""
    mats = [[[Fraction(x) for x in row] for row in m] for m in (k1, k2, k3)]
    n = len(mats[0])

    def add(*ms):
        return [[sum((m[i][j] for m in ms), _ZERO) for j in range(n)] for i in range(n)]

    m1, m2, m3 = mats
    lhs = linalg.det(add(m1, m2, m3)) + linalg.det(m1)
    rhs = linalg.det(add(m1, m2)) + linalg.det(add(m1, m3))
    return exact_report("det-supermodularity", lhs, rhs, ">=", instance={"n": n})


# ---------------------------------------------------------------------------
# fractional partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FractionalPartition:
    """Weighted subsets of {0, ..., k-1}; every element collects total weight 1."""

    k: int
    parts: Tuple[Tuple[FrozenSet[int], Fraction], ...]

    def __init__(self, k: int, parts: Iterable[Tuple[Iterable[int], object]]):
        cleaned = []
        for members, weight in parts:
            s = frozenset(int(i) for i in members)
            w = Fraction(weight)
            if not s:
                raise ValueError("empty subset in a fractional partition")
            if w <= 0:
                raise ValueError("fractional partition weights must be positive")
            if any(i < 0 or i >= k for i in s):
                raise ValueError(f"subset {sorted(s)} leaves the ground set of size {k}")
            cleaned.append((s, w))
        for i in range(k):
            total = sum((w for s, w in cleaned if i in s), _ZERO)
            if total != 1:
                raise ValueError(f"element {i} is covered with total weight {total}, not 1")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "parts", tuple(cleaned))

    @classmethod
    def whole(cls, k: int) -> "FractionalPartition":
        return cls(k, [(range(k), 1)])

    @classmethod
    def uniform(cls, k: int, m: int) -> "FractionalPartition":
        """All m-subsets, each with weight 1 / C(k-1, m-1)."""
        w = Fraction(1, comb(k - 1, m - 1))
        return cls(k, [(s, w) for s in itertools.combinations(range(k), m)])

    @classmethod
    def from_cover(cls, k: int, subsets: Sequence[Iterable[int]], objective: Optional[Sequence] = None):
        """A fractional partition supported on some of ``subsets``, found by an
        exact LP; None when they admit none."""
        subsets = [frozenset(s) for s in subsets]
        obj = tuple(Fraction(c) for c in objective) if objective is not None else (_ZERO,) * len(subsets)
        cons = tuple(
            (tuple(_ONE if i in s else _ZERO for s in subsets), "=", _ONE) for i in range(k)
        )
        res = solve(LinearProgram(obj, cons))
        if not isinstance(res, Optimal):
            return None
        return cls(k, [(s, w) for s, w in zip(subsets, res.x) if w > 0])


def random_fractional_partition(rng, k: int, extra: int = 4) -> FractionalPartition:
    """An LP vertex over a random family of subsets (singletons included so the
    family always admits one)."""
    family = {frozenset([i]) for i in range(k)}
    # there are only 2^k - 1 non-empty subsets to draw from
    target = min(k + extra, 2**k - 1)
    while len(family) < target:
        size = rng.randint(2, k)
        family.add(frozenset(rng.sample(range(k), size)))
    family = sorted(family, key=lambda s: (len(s), sorted(s)))
    objective = [Fraction(rng.randint(-5, 5)) for _ in family]
    fp = FractionalPartition.from_cover(k, family, objective)
    if fp is None:  # pragma: no cover - singletons make the LP feasible and bounded
        raise ArithmeticError("fractional partition LP failed")
    return fp


def verify_fractional_superadditivity(boxes: Sequence, fp: FractionalPartition) -> VerifierReport:
    """Vol(sum of all B_i) >= sum over parts of beta_S Vol(sum over S of B_i), convex boxes."""
    bodies = [_as_convex(b) for b in boxes]
    if len(bodies) != fp.k:
        raise ValueError("the partition and the list of bodies disagree on k")
    lhs = _vol(sum_of_sets(bodies))
    rhs = _ZERO
    for members, w in fp.parts:
        rhs += w * _vol(sum_of_sets([bodies[i] for i in sorted(members)]))
    return exact_report(
        "fractional-superadditivity",
        lhs,
        rhs,
        ">=",
        instance={"k": fp.k, "parts": [(sorted(s), w) for s, w in fp.parts]},
    )


# ---------------------------------------------------------------------------
# projection hypothesis
# ---------------------------------------------------------------------------


def _drop_axis(u: BoxUnion, axis: int) -> BoxUnion:
    return BoxUnion(
        [
            (tuple(c for j, c in enumerate(lo) if j != axis), tuple(c for j, c in enumerate(hi) if j != axis))
            for lo, hi in u.boxes
        ]
    )


def verify_projection_monotone(u: BoxUnion, axis: int = 0, kmax: int = 5) -> VerifierReport:
    """When the projection of A along a coordinate axis has the volume of the
    projected hull, Vol(A(k)) >= (k-1)/k Vol(A(k-1)) for k <= kmax."""
    if u.dim < 2:
        raise ValueError("projections need dimension at least 2")
    shadow = _drop_axis(u, axis)
    shadow_vol = box_union_volume(shadow)
    shadow_hull = convex_hull(shadow.corners())
    hull_vol = polytope_volume(shadow_hull)[0] if shadow_hull.full_dimensional else _ZERO
    instance = {"dim": u.dim, "axis": axis, "kmax": kmax, "boxes": len(u.boxes)}
    if shadow_vol != hull_vol:
        return VerifierReport(
            "projection-monotone",
            INCONCLUSIVE,
            shadow_vol,
            hull_vol,
            "=",
            True,
            instance=instance,
            details={"skipped": "hypothesis unmet: the shadow of A is smaller than the shadow of its hull"},
        )
    vols = [box_union_volume(average_boxes(u, k)) for k in range(1, kmax + 1)]
    trials = [
        exact_report("projection-monotone-step", vols[k - 1], Fraction(k - 1, k) * vols[k - 2], ">=", instance={"k": k})
        for k in range(2, kmax + 1)
    ]
    from ..reports import combine

    return combine("projection-monotone", trials, instance=instance, details={"volumes": vols})

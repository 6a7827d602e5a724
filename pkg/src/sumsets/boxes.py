"""Exact Lebesgue measure of a finite union of axis-aligned rational boxes.

The union is swept along the first axis.  Between two consecutive distinct
endpoints the set of boxes crossing the slab is constant, so the slab
contributes its width times the measure of those boxes projected onto the
remaining axes.  Slabs crossed by the same boxes share a memoised answer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from .sets import BoxUnion

_Box = Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]


def _union_length(intervals: Sequence[Tuple[Fraction, Fraction]]) -> Fraction:
    total = Fraction(0)
    cur_lo = cur_hi = None
    for lo, hi in sorted(intervals):
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


def union_volume(boxes: Sequence[_Box]) -> Fraction:
    solid = tuple(b for b in dict.fromkeys(boxes) if all(l < h for l, h in zip(*b)))
    if not solid:
        return Fraction(0)

    @lru_cache(maxsize=None)
    def measure(active: Tuple[int, ...], axis: int) -> Fraction:
        if axis == len(solid[0][0]) - 1:
            return _union_length([(solid[i][0][axis], solid[i][1][axis]) for i in active])
        cuts = sorted({solid[i][0][axis] for i in active} | {solid[i][1][axis] for i in active})
        total = Fraction(0)
        for lo, hi in zip(cuts, cuts[1:]):
            crossing = tuple(i for i in active if solid[i][0][axis] <= lo and solid[i][1][axis] >= hi)
            if crossing:
                total += (hi - lo) * measure(crossing, axis + 1)
        return total

    return measure(tuple(range(len(solid))), 0)


def box_union_volume(u: BoxUnion) -> Fraction:
    return union_volume(u.boxes)

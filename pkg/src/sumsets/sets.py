"""Finite point sets and unions of boxes, with Minkowski sums and averages."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence, Tuple

import numpy as np

from .rational import to_fraction, vec

Point = Tuple[Fraction, ...]


class CapExceeded(ValueError):
    """Raised when a set would grow past the configured cardinality cap."""

    def __init__(self, estimate: int, cap: int):
        super().__init__(f"projected cardinality {estimate} exceeds cap {cap}")
        self.estimate = estimate
        self.cap = cap


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: Tuple[Point, ...]

    def __init__(self, points: Iterable[Sequence], dim: int | None = None):
        seen = {}
        for p in points:
            q = vec(p)
            seen.setdefault(q, None)
        pts = tuple(seen)
        if not pts:
            raise ValueError("a PointSet needs at least one point")
        d = len(pts[0]) if dim is None else dim
        if d <= 0:
            raise ValueError("dimension must be positive")
        if any(len(p) != d for p in pts):
            raise ValueError("all points must share the ambient dimension")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "points", pts)

    @classmethod
    def _trusted(cls, points: Tuple[Point, ...], dim: int) -> "PointSet":
        """Wrap distinct Fraction tuples built inside the library, skipping
        conversion and deduplication."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "points", points)
        return obj

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return vec(p) in set(self.points)

    def as_array(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.points], dtype=float)

    def scaled(self, factor) -> "PointSet":
        t = to_fraction(factor)
        return PointSet([tuple(t * c for c in p) for p in self.points])

    def translated(self, shift: Sequence) -> "PointSet":
        s = vec(shift)
        return PointSet([tuple(a + b for a, b in zip(p, s)) for p in self.points])

    def mapped(self, matrix: Sequence[Sequence], shift: Sequence | None = None) -> "PointSet":
        """Image under x -> M x + s with rational M and s."""
        mat = [vec(r) for r in matrix]
        s = vec(shift) if shift is not None else (Fraction(0),) * len(mat)
        out = []
        for p in self.points:
            out.append(tuple(sum((m * c for m, c in zip(row, p)), Fraction(0)) + si for row, si in zip(mat, s)))
        return PointSet(out)

    def sorted(self) -> "PointSet":
        return PointSet(sorted(self.points))

    def union(self, other: "PointSet") -> "PointSet":
        _check_dims(self.dim, other.dim)
        return PointSet(self.points + other.points)


Box = Tuple[Point, Point]


@dataclass(frozen=True)
class BoxUnion:
    dim: int
    boxes: Tuple[Box, ...]

    def __init__(self, boxes: Iterable[Tuple[Sequence, Sequence]]):
        out = []
        for lo, hi in boxes:
            lo_v, hi_v = vec(lo), vec(hi)
            if len(lo_v) != len(hi_v):
                raise ValueError("box corners must share the dimension")
            if any(a > b for a, b in zip(lo_v, hi_v)):
                raise ValueError(f"box lower corner exceeds upper corner: {lo_v} > {hi_v}")
            out.append((lo_v, hi_v))
        if not out:
            raise ValueError("a BoxUnion needs at least one box")
        d = len(out[0][0])
        if any(len(b[0]) != d for b in out):
            raise ValueError("all boxes must share the ambient dimension")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "boxes", tuple(dict.fromkeys(out)))

    def corners(self) -> PointSet:
        pts = []
        for lo, hi in self.boxes:
            for choice in itertools.product(*zip(lo, hi)):
                pts.append(choice)
        return PointSet(pts)

    def scaled(self, factor) -> "BoxUnion":
        t = to_fraction(factor)
        if t < 0:
            raise ValueError("negative scaling of a box union is not supported")
        return BoxUnion([(tuple(t * c for c in lo), tuple(t * c for c in hi)) for lo, hi in self.boxes])

    def translated(self, shift) -> "BoxUnion":
        s = vec(shift)
        return BoxUnion(
            [(tuple(a + b for a, b in zip(lo, s)), tuple(a + b for a, b in zip(hi, s))) for lo, hi in self.boxes]
        )

    def contains_point(self, p) -> bool:
        q = vec(p)
        return any(all(l <= c <= h for l, c, h in zip(lo, q, hi)) for lo, hi in self.boxes)


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} vs {b}")


def minkowski_sum(a, b):
    """Minkowski sum of two sets of the same kind."""
    from .hull import Polytope, polytope_sum

    if isinstance(a, PointSet) and isinstance(b, PointSet):
        _check_dims(a.dim, b.dim)
        return PointSet(tuple(x + y for x, y in zip(p, q)) for p in a.points for q in b.points)
    if isinstance(a, BoxUnion) and isinstance(b, BoxUnion):
        _check_dims(a.dim, b.dim)
        return BoxUnion(
            (
                tuple(x + y for x, y in zip(lo1, lo2)),
                tuple(x + y for x, y in zip(hi1, hi2)),
            )
            for lo1, hi1 in a.boxes
            for lo2, hi2 in b.boxes
        )
    if isinstance(a, Polytope) and isinstance(b, Polytope):
        return polytope_sum(a, b)
    raise TypeError(f"cannot add {type(a).__name__} and {type(b).__name__}")


def sum_of_sets(sets: Sequence):
    total = sets[0]
    for s in sets[1:]:
        total = minkowski_sum(total, s)
    return total


def _integer_frame(points: Sequence[Point]):
    den = 1
    for p in points:
        for c in p:
            den = lcm(den, c.denominator)
    ints = [tuple(int(c * den) for c in p) for p in points]
    return ints, den


def average_estimate(a: PointSet, k: int) -> int:
    """Upper estimate for |A(k)|: min of the multiset count and the lattice count."""
    ints, _ = _integer_frame(a.points)
    multisets = comb(k + len(ints) - 1, len(ints) - 1)
    lattice = 1
    for axis in range(a.dim):
        vals = [p[axis] for p in ints]
        lattice *= k * (max(vals) - min(vals)) + 1
    return min(multisets, lattice)


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    """Distinct integer rows in lexicographic order."""
    lo = rows.min(axis=0)
    spans = rows.max(axis=0) - lo + 1
    if float(np.prod(spans.astype(float))) < 2.0**62:
        # pack each row into one integer whose order is the lexicographic order
        strides = np.ones(len(spans), dtype=np.int64)
        for j in range(len(spans) - 2, -1, -1):
            strides[j] = strides[j + 1] * spans[j + 1]
        keys = np.unique((rows - lo) @ strides)
        out = np.empty((len(keys), rows.shape[1]), dtype=np.int64)
        for j in range(rows.shape[1]):
            out[:, j] = keys // strides[j]
            keys = keys % strides[j]
        return out + lo
    return np.unique(rows, axis=0)


def iter_average_frames(a: PointSet, kmax: int, cap: int | None = None):
    """Yield (k, rows, scale) for k = 1..kmax, where A(k) is rows / scale.

    ``rows`` holds the distinct integer points of k A in lexicographic order,
    as an int64 array when machine integers suffice and as a list of tuples
    of Python ints otherwise."""
    from .config import DEFAULT

    if kmax < 1:
        raise ValueError("k must be a positive integer")
    cap = DEFAULT.average_cap if cap is None else cap
    ints, den = _integer_frame(a.points)
    biggest = max(abs(c) for p in ints for c in p)
    machine = biggest * kmax < 2**62
    base = np.array(ints, dtype=np.int64) if machine else None
    current = None
    for k in range(1, kmax + 1):
        estimate = average_estimate(a, k)
        if estimate > cap:
            raise CapExceeded(estimate, cap)
        if machine:
            # machine integers suffice: build the sums with numpy
            if current is None:
                current = _unique_rows(base)
            else:
                current = _unique_rows((current[:, None, :] + base[None, :, :]).reshape(-1, a.dim))
            rows = current
        else:
            if current is None:
                current = set(ints)
            else:
                current = {tuple(x + y for x, y in zip(s, p)) for s in current for p in ints}
            rows = sorted(current)
        if len(rows) > cap:
            raise CapExceeded(len(rows), cap)
        yield k, rows, k * den


def iter_average_sets(a: PointSet, kmax: int, cap: int | None = None):
    """Yield (k, A(k)) for k = 1..kmax, each sum built from the previous one."""
    for k, rows, scale in iter_average_frames(a, kmax, cap):
        # integer order matches rational order because the scale is positive
        pts = tuple(tuple(Fraction(int(c), scale) for c in row) for row in rows)
        yield k, PointSet._trusted(pts, a.dim)


def average_set(a: PointSet, k: int, cap: int | None = None) -> PointSet:
    """The k-fold self-average (A + ... + A) / k, exact and sorted."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    for j, ak in iter_average_sets(a, k, cap):
        if j == k:
            return ak


def average_boxes(u: BoxUnion, k: int, cap: int | None = None) -> BoxUnion:
    """The k-fold self-average of a box union; every k-multiset of boxes gives one box."""
    from .config import DEFAULT

    cap = DEFAULT.average_cap if cap is None else cap
    estimate = comb(k + len(u.boxes) - 1, len(u.boxes) - 1)
    if estimate > cap:
        raise CapExceeded(estimate, cap)
    inv = Fraction(1, k)
    out = []
    for combo in itertools.combinations_with_replacement(range(len(u.boxes)), k):
        lo = [Fraction(0)] * u.dim
        hi = [Fraction(0)] * u.dim
        for idx in combo:
            blo, bhi = u.boxes[idx]
            lo = [x + y for x, y in zip(lo, blo)]
            hi = [x + y for x, y in zip(hi, bhi)]
        out.append((tuple(x * inv for x in lo), tuple(x * inv for x in hi)))
    return BoxUnion(out)


def diam(a) -> float:
    """Largest pairwise Euclidean distance (box unions use their corners)."""
    return float(np.sqrt(float(diam_squared(a))))


def diam_squared(a) -> Fraction:
    pts = a.corners().points if isinstance(a, BoxUnion) else a.points
    if len(pts) > 400:
        # Farthest pairs lie on the hull; prune with a float hull first.
        from .hull import convex_hull

        pts = convex_hull(PointSet(pts)).vertices
    best = Fraction(0)
    for i in range(len(pts)):
        pi = pts[i]
        for j in range(i + 1, len(pts)):
            d = sum(((x - y) ** 2 for x, y in zip(pi, pts[j])), Fraction(0))
            if d > best:
                best = d
    return best

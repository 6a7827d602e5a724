"""Exact convex hulls: vertices, facets, equations of the affine hull and a
triangulation.

The hull is computed in the coordinates of an affine chart: the affine hull
of the input is parametrised by a subset of the ambient coordinate axes (the
pivot columns of the difference vectors), which is an exact linear bijection
onto R^m.  Facet inequalities found in the chart lift back to the ambient
space by padding the normal with zeros; together with the affine-hull
equations they describe the polytope exactly.

Dimension 1 and 2 charts use sorting and a monotone chain.  Dimensions 3 to 6
use an incremental beneath-beyond construction over integers, which also
yields a placing triangulation.  Above 6 only the vertex set is computed, by
an LP membership filter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .rational import vec
from .sets import PointSet

MAX_FACET_DIM = 6

Halfspace = Tuple[Tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points.

    ``facets`` are inequalities ``normal . x <= offset`` that hold on the
    polytope and are tight on a facet, relative to the affine hull given by
    ``equations`` (``normal . x == offset``).  ``triangulation`` lists
    simplices as index tuples into ``vertices``.
    """

    dim: int
    vertices: Tuple[Tuple[Fraction, ...], ...]
    affine_dim: int
    facets: Optional[Tuple[Halfspace, ...]] = None
    facet_vertices: Optional[Tuple[Tuple[int, ...], ...]] = None
    equations: Tuple[Halfspace, ...] = ()
    triangulation: Optional[Tuple[Tuple[int, ...], ...]] = None
    chart: Tuple[int, ...] = field(default=(), repr=False)

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def has_facets(self) -> bool:
        return self.facets is not None

    def point_set(self) -> PointSet:
        return PointSet(self.vertices)

    def contains(self, x, strict: bool = False) -> bool:
        """Exact membership (relative interior when ``strict``)."""
        x = vec(x)
        for normal, off in self.equations:
            if _dot(normal, x) != off:
                return False
        if self.facets is None:
            if strict:
                raise ValueError("strict membership needs facets")
            from .lp import in_hull

            return in_hull(x, self.point_set()).feasible
        for normal, off in self.facets:
            v = _dot(normal, x)
            if v > off or (strict and v == off):
                return False
        return True

    def scaled(self, t) -> "Polytope":
        t = Fraction(t)
        return convex_hull(PointSet([tuple(t * c for c in p) for p in self.vertices]))


def _dot(u, w) -> Fraction:
    return sum((a * b for a, b in zip(u, w)), Fraction(0))


# ---------------------------------------------------------------------------
# affine chart
# ---------------------------------------------------------------------------


def affine_chart(points: Sequence[Tuple[Fraction, ...]]):
    """Return (affine basis indices, chart axes, affine-hull equations)."""
    p0 = points[0]
    n = len(p0)
    basis = [0]
    rows: List[List[Fraction]] = []
    current_rank = 0
    for i, p in enumerate(points[1:], start=1):
        cand = rows + [[a - b for a, b in zip(p, p0)]]
        r = linalg.rank(cand)
        if r > current_rank:
            rows = cand
            basis.append(i)
            current_rank = r
            if r == n:
                break
    if rows:
        _, pivots = linalg.rref(rows)
        equations = []
        for w in linalg.nullspace(rows):
            w = _primitive(w)
            equations.append((tuple(w), _dot(w, p0)))
    else:
        pivots = []
        equations = []
        for j in range(n):
            e = tuple(Fraction(int(i == j)) for i in range(n))
            equations.append((e, p0[j]))
    return basis, tuple(pivots), tuple(equations)


def _primitive(w: Sequence[Fraction]) -> List[Fraction]:
    den = 1
    for c in w:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in w]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    return [Fraction(c // g) for c in ints]


def _lift_normal(normal_chart, chart, n) -> Tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    for c, axis in zip(normal_chart, chart):
        out[axis] = Fraction(c)
    return tuple(out)


def _to_integers(coords: Sequence[Tuple[Fraction, ...]]):
    den = 1
    for p in coords:
        for c in p:
            den = lcm(den, c.denominator)
    return [tuple(int(c * den) for c in p) for p in coords], den


# ---------------------------------------------------------------------------
# low-dimensional charts
# ---------------------------------------------------------------------------


def _hull_1d(xs: List[int]):
    lo = min(range(len(xs)), key=lambda i: (xs[i], i))
    hi = max(range(len(xs)), key=lambda i: (xs[i], -i))
    verts = [lo, hi]
    facets = [((-1,), -xs[lo], (0,)), ((1,), xs[hi], (1,))]
    return verts, facets, [(0, 1)]


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(pts: List[Tuple[int, int]]):
    order = sorted(range(len(pts)), key=lambda i: (pts[i], i))
    uniq = []
    seen = set()
    for i in order:
        if pts[i] not in seen:
            seen.add(pts[i])
            uniq.append(i)
    lower: List[int] = []
    for i in uniq:
        while len(lower) >= 2 and _cross(pts[lower[-2]], pts[lower[-1]], pts[i]) <= 0:
            lower.pop()
        lower.append(i)
    upper: List[int] = []
    for i in reversed(uniq):
        while len(upper) >= 2 and _cross(pts[upper[-2]], pts[upper[-1]], pts[i]) <= 0:
            upper.pop()
        upper.append(i)
    ring = lower[:-1] + upper[:-1]  # counter-clockwise
    m = len(ring)
    facets = []
    for j in range(m):
        a, b = pts[ring[j]], pts[ring[(j + 1) % m]]
        nx, ny = b[1] - a[1], a[0] - b[0]
        g = gcd(nx, ny) or 1
        nx, ny = nx // g, ny // g
        facets.append(((nx, ny), nx * a[0] + ny * a[1], (j, (j + 1) % m)))
    tri = [(0, j, j + 1) for j in range(1, m - 1)]
    return ring, facets, tri


# ---------------------------------------------------------------------------
# beneath-beyond for chart dimension 3..6
# ---------------------------------------------------------------------------


def _hyperplane(pts: Sequence[Tuple[int, ...]]):
    """Integer normal and offset of the hyperplane through m points in Z^m."""
    m = len(pts[0])
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    normal = []
    for j in range(m):
        minor = [[row[c] for c in range(m) if c != j] for row in diffs]
        d = linalg.integer_det(minor)
        normal.append(d if j % 2 == 0 else -d)
    g = 0
    for c in normal:
        g = gcd(g, c)
    if g == 0:
        raise ArithmeticError("degenerate facet simplex")
    normal = [c // g for c in normal]
    off = sum(a * b for a, b in zip(normal, base))
    return normal, off


class _BeneathBeyond:
    def __init__(self, pts: List[Tuple[int, ...]], first: List[int]):
        self.pts = pts
        self.m = len(pts[0])
        m = self.m
        # interior reference: (m+1) * centroid of the initial simplex, kept as integers
        self.ref = [sum(pts[i][c] for i in first) for c in range(m)]
        self.facets: Dict[int, Tuple[Tuple[int, ...], List[int], int]] = {}
        self.ridges: Dict[frozenset, set] = {}
        self.cells: List[Tuple[int, ...]] = [tuple(first)]
        self._next = 0
        for drop in range(m + 1):
            verts = tuple(v for j, v in enumerate(first) if j != drop)
            self._add_facet(verts)

    def _oriented(self, verts):
        normal, off = _hyperplane([self.pts[v] for v in verts])
        s = sum(a * b for a, b in zip(normal, self.ref)) - (self.m + 1) * off
        if s > 0:
            normal = [-c for c in normal]
            off = -off
        elif s == 0:
            raise ArithmeticError("reference point on a facet hyperplane")
        return normal, off

    def _add_facet(self, verts):
        normal, off = self._oriented(verts)
        fid = self._next
        self._next += 1
        self.facets[fid] = (tuple(sorted(verts)), normal, off)
        for r in itertools.combinations(sorted(verts), self.m - 1):
            self.ridges.setdefault(frozenset(r), set()).add(fid)

    def _remove_facet(self, fid):
        verts, _, _ = self.facets.pop(fid)
        for r in itertools.combinations(verts, self.m - 1):
            key = frozenset(r)
            s = self.ridges[key]
            s.discard(fid)
            if not s:
                del self.ridges[key]

    def add_point(self, idx: int) -> bool:
        p = self.pts[idx]
        visible = [
            fid for fid, (_, normal, off) in self.facets.items() if sum(a * b for a, b in zip(normal, p)) > off
        ]
        if not visible:
            return False
        vis = set(visible)
        horizon = []
        for fid in visible:
            verts = self.facets[fid][0]
            self.cells.append(verts + (idx,))
            for r in itertools.combinations(verts, self.m - 1):
                others = self.ridges[frozenset(r)] - {fid}
                if any(o not in vis for o in others):
                    horizon.append(r)
        for fid in visible:
            self._remove_facet(fid)
        for r in horizon:
            self._add_facet(tuple(r) + (idx,))
        return True


def _initial_simplex(pts: List[Tuple[int, ...]]) -> List[int]:
    m = len(pts[0])
    chosen = [0]
    rows: List[List[Fraction]] = []
    for i in range(1, len(pts)):
        cand = rows + [[Fraction(a - b) for a, b in zip(pts[i], pts[0])]]
        if linalg.rank(cand) > len(rows):
            rows = cand
            chosen.append(i)
            if len(chosen) == m + 1:
                break
    return chosen


def _hull_general(pts: List[Tuple[int, ...]]):
    first = _initial_simplex(pts)
    bb = _BeneathBeyond(pts, first)
    firsts = set(first)
    for i in range(len(pts)):
        if i not in firsts:
            bb.add_point(i)
    # merge coplanar boundary simplices into facets
    groups: Dict[Tuple[Tuple[int, ...], int], set] = {}
    for verts, normal, off in bb.facets.values():
        groups.setdefault((tuple(normal), off), set()).update(verts)
    facets = [(normal, off, tuple(sorted(vs))) for (normal, off), vs in groups.items()]
    # extreme points: incident facet normals span R^m
    incident: Dict[int, List[Tuple[int, ...]]] = {}
    for normal, _, vs in facets:
        for v in vs:
            incident.setdefault(v, []).append(normal)
    m = len(pts[0])
    extreme = [
        v
        for v in sorted(incident)
        if linalg.rank([[Fraction(c) for c in nrm] for nrm in incident[v]]) == m
    ]
    return extreme, facets, bb.cells


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def convex_hull(a: PointSet | Sequence) -> Polytope:
    """Exact hull of a finite point set (facets and triangulation up to chart dimension 6)."""
    pts = list(a.points) if isinstance(a, PointSet) else list(PointSet(a).points)
    n = len(pts[0])
    if len(pts) == 1:
        eqs = tuple((tuple(Fraction(int(i == j)) for i in range(n)), pts[0][j]) for j in range(n))
        return Polytope(n, (pts[0],), 0, (), ((0,),), eqs, ((0,),), ())
    _, chart, equations = affine_chart(pts)
    m = len(chart)
    proj = [tuple(p[c] for c in chart) for p in pts]
    ints, den = _to_integers(proj)
    if m > MAX_FACET_DIM:
        return _vertex_only(pts, m, equations, chart)
    if m == 1:
        order, facets_c, tri = _hull_1d([p[0] for p in ints])
    elif m == 2:
        order, facets_c, tri = _hull_2d(ints)
    else:
        extreme, facets_raw, cells = _hull_general(ints)
        if len(extreme) == len(ints):
            order = extreme
            remap = {v: j for j, v in enumerate(order)}
        else:
            # rebuild from the extreme points only so the triangulation uses vertices
            sub = [ints[i] for i in extreme]
            ext2, facets_raw, cells = _hull_general(sub)
            order = [extreme[i] for i in ext2]
            remap = {v: j for j, v in enumerate(ext2)}
        facets_c = [(normal, off, tuple(remap[v] for v in vs if v in remap)) for normal, off, vs in facets_raw]
        tri = [tuple(remap[v] for v in cell) for cell in cells]
    vertices = tuple(pts[i] for i in order)
    facets = []
    facet_vertices = []
    for normal, off, vs in facets_c:
        lifted = _lift_normal(normal, chart, n)
        facets.append((lifted, Fraction(off, den)))
        facet_vertices.append(tuple(sorted(vs)))
    return Polytope(
        n,
        vertices,
        m,
        tuple(facets),
        tuple(facet_vertices),
        equations,
        tuple(tuple(c) for c in tri),
        chart,
    )


def _vertex_only(pts, m, equations, chart) -> Polytope:
    from .lp import in_hull

    keep = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not in_hull(p, PointSet(others)).feasible:
            keep.append(i)
    return Polytope(len(pts[0]), tuple(pts[i] for i in keep), m, None, None, equations, None, chart)


def vertex_filter_lp(a: PointSet) -> PointSet:
    """Vertices by per-point LP membership against the remaining points."""
    from .lp import in_hull

    pts = list(a.points)
    keep = [
        p for i, p in enumerate(pts) if len(pts) == 1 or not in_hull(p, PointSet(pts[:i] + pts[i + 1 :])).feasible
    ]
    return PointSet(keep)


def simplex_volume(simplex: Sequence[Tuple[Fraction, ...]]) -> Fraction:
    base = simplex[0]
    rows = [[a - b for a, b in zip(p, base)] for p in simplex[1:]]
    return abs(linalg.det(rows)) / factorial(len(rows))


def polytope_volume(p: Polytope) -> Tuple[Fraction, bool]:
    """(volume, degenerate flag); lower-dimensional polytopes have volume 0."""
    if not p.full_dimensional:
        return Fraction(0), True
    if p.triangulation is None:
        raise ValueError("volume needs a triangulation (chart dimension <= 6)")
    if p.dim == 1:
        xs = [v[0] for v in p.vertices]
        return max(xs) - min(xs), False
    pts, den = _to_integers(list(p.vertices))
    total = 0
    for cell in p.triangulation:
        base = pts[cell[0]]
        rows = [[a - b for a, b in zip(pts[i], base)] for i in cell[1:]]
        total += abs(linalg.integer_det(rows))
    return Fraction(total, factorial(p.dim) * den ** p.dim), False


def polytope_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    return convex_hull(PointSet(tuple(a + b for a, b in zip(u, w)) for u in p.vertices for w in q.vertices))

"""Gauges (Minkowski functionals) and the Chebyshev inradius."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .hull import Halfspace, Polytope, convex_hull
from .rational import vec
from .sets import PointSet

INFINITY = math.inf


@dataclass(frozen=True)
class EuclideanBall:
    radius: Fraction = Fraction(1)

    @property
    def symmetric(self) -> bool:
        return True


@dataclass(frozen=True)
class PolytopeGauge:
    """Gauge of a polytope given by facet inequalities ``normal . x <= offset``.

    Offsets are positive when the origin is interior.  ``degenerate=True``
    admits zero offsets (origin on the boundary); such a gauge is +inf in the
    directions leaving the body through those facets.
    """

    facets: Tuple[Halfspace, ...]
    vertices: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    degenerate: bool = False

    def __post_init__(self):
        for _, off in self.facets:
            if off < 0 or (off == 0 and not self.degenerate):
                raise ValueError("the origin must lie strictly inside a gauge body")

    @property
    def dim(self) -> int:
        return len(self.facets[0][0])

    @property
    def symmetric(self) -> bool:
        canon = {_canonical(n, o) for n, o in self.facets}
        return all(_canonical(tuple(-c for c in n), o) in canon for n, o in self.facets)

    @classmethod
    def from_polytope(cls, body: Polytope) -> "PolytopeGauge":
        if not body.full_dimensional or body.facets is None:
            raise ValueError("a gauge body must be full-dimensional with known facets")
        return cls(tuple(body.facets), tuple(body.vertices))

    @classmethod
    def from_points(cls, points) -> "PolytopeGauge":
        return cls.from_polytope(convex_hull(PointSet(points)))


def _canonical(normal, off):
    return tuple(c / off for c in normal) if off else (normal, 0)


def lp_ball(n: int, p) -> EuclideanBall | PolytopeGauge:
    """Unit ball of l_p^n for p in {1, 2, inf} with exact facet lists."""
    if p in (2, "2", "l2"):
        return EuclideanBall()
    if p in (1, "1", "l1"):
        facets = tuple((tuple(Fraction(s) for s in signs), Fraction(1)) for signs in itertools.product((1, -1), repeat=n))
        verts = []
        for i in range(n):
            for s in (1, -1):
                verts.append(tuple(Fraction(s if j == i else 0) for j in range(n)))
        return PolytopeGauge(facets, tuple(verts))
    if p in (math.inf, "inf", "linf"):
        facets = []
        for i in range(n):
            for s in (1, -1):
                facets.append((tuple(Fraction(s if j == i else 0) for j in range(n)), Fraction(1)))
        verts = tuple(tuple(Fraction(s) for s in signs) for signs in itertools.product((1, -1), repeat=n))
        return PolytopeGauge(tuple(facets), verts)
    raise ValueError(f"unsupported l_p exponent {p!r}")


def gauge_norm_exact(k: PolytopeGauge, x: Sequence) -> Fraction | float:
    """Exact gauge value for polytope gauges (``math.inf`` outside a degenerate cone)."""
    x = vec(x)
    best = Fraction(0)
    for normal, off in k.facets:
        s = sum((a * b for a, b in zip(normal, x)), Fraction(0))
        if off == 0:
            if s > 0:
                return INFINITY
            continue
        t = s / off
        if t > best:
            best = t
    return best


def gauge_norm(k, x: Sequence) -> float:
    if isinstance(k, EuclideanBall):
        return math.sqrt(sum(float(c) ** 2 for c in x)) / float(k.radius)
    value = gauge_norm_exact(k, x)
    return float(value)


def gauge_norm_array(k, xs: np.ndarray) -> np.ndarray:
    """Vectorised float gauge values for the rows of ``xs``."""
    if isinstance(k, EuclideanBall):
        return np.linalg.norm(xs, axis=1) / float(k.radius)
    normals = np.array([[float(c) for c in n] for n, _ in k.facets])
    offs = np.array([float(o) for _, o in k.facets])
    proj = xs @ normals.T
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(offs > 0, proj / np.where(offs > 0, offs, 1.0), np.where(proj > 1e-15, np.inf, 0.0))
    return np.maximum(ratios.max(axis=1), 0.0)


def inradius(p: Polytope) -> float:
    """Radius of the largest Euclidean ball inside a full-dimensional polytope.

    Solved as the Chebyshev-centre LP  max r  s.t.  normal.x + r |normal| <= offset.
    """
    from scipy.optimize import linprog

    if not p.full_dimensional or p.facets is None:
        raise ValueError("inradius requires a full-dimensional polytope with facets")
    normals = np.array([[float(c) for c in n] for n, _ in p.facets])
    offs = np.array([float(o) for _, o in p.facets])
    norms = np.linalg.norm(normals, axis=1)
    a_ub = np.hstack([normals, norms[:, None]])
    c = np.zeros(p.dim + 1)
    c[-1] = -1.0
    res = linprog(c, A_ub=a_ub, b_ub=offs, bounds=[(None, None)] * p.dim + [(0, None)], method="highs")
    if res.status != 0:
        raise RuntimeError(f"Chebyshev LP failed: {res.message}")
    return float(res.x[-1])


def chebyshev_center(p: Polytope) -> np.ndarray:
    from scipy.optimize import linprog

    normals = np.array([[float(c) for c in n] for n, _ in p.facets])
    offs = np.array([float(o) for _, o in p.facets])
    norms = np.linalg.norm(normals, axis=1)
    a_ub = np.hstack([normals, norms[:, None]])
    c = np.zeros(p.dim + 1)
    c[-1] = -1.0
    res = linprog(c, A_ub=a_ub, b_ub=offs, bounds=[(None, None)] * p.dim + [(0, None)], method="highs")
    return res.x[:-1]


def parse_gauge(spec: str, dim: int):
    """Gauge from a short name: ``l2``, ``l1``, ``linf``."""
    key = spec.lower()
    if key in ("l2", "euclid", "euclidean"):
        return EuclideanBall()
    if key == "l1":
        return lp_ball(dim, 1)
    if key in ("linf", "lmax", "box"):
        return lp_ball(dim, math.inf)
    raise ValueError(f"unknown gauge {spec!r} (expected l1, l2 or linf)")

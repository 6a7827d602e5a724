"""Smallest enclosing Euclidean ball (move-to-front Welzl iteration, floats)."""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

import numpy as np

from .sets import BoxUnion, PointSet

_EPS = 1e-12


def circumball(support: Sequence[np.ndarray]) -> Tuple[np.ndarray, float]:
    """Centre and radius of the smallest sphere through the support points,
    with the centre taken in their affine hull."""
    if not support:
        return None, -1.0
    p0 = support[0]
    if len(support) == 1:
        return p0.copy(), 0.0
    diffs = np.array([p - p0 for p in support[1:]])
    gram = diffs @ diffs.T
    rhs = 0.5 * np.einsum("ij,ij->i", diffs, diffs)
    beta, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    centre = p0 + beta @ diffs
    radius = max(float(np.linalg.norm(p - centre)) for p in support)
    return centre, radius


def _inside(p, centre, radius) -> bool:
    if centre is None:
        return False
    return float(np.linalg.norm(p - centre)) <= radius * (1 + _EPS) + _EPS


def _mtf(points: List[np.ndarray], count: int, support: List[np.ndarray], dim: int):
    centre, radius = circumball(support)
    if len(support) == dim + 1:
        return centre, radius
    i = 0
    while i < count:
        p = points[i]
        if not _inside(p, centre, radius):
            centre, radius = _mtf(points, i, support + [p], dim)
            points.insert(0, points.pop(i))
        i += 1
    return centre, radius


def min_enclosing_ball(a: PointSet | BoxUnion) -> Tuple[np.ndarray, float]:
    """(centre, R) of the smallest ball containing the set."""
    if isinstance(a, BoxUnion):
        a = a.corners()
    arr = a.as_array()
    dim = arr.shape[1]
    # farthest-first ordering makes the move-to-front pass settle quickly
    centroid = arr.mean(axis=0)
    order = np.argsort(-np.linalg.norm(arr - centroid, axis=1), kind="stable")
    pts = [arr[i] for i in order]
    centre, radius = _mtf(pts, len(pts), [], dim)
    # the support construction can only under-estimate by rounding; close the gap
    radius = max(radius, float(np.max(np.linalg.norm(arr - centre, axis=1))))
    return centre, radius


def jung_bound(diameter: float, dim: int) -> float:
    return diameter * math.sqrt(dim / (2.0 * (dim + 1)))

"""Explicit instances that break conjectured inequalities, rebuilt and
re-measured exactly, plus the regular-simplex ratio for half-sums."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..hull import convex_hull
from ..lp import in_hull
from ..measures.hausdorff import hausdorff_from_hull, lipschitz_sup
from ..rational import sqrt_fraction, to_fraction
from ..reports import INCONCLUSIVE, VIOLATED, VerifierReport, bounds_report, exact_report
from ..sets import BoxUnion, PointSet, average_boxes, average_set
from ..boxes import box_union_volume

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# volumes of A(k) need not increase
# ---------------------------------------------------------------------------


def threshold_dimension(k: int) -> int:
    """Smallest multiple n of k with n > log k / (log(1 + 1/k) - log(2)/k)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    bound = math.log(k) / (math.log1p(1 / k) - math.log(2) / k)
    n = k * (math.floor(bound / k) + 1)
    while n - k > bound:
        n -= k
    return n


def block_cubes(k: int, d: int) -> BoxUnion:
    """k unit cubes of dimension d placed in mutually orthogonal coordinate blocks of R^(kd)."""
    n = k * d
    boxes = []
    for i in range(k):
        hi = tuple(Fraction(1) if i * d <= j < (i + 1) * d else Fraction(0) for j in range(n))
        boxes.append(((Fraction(0),) * n, hi))
    return BoxUnion(boxes)


def counterexample_thm_nonmonotone(k: int = 2, d: int = 6) -> VerifierReport:
    """Compare Vol(A(k+1)) with Vol(A(k)) for the block-cube set in R^(kd).

    The report checks the conjectured Vol(A(k+1)) >= Vol(A(k)); below the
    threshold dimension the outcome is only recorded, never claimed."""
    u = block_cubes(k, d)
    vol_k = box_union_volume(average_boxes(u, k))
    vol_next = box_union_volume(average_boxes(u, k + 1))
    n_k = threshold_dimension(k)
    report = exact_report(
        "thm-nonmonotone",
        vol_next,
        vol_k,
        ">=",
        instance={"k": k, "d": d, "n": k * d},
        details={
            "vol_A_k": vol_k,
            "vol_A_k_plus_1": vol_next,
            "threshold_n_k": n_k,
            "above_threshold": k * d >= n_k,
        },
    )
    return report


# ---------------------------------------------------------------------------
# squared distances are not subadditive
# ---------------------------------------------------------------------------


def _segment_dist(points: np.ndarray, ends: Sequence[np.ndarray]) -> np.ndarray:
    """Distance from each row of ``points`` to the nearest of the segments [0, e]."""
    best = np.full(len(points), np.inf)
    for e in ends:
        t = np.clip(points @ e / (e @ e), 0.0, 1.0)
        best = np.minimum(best, np.linalg.norm(points - t[:, None] * e[None, :], axis=1))
    return best


def _parallelogram_dist(points: np.ndarray, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Distance from each row of ``points`` to {t u + s w : t, s in [0, 1]}."""
    gram = np.array([[u @ u, u @ w], [u @ w, w @ w]])
    coef = np.linalg.solve(gram, np.stack([points @ u, points @ w]))
    inside = np.all((coef >= 0) & (coef <= 1), axis=0)
    foot = coef[0][:, None] * u[None, :] + coef[1][:, None] * w[None, :]
    result = np.where(inside, np.linalg.norm(points - foot, axis=1), np.inf)
    for a, b in ((0 * u, u), (0 * u, w), (u, u + w), (w, u + w)):
        e = b - a
        t = np.clip((points - a) @ e / (e @ e), 0.0, 1.0)
        result = np.minimum(result, np.linalg.norm(points - a - t[:, None] * e[None, :], axis=1))
    return result


def dyn_farkhi_sets(f):
    """Endpoints of the segments: A uses (1, 0, +-f), B uses (1, +-f, 0), all from the origin."""
    f = to_fraction(f)
    one, zero = Fraction(1), Fraction(0)
    a_ends = [(one, zero, -f), (one, zero, f)]
    b_ends = [(one, -f, zero), (one, f, zero)]
    return a_ends, b_ends


def counterexample_dyn_farkhi(f=10, check_q1: bool = True, tol: float = 2e-3) -> VerifierReport:
    """Test d^2(A+B) <= d^2(A) + d^2(B) on two pairs of segments in R^3.

    d(A)^2 = d(B)^2 = f^2 / (1 + f^2) in closed form (cross-checked by branch
    and bound over the planar hull), and the point (2, 0, 0) of conv(A+B)
    sits at squared distance 4 f^2 / (f^2 + 2) from A+B, which bounds
    d^2(A+B) from below."""
    f = to_fraction(f)
    if f <= 0:
        raise ValueError("f must be positive")
    a_ends, b_ends = dyn_farkhi_sets(f)
    d2_single = f * f / (1 + f * f)
    # (2, 0, 0) lies in conv(A) + conv(B); confirm it exactly
    sum_vertices = PointSet(
        [tuple(x + y for x, y in zip(p, q)) for p in [(0, 0, 0)] + a_ends for q in [(0, 0, 0)] + b_ends]
    )
    target = (Fraction(2), _ZERO, _ZERO)
    if not in_hull(target, sum_vertices).feasible:
        raise ArithmeticError("(2, 0, 0) should lie in the hull of A + B")
    # min over t, s in [0, 1] of (2 - t - s)^2 + f^2 (t^2 + s^2): the quadratic is
    # symmetric and convex, so t = s = 2 / (2 + f^2) at the minimum
    t = 2 / (2 + f * f)
    lower_sq = (2 - 2 * t) ** 2 + 2 * f * f * t * t
    if lower_sq != 4 * f * f / (f * f + 2):
        raise ArithmeticError("closed-form minimum disagrees with its substitution")

    # numerical cross-check of d(A) on the triangle conv(A), in (x, z) coordinates
    ff = float(f)
    tri = convex_hull(PointSet([(0, 0), (1, -f), (1, f)]))
    ends2 = [np.array([1.0, -ff]), np.array([1.0, ff])]
    lo_a, hi_a = lipschitz_sup(lambda p: _segment_dist(p, ends2), tri, tol=1e-6)
    closed = math.sqrt(float(d2_single))
    if not (lo_a - 1e-6 <= closed <= hi_a + 1e-6):
        raise ArithmeticError(f"closed form d(A) = {closed} outside numerical bracket [{lo_a}, {hi_a}]")

    details = {
        "d2_A": d2_single,
        "d2_B": d2_single,
        "d2_sum_lower": lower_sq,
        "witness": target,
        "numeric_d_A": (lo_a, hi_a),
    }
    if check_q1:
        details["q1"] = _q1_check(f, tol, closed)
    lhs, rhs = lower_sq, 2 * d2_single
    verdict = VIOLATED if lhs > rhs else INCONCLUSIVE
    return VerifierReport(
        "dyn-farkhi",
        verdict,
        lhs,
        rhs,
        "<=",
        True,
        instance={"f": f},
        details=details,
    )


def _q1_check(f: Fraction, tol: float, d_single: float) -> dict:
    """Bracket d(A+B) by branch and bound and compare with d(A) + d(B)."""
    ff = float(f)
    us = [np.array([1.0, -ff, 0.0]), np.array([1.0, ff, 0.0])]
    ws = [np.array([1.0, 0.0, -ff]), np.array([1.0, 0.0, ff])]

    def dist(points):
        return np.min([_parallelogram_dist(points, u, w) for u in us for w in ws], axis=0)

    verts = [(0, 0, 0)]
    one = Fraction(1)
    for u in ((one, -f, 0), (one, f, 0), (0, 0, 0)):
        for w in ((one, 0, -f), (one, 0, f), (0, 0, 0)):
            verts.append(tuple(Fraction(x) + Fraction(y) for x, y in zip(u, w)))
    hull = convex_hull(PointSet(verts))
    lo, hi = lipschitz_sup(dist, hull, tol=tol)
    report = bounds_report("dyn-farkhi-q1", (lo, hi), (2 * d_single, 2 * d_single), "<=", tol=1e-6)
    return {"d_sum_bracket": (lo, hi), "d_A_plus_d_B": 2 * d_single, "verdict": report.verdict}


# ---------------------------------------------------------------------------
# regular simplex: half-sum against the set itself
# ---------------------------------------------------------------------------


def simplex_halfsum_ratio(n: int) -> VerifierReport:
    """d((A+A)/2) / d(A) for the vertices of a regular n-simplex, against
    sqrt((n - 1) / (2n)).  The simplex is e_1, ..., e_(n+1) in R^(n+1)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    pts = PointSet([tuple(Fraction(int(i == j)) for j in range(n + 1)) for i in range(n + 1)])
    half = average_set(pts, 2)
    d_a = hausdorff_from_hull(pts)
    d_half = hausdorff_from_hull(half)
    target_sq = Fraction(n - 1, 2 * n)
    instance = {"n": n}
    if d_a.exact_squared is not None and d_half.exact_squared is not None:
        ratio_sq = d_half.exact_squared / d_a.exact_squared
        return exact_report(
            "simplex-ratio",
            ratio_sq,
            target_sq,
            "=",
            instance=instance,
            details={
                "d2_A": d_a.exact_squared,
                "d2_half": d_half.exact_squared,
                "ratio": math.sqrt(ratio_sq),
                "ratio_exact": sqrt_fraction(ratio_sq),
                "ratio_bracket": (math.sqrt(ratio_sq), math.sqrt(ratio_sq)),
            },
        )
    lo = d_half.lower / d_a.upper
    hi = d_half.upper / d_a.lower
    target = math.sqrt(float(target_sq))
    return bounds_report(
        "simplex-ratio",
        (lo, hi),
        (target, target),
        "=",
        tol=1e-6,
        instance=instance,
        details={"d_A": (d_a.lower, d_a.upper), "d_half": (d_half.lower, d_half.upper), "ratio_bracket": (lo, hi)},
    )

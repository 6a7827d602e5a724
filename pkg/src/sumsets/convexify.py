"""Shapley–Folkman decompositions and vector balancing.

``sf_decompose`` writes a point of conv(A_1) + ... + conv(A_k) as a sum in
which at most n summands use a genuine convex combination; the rest use a
single point of their set.  The weights come from one exact LP, are lifted
to vectors (a, e_i) in R^(n+k), and are thinned by conic Carathéodory steps
until the lifted vectors are independent.

``balance_signs`` picks signs for k vectors so that their signed sum is
short in a given gauge, by exact fractional rounding followed by an
exhaustive search over the last few free coordinates.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg
from .gauges import EuclideanBall, gauge_norm_exact
from .lp import ConvexCombination, LinearProgram, Optimal, conic_reduce, solve
from .rational import fast, slow, vec
from .reports import HOLDS, INCONCLUSIVE, VerifierReport
from .sets import PointSet, diam, sum_of_sets

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotInSumOfHulls(ValueError):
    """Raised when the target lies outside the sum of hulls.

    ``functional`` separates: its maximum over the sum of hulls,
    ``sum_max``, is strictly below its value at the target."""

    def __init__(self, functional, target_value, sum_max):
        super().__init__(
            f"target not in the sum of hulls: functional {list(map(str, functional))} "
            f"gives {target_value} at the target but at most {sum_max} on the sum"
        )
        self.functional = tuple(functional)
        self.target_value = target_value
        self.sum_max = sum_max


@dataclass(frozen=True)
class SFDecomposition:
    target: Tuple[Fraction, ...]
    fractional: Tuple[int, ...]
    payload: Tuple[Union[Tuple[Fraction, ...], ConvexCombination], ...]

    def summand(self, i: int) -> Tuple[Fraction, ...]:
        item = self.payload[i]
        return item.barycenter if isinstance(item, ConvexCombination) else item

    def reconstruct(self) -> Tuple[Fraction, ...]:
        dim = len(self.target)
        total = [_ZERO] * dim
        for i in range(len(self.payload)):
            total = [a + b for a, b in zip(total, self.summand(i))]
        return tuple(total)


def _separating_functional(sets: Sequence[PointSet], x) -> NotInSumOfHulls:
    n = len(x)
    k = len(sets)
    cons = []
    for i, s in enumerate(sets):
        for p in s.points:
            row = list(p) + [_ONE if j == i else _ZERO for j in range(k)]
            cons.append((tuple(row), "<=", _ZERO))
    cons.append((tuple(x) + (_ONE,) * k, "=", _ONE))
    lp = LinearProgram((_ZERO,) * (n + k), tuple(cons), bounds=((None, None),) * (n + k))
    res = solve(lp)
    if not isinstance(res, Optimal):
        raise ArithmeticError("Farkas alternative failed; LP inconsistency")
    y = res.x[:n]
    target_value = sum((a * b for a, b in zip(y, x)), _ZERO)
    sum_max = sum(max(sum((a * b for a, b in zip(y, p)), _ZERO) for p in s.points) for s in sets)
    return NotInSumOfHulls(y, target_value, sum_max)


def sf_decompose(sets: Sequence[PointSet], x: Sequence) -> SFDecomposition:
    """Shapley–Folkman decomposition of x over the given sets (exact)."""
    x = vec(x)
    n = len(x)
    if any(s.dim != n for s in sets):
        raise ValueError("all sets must live in the dimension of the target")
    k = len(sets)
    owners = []
    cols = []
    for i, s in enumerate(sets):
        for p in s.points:
            owners.append(i)
            cols.append(p)
    cons = []
    for j in range(n):
        cons.append((tuple(p[j] for p in cols), "=", x[j]))
    for i in range(k):
        cons.append((tuple(_ONE if o == i else _ZERO for o in owners), "=", _ONE))
    res = solve(LinearProgram((_ZERO,) * len(cols), tuple(cons)))
    if not isinstance(res, Optimal):
        raise _separating_functional(sets, x)
    support = [j for j, w in enumerate(res.x) if w > 0]
    lifted = [tuple(cols[j]) + tuple(_ONE if owners[j] == i else _ZERO for i in range(k)) for j in support]
    keep, weights = conic_reduce(lifted, [res.x[j] for j in support])
    per_set: Dict[int, List[Tuple[Tuple[Fraction, ...], Fraction]]] = {i: [] for i in range(k)}
    for idx, w in zip(keep, weights):
        j = support[idx]
        per_set[owners[j]].append((cols[j], w))
    payload = []
    fractional = []
    for i in range(k):
        items = per_set[i]
        if len(items) == 1:
            payload.append(items[0][0])
        else:
            fractional.append(i)
            payload.append(ConvexCombination(tuple(p for p, _ in items), tuple(w for _, w in items)))
    dec = SFDecomposition(x, tuple(fractional), tuple(payload))
    if dec.reconstruct() != x:
        raise ArithmeticError("decomposition does not reproduce the target")
    return dec


# ---------------------------------------------------------------------------
# vector balancing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignVector:
    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def __len__(self):
        return len(self.signs)


@dataclass(frozen=True)
class BalanceResult:
    signs: SignVector
    achieved: float
    achieved_exact: Optional[Fraction]
    squared: bool
    guarantee: float
    guarantee_euclid: Optional[float]
    rounding_steps: int

    @property
    def margin(self) -> float:
        return self.guarantee - self.achieved


def _gauge_value(gauge, y) -> Tuple[Fraction, bool]:
    """Exact comparison key: the squared norm for Euclidean balls."""
    if isinstance(gauge, EuclideanBall):
        return sum((c * c for c in y), _ZERO) / (gauge.radius * gauge.radius), True
    return gauge_norm_exact(gauge, y), False


def _fast_gauge(gauge, zero):
    """Comparison key on fast rationals, matching ``_gauge_value``."""
    if isinstance(gauge, EuclideanBall):
        r2 = fast(gauge.radius * gauge.radius)
        return (lambda y: sum((c * c for c in y), zero) / r2), True
    facets = [([fast(c) for c in nrm], fast(off)) for nrm, off in gauge.facets]
    if any(off == 0 for _, off in facets):
        return (lambda y: _gauge_value(gauge, [slow(c) for c in y])[0]), False

    scaled = np.array([[float(c) / float(off) for c in nrm] for nrm, off in facets])

    def norm(y):
        # float screen, then exact evaluation of the facets near the top
        approx = scaled @ np.array([float(c) for c in y])
        top = approx.max()
        best = zero
        for j in np.flatnonzero(approx >= top - 1e-9 * (1.0 + abs(top))):
            nrm, off = facets[j]
            v = sum((a * b for a, b in zip(nrm, y)), zero) / off
            if v > best:
                best = v
        return best

    return norm, False


def _as_float(value: Fraction, squared: bool) -> float:
    return math.sqrt(float(value)) if squared else float(value)


def _signed_sum(xs, eps):
    dim = len(xs[0])
    return tuple(sum((e * x[j] for e, x in zip(eps, xs)), _ZERO) for j in range(dim))


def balance_signs(vectors: Sequence[Sequence], gauge=None, exhaustive_cap: int = 20) -> BalanceResult:
    """Signs with a short signed sum; guarantees are asserted after the fact."""
    gauge = gauge or EuclideanBall()
    exact_xs = [vec(v) for v in vectors]
    if not exact_xs:
        raise ValueError("need at least one vector")
    # inner loops run on gmpy2 rationals when available
    xs = [tuple(fast(c) for c in v) for v in exact_xs]
    zero = fast(_ZERO)
    n = len(xs[0])
    k = len(xs)
    t = [zero] * k
    steps = 0
    while True:
        frac = [i for i in range(k) if abs(t[i]) < 1]
        if len(frac) <= n:
            break
        cols = frac[: n + 1]
        rows = [[xs[i][r] for i in cols] for r in range(n)]
        mu = [fast(m) for m in linalg.kernel_vector(rows, len(cols))]

        def reach(direction):
            best = None
            for m, i in zip(direction, cols):
                if m > 0:
                    s = (1 - t[i]) / m
                elif m < 0:
                    s = (-1 - t[i]) / m
                else:
                    continue
                if best is None or s < best:
                    best = s
            return best

        up = reach(mu)
        down = reach([-m for m in mu])
        if down is not None and (up is None or down < up):
            alpha, direction = down, [-m for m in mu]
        else:
            alpha, direction = up, mu
        for m, i in zip(direction, cols):
            t[i] += alpha * m
            if abs(t[i]) > 1:
                raise ArithmeticError("rounding step left the cube")
        steps += 1
    fixed = [1 if t[i] >= 1 else -1 if t[i] <= -1 else 0 for i in range(k)]
    free = [i for i in range(k) if fixed[i] == 0]
    best_key = None
    best_eps = None
    fast_norm, squared = _fast_gauge(gauge, zero)
    if len(free) <= exhaustive_cap:
        base = [sum((e * x[j] for e, x in zip(fixed, xs) if e), zero) for j in range(n)]
        # lexicographic order over patterns, + before -
        for pattern in itertools.product((1, -1), repeat=len(free)):
            y = list(base)
            for i, s in zip(free, pattern):
                xi = xs[i]
                if s > 0:
                    y = [a + b for a, b in zip(y, xi)]
                else:
                    y = [a - b for a, b in zip(y, xi)]
            key = fast_norm(y)
            if best_key is None or key < best_key:
                best_key = key
                best_eps = list(fixed)
                for i, s in zip(free, pattern):
                    best_eps[i] = s
    else:
        eps = [s if s else (1 if t[i] >= 0 else -1) for i, s in enumerate(fixed)]
        best_key, squared = _gauge_value(gauge, _signed_sum(exact_xs, eps))
        improved = True
        while improved:
            improved = False
            for i in free:
                eps[i] = -eps[i]
                key, _ = _gauge_value(gauge, _signed_sum(exact_xs, eps))
                if key < best_key:
                    best_key, improved = key, True
                else:
                    eps[i] = -eps[i]
        best_eps = eps
    if not isinstance(best_key, (Fraction, float)):
        best_key = slow(best_key)
    achieved = _as_float(best_key, squared)
    # guarantee: n times the largest gauge value of +-x_i (sign-symmetric form)
    norms = []
    for x in xs:
        for y in (x, [-c for c in x]):
            norms.append(_as_float(fast_norm(y), squared))
    guarantee = n * max(norms)
    euclid = None
    if isinstance(gauge, EuclideanBall):
        euclid = math.sqrt(n) * max(norms)
        if achieved > euclid * (1 + 1e-12) + 1e-12:
            raise AssertionError(f"Euclidean guarantee failed: {achieved} > {euclid}; vectors={exact_xs}")
    if achieved > guarantee * (1 + 1e-12) + 1e-12:
        raise AssertionError(f"gauge guarantee failed: {achieved} > {guarantee}; vectors={exact_xs}")
    return BalanceResult(
        SignVector(tuple(best_eps)), achieved, best_key, squared, guarantee, euclid, steps
    )


def lp_guarantee_factor(n: int, p: float) -> float:
    """n^(1/2 + |1/p - 1/2|) for p in [1, inf]."""
    inv = 0.0 if math.isinf(p) else 1.0 / p
    return n ** (0.5 + abs(inv - 0.5))


# ---------------------------------------------------------------------------
# Grinberg-type bound for sums
# ---------------------------------------------------------------------------


def grinberg_bound_check(sets: Sequence[PointSet], x: Optional[Sequence] = None) -> VerifierReport:
    """Check that a lower bound for d(A_1 + ... + A_k) is at most (D/2) sqrt(n)."""
    from .measures.deviation import pointwise_d
    from .measures.hausdorff import hausdorff_from_hull

    total = sum_of_sets(list(sets))
    n = total.dim
    big_d = max(diam(s) for s in sets)
    bound = big_d / 2 * math.sqrt(n)
    res = hausdorff_from_hull(total)
    lower = res.lower
    if x is not None:
        lower = max(lower, pointwise_d(total, x))
    verdict = HOLDS if lower <= bound + 1e-6 else INCONCLUSIVE
    return VerifierReport(
        "grinberg",
        verdict,
        (lower, res.upper),
        (bound, bound),
        "<=",
        False,
        instance={"k": len(sets), "n": n, "D": big_d},
        details={"d_exact_squared": res.exact_squared},
    )

"""Exact rational linear programming and Carathéodory support reduction.

The solver is a dense two-phase tableau simplex over Fractions with Bland's
smallest-index rule, so it always terminates and every reported optimum is
exact.  It is meant for the small programs that arise here (a few hundred
variables at most).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .rational import vec
from .sets import PointSet

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` objective . x subject to ``row . x  rel  rhs`` for each constraint.

    ``bounds`` gives one (lo, hi) pair per variable with ``None`` meaning
    unbounded on that side; when omitted every variable is nonnegative.
    """

    objective: Tuple[Fraction, ...]
    constraints: Tuple[Tuple[Tuple[Fraction, ...], str, Fraction], ...]
    sense: str = "min"
    bounds: Optional[Tuple[Tuple[Optional[Fraction], Optional[Fraction]], ...]] = None

    def __post_init__(self):
        n = len(self.objective)
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        for row, rel, _ in self.constraints:
            if len(row) != n:
                raise ValueError("constraint row length differs from the objective length")
            if rel not in ("<=", ">=", "="):
                raise ValueError(f"unknown relation {rel!r}")
        if self.bounds is not None and len(self.bounds) != n:
            raise ValueError("one bound pair per variable is required")

    @classmethod
    def build(cls, objective, constraints, sense="min", bounds=None) -> "LinearProgram":
        obj = vec(objective)
        cons = tuple((vec(r), rel, Fraction(b)) for r, rel, b in constraints)
        bnds = None
        if bounds is not None:
            bnds = tuple(
                (None if lo is None else Fraction(lo), None if hi is None else Fraction(hi)) for lo, hi in bounds
            )
        return cls(obj, cons, sense, bnds)


@dataclass(frozen=True)
class Optimal:
    x: Tuple[Fraction, ...]
    value: Fraction
    basis: Tuple[int, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Unbounded:
    pass


class _Tableau:
    """Rows ``A x = b`` with ``b >= 0``; the last entry of each row is the rhs."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows
        self.basis = basis

    def pivot(self, r: int, c: int, cost: List[Fraction]) -> None:
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            row = [x * inv for x in row]
            self.rows[r] = row
        nz = [(j, v) for j, v in enumerate(row) if v != 0]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f != 0:
                    for j, v in nz:
                        other[j] -= f * v
        f = cost[c]
        if f != 0:
            for j, v in nz:
                cost[j] -= f * v
        self.basis[r] = c

    def run(self, cost: List[Fraction], allowed: int) -> bool:
        """Minimise; ``cost`` is the reduced-cost row (last entry = -objective).
        Returns False when unbounded."""
        while True:
            enter = next((j for j in range(allowed) if cost[j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter, cost)


def solve(lp: LinearProgram):
    """Exact optimum of ``lp`` as Optimal, Infeasible or Unbounded."""
    n = len(lp.objective)
    # --- variable substitution to x' >= 0 --------------------------------
    # each original variable maps to (offset, [(column, coefficient), ...])
    bounds = lp.bounds or tuple((_ZERO, None) for _ in range(n))
    columns = 0
    subst = []
    extra_rows = []
    for lo, hi in bounds:
        if lo is not None:
            subst.append((lo, [(columns, _ONE)]))
            if hi is not None:
                extra_rows.append((columns, hi - lo))
            columns += 1
        elif hi is not None:
            subst.append((hi, [(columns, -_ONE)]))
            columns += 1
        else:
            subst.append((_ZERO, [(columns, _ONE), (columns + 1, -_ONE)]))
            columns += 2

    def transform(row):
        out = [_ZERO] * columns
        shift = _ZERO
        for coef, (off, parts) in zip(row, subst):
            if coef != 0:
                shift += coef * off
                for col, s in parts:
                    out[col] += coef * s
        return out, shift

    cons = []
    for row, rel, rhs in lp.constraints:
        t, shift = transform(row)
        cons.append((t, rel, rhs - shift))
    for col, width in extra_rows:
        t = [_ZERO] * columns
        t[col] = _ONE
        cons.append((t, "<=", width))
    obj, obj_shift = transform(lp.objective)
    if lp.sense == "max":
        obj = [-c for c in obj]

    # --- slacks and artificials ------------------------------------------
    n_slack = sum(1 for _, rel, _ in cons if rel != "=")
    total = columns + n_slack
    rows: List[List[Fraction]] = []
    basis: List[int] = []
    art_rows = []
    s_idx = columns
    for row, rel, rhs in cons:
        full = row + [_ZERO] * n_slack
        slack_col = None
        if rel != "=":
            full[s_idx] = _ONE if rel == "<=" else -_ONE
            slack_col = s_idx
            s_idx += 1
        if rhs < 0:
            full = [-x for x in full]
            rhs = -rhs
        rows.append(full + [rhs])
        if slack_col is not None and full[slack_col] == 1:
            basis.append(slack_col)
        else:
            basis.append(-1)
            art_rows.append(len(rows) - 1)
    n_art = len(art_rows)
    width = total + n_art
    for r in rows:
        rhs = r.pop()
        r.extend([_ZERO] * n_art)
        r.append(rhs)
    for k, i in enumerate(art_rows):
        rows[i][total + k] = _ONE
        basis[i] = total + k
    tab = _Tableau(rows, basis)

    # --- phase 1 -----------------------------------------------------------
    if n_art:
        cost = [_ZERO] * (width + 1)
        for k in range(n_art):
            cost[total + k] = _ONE
        for i in art_rows:
            cost = [c - v for c, v in zip(cost, rows[i])]
        tab.run(cost, width)
        if -cost[-1] != 0:
            return Infeasible()
        # drive remaining artificials out of the basis
        keep = []
        for i in range(len(tab.rows)):
            if tab.basis[i] >= total:
                col = next((j for j in range(total) if tab.rows[i][j] != 0), None)
                if col is None:
                    continue  # redundant equality
                tab.pivot(i, col, cost)
            keep.append(i)
        tab.rows = [tab.rows[i][:total] + [tab.rows[i][-1]] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
    # --- phase 2 -----------------------------------------------------------
    cost = list(obj) + [_ZERO] * n_slack + [_ZERO]
    for i, b in enumerate(tab.basis):
        cb = cost[b]
        if cb != 0:
            cost = [c - cb * v for c, v in zip(cost, tab.rows[i])]
    if not tab.run(cost, total):
        return Unbounded()
    xs = [_ZERO] * total
    for i, b in enumerate(tab.basis):
        xs[b] = tab.rows[i][-1]
    x = []
    for off, parts in subst:
        x.append(off + sum((s * xs[col] for col, s in parts), _ZERO))
    value = sum((c * v for c, v in zip(lp.objective, x)), _ZERO)
    return Optimal(tuple(x), value, tuple(tab.basis))


def dump_tableau(lp: LinearProgram) -> str:
    """Human-readable listing of the program (for debugging)."""
    lines = [f"{lp.sense} " + " ".join(str(c) for c in lp.objective)]
    for row, rel, rhs in lp.constraints:
        lines.append(" ".join(str(c) for c in row) + f" {rel} {rhs}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# convex combinations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexCombination:
    points: Tuple[Tuple[Fraction, ...], ...]
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.points) != len(self.weights) or not self.points:
            raise ValueError("need one positive weight per point")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if sum(self.weights, _ZERO) != 1:
            raise ValueError("weights must sum to exactly 1")

    @property
    def barycenter(self) -> Tuple[Fraction, ...]:
        dim = len(self.points[0])
        return tuple(sum((w * p[j] for w, p in zip(self.weights, self.points)), _ZERO) for j in range(dim))

    @property
    def second_moment(self) -> Fraction:
        """Sum of w_i |a_i|^2."""
        return sum((w * sum((c * c for c in p), _ZERO) for w, p in zip(self.weights, self.points)), _ZERO)

    @property
    def variance(self) -> Fraction:
        b = self.barycenter
        return self.second_moment - sum((c * c for c in b), _ZERO)


@dataclass(frozen=True)
class HullMembership:
    feasible: bool
    witness: Optional[ConvexCombination] = None


def in_hull(x: Sequence, a: PointSet) -> HullMembership:
    """Decide x in conv(A) exactly, returning a convex-combination witness."""
    x = vec(x)
    if len(x) != a.dim:
        raise ValueError(f"dimension mismatch: point in R^{len(x)}, set in R^{a.dim}")
    pts = a.points
    for j in range(a.dim):
        lo = min(p[j] for p in pts)
        hi = max(p[j] for p in pts)
        if x[j] < lo or x[j] > hi:
            return HullMembership(False)
    if x in set(pts):
        return HullMembership(True, ConvexCombination((x,), (_ONE,)))
    m = len(pts)
    cons = [(tuple(p[j] for p in pts), "=", x[j]) for j in range(a.dim)]
    cons.append(((_ONE,) * m, "=", _ONE))
    res = solve(LinearProgram((_ZERO,) * m, tuple(cons)))
    if not isinstance(res, Optimal):
        return HullMembership(False)
    keep = [(p, w) for p, w in zip(pts, res.x) if w > 0]
    return HullMembership(True, ConvexCombination(tuple(p for p, _ in keep), tuple(w for _, w in keep)))


def _reduce(vectors: List[Tuple[Fraction, ...]], weights: List[Fraction], score=None):
    """Remove linear dependences among ``vectors`` while keeping Σ w_i v_i.

    ``score`` (optional, one value per vector) fixes the kernel direction so
    that Σ μ_i score_i >= 0; the weighted score then never increases.
    """
    vectors = list(vectors)
    weights = list(weights)
    idx = list(range(len(vectors)))
    score = list(score) if score is not None else None
    while len(vectors) > 1:
        rows = [[v[r] for v in vectors] for r in range(len(vectors[0]))]
        mu = linalg.kernel_vector(rows)
        if mu is None:
            break
        if score is not None:
            if sum((m * s for m, s in zip(mu, score)), _ZERO) < 0:
                mu = [-m for m in mu]
        if all(m <= 0 for m in mu):
            mu = [-m for m in mu]
        theta = None
        for i, m in enumerate(mu):
            if m > 0:
                t = weights[i] / m
                if theta is None or t < theta:
                    theta = t
        weights = [w - theta * m for w, m in zip(weights, mu)]
        keep = [i for i, w in enumerate(weights) if w > 0]
        if len(keep) == len(weights):
            raise ArithmeticError("kernel step failed to zero a weight")
        vectors = [vectors[i] for i in keep]
        weights = [weights[i] for i in keep]
        idx = [idx[i] for i in keep]
        if score is not None:
            score = [score[i] for i in keep]
    return idx, weights


def caratheodory_reduce(c: ConvexCombination) -> ConvexCombination:
    """Same barycenter on an affinely independent support (at most n+1 points)."""
    lifted = [tuple(p) + (_ONE,) for p in c.points]
    idx, ws = _reduce(lifted, list(c.weights))
    return ConvexCombination(tuple(c.points[i] for i in idx), tuple(ws))


def caratheodory_reduce_quadratic(c: ConvexCombination) -> ConvexCombination:
    """Carathéodory reduction that never increases Σ w_i |a_i|^2."""
    lifted = [tuple(p) + (_ONE,) for p in c.points]
    score = [sum((x * x for x in p), _ZERO) for p in c.points]
    idx, ws = _reduce(lifted, list(c.weights), score)
    return ConvexCombination(tuple(c.points[i] for i in idx), tuple(ws))


def conic_reduce(vectors, weights):
    """Positive combination Σ w_i v_i rewritten on linearly independent vectors.

    Returns the kept indices and their new weights."""
    return _reduce([tuple(v) for v in vectors], list(weights))

"""Gaussian elimination over the rationals.

Matrices are lists of rows of Fractions.  Everything here is exact, so ranks,
kernels and solutions carry no rounding error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .rational import fast, slow

Matrix = List[List[Fraction]]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _rref_fast(rows: Sequence[Sequence]) -> Tuple[list, List[int]]:
    """Row reduction on gmpy2 rationals; entries come back in that type."""
    m = [[fast(x) for x in r] for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        row_r = m[r]
        for i in range(n_rows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot column of each nonzero row."""
    m, pivots = _rref_fast(rows)
    return [[slow(x) for x in r] for r in m], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: Optional[int] = None) -> List[List[Fraction]]:
    """A basis of {x : M x = 0}; one vector per free column, in column order."""
    if not rows:
        if n_cols is None:
            raise ValueError("n_cols required for an empty matrix")
        return [[_ONE if i == j else _ZERO for i in range(n_cols)] for j in range(n_cols)]
    n_cols = len(rows[0])
    m, pivots = _rref_fast(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = [_ZERO] * n_cols
        v[free] = _ONE
        for row_idx, pc in enumerate(pivots):
            v[pc] = -slow(m[row_idx][free])
        basis.append(v)
    return basis


def kernel_vector(rows: Sequence[Sequence[Fraction]], n_cols: Optional[int] = None) -> Optional[List[Fraction]]:
    """The first nullspace basis vector, or None when the kernel is trivial."""
    basis = nullspace(rows, n_cols)
    return basis[0] if basis else None


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of M x = b (free variables set to 0), or None if inconsistent."""
    n_cols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = _rref_fast(aug)
    if n_cols in pivots:
        return None
    x = [_ZERO] * n_cols
    for row_idx, pc in enumerate(pivots):
        x[pc] = slow(m[row_idx][n_cols])
    return x


def solve_unique(rows, rhs) -> Optional[List[Fraction]]:
    """Solution of a system with full column rank, else None."""
    n_cols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = _rref_fast(aug)
    if n_cols in pivots or len(pivots) != n_cols:
        return None
    return [slow(m[i][n_cols]) for i in range(n_cols)]


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    result = _ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return _ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant for integer matrices."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def transpose(rows: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*rows)]


def matvec(rows, x) -> List[Fraction]:
    return [sum((a * b for a, b in zip(r, x)), _ZERO) for r in rows]

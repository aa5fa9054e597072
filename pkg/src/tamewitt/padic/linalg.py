"""Gaussian elimination over p-adic fields with minimal-valuation pivots."""

from __future__ import annotations

from ..errors import SingularSystem
from .element import PadicElement


def _pivot(rows, col, start):
    best, best_val = None, None
    for r in range(start, len(rows)):
        x = rows[r][col]
        if not x.is_zero() and (best_val is None or x.val < best_val):
            best, best_val = r, x.val
    return best


def det(matrix: list[list[PadicElement]]) -> PadicElement:
    """Determinant; zero-at-precision when no pivot is available."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    field = rows[0][0].field
    sign = 1
    acc = field.one(max(x.prec for r in rows for x in r) + 1)
    for col in range(n):
        piv = _pivot(rows, col, col)
        if piv is None:
            return field.zero(min(x.prec for x in rows[col][col:] + [r[col] for r in rows[col:]]))
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pv = rows[col][col]
        acc = acc * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor.is_zero():
                continue
            rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return acc if sign == 1 else -acc


def solve(matrix: list[list[PadicElement]], rhs: list[PadicElement]) -> list[PadicElement]:
    """Solve ``matrix * x = rhs`` (m x n, m >= n, full column rank).

    Raises SingularSystem when the column rank is deficient at precision or the
    overdetermined system is inconsistent.
    """
    m = len(matrix)
    n = len(matrix[0])
    rows = [list(matrix[i]) + [rhs[i]] for i in range(m)]
    for col in range(n):
        piv = _pivot(rows, col, col)
        if piv is None:
            raise SingularSystem("matrix is singular at the working precision")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(m):
            if r != col and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    for r in range(n, m):
        if not rows[r][n].is_zero():
            raise SingularSystem("inconsistent overdetermined system")
    return [rows[i][n] for i in range(n)]


def inverse(matrix: list[list[PadicElement]]) -> list[list[PadicElement]]:
    n = len(matrix)
    field = matrix[0][0].field
    prec = max(x.prec for r in matrix for x in r) + 1
    cols = []
    for j in range(n):
        unit = [field.one(prec) if i == j else field.zero(prec) for i in range(n)]
        cols.append(solve(matrix, unit))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_vec(matrix, vec):
    out = []
    for row in matrix:
        acc = None
        for a, b in zip(row, vec):
            term = a * b
            acc = term if acc is None else acc + term
        out.append(acc)
    return out

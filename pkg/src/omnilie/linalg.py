"""Exact Gaussian elimination over the rational-function field.

Matrices are lists of rows of Scalars.  Pivots are chosen by least
column index and first nonzero row, so solutions and nullspace bases
are deterministic; free variables are set to zero.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar


def _clone(matrix):
    return [list(row) for row in matrix]


def _eliminate(rows):
    """Row-reduce in place; returns pivot (row, col) pairs."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        if not pivot.is_one():
            rows[r] = [v / pivot for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [
                    a - factor * b for a, b in zip(rows[i], rows[r])
                ]
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(matrix):
    rows = _clone(matrix)
    return len(_eliminate(rows))


def solve_least(matrix, rhs):
    """One solution of matrix @ x = rhs with zeros in the free variables.

    Returns None when the system is inconsistent.
    """
    if not matrix:
        return [] if all(v.is_zero() for v in rhs) else None
    n = matrix[0][0].nvars
    ncols = len(matrix[0])
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivots = _eliminate(rows)
    for r, c in pivots:
        if c == ncols:
            return None
    solution = [Scalar.zero(n)] * ncols
    for r, c in pivots:
        solution[c] = rows[r][ncols]
    return solution


def nullspace(matrix):
    """Deterministic basis of the kernel (one vector per free column)."""
    if not matrix:
        return []
    n = matrix[0][0].nvars
    ncols = len(matrix[0])
    rows = _clone(matrix)
    pivots = _eliminate(rows)
    pivot_cols = {c: r for r, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = [Scalar.zero(n)] * ncols
        vec[f] = Scalar.one(n)
        for c, r in pivot_cols.items():
            vec[c] = -rows[r][f]
        basis.append(vec)
    return basis


def determinant(matrix):
    size = len(matrix)
    if size == 0:
        raise ValueError("determinant of an empty matrix")
    n = matrix[0][0].nvars
    rows = _clone(matrix)
    det = Scalar.one(n)
    for c in range(size):
        pivot_row = None
        for i in range(c, size):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return Scalar.zero(n)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        pivot = rows[c][c]
        det = det * pivot
        inv = Scalar.one(n) / pivot
        rows[c] = [v * inv for v in rows[c]]
        for i in range(c + 1, size):
            if not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[c])]
    return det


def inverse(matrix):
    """Inverse over the fraction field, or None when singular."""
    size = len(matrix)
    n = matrix[0][0].nvars
    aug = [
        list(row)
        + [
            Scalar.one(n) if i == j else Scalar.zero(n)
            for j in range(size)
        ]
        for i, row in enumerate(matrix)
    ]
    pivots = _eliminate(aug)
    if len(pivots) < size or any(c >= size for _, c in pivots):
        return None
    return [row[size:] for row in aug]


def matmul(a, b):
    if not a or not b:
        return []
    n = a[0][0].nvars
    out = []
    for row in a:
        new_row = []
        for j in range(len(b[0])):
            s = Scalar.zero(n)
            for k, v in enumerate(row):
                if not v.is_zero() and not b[k][j].is_zero():
                    s = s + v * b[k][j]
            new_row.append(s)
        out.append(new_row)
    return out


def fraction_rank(rows):
    """Rank of a small matrix of Fractions (used by injectivity certificates)."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank_count = 0
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        rows[r] = [Fraction(v, 1) / pivot for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        rank_count += 1
        r += 1
        if r == len(rows):
            break
    return rank_count

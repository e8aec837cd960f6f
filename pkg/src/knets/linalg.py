"""Exact linear algebra over any field whose elements support + - * /.

Rank and determinant use Bareiss fraction-free elimination: every entry kept
during elimination is a minor of the input, which keeps coefficients small in
the extension fields.  Null spaces use ordinary reduced row echelon form.
"""

from __future__ import annotations

from typing import Sequence


def _copy(matrix: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in matrix]


def _is_zero(x) -> bool:
    return not x


def bareiss_echelon(matrix: Sequence[Sequence]):
    """Fraction-free forward elimination.

    Returns ``(rows, pivots, swaps)`` where ``rows`` is the eliminated matrix,
    ``pivots`` the pivot column of each leading row and ``swaps`` the number
    of row exchanges performed.
    """
    M = _copy(matrix)
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    rank = 0
    prev = 1
    swaps = 0
    pivots = []
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if not _is_zero(M[r][col])), None)
        if piv is None:
            continue
        if piv != rank:
            M[piv], M[rank] = M[rank], M[piv]
            swaps += 1
        p = M[rank][col]
        for i in range(rank + 1, nrows):
            a = M[i][col]
            for j in range(col + 1, ncols):
                M[i][j] = (M[i][j] * p - a * M[rank][j]) / prev
            M[i][col] = 0 * a
        prev = p
        pivots.append(col)
        rank += 1
    return M, pivots, swaps


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not matrix[0]:
        return 0
    _, pivots, _ = bareiss_echelon(matrix)
    return len(pivots)


def det(matrix: Sequence[Sequence]):
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M, pivots, swaps = bareiss_echelon(matrix)
    if len(pivots) < n:
        return 0 * matrix[0][0]
    d = M[n - 1][n - 1]
    return -d if swaps % 2 else d


def det3(a: Sequence, b: Sequence, c: Sequence):
    """Determinant of the 3x3 matrix with rows a, b, c (cofactor expansion)."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def rref(matrix: Sequence[Sequence]):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    M = _copy(matrix)
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not _is_zero(M[i][col])), None)
        if piv is None:
            continue
        M[piv], M[r] = M[r], M[piv]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and not _is_zero(M[i][col]):
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    return M, pivots


def nullspace(matrix: Sequence[Sequence], zero, one) -> list[list]:
    """A basis of the right null space ``{v : matrix v = 0}``."""
    ncols = len(matrix[0])
    R, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]

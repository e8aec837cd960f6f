"""Finite projective planes from complete sets of orthogonal Latin squares.

For n - 1 mutually orthogonal squares of order n the affine points are the
cells (i, j).  The parallel classes are the rows, the columns and, for each
square m, the symbol fibers {(i, j) : M_m[i][j] = s}.  Each class gets an
ideal point, and the ideal points form the line at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Sequence

from .errors import NotComplete, NotOrthogonal, OrderMismatch
from .latin import LatinSquare, is_orthogonal_pair

SUPPORTED_ORDERS = (3, 4)

ORDER3_PAIR = (
    LatinSquare(((1, 2, 3), (2, 3, 1), (3, 1, 2))),
    LatinSquare(((1, 2, 3), (3, 1, 2), (2, 3, 1))),
)

ORDER4_TRIPLE = (
    LatinSquare(((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1))),
    LatinSquare(((1, 2, 3, 4), (3, 4, 1, 2), (4, 3, 2, 1), (2, 1, 4, 3))),
    LatinSquare(((1, 2, 3, 4), (4, 3, 2, 1), (2, 1, 4, 3), (3, 4, 1, 2))),
)


@dataclass(frozen=True)
class IncidenceStructure:
    points: tuple[Hashable, ...]
    lines: tuple[frozenset, ...]

    def axiom_failures(self) -> list[str]:
        """Violated projective-plane axioms, checked exhaustively."""
        out = []
        n_pts, n_lines = len(self.points), len(self.lines)
        sizes = {len(l) for l in self.lines}
        if len(sizes) != 1:
            out.append(f"lines have different sizes {sorted(sizes)}")
            return out
        n = sizes.pop() - 1
        if n < 2:
            out.append("lines need at least 3 points")
        if n_pts != n * n + n + 1 or n_lines != n * n + n + 1:
            out.append(f"expected {n * n + n + 1} points and lines, got {n_pts} and {n_lines}")
        for p, q in combinations(self.points, 2):
            common = sum(1 for l in self.lines if p in l and q in l)
            if common != 1:
                out.append(f"points {p} and {q} lie on {common} common lines")
        for l, m in combinations(self.lines, 2):
            if len(l & m) != 1:
                out.append(f"two lines meet in {len(l & m)} points")
        return out

    def is_projective_plane(self) -> bool:
        return not self.axiom_failures()

    @property
    def order(self) -> int:
        return len(self.lines[0]) - 1 if self.lines else 0


def build_projective_plane(squares: Sequence[LatinSquare]) -> IncidenceStructure:
    if not squares:
        raise NotComplete("need at least one square")
    n = squares[0].order
    if any(M.order != n for M in squares):
        raise OrderMismatch("squares have different orders")
    if n not in SUPPORTED_ORDERS:
        raise OrderMismatch(f"planes are built for orders {SUPPORTED_ORDERS}, got {n}")
    if len(squares) != n - 1:
        raise NotComplete(f"order {n} needs {n - 1} orthogonal squares, got {len(squares)}")
    for a, b in combinations(range(len(squares)), 2):
        if not is_orthogonal_pair(squares[a], squares[b]):
            raise NotOrthogonal(f"squares {a + 1} and {b + 1} are not orthogonal")

    affine = [(i, j) for i in range(n) for j in range(n)]
    ideal = ["R", "C"] + [f"M{m + 1}" for m in range(len(squares))]
    lines = []
    for i in range(n):
        lines.append(frozenset([(i, j) for j in range(n)] + ["R"]))
    for j in range(n):
        lines.append(frozenset([(i, j) for i in range(n)] + ["C"]))
    for m, M in enumerate(squares):
        for s in range(1, n + 1):
            fiber = [(i, j) for i, j in affine if M[i, j] == s]
            lines.append(frozenset(fiber + [f"M{m + 1}"]))
    lines.append(frozenset(ideal))
    return IncidenceStructure(tuple(affine + ideal), tuple(lines))

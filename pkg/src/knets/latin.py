"""Latin squares: validity, orthogonality, isotopy and group recognition.

Symbols are 1-based so the matrices attached to a net can be written down
exactly as they are usually printed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .errors import NotLatin, OrderMismatch, OrderTooLarge

MAX_CANONICAL_ORDER = 5

Cells = tuple[tuple[int, ...], ...]


def latin_reason(cells) -> str | None:
    """Why ``cells`` is not a Latin square, or None if it is one."""
    try:
        rows = [list(r) for r in cells]
    except TypeError:
        return "not a matrix"
    d = len(rows)
    if d == 0:
        return "empty"
    if any(len(r) != d for r in rows):
        return "not square"
    symbols = set(range(1, d + 1))
    for i, r in enumerate(rows):
        if any(not isinstance(x, int) or isinstance(x, bool) for x in r):
            return f"row {i + 1} has a non-integer entry"
        if set(r) != symbols:
            return f"row {i + 1} is not a permutation of 1..{d}"
    for j in range(d):
        if {rows[i][j] for i in range(d)} != symbols:
            return f"column {j + 1} is not a permutation of 1..{d}"
    return None


def is_latin(cells) -> bool:
    return latin_reason(cells) is None


@dataclass(frozen=True)
class LatinSquare:
    cells: Cells

    def __post_init__(self):
        cells = tuple(tuple(int(x) for x in row) for row in self.cells)
        reason = latin_reason(cells)
        if reason:
            raise NotLatin(reason)
        object.__setattr__(self, "cells", cells)

    @property
    def order(self) -> int:
        return len(self.cells)

    def __getitem__(self, ij):
        i, j = ij
        return self.cells[i][j]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.cells]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.cells for x in row)

    def to_json(self) -> dict:
        return {"order": self.order, "cells": self.rows()}

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.cells)


def square(rows: Iterable[Iterable[int]]) -> LatinSquare:
    return LatinSquare(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class Isotopy:
    """Row, column and symbol permutations, each a tuple with ``p[k-1]`` the
    image of ``k``."""

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    sym_perm: tuple[int, ...]

    def __post_init__(self):
        d = len(self.row_perm)
        for p in (self.row_perm, self.col_perm, self.sym_perm):
            if len(p) != d or sorted(p) != list(range(1, d + 1)):
                raise ValueError(f"{p} is not a permutation of 1..{d}")

    @property
    def order(self) -> int:
        return len(self.row_perm)

    @classmethod
    def identity(cls, d: int) -> "Isotopy":
        p = tuple(range(1, d + 1))
        return cls(p, p, p)

    def inverse(self) -> "Isotopy":
        return Isotopy(_invert(self.row_perm), _invert(self.col_perm), _invert(self.sym_perm))

    def compose(self, other: "Isotopy") -> "Isotopy":
        """``self`` after ``other``."""
        return Isotopy(
            _compose(self.row_perm, other.row_perm),
            _compose(self.col_perm, other.col_perm),
            _compose(self.sym_perm, other.sym_perm),
        )


def _invert(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p, 1):
        inv[x - 1] = i
    return tuple(inv)


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[q[i] - 1] for i in range(len(q)))


def apply_isotopy(L: LatinSquare, iso: Isotopy) -> LatinSquare:
    """cells'[i][j] = sym(cells[row^-1(i)][col^-1(j)])."""
    d = L.order
    if iso.order != d:
        raise OrderMismatch(f"isotopy of order {iso.order} applied to square of order {d}")
    rinv, cinv = _invert(iso.row_perm), _invert(iso.col_perm)
    sym = iso.sym_perm
    return LatinSquare(
        tuple(
            tuple(sym[L.cells[rinv[i] - 1][cinv[j] - 1] - 1] for j in range(d))
            for i in range(d)
        )
    )


def is_orthogonal_pair(L: LatinSquare, M: LatinSquare) -> bool:
    if L.order != M.order:
        raise OrderMismatch(f"orders {L.order} and {M.order} differ")
    pairs = set(zip(L.flat(), M.flat()))
    return len(pairs) == L.order ** 2


def is_orthogonal_set(squares: Sequence[LatinSquare]) -> bool:
    if len({s.order for s in squares}) > 1:
        raise OrderMismatch("squares of different orders")
    return all(is_orthogonal_pair(a, b) for a, b in combinations(squares, 2))


# -- canonical form ---------------------------------------------------------

def _normalized_candidate(cells: Cells, r: int, cols: Sequence[int]) -> tuple[int, ...]:
    """Row ``r`` first, columns in order ``cols``, symbols relabelled so the
    first row reads 1..d, remaining rows sorted."""
    d = len(cells)
    relabel = {cells[r][c]: k + 1 for k, c in enumerate(cols)}
    first = tuple(range(1, d + 1))
    rest = sorted(
        tuple(relabel[cells[i][c]] for c in cols) for i in range(d) if i != r
    )
    out = first
    for row in rest:
        out += row
    return out


def canonical_form(L: LatinSquare) -> LatinSquare:
    """The lexicographically least flattened square in the isotopy class of L.

    Any isotopy can bring some row to the top with symbols 1..d in order, and
    that first row is the least possible.  Once the top row and the column
    order are fixed the symbol relabelling is forced, and the remaining rows
    (which start with distinct symbols) are least when sorted.  So minimising
    over (top row, column order) -- d * d! candidates -- gives exactly the
    minimum over all (d!)^3 isotopies.
    """
    d = L.order
    if d > MAX_CANONICAL_ORDER:
        raise OrderTooLarge(f"canonical form is only available for order <= {MAX_CANONICAL_ORDER}")
    best = None
    for r in range(d):
        for cols in permutations(range(d)):
            cand = _normalized_candidate(L.cells, r, cols)
            if best is None or cand < best:
                best = cand
    return LatinSquare(tuple(best[i * d:(i + 1) * d] for i in range(d)))


def canonical_form_bruteforce(L: LatinSquare) -> LatinSquare:
    """Minimum over every isotopy; (d!)^3 work, meant as a reference."""
    d = L.order
    if d > MAX_CANONICAL_ORDER:
        raise OrderTooLarge(f"order {d} too large")
    best = None
    perms = list(permutations(range(1, d + 1)))
    for rp, cp in product(perms, repeat=2):
        rinv, cinv = _invert(rp), _invert(cp)
        base = [L.cells[rinv[i] - 1][cinv[j] - 1] for i in range(d) for j in range(d)]
        for sp in perms:
            cand = tuple(sp[x - 1] for x in base)
            if best is None or cand < best:
                best = cand
    return LatinSquare(tuple(best[i * d:(i + 1) * d] for i in range(d)))


def are_isotopic(L: LatinSquare, M: LatinSquare) -> bool:
    if L.order != M.order:
        return False
    return canonical_form(L) == canonical_form(M)


# -- groups -----------------------------------------------------------------

def cyclic_table(d: int) -> LatinSquare:
    """Cayley table of Z/dZ with element k labelled k+1."""
    if not 1 <= d <= 6:
        raise ValueError("cyclic order must be in 1..6")
    return LatinSquare(tuple(tuple((i + j) % d + 1 for j in range(d)) for i in range(d)))


def klein_table() -> LatinSquare:
    """Cayley table of Z/2 x Z/2, elements (a, b) labelled 1 + 2a + b."""
    return LatinSquare(tuple(tuple((i ^ j) + 1 for j in range(4)) for i in range(4)))


def group_table(name: str, order: int | None = None) -> LatinSquare:
    if name == "klein":
        return klein_table()
    if name == "cyclic":
        if order is None:
            raise ValueError("cyclic group needs an order")
        return cyclic_table(order)
    raise ValueError(f"unknown group {name!r}")


def group_name(name: str, order: int) -> str:
    return "Z/2Z x Z/2Z" if name == "klein" else f"Z/{order}Z"


def groups_of_order(d: int) -> list[tuple[str, LatinSquare]]:
    out = [(group_name("cyclic", d), cyclic_table(d))]
    if d == 4:
        out.append((group_name("klein", 4), klein_table()))
    return out


def is_group_isotopic(L: LatinSquare) -> str | None:
    """Name of the group whose table is isotopic to L, if any (order <= 5)."""
    d = L.order
    if d > MAX_CANONICAL_ORDER:
        raise OrderTooLarge(f"group recognition is only available for order <= {MAX_CANONICAL_ORDER}")
    cf = canonical_form(L)
    for name, table in groups_of_order(d):
        if canonical_form(table) == cf:
            return name
    return None


# -- enumeration ------------------------------------------------------------

def reduced_squares(d: int) -> list[LatinSquare]:
    """Every Latin square of order d with first row and column 1..d."""
    if d > MAX_CANONICAL_ORDER:
        raise OrderTooLarge(f"enumeration is only available for order <= {MAX_CANONICAL_ORDER}")
    grid = [[0] * d for _ in range(d)]
    grid[0] = list(range(1, d + 1))
    for i in range(d):
        grid[i][0] = i + 1
    cols_used = [{grid[0][j]} for j in range(d)]
    for i in range(1, d):
        cols_used[0].add(i + 1)
    found = []

    def fill(i: int, j: int, row_used: set):
        if i == d:
            found.append(LatinSquare(tuple(tuple(r) for r in grid)))
            return
        if j == d:
            fill(i + 1, 1, {i + 2} if i + 1 < d else set())
            return
        for s in range(1, d + 1):
            if s in row_used or s in cols_used[j]:
                continue
            grid[i][j] = s
            row_used.add(s)
            cols_used[j].add(s)
            fill(i, j + 1, row_used)
            row_used.discard(s)
            cols_used[j].discard(s)
        grid[i][j] = 0

    if d == 1:
        return [LatinSquare(((1,),))]
    fill(1, 1, {2})
    return found


def classify_isotopy_classes(d: int) -> list[LatinSquare]:
    """Canonical representatives of every isotopy class of order d, sorted."""
    return sorted({canonical_form(L) for L in reduced_squares(d)}, key=LatinSquare.flat)


# order-5 squares shared by the quintic families and the tests
Z5_TABLE = cyclic_table(5)
NONGROUP_5 = square([
    [1, 2, 3, 4, 5],
    [2, 1, 4, 5, 3],
    [3, 5, 1, 2, 4],
    [4, 3, 5, 1, 2],
    [5, 4, 2, 3, 1],
])

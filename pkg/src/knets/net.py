"""k-nets: verification, Latin squares, completion, perspectivities and
point-set discovery.

A (k, d)-net is k pairwise disjoint classes of d lines together with d^2
points such that every meet of lines from different classes is one of the
points and every point lies on exactly one line of each class.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import (
    BadBasePoints,
    CoincidentLines,
    CoincidentPoints,
    CompletionFailed,
    DegenerateData,
    DegenerateFiber,
    NotANet,
    NotOrthogonal,
    OrderMismatch,
    SharedLine,
    TooManyOnALine,
)
from .field import NumberField, QQ, common_field
from .geometry import ProjLine, ProjPoint, collinear, incident, join, meet
from .latin import LatinSquare, is_orthogonal_set
from .linalg import det3

MAX_PERSPECTIVITY_ORDER = 5


def _sorted(objs: Iterable) -> list:
    return sorted(objs, key=lambda o: o.sort_key())


def _field_of(objs: Iterable) -> NumberField:
    return common_field(c for o in objs for c in o.coords)


@dataclass(frozen=True)
class LineClass:
    lines: tuple[ProjLine, ...]

    def __post_init__(self):
        lines = tuple(self.lines)
        if len(set(lines)) != len(lines):
            raise ValueError("lines in a class must be pairwise distinct")
        object.__setattr__(self, "lines", lines)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i):
        return self.lines[i]

    def canonical(self) -> "LineClass":
        return LineClass(tuple(_sorted(self.lines)))

    def as_set(self) -> frozenset:
        return frozenset(self.lines)


@dataclass(frozen=True)
class KNetConfig:
    classes: tuple[LineClass, ...]
    points: tuple[ProjPoint, ...]
    field: NumberField = QQ

    @classmethod
    def from_lines(cls, classes: Sequence[Sequence[ProjLine]], points=None) -> "KNetConfig":
        """Assemble a configuration; when ``points`` is None they are taken to
        be all meets of lines from different classes."""
        line_classes = tuple(LineClass(tuple(c)) for c in classes)
        all_lines = [l for c in line_classes for l in c]
        if points is None:
            pts = set()
            for A, B in combinations(line_classes, 2):
                for a in A:
                    for b in B:
                        if a != b:
                            pts.add(meet(a, b))
            points = _sorted(pts)
        points = tuple(points)
        K = _field_of(all_lines + list(points))
        return cls(line_classes, points, K)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def d(self) -> int:
        return len(self.classes[0]) if self.classes else 0

    def lines(self) -> list[ProjLine]:
        return [l for c in self.classes for l in c]


@dataclass
class CheckResult:
    passed: bool
    witnesses: list = dc_field(default_factory=list)


@dataclass
class VerificationReport:
    k: int
    d: int | None
    checks: dict[str, CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> dict[str, CheckResult]:
        return {n: c for n, c in self.checks.items() if not c.passed}

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "k": self.k,
            "d": self.d,
            "checks": {
                n: {"passed": c.passed, "witnesses": [list(w) if isinstance(w, tuple) else w for w in c.witnesses]}
                for n, c in self.checks.items()
            },
        }

    def summary(self) -> str:
        lines = [f"k={self.k} d={self.d} {'PASS' if self.passed else 'FAIL'}"]
        for n, c in self.checks.items():
            extra = "" if c.passed else f"  witnesses: {c.witnesses[:5]}"
            lines.append(f"  {n}: {'ok' if c.passed else 'FAILED'}{extra}")
        return "\n".join(lines)


CHECK_NAMES = (
    "equal_class_sizes",
    "distinct_lines_in_class",
    "classes_disjoint",
    "point_count",
    "meets_are_points",
    "one_line_per_class",
)


def verify_net(config: KNetConfig) -> VerificationReport:
    """Check the net axioms; failures become report entries with witnesses.

    Witness formats (all indices 0-based):
      equal_class_sizes      (class, size)
      distinct_lines_in_class (class, line, line)
      classes_disjoint       (class, line, class, line)
      point_count            ("count", found, expected) or ("duplicate", p, q)
      meets_are_points       (class, line, class, line)
      one_line_per_class     (point, class, count)
    """
    classes = config.classes
    checks = {n: CheckResult(True) for n in CHECK_NAMES}
    k = len(classes)
    sizes = [len(c) for c in classes]
    d = sizes[0] if sizes else None

    for i, s in enumerate(sizes):
        if s != d:
            checks["equal_class_sizes"].witnesses.append((i, s))

    for ci, c in enumerate(classes):
        for a, b in combinations(range(len(c)), 2):
            if c[a] == c[b]:
                checks["distinct_lines_in_class"].witnesses.append((ci, a, b))

    for i, j in combinations(range(k), 2):
        for a, la in enumerate(classes[i]):
            for b, lb in enumerate(classes[j]):
                if la == lb:
                    checks["classes_disjoint"].witnesses.append((i, a, j, b))

    pts = list(config.points)
    index = {}
    for n, p in enumerate(pts):
        if p in index:
            checks["point_count"].witnesses.append(("duplicate", index[p], n))
        else:
            index[p] = n
    if d is not None and len(pts) != d * d:
        checks["point_count"].witnesses.append(("count", len(pts), d * d))

    for i, j in combinations(range(k), 2):
        for a, la in enumerate(classes[i]):
            for b, lb in enumerate(classes[j]):
                if la == lb:
                    continue
                if meet(la, lb) not in index:
                    checks["meets_are_points"].witnesses.append((i, a, j, b))

    for n, p in enumerate(pts):
        for ci, c in enumerate(classes):
            count = sum(1 for l in c if incident(p, l))
            if count != 1:
                checks["one_line_per_class"].witnesses.append((n, ci, count))

    for c in checks.values():
        c.passed = not c.witnesses
    return VerificationReport(k=k, d=d, checks=checks)


# -- Latin squares of a net -------------------------------------------------

def label_net(config: KNetConfig) -> KNetConfig:
    """Relabel lines as in the standard construction of the squares M_m.

    Classes 1 and 2 are sorted by canonical coordinates.  Line n of class m
    (m >= 3) is the one through l_11 ^ l_2n, which makes the first row of
    every M_m equal to 1..d.
    """
    report = verify_net(config)
    if not report.passed:
        raise NotANet("configuration is not a net", report)
    A1 = config.classes[0].canonical()
    A2 = config.classes[1].canonical()
    relabelled = [A1, A2]
    for Am in config.classes[2:]:
        ordered = []
        for b in A2:
            x = meet(A1[0], b)
            ordered.append(next(l for l in Am if incident(x, l)))
        relabelled.append(LineClass(tuple(ordered)))
    return KNetConfig(tuple(relabelled), config.points, config.field)


def latin_squares_of_labelled(config: KNetConfig) -> list[LatinSquare]:
    """(M_m)_ij = n iff l_1i, l_2j and l_mn are concurrent, in the given labels."""
    A1, A2 = config.classes[0], config.classes[1]
    out = []
    for Am in config.classes[2:]:
        rows = []
        for a in A1:
            row = []
            for b in A2:
                x = meet(a, b)
                row.append(next(n for n, l in enumerate(Am, 1) if incident(x, l)))
            rows.append(tuple(row))
        out.append(LatinSquare(tuple(rows)))
    return out


def derive_latin_squares(config: KNetConfig) -> list[LatinSquare]:
    """The k - 2 squares M_3..M_k of a verified net."""
    return latin_squares_of_labelled(label_net(config))


# -- completion from two classes and squares --------------------------------

@dataclass
class FailureCertificate:
    square_index: int  # m, counting classes from 1 (so the first square is m = 3)
    symbol: int
    points: list[ProjPoint]
    determinant: object
    offending_point: ProjPoint

    def __str__(self):
        return (
            f"fiber of symbol {self.symbol} in M_{self.square_index} is not collinear; "
            f"det = {self.determinant} at {self.offending_point}"
        )


def fiber_points(A1: Sequence[ProjLine], A2: Sequence[ProjLine], M: LatinSquare, symbol: int) -> list[ProjPoint]:
    """Meets l_1i ^ l_2j with M_ij = symbol, in canonical point order."""
    d = M.order
    pts = {meet(A1[i], A2[j]) for i in range(d) for j in range(d) if M[i, j] == symbol}
    return _sorted(pts)


def line_through_fiber(points: Sequence[ProjPoint], square_index: int, symbol: int) -> ProjLine:
    """Join the first two points and check the rest, or raise with a certificate."""
    if len(points) < 2:
        raise DegenerateFiber(f"fiber of symbol {symbol} in M_{square_index} has fewer than 2 distinct points")
    p, q = points[0], points[1]
    cand = join(p, q)
    for r in points[2:]:
        if not incident(r, cand):
            cert = FailureCertificate(square_index, symbol, list(points), det3(p.coords, q.coords, r.coords), r)
            raise CompletionFailed(str(cert), cert)
    return cand


def complete_net(A1: LineClass | Sequence[ProjLine], A2: LineClass | Sequence[ProjLine],
                 squares: Sequence[LatinSquare]) -> KNetConfig:
    """Build classes 3..k from two classes and an orthogonal set of squares.

    Rows of every square index ``A1`` and columns index ``A2`` in the order
    given.  Each symbol's fiber of intersection points must be collinear; the
    line through it becomes a line of the new class.  Raises
    :class:`CompletionFailed` (with a :class:`FailureCertificate`) on the
    first fiber that is not collinear.
    """
    A1 = LineClass(tuple(A1))
    A2 = LineClass(tuple(A2))
    d = len(A1)
    if len(A2) != d:
        raise OrderMismatch("the two base classes have different sizes")
    for M in squares:
        if M.order != d:
            raise OrderMismatch(f"square of order {M.order} for classes of size {d}")
    if not is_orthogonal_set(list(squares)):
        raise NotOrthogonal("the squares are not pairwise orthogonal")
    if A1.as_set() & A2.as_set():
        raise BadBasePoints("the base classes share a line")
    base = {meet(a, b) for a in A1 for b in A2}
    if len(base) != d * d:
        raise BadBasePoints(f"the base classes meet in {len(base)} points, not {d * d}")

    classes = [A1, A2]
    for m, M in enumerate(squares, start=3):
        new = []
        for n in range(1, d + 1):
            new.append(line_through_fiber(fiber_points(A1, A2, M, n), m, n))
        classes.append(LineClass(tuple(new)))
    config = KNetConfig.from_lines(classes, points=_sorted(base))
    report = verify_net(config)
    if not report.passed:
        raise NotANet("completed configuration fails verification", report)
    return config


# -- perspectivities ----------------------------------------------------------

@dataclass(frozen=True)
class Perspectivity:
    sigma: tuple[int, ...]  # 1-based; a_i meets b_sigma(i) on the axis
    axis: ProjLine


@dataclass
class PerspectivitySearch:
    perspectivities: list[Perspectivity]
    degenerate: list[tuple[tuple[int, ...], ProjPoint]]


def perspectivity_search(A: Sequence[ProjLine], B: Sequence[ProjLine], allow_large: bool = False) -> PerspectivitySearch:
    """Every permutation sigma for which the meets a_i ^ b_sigma(i) are
    collinear.  Permutations whose meets all coincide are kept apart as
    degenerate and not counted."""
    A, B = list(A), list(B)
    d = len(A)
    if len(B) != d:
        raise OrderMismatch("polygons of different sizes")
    if d > MAX_PERSPECTIVITY_ORDER and not allow_large:
        raise ValueError(f"d = {d} exceeds {MAX_PERSPECTIVITY_ORDER}; pass allow_large=True")
    if set(A) & set(B):
        raise SharedLine("the two polygons share a line")
    meets = [[meet(a, b) for b in B] for a in A]
    found, degenerate = [], []
    for perm in permutations(range(d)):
        pts = [meets[i][perm[i]] for i in range(d)]
        distinct = _sorted(set(pts))
        sigma = tuple(j + 1 for j in perm)
        if len(distinct) == 1:
            degenerate.append((sigma, distinct[0]))
            continue
        axis = join(distinct[0], distinct[1])
        if all(incident(p, axis) for p in distinct[2:]):
            found.append(Perspectivity(sigma, axis))
    return PerspectivitySearch(found, degenerate)


def find_perspectivities(A: Sequence[ProjLine], B: Sequence[ProjLine], allow_large: bool = False) -> list[Perspectivity]:
    return perspectivity_search(A, B, allow_large).perspectivities


def axis_of_homology(pairs: Sequence[tuple[ProjPoint, ProjPoint]], l: ProjLine, m: ProjLine) -> ProjLine:
    """The line carrying the cross joins of the projectivity l -> m given by
    three point pairs (p_i on l, q_i on m)."""
    if len(pairs) != 3:
        raise DegenerateData("a projectivity between lines needs exactly three pairs")
    if l == m:
        raise DegenerateData("source and target lines coincide")
    ps = [p for p, _ in pairs]
    qs = [q for _, q in pairs]
    for p in ps:
        if not incident(p, l):
            raise DegenerateData(f"{p} is not on the source line")
    for q in qs:
        if not incident(q, m):
            raise DegenerateData(f"{q} is not on the target line")
    if len(set(ps)) < 3 or len(set(qs)) < 3:
        raise DegenerateData("points on each line must be pairwise distinct")
    cross_points = []
    for i, j in combinations(range(3), 2):
        try:
            x = meet(join(ps[i], qs[j]), join(ps[j], qs[i]))
        except (CoincidentPoints, CoincidentLines) as exc:
            raise DegenerateData(f"cross join ({i}, {j}) is undefined: {exc}") from exc
        cross_points.append(x)
    distinct = _sorted(set(cross_points))
    if len(distinct) < 2:
        raise DegenerateData("cross joins do not span a line")
    axis = join(distinct[0], distinct[1])
    if not all(incident(x, axis) for x in distinct[2:]):
        raise DegenerateData("cross joins are not collinear")
    return axis


# -- discovery from a point set ----------------------------------------------

def _exact_covers(universe: Sequence[int], subsets: Sequence[frozenset]) -> list[list[int]]:
    """All exact covers (Algorithm X, least-candidates column first)."""
    cols = {u: set() for u in universe}
    for r, s in enumerate(subsets):
        for u in s:
            cols[u].add(r)
    solutions = []
    partial = []

    def select(r):
        removed = []
        for u in sorted(subsets[r]):
            for r2 in cols[u]:
                for v in subsets[r2]:
                    if v != u:
                        cols[v].discard(r2)
            removed.append((u, cols.pop(u)))
        return removed

    def deselect(r, removed):
        for u, rows in reversed(removed):
            cols[u] = rows
            for r2 in rows:
                for v in subsets[r2]:
                    if v != u:
                        cols[v].add(r2)

    def search():
        if not cols:
            solutions.append(sorted(partial))
            return
        c = min(cols, key=lambda u: (len(cols[u]), u))
        for r in sorted(cols[c]):
            partial.append(r)
            removed = select(r)
            search()
            deselect(r, removed)
            partial.pop()

    search()
    return solutions


def lines_through_points(points: Sequence[ProjPoint]) -> dict[ProjLine, frozenset[int]]:
    """Every line through at least two of the points, with the indices it contains."""
    found: dict[ProjLine, set[int]] = {}
    for i, j in combinations(range(len(points)), 2):
        l = join(points[i], points[j])
        if l not in found:
            found[l] = {n for n, p in enumerate(points) if incident(p, l)}
    return {l: frozenset(s) for l, s in found.items()}


def discover_parallel_classes(points: Sequence[ProjPoint], d: int) -> list[LineClass]:
    """Every partition of d^2 points into d collinear d-sets, one class each."""
    points = list(points)
    if len(points) != d * d:
        raise ValueError(f"need {d * d} points, got {len(points)}")
    if len(set(points)) != len(points):
        raise ValueError("points must be pairwise distinct")
    spans = lines_through_points(points)
    for l, s in spans.items():
        if len(s) > d:
            raise TooManyOnALine(f"{l} contains {len(s)} > {d} of the points", line=l, count=len(s))
    candidates = _sorted(l for l, s in spans.items() if len(s) == d)
    covers = _exact_covers(range(len(points)), [spans[l] for l in candidates])
    classes = [LineClass(tuple(candidates[r] for r in cover)) for cover in covers]
    return sorted(classes, key=lambda c: [l.sort_key() for l in c])


def is_admissible(k: int, d: int) -> bool:
    """Whether (k, d) survives the topological restriction on nets in P^2(C).

    Allowed: k = 3 with d >= 2, k = 4 with d >= 3, k = 5 with d >= 6.  This is
    only that restriction: (4, 6) passes here although no pair of orthogonal
    Latin squares of order 6 exists, so no (4, 6)-net exists in any plane.
    """
    if k < 3 or d < 2:
        raise ValueError("nets need k >= 3 and d >= 2")
    if k == 3:
        return True
    if k == 4:
        return d >= 3
    if k == 5:
        return d >= 6
    return False

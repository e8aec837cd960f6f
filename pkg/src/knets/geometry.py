"""Exact projective geometry in P^2 (and the sliver of P^3 needed for
desmic tetrahedra).

Points and lines are homogeneous triples of :class:`~knets.field.Scalar`
normalised so the first nonzero coordinate is 1.  With that convention
projective equality is plain tuple equality, and hashing/sorting are free.
A line ``[a:b:c]`` is the locus ``a x + b y + c z = 0``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import CoincidentLines, CoincidentPoints, FieldMismatch, SingularTransform, ZeroVector
from .field import NumberField, QQ, Scalar, common_field
from .linalg import det, rank, rref


def _as_scalars(coords: Iterable, field: NumberField | None) -> tuple[Scalar, ...]:
    coords = list(coords)
    K = field if field is not None else common_field(coords)
    return tuple(K(c) for c in coords)


def normalize(coords: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Scale a nonzero vector so its first nonzero entry is 1."""
    for c in coords:
        if not c.is_zero():
            if c.is_one():
                return tuple(coords)
            inv = c.inverse()
            return tuple(x * inv for x in coords)
    raise ZeroVector("the zero vector is not a projective point")


class _Homogeneous:
    __slots__ = ("coords",)
    size = 3

    def __init__(self, coords: Iterable, field: NumberField | None = None):
        cs = _as_scalars(coords, field)
        if len(cs) != self.size:
            raise ValueError(f"{type(self).__name__} needs {self.size} coordinates, got {len(cs)}")
        object.__setattr__(self, "coords", normalize(cs))

    def __setattr__(self, key, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def field(self) -> NumberField:
        return self.coords[0].field

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coords)

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class ProjPoint(_Homogeneous):
    """A point of P^2."""

    __slots__ = ()


class ProjLine(_Homogeneous):
    """A line of P^2 in dual coordinates."""

    __slots__ = ()


class ProjPoint3(_Homogeneous):
    """A point of P^3."""

    __slots__ = ()
    size = 4


def point(*coords, field: NumberField | None = None) -> ProjPoint:
    return ProjPoint(coords, field)


def line(*coords, field: NumberField | None = None) -> ProjLine:
    return ProjLine(coords, field)


def _check_fields(*objs):
    fields = {o.field for o in objs if not o.field.is_rational}
    if len(fields) > 1:
        raise FieldMismatch("objects live over different number fields")


def _dot(u: Sequence, v: Sequence):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def incident(p: ProjPoint, l: ProjLine) -> bool:
    _check_fields(p, l)
    return _dot(p.coords, l.coords).is_zero()


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    """The intersection point of two distinct lines."""
    _check_fields(l, m)
    c = cross(l.coords, m.coords)
    if all(x.is_zero() for x in c):
        raise CoincidentLines(f"{l} and {m} are the same line")
    return ProjPoint(c)


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """The line through two distinct points."""
    _check_fields(p, q)
    c = cross(p.coords, q.coords)
    if all(x.is_zero() for x in c):
        raise CoincidentPoints(f"{p} and {q} are the same point")
    return ProjLine(c)


def collinear(points: Sequence[ProjPoint]) -> bool:
    if len(points) < 3:
        raise ValueError("collinear needs at least three points")
    _check_fields(*points)
    return rank([p.coords for p in points]) <= 2


def concurrent(lines: Sequence[ProjLine]) -> bool:
    if len(lines) < 3:
        raise ValueError("concurrent needs at least three lines")
    _check_fields(*lines)
    return rank([l.coords for l in lines]) <= 2


def rank_of_point_matrix3d(points: Sequence[ProjPoint3]) -> int:
    if not points:
        raise ValueError("empty point list")
    _check_fields(*points)
    return rank([p.coords for p in points])


def proj_equal(u: _Homogeneous, v: _Homogeneous) -> bool:
    return type(u) is type(v) and u.coords == v.coords


class ProjTransform:
    """An invertible 3x3 matrix acting on points (and dually on lines)."""

    __slots__ = ("matrix", "_cof")

    def __init__(self, matrix: Sequence[Sequence], field: NumberField | None = None):
        flat = [x for row in matrix for x in row]
        K = field if field is not None else common_field(flat)
        M = tuple(tuple(K(x) for x in row) for row in matrix)
        if len(M) != 3 or any(len(r) != 3 for r in M):
            raise ValueError("a plane transform is a 3x3 matrix")
        if det([list(r) for r in M]).is_zero():
            raise SingularTransform("matrix is singular")
        self.matrix = M
        # cofactor matrix = det * inverse-transpose; projectively the dual action
        self._cof = tuple(
            tuple(
                (-1) ** (i + j) * _minor(M, i, j)
                for j in range(3)
            )
            for i in range(3)
        )

    @classmethod
    def identity(cls, field: NumberField = QQ) -> "ProjTransform":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]], field)

    @classmethod
    def from_frame(cls, p1, p2, p3, p4) -> "ProjTransform":
        """The transform taking the standard frame [1:0:0], [0:1:0], [0:0:1],
        [1:1:1] to four points in general position."""
        cols = [p1.coords, p2.coords, p3.coords]
        M = [[cols[j][i] for j in range(3)] for i in range(3)]
        if det(M).is_zero():
            raise SingularTransform("first three frame points are collinear")
        # solve M * lam = p4
        aug = [M[i] + [p4.coords[i]] for i in range(3)]
        R, piv = rref(aug)
        lam = [R[i][3] for i in range(3)]
        if any(x.is_zero() for x in lam):
            raise SingularTransform("frame points are not in general position")
        return cls([[M[i][j] * lam[j] for j in range(3)] for i in range(3)])

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(tuple(_dot(row, p.coords) for row in self.matrix))

    def apply_line(self, l: ProjLine) -> ProjLine:
        return ProjLine(tuple(_dot(row, l.coords) for row in self._cof))


def _minor(M, i, j):
    rows = [r for k, r in enumerate(M) if k != i]
    a, b = [[x for k, x in enumerate(r) if k != j] for r in rows]
    return a[0] * b[1] - a[1] * b[0]


def apply_transform(T: ProjTransform, p: ProjPoint) -> ProjPoint:
    return T.apply(p)

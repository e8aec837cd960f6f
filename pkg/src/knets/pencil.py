"""Ternary forms, products of linear forms and pencil membership.

A degree-d form is stored as its coefficient vector over the monomials
x^a y^b z^c (a + b + c = d) in graded-lex order with x > y > z, so for
d = 2 the order is x^2, xy, xz, y^2, yz, z^2.

A set of reducible curves C_1..C_k gives a net exactly when they lie in one
pencil, i.e. when the k x N coefficient matrix has rank 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DegreeMismatch, NotInPencil, RankViolation
from .field import NumberField, QQ, Scalar, common_field
from .geometry import ProjLine, ProjPoint, normalize
from .linalg import rank, rref, transpose


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)
    )


@lru_cache(maxsize=None)
def _index(d: int) -> dict:
    return {m: i for i, m in enumerate(monomials(d))}


@dataclass(frozen=True)
class DegreeForm:
    degree: int
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        n = len(monomials(self.degree))
        if len(self.coeffs) != n:
            raise ValueError(f"degree {self.degree} form needs {n} coefficients, got {len(self.coeffs)}")
        K = common_field(self.coeffs)
        object.__setattr__(self, "coeffs", tuple(K(c) for c in self.coeffs))

    @classmethod
    def from_dict(cls, degree: int, terms: dict, field: NumberField = QQ) -> "DegreeForm":
        """Build from ``{(a, b, c): coeff}``; missing monomials are zero."""
        idx = _index(degree)
        coeffs = [field.zero] * len(idx)
        for mono, c in terms.items():
            coeffs[idx[tuple(mono)]] = coeffs[idx[tuple(mono)]] + c
        return cls(degree, tuple(coeffs))

    @property
    def field(self) -> NumberField:
        return self.coeffs[0].field

    def terms(self) -> dict:
        return {m: c for m, c in zip(monomials(self.degree), self.coeffs) if not c.is_zero()}

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "DegreeForm") -> "DegreeForm":
        if other.degree != self.degree:
            raise DegreeMismatch("cannot add forms of different degree")
        return DegreeForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DegreeForm") -> "DegreeForm":
        return self + other.scale(-1)

    def scale(self, c) -> "DegreeForm":
        return DegreeForm(self.degree, tuple(x * c for x in self.coeffs))

    def __mul__(self, other: "DegreeForm") -> "DegreeForm":
        K = common_field(self.coeffs + other.coeffs)
        out: dict = {}
        for m1, c1 in self.terms().items():
            for m2, c2 in other.terms().items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = out.get(m, K.zero) + c1 * c2
        return DegreeForm.from_dict(self.degree + other.degree, out, K)

    def evaluate(self, p: Sequence) -> Scalar:
        x, y, z = p
        total = self.coeffs[0] * 0
        for (a, b, c), coeff in self.terms().items():
            total = total + coeff * x ** a * y ** b * z ** c
        return total

    def projective(self) -> tuple[Scalar, ...]:
        """Coefficients scaled so the first nonzero one is 1."""
        return normalize(self.coeffs)

    def proj_equal(self, other: "DegreeForm") -> bool:
        return self.degree == other.degree and self.projective() == other.projective()

    def to_json(self) -> dict:
        from .jsonio import scalar_to_json
        return {"degree": self.degree, "coeffs": [scalar_to_json(c) for c in self.coeffs]}

    def __str__(self):
        parts = []
        for (a, b, c), coeff in self.terms().items():
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("x", a), ("y", b), ("z", c)) if e
            )
            parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
        return " + ".join(parts) or "0"


def linear_form(l: ProjLine) -> DegreeForm:
    return DegreeForm(1, tuple(l.coords))


def product_of_lines(lines: Sequence[ProjLine]) -> DegreeForm:
    """The completely reducible form prod(a_i x + b_i y + c_i z)."""
    if not lines:
        raise ValueError("need at least one line")
    out = linear_form(lines[0])
    for l in lines[1:]:
        out = out * linear_form(l)
    return out


def forms_rank(forms: Sequence[DegreeForm]) -> int:
    if not forms:
        return 0
    if len({f.degree for f in forms}) > 1:
        raise DegreeMismatch("forms of different degree")
    return rank([list(f.coeffs) for f in forms])


@dataclass(frozen=True)
class Pencil:
    """The pencil lambda F + mu G."""

    F: DegreeForm
    G: DegreeForm

    def __post_init__(self):
        if self.F.degree != self.G.degree:
            raise DegreeMismatch("pencil generators have different degree")
        if forms_rank([self.F, self.G]) != 2:
            raise ValueError("pencil generators are linearly dependent")

    @property
    def degree(self) -> int:
        return self.F.degree

    def member(self, lam, mu) -> DegreeForm:
        return self.F.scale(lam) + self.G.scale(mu)


def pencil_coords(pencil: Pencil, H: DegreeForm) -> tuple[Scalar, Scalar]:
    """[lambda : mu] with H proportional to lambda F + mu G.

    H is read projectively, so its overall scale never matters.  The pair is
    normalised with its first nonzero entry equal to 1.
    """
    if H.degree != pencil.degree:
        raise DegreeMismatch("form degree differs from pencil degree")
    if H.is_zero():
        raise NotInPencil("zero form")
    # columns F, G, H: need (a, b) with aF + bG = H
    cols = [list(pencil.F.coeffs), list(pencil.G.coeffs), list(H.coeffs)]
    aug = transpose(cols)
    R, pivots = rref(aug)
    if 2 in pivots:
        raise NotInPencil(f"{H} is not in the span of the pencil generators")
    K = common_field(R[0] + R[1])
    a = K(R[0][2])
    b = K(R[1][2])
    lam, mu = normalize((a, b))
    return lam, mu


def proj_pair_equal(p: Sequence, q: Sequence) -> bool:
    return (p[0] * q[1] - p[1] * q[0]).is_zero()


def base_points_check(pencil: Pencil, points: Sequence[ProjPoint]) -> bool:
    return all(
        pencil.F.evaluate(p.coords).is_zero() and pencil.G.evaluate(p.coords).is_zero()
        for p in points
    )


@dataclass
class PencilCertificate:
    rank: int
    pencil: Pencil
    coords: list[tuple[Scalar, Scalar]]
    base_points_ok: bool
    products: list[DegreeForm]

    def to_json(self) -> dict:
        from .jsonio import scalar_to_json
        return {
            "rank": self.rank,
            "pencil": {"F": self.pencil.F.to_json(), "G": self.pencil.G.to_json()},
            "coords": [[scalar_to_json(a), scalar_to_json(b)] for a, b in self.coords],
            "base_points": self.base_points_ok,
        }


def net_pencil_certificate(config) -> PencilCertificate:
    """Class products C_i, their rank, the pencil <C_1, C_2> and [lambda:mu]
    of every class.  A verified net with rank other than 2 is an internal
    inconsistency and raises :class:`RankViolation`."""
    products = [product_of_lines(cls.lines) for cls in config.classes]
    r = forms_rank(products)
    if r != 2:
        raise RankViolation(
            f"class products of a verified net have rank {r}, expected 2",
            rank=r,
            matrix=[f.coeffs for f in products],
        )
    pencil = Pencil(products[0], products[1])
    coords = [pencil_coords(pencil, C) for C in products]
    return PencilCertificate(
        rank=r,
        pencil=pencil,
        coords=coords,
        base_points_ok=base_points_check(pencil, config.points),
        products=products,
    )

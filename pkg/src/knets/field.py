"""Exact arithmetic in Q and in simple extensions Q[a]/(p(a)).

Every coordinate in the package is a :class:`Scalar`.  A scalar carries a
reference to its :class:`NumberField` and a coefficient vector (low degree
first) reduced modulo the defining polynomial.  Rational parts are
:class:`fractions.Fraction`, so nothing overflows.

Only one extension level is supported and the defining polynomial has degree
at most 4.  Irreducibility is checked only through the rational root test; a
reducible quartic without rational roots gives meaningless arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    OutOfRange,
    SquareDiscriminant,
    ZeroDiscriminant,
)

MAX_DEGREE = 4


# -- dense polynomials over Q, coefficient lists low degree first -----------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _polymul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _polysub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _polydivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    rem = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    quo = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] / lead
        quo[shift] = c
        for i, y in enumerate(b):
            rem[i + shift] -= c * y
        rem.pop()
        _trim(rem)
    return _trim(quo), rem


def _reduce(coeffs: Sequence[Fraction], poly: Sequence[Fraction]) -> list[Fraction]:
    """Remainder of ``coeffs`` modulo the monic ``poly``."""
    n = len(poly) - 1
    rem = list(coeffs)
    for top in range(len(rem) - 1, n - 1, -1):
        c = rem[top]
        if c:
            for i in range(n):
                rem[top - n + i] -= c * poly[i]
        rem[top] = Fraction(0)
    rem = rem[:n]
    rem.extend([Fraction(0)] * (n - len(rem)))
    return rem


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(poly: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of a polynomial (coefficients low degree first)."""
    p = _trim([Fraction(c) for c in poly])
    if len(p) <= 1:
        return []
    roots = []
    while p[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        p = p[1:]
        if len(p) <= 1:
            return roots
    lcm = 1
    for c in p:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p]
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and _eval(p, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    """Q[a]/(poly(a)) for a monic rational ``poly`` of degree 1..4.

    ``poly`` is stored low degree first and ends in 1.  Every degree-1 field
    is normalised to ``(0, 1)`` so there is exactly one copy of Q.
    """

    poly: tuple[Fraction, ...]
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        poly = tuple(_to_fraction(c) for c in self.poly)
        if len(poly) < 2 or len(poly) - 1 > MAX_DEGREE:
            raise InvalidField(f"defining polynomial must have degree 1..{MAX_DEGREE}")
        if poly[-1] != 1:
            raise InvalidField("defining polynomial must be monic")
        if len(poly) == 2:
            poly = (Fraction(0), Fraction(1))
        elif rational_roots(poly):
            raise InvalidField(f"defining polynomial {poly} has a rational root")
        object.__setattr__(self, "poly", poly)
        if not self.name:
            object.__setattr__(self, "name", "Q" if len(poly) == 2 else f"Q[a]/({_poly_str(poly)})")

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                if value.field.is_rational:
                    return Scalar(self, [value.coeffs[0]])
                raise FieldMismatch(f"{value!r} is not in {self.name}")
            return value
        if isinstance(value, (list, tuple)):
            return Scalar(self, [_to_fraction(c) for c in value])
        return Scalar(self, [_to_fraction(value)])

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, [Fraction(0)])

    @property
    def one(self) -> "Scalar":
        return Scalar(self, [Fraction(1)])

    @property
    def gen(self) -> "Scalar":
        """The class of ``a``; for Q this is the rational root of ``poly``."""
        if self.is_rational:
            return Scalar(self, [-self.poly[0]])
        return Scalar(self, [Fraction(0), Fraction(1)])

    def __repr__(self):
        return f"NumberField({self.name})"


def _poly_str(poly: Sequence[Fraction], var: str = "a") -> str:
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            body = mono
        elif mono and c == -1:
            body = "-" + mono
        else:
            body = f"{c}{'*' + mono if mono else ''}"
        terms.append(body)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


QQ = NumberField((Fraction(0), Fraction(1)), name="Q")

_CYCLOTOMIC = {
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    5: (1, 1, 1, 1, 1),
    6: (1, -1, 1),
}


def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    if n not in _CYCLOTOMIC:
        raise OutOfRange(f"cyclotomic index must be in 1..6, got {n}")
    return tuple(Fraction(c) for c in _CYCLOTOMIC[n])


def make_cyclotomic_field(n: int) -> NumberField:
    """Q(zeta_n) for 1 <= n <= 6.  For n = 1, 2 this is Q itself."""
    poly = cyclotomic_poly(n)
    if n <= 2:
        return QQ
    return NumberField(poly, name=f"Q(zeta{n})")


def primitive_root(n: int) -> "Scalar":
    """A primitive n-th root of unity in :func:`make_cyclotomic_field`."""
    K = make_cyclotomic_field(n)
    if n == 1:
        return K.one
    if n == 2:
        return -K.one
    return K.gen


def make_quadratic_field(D) -> NumberField:
    """Q(sqrt D) as Q[a]/(a^2 - D)."""
    D = _to_fraction(D)
    if D == 0:
        raise ZeroDiscriminant("D = 0 does not define a field extension")
    if rational_sqrt(D) is not None:
        raise SquareDiscriminant(f"{D} is the square of a rational; stay in Q")
    return NumberField((-D, Fraction(0), Fraction(1)), name=f"Q(sqrt({D}))")


def rational_sqrt(q) -> Fraction | None:
    """The non-negative rational square root of ``q``, or None."""
    q = _to_fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def squarefree_split(q) -> tuple[Fraction, int]:
    """Write a nonzero rational as c^2 * D with D a squarefree integer."""
    q = _to_fraction(q)
    if q == 0:
        raise ZeroDiscriminant("zero has no squarefree part")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    core, c = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            c *= p
        if n % p == 0:
            n //= p
            core *= p
        p += 1
    core *= n
    # q = sign * c^2 * core / den^2
    return Fraction(c, q.denominator), sign * core


# -- elements ---------------------------------------------------------------

class Scalar:
    """An element of a :class:`NumberField`, immutable and canonical."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs: Iterable):
        object.__setattr__(self, "field", field)
        cs = [_to_fraction(c) for c in coeffs]
        object.__setattr__(self, "coeffs", tuple(_reduce(cs, field.poly)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("Scalar is immutable")

    # coercion
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field == self.field:
                return other
            # rationals embed into every field
            if other.field.is_rational:
                return Scalar(self.field, [other.coeffs[0]])
            if self.field.is_rational:
                return NotImplemented
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, [other])
        return NotImplemented

    def _lift(self, other) -> tuple["Scalar", "Scalar"] | None:
        """Bring two operands into a common field (Q embeds into everything)."""
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, Scalar) and self.field.is_rational:
                return Scalar(other.field, [self.coeffs[0]]), other
            return None
        return self, o

    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.field.is_rational:
            return Scalar(a.field, [a.coeffs[0] * b.coeffs[0]])
        return Scalar(a.field, _polymul(a.coeffs, b.coeffs) or [0])

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.field.is_rational:
            return Scalar(self.field, [1 / self.coeffs[0]])
        # extended Euclid: track s with s * self == r (mod poly)
        r0, r1 = list(self.field.poly), _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
            if not r1:
                raise InvalidField(
                    f"{self!r} shares a factor with {self.field.name}; polynomial is reducible"
                )
        c = r1[0]
        return Scalar(self.field, [x / c for x in s1] or [0])

    def __truediv__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = self.field.one
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # predicates and comparisons
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.field != self.field:
            if self.field.is_rational or other.field.is_rational:
                return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
            raise FieldMismatch(f"cannot compare {self.field.name} with {other.field.name}")
        return self.coeffs == other.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            # rationals hash like Fraction so Q-embedded values stay consistent
            h = hash(self.coeffs[0]) if self.is_rational() else hash((self.field.poly, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self) -> tuple[Fraction, ...]:
        """Lexicographic key on canonical coefficients.

        Not compatible with the field operations; used only to make orderings
        of points and lines deterministic.
        """
        return self.coeffs

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        return _poly_str(self.coeffs, "a")


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Functional form of the four field operations."""
    if not isinstance(a, Scalar) or not isinstance(b, Scalar):
        raise TypeError("scalar_arith expects Scalars")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.name} vs {b.field.name}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def scalar_is_zero(a: Scalar) -> bool:
    return a.is_zero()


def common_field(values: Iterable) -> NumberField:
    """The single non-rational field among ``values`` (Q if there is none)."""
    K = QQ
    for v in values:
        if isinstance(v, Scalar) and not v.field.is_rational:
            if K.is_rational:
                K = v.field
            elif v.field != K:
                raise FieldMismatch(f"{K.name} vs {v.field.name}")
    return K

"""Explicit nets: the conic net, Fermat nets, the cubic and quartic families,
the Hesse net, both quintic families and the desmic tetrahedra.

Every generator checks genericity operationally: lines pairwise distinct, the
d^2 points distinct, the net axioms hold, and (where the family is meant to
consist of proper polygons) no d lines of a class pass through one point.
Failure raises :class:`DegenerateParameters`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import (
    AxisFailure,
    CompletionFailed,
    DegenerateParameters,
    OutOfRange,
    SearchExhausted,
    SquareDiscriminant,
    TranscriptionMismatch,
)
from .field import QQ, NumberField, Scalar, common_field, make_cyclotomic_field, make_quadratic_field, primitive_root, rational_sqrt, squarefree_split
from .geometry import ProjLine, ProjPoint, ProjPoint3, concurrent, incident, join, meet, point, rank_of_point_matrix3d
from .latin import NONGROUP_5, LatinSquare, canonical_form, cyclic_table, klein_table
from .net import (
    KNetConfig,
    LineClass,
    find_perspectivities,
    latin_squares_of_labelled,
    line_through_fiber,
    verify_net,
)
from .pencil import DegreeForm, Pencil, pencil_coords, product_of_lines, proj_pair_equal


def _params(*tuples: Sequence) -> tuple[NumberField, list[list[Scalar]]]:
    flat = [x for t in tuples for x in t]
    K = common_field(flat)
    out = []
    for t in tuples:
        vals = [K(x) for x in t]
        if all(v.is_zero() for v in vals):
            raise DegenerateParameters(f"parameter {t} is the zero vector")
        out.append(vals)
    return K, out


def _line(K: NumberField, *coords) -> ProjLine:
    try:
        return ProjLine(coords, K)
    except ValueError as exc:
        raise DegenerateParameters(f"line coordinates {coords} vanish identically") from exc


def _no_concurrent_class(config: KNetConfig) -> list[int]:
    """Indices of classes whose d lines all pass through one point."""
    bad = []
    for i, c in enumerate(config.classes):
        if len(c) >= 3 and concurrent(list(c)):
            bad.append(i)
    return bad


def build_net(classes: Sequence[Sequence[ProjLine]], nondegenerate: bool = True, name: str = "net") -> KNetConfig:
    for i, c in enumerate(classes):
        if len(set(c)) != len(c):
            raise DegenerateParameters(f"{name}: class {i + 1} has repeated lines")
    try:
        config = KNetConfig.from_lines(classes)
    except ValueError as exc:
        raise DegenerateParameters(f"{name}: {exc}") from exc
    report = verify_net(config)
    if not report.passed:
        raise DegenerateParameters(f"{name}: verification failed: {report.failures()}")
    if nondegenerate:
        bad = _no_concurrent_class(config)
        if bad:
            raise DegenerateParameters(f"{name}: classes {[b + 1 for b in bad]} are concurrent")
    return config


# -- (3,2) ------------------------------------------------------------------

CONIC_POINTS = (point(1, 0, 0), point(0, 1, 0), point(0, 0, 1), point(1, 1, 1))


def conic_net() -> KNetConfig:
    """The unique (3,2)-net: the three line pairs through four points."""
    X1, X2, X3, X4 = CONIC_POINTS
    classes = [
        [join(X1, X2), join(X3, X4)],
        [join(X1, X3), join(X2, X4)],
        [join(X1, X4), join(X2, X3)],
    ]
    config = KNetConfig.from_lines(classes, points=CONIC_POINTS)
    return config


# -- Fermat nets ------------------------------------------------------------

def fermat_net(d: int) -> KNetConfig:
    """x^d - y^d, y^d - z^d, z^d - x^d over Q(zeta_d); each class is a pencil
    of d concurrent lines."""
    if not 2 <= d <= 6:
        raise OutOfRange(f"Fermat nets are built for 2 <= d <= 6, got {d}")
    K = make_cyclotomic_field(d)
    z = primitive_root(d)
    roots = [z ** j for j in range(d)]
    classes = [
        [ProjLine((1, -r, 0), K) for r in roots],
        [ProjLine((0, 1, -r), K) for r in roots],
        [ProjLine((-r, 0, 1), K) for r in roots],
    ]
    return build_net(classes, nondegenerate=False, name=f"fermat({d})")


# -- (3,3) ------------------------------------------------------------------

def cubic_lines(s: Sequence, t: Sequence) -> list[list[ProjLine]]:
    K, (s, t) = _params(s, t)
    s0, s1 = s
    t0, t1 = t
    L = lambda *c: _line(K, *c)
    return [
        [L(1, 0, 0), L(0, 1, 0), L(0, 0, 1)],
        [L(1, 1, 1), L(s0 * t1, s1 * t1, s1 * t0), L(s0 * t0, s0 * t1, s1 * t0)],
        [L(s0, s1, s1), L(t0, t1, t0), L(s0 * t1, s0 * t1, s1 * t0)],
    ]


def cubic_net(s: Sequence, t: Sequence) -> KNetConfig:
    """The two-parameter family of (3,3)-nets with parameters s, t in P^1."""
    return build_net(cubic_lines(s, t), name=f"cubic(s={list(s)}, t={list(t)})")


def hesse_net() -> KNetConfig:
    """The (4,3)-net formed by the four triangles of the Hesse pencil."""
    K = make_cyclotomic_field(3)
    w = K.gen
    w2 = w * w
    L = lambda *c: ProjLine(c, K)
    classes = [
        [L(1, 0, 0), L(0, 1, 0), L(0, 0, 1)],
        [L(1, 1, 1), L(1, w, w2), L(1, w2, w)],
        [L(w, 1, 1), L(1, w, 1), L(1, 1, w)],
        [L(w2, 1, 1), L(1, w2, 1), L(1, 1, w2)],
    ]
    return build_net(classes, name="hesse")


@dataclass
class HessePencilEntry:
    class_index: int
    computed: tuple[Scalar, Scalar]
    printed: tuple[Scalar, Scalar]
    agrees: bool
    literal: tuple[Scalar, Scalar]  # in the basis xyz, x^3 + y^3 + z^3


def hesse_printed_coords() -> list[tuple[Scalar, Scalar]]:
    K = make_cyclotomic_field(3)
    w = K.gen
    return [(K.one, K.zero), (K.zero, K.one), (6 * w + 3, w), (6 * w + 3, -(w * w))]


def hesse_xyz() -> DegreeForm:
    return DegreeForm.from_dict(3, {(1, 1, 1): 1})


def hesse_fermat_cubic() -> DegreeForm:
    return DegreeForm.from_dict(3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})


def hesse_pencil_report(config: KNetConfig | None = None) -> list[HessePencilEntry]:
    """[lambda:mu] of each Hesse triangle, compared with the printed values.

    ``computed`` uses the generators C_1 = xyz and C_2 = (product of class 2);
    ``literal`` uses xyz and x^3 + y^3 + z^3 as written in the pencil equation.
    The two bases differ because C_2 = x^3 + y^3 + z^3 - 3xyz.
    """
    config = config or hesse_net()
    products = [product_of_lines(c.lines) for c in config.classes]
    basis = Pencil(products[0], products[1])
    literal = Pencil(hesse_xyz(), hesse_fermat_cubic())
    out = []
    for i, (C, printed) in enumerate(zip(products, hesse_printed_coords())):
        got = pencil_coords(basis, C)
        out.append(HessePencilEntry(i + 1, got, printed, proj_pair_equal(got, printed), pencil_coords(literal, C)))
    return out


# -- (3,4) ------------------------------------------------------------------

def quartic_cyclic_lines(s: Sequence, t: Sequence, u: Sequence) -> list[list[ProjLine]]:
    K, (s, t, u) = _params(s, t, u)
    s0, s1 = s
    t0, t1 = t
    u0, u1 = u
    L = lambda *c: _line(K, *c)
    x0 = t1 * (s0 * t1 * u1 + s1 * t1 * u1 - s0 * t0 * u1 - s0 * t0 * u0)
    # sign of x1 fixed by the fiber l11^l34, l12^l31, l13^l32, l14^l33;
    # the often-quoted s0 t0^2 u0 - s1 t1^2 u1 misses all four points
    x1 = s1 * t1 * t1 * u1 - s0 * t0 * t0 * u0
    x2 = t1 * (s1 * t1 * u0 + s1 * t1 * u1 - s1 * t0 * u0 - s0 * t0 * u0)
    return [
        [L(1, 1, 1), L(t1 * u1, t0 * u0, t1 * u0), L(s0 * u1, s1 * u1, s1 * u0), L(s0 * t1, s0 * t0, s1 * t1)],
        [L(1, 0, 0), L(0, 1, 0), L(0, 0, 1), L(x0, x1, x2)],
        [L(s0, s1, s1), L(t1, t0, t1), L(u1, u1, u0), L(s0 * t1 * u1, s0 * t0 * u0, s1 * t1 * u0)],
    ]


def quartic_klein_lines(s: Sequence, t: Sequence, u: Sequence) -> list[list[ProjLine]]:
    K, (s, t, u) = _params(s, t, u)
    s0, s1 = s
    t0, t1 = t
    u0, u1 = u
    L = lambda *c: _line(K, *c)
    x0 = (s0 + s1) * t1 * u1
    x1 = s1 * (t0 + t1) * u1
    x2 = s1 * t1 * (u0 + u1)
    return [
        [L(1, 1, 1), L(s0 * t1, s1 * t0, s1 * t1), L(s0 * u1, s1 * u1, s1 * u0), L(t1 * u1, t0 * u1, t1 * u0)],
        [L(1, 0, 0), L(0, 1, 0), L(0, 0, 1), L(x0, x1, x2)],
        [L(s0, s1, s1), L(t1, t0, t1), L(u1, u1, u0), L(s0 * t1 * u1, s1 * t0 * u1, s1 * t1 * u0)],
    ]


def quartic_net_cyclic(s: Sequence, t: Sequence, u: Sequence) -> KNetConfig:
    """(3,4)-nets realising Z/4Z, parameters s, t, u in P^1."""
    return build_net(quartic_cyclic_lines(s, t, u), name="quartic-cyclic")


def quartic_net_klein(s: Sequence, t: Sequence, u: Sequence) -> KNetConfig:
    """(3,4)-nets realising Z/2Z x Z/2Z (the Hesse-Salmon configuration)."""
    return build_net(quartic_klein_lines(s, t, u), name="quartic-klein")


# -- (3,5) ------------------------------------------------------------------

# (coefficient, exponents of s0 s1 s2, exponents of t0 t1 t2)
HYPERSURFACES = {
    "cyclic5": (
        (1, (2, 1, 0), (0, 2, 1)),
        (-1, (2, 1, 0), (0, 1, 2)),
        (-1, (1, 2, 0), (1, 1, 1)),
        (1, (1, 2, 0), (0, 1, 2)),
        (1, (1, 1, 1), (2, 0, 1)),
        (-1, (1, 1, 1), (0, 2, 1)),
        (-1, (1, 0, 2), (2, 1, 0)),
        (1, (1, 0, 2), (1, 1, 1)),
        (1, (0, 1, 2), (2, 1, 0)),
        (-1, (0, 1, 2), (2, 0, 1)),
    ),
    "nongroup5": (
        (1, (1, 2, 0), (1, 0, 2)),
        (-1, (1, 1, 1), (0, 1, 2)),
        (-1, (0, 2, 1), (1, 1, 1)),
        (1, (0, 2, 1), (0, 1, 2)),
        (-1, (0, 1, 2), (0, 2, 1)),
        (1, (0, 0, 3), (0, 3, 0)),
    ),
}

# printed perspectivities A1 -> A3 whose axes are l_24 and l_25
QUINTIC_SQUARES = {"cyclic5": cyclic_table(5), "nongroup5": NONGROUP_5}


def _check_which(which: str):
    if which not in HYPERSURFACES:
        raise ValueError(f"unknown quintic family {which!r}; use 'cyclic5' or 'nongroup5'")


def hypersurface_eval(which: str, s: Sequence, t: Sequence) -> Scalar:
    """Value of the degree-(3,3) form cutting out the parameter space."""
    _check_which(which)
    K = common_field(list(s) + list(t))
    s = [K(x) for x in s]
    t = [K(x) for x in t]
    total = K.zero
    for c, a, b in HYPERSURFACES[which]:
        term = K(c)
        for v, e in zip(s, a):
            term = term * v ** e
        for v, e in zip(t, b):
            term = term * v ** e
        total = total + term
    return total


def _t0_coefficients(which: str, s: Sequence, t1, t2) -> list:
    """Coefficients (low degree first) of the equation as a polynomial in t0."""
    coeffs = [0, 0, 0]
    for c, a, b in HYPERSURFACES[which]:
        term = c * s[0] ** a[0] * s[1] ** a[1] * s[2] ** a[2] * t1 ** b[1] * t2 ** b[2]
        coeffs[b[0]] += term
    return coeffs


@dataclass(frozen=True)
class HypersurfacePoint:
    which: str
    s: tuple[Scalar, Scalar, Scalar]
    t: tuple[Scalar, Scalar, Scalar]

    def __post_init__(self):
        _check_which(self.which)
        if not hypersurface_eval(self.which, self.s, self.t).is_zero():
            raise ValueError("point is not on the hypersurface")

    @property
    def field(self) -> NumberField:
        return common_field(list(self.s) + list(self.t))


@dataclass
class QuinticResult:
    config: KNetConfig
    which: str
    square: LatinSquare
    derived: dict[str, ProjLine]
    notes: list[str] = dc_field(default_factory=list)
    extra_axes: list = dc_field(default_factory=list)


def quintic_printed_lines(which: str, s: Sequence, t: Sequence):
    """Printed lines of classes 1 and 3 (class 1 of the cyclic family lacks
    l_13, which is derived from the other lines)."""
    _check_which(which)
    K, (s, t) = _params(s, t)
    s0, s1, s2 = s
    t0, t1, t2 = t
    L = lambda *c: _line(K, *c)
    if which == "cyclic5":
        A1 = [L(1, 1, 1), L(s0 * t1, s1 * t1, s2 * t0), None, L(s2 * t0, s1 * t2, s2 * t2), L(s2 * t0, s1 * t1, s1 * t2)]
        A3 = [L(s2 * t0, s1 * t2, s1 * t2), L(s2 * t0, s1 * t1, s2 * t0), L(s0 * t1, s0 * t1, s2 * t0), L(s0, s1, s2), L(t0, t1, t2)]
    else:
        A1 = [
            L(1, 1, 1),
            L(s0 * s2 * t1, s1 * s2 * t1, s0 * s1 * t2),
            L(s2 * t0 * t1, s1 * t0 * t2, s2 * t1 * t2),
            L(s1 * t0, s1 * t1, s2 * t1),
            L(s0 * t2, s2 * t1, s2 * t2),
        ]
        A3 = [L(s2 * t1, s1 * t2, s1 * t2), L(s0 * t2, s2 * t1, s0 * t2), L(s1 * t0, s1 * t0, s2 * t1), L(s0, s1, s2), L(t0, t1, t2)]
    A2 = [L(1, 0, 0), L(0, 1, 0), L(0, 0, 1)]
    return K, A1, A2, A3


def _fiber_for_A1_line(i: int, A2: Sequence[ProjLine], A3: Sequence[ProjLine], M: LatinSquare) -> list[ProjPoint]:
    """Points l_2j ^ l_3M[i][j] for the three known lines of class 2."""
    pts = []
    for j, b in enumerate(A2):
        c = A3[M[i, j] - 1]
        if b == c:
            raise DegenerateParameters(f"l_2{j + 1} coincides with l_3{M[i, j]}")
        pts.append(meet(b, c))
    return pts


def quintic_build(which: str, p: HypersurfacePoint) -> QuinticResult:
    """Assemble a (3,5)-net from a hypersurface point, deriving what the
    printed tables leave out and cross-checking everything else."""
    _check_which(which)
    if p.which != which:
        raise ValueError(f"point belongs to {p.which}, not {which}")
    M = QUINTIC_SQUARES[which]
    K, A1, A2, A3 = quintic_printed_lines(which, p.s, p.t)
    notes = []
    derived = {}

    if len(set(A3)) != 5:
        raise DegenerateParameters("class 3 has repeated lines")

    # every class-1 line must carry its three meets with classes 2 and 3
    for i in range(5):
        pts = sorted(set(_fiber_for_A1_line(i, A2, A3, M)), key=lambda q: q.sort_key())
        if A1[i] is None:
            try:
                A1[i] = line_through_fiber(pts, 1, i + 1)
            except (CompletionFailed, ValueError) as exc:
                raise DegenerateParameters(f"cannot derive l_1{i + 1}: {exc}") from exc
            derived[f"l1{i + 1}"] = A1[i]
            notes.append(f"l1{i + 1} derived from its fiber: {A1[i]}")
        else:
            missing = [q for q in pts if not incident(q, A1[i])]
            if missing:
                raise TranscriptionMismatch(f"printed l_1{i + 1} = {A1[i]} misses {missing}")

    if which == "cyclic5":
        s0, s1, s2 = [K(x) for x in p.s]
        t0, t1, t2 = [K(x) for x in p.t]
        guess = ProjLine((s0 * t0, s0 * t1, s2 * t0), K)
        notes.append(
            "l13 with u0 read as t0 "
            + ("matches" if guess == A1[2] else "does NOT match")
            + " the derived line"
        )

    if len(set(A1)) != 5:
        raise DegenerateParameters("class 1 has repeated lines")

    # l_24, l_25: axes of the perspectivities A1 -> A3 given by columns 4, 5
    for j in (3, 4):
        pts = sorted({meet(A1[i], A3[M[i, j] - 1]) for i in range(5) if A1[i] != A3[M[i, j] - 1]},
                     key=lambda q: q.sort_key())
        if len(pts) < 5:
            raise DegenerateParameters(f"perspectivity for l_2{j + 1} has coincident meets")
        try:
            axis = line_through_fiber(pts, 2, j + 1)
        except CompletionFailed as exc:
            cert = exc.certificate
            raise AxisFailure(
                f"meets for l_2{j + 1} are not collinear (det = {cert.determinant})",
                points=cert.points,
                determinant=cert.determinant,
            ) from exc
        A2.append(axis)
        derived[f"l2{j + 1}"] = axis

    config = build_net([A1, A2, A3], name=which)
    labelled = latin_squares_of_labelled(config)[0]
    if labelled != M:
        notes.append(f"square in printed labels differs from the intended one:\n{labelled}")

    printed = {tuple(M[i, j] for i in range(5)) for j in range(5)}
    extra = [q for q in find_perspectivities(A1, A3) if q.sigma not in printed]
    if extra:
        notes.append(f"{len(extra)} additional perspectivities between classes 1 and 3")
    return QuinticResult(config, which, labelled, derived, notes, extra)


def quintic_net(which: str, p: HypersurfacePoint) -> KNetConfig:
    return quintic_build(which, p).config


def _height_order(bound: int):
    """Integer 5-tuples with entries in [-bound, bound], by max |entry| then
    lexicographically."""
    for h in range(1, bound + 1):
        rng = range(-h, h + 1)
        for tup in product(rng, repeat=5):
            if max(abs(x) for x in tup) == h:
                yield tup


def _solve_t0(which: str, s: Sequence[Fraction], t1: Fraction, t2: Fraction):
    """Roots t0 of the hypersurface equation, exact, possibly in Q(sqrt D)."""
    c0, c1, c2 = _t0_coefficients(which, s, t1, t2)
    if c2 == 0:
        if c1 == 0:
            return []
        return [QQ(Fraction(-c0) / c1)]
    disc = Fraction(c1 * c1 - 4 * c2 * c0)
    if disc == 0:
        return [QQ(Fraction(-c1) / (2 * c2))]
    r = rational_sqrt(disc)
    if r is not None:
        return [QQ((-c1 + r) / (2 * c2)), QQ((-c1 - r) / (2 * c2))]
    scale, core = squarefree_split(disc)
    K = make_quadratic_field(core)
    a = K.gen * scale
    return [(a - c1) / (2 * c2), (-a - c1) / (2 * c2)]


def sample_hypersurface(which: str, search_bound: int) -> HypersurfacePoint:
    """First point (in a fixed enumeration) on the parameter hypersurface that
    gives a generic net.

    s and (t1, t2) run over integer tuples with entries up to ``search_bound``;
    t0 is then solved exactly (linear for nongroup5, at most quadratic for
    cyclic5, adjoining a square root when needed).
    """
    _check_which(which)
    for s0, s1, s2, t1, t2 in _height_order(search_bound):
        s = [Fraction(s0), Fraction(s1), Fraction(s2)]
        if not any(s) or (t1 == 0 and t2 == 0):
            continue
        for t0 in _solve_t0(which, s, Fraction(t1), Fraction(t2)):
            K = t0.field
            try:
                pt = HypersurfacePoint(which, tuple(K(x) for x in s), (t0, K(t1), K(t2)))
                quintic_build(which, pt)
            except (DegenerateParameters, ValueError):
                continue
            return pt
    raise SearchExhausted(f"no generic point of {which} with entries up to {search_bound}")


# -- desmic tetrahedra --------------------------------------------------------

def desmic_tetrahedra() -> dict[str, list[ProjPoint3]]:
    P = lambda *c: ProjPoint3(c, QQ)
    return {
        "X": [P(1, 0, 0, 0), P(0, 1, 0, 0), P(0, 0, 1, 0), P(0, 0, 0, 1)],
        "Y": [P(1, 1, 1, 1), P(1, 1, -1, -1), P(1, -1, 1, -1), P(1, -1, -1, 1)],
        "Z": [P(-1, 1, 1, 1), P(1, -1, 1, 1), P(1, 1, -1, 1), P(1, 1, 1, -1)],
    }


@dataclass
class VertexPerspectivity:
    vertex: str
    pair: tuple[str, str]
    sigma: tuple[int, ...] | None
    reverse_ok: bool


@dataclass
class DesmicReport:
    vertex_checks: list[VertexPerspectivity]
    square: LatinSquare | None
    isotopic_to_klein: bool
    consistent: bool

    @property
    def passed(self) -> bool:
        return (
            all(v.sigma is not None and v.reverse_ok for v in self.vertex_checks)
            and self.isotopic_to_klein
            and self.consistent
        )


def _vertex_perm(v: ProjPoint3, U: Sequence[ProjPoint3], W: Sequence[ProjPoint3]):
    sigma = []
    for u in U:
        hits = [k for k, w in enumerate(W, 1) if rank_of_point_matrix3d([v, u, w]) <= 2]
        if len(hits) != 1:
            return None
        sigma.append(hits[0])
    if sorted(sigma) != list(range(1, len(W) + 1)):
        return None
    return tuple(sigma)


def desmic_check() -> DesmicReport:
    """Any two desmic tetrahedra are perspective from each vertex of the
    third; the perspectivities form a Latin square isotopic to Z/2 x Z/2."""
    T = desmic_tetrahedra()
    names = ["X", "Y", "Z"]
    checks = []
    triples = {}
    for a in names:
        b, c = [n for n in names if n != a]
        for i, v in enumerate(T[a], 1):
            sigma = _vertex_perm(v, T[b], T[c])
            back = _vertex_perm(v, T[c], T[b])
            rev_ok = sigma is not None and back is not None and all(back[sigma[j] - 1] == j + 1 for j in range(4))
            checks.append(VertexPerspectivity(f"{a}{i}", (b, c), sigma, rev_ok))
            if sigma is not None:
                for j, k in enumerate(sigma, 1):
                    idx = {a: i, b: j, c: k}
                    triples.setdefault(a, set()).add((idx["X"], idx["Y"], idx["Z"]))
    square = None
    iso = False
    sets = list(triples.values())
    consistent = len(sets) == 3 and all(s == sets[0] for s in sets)
    if all(ch.sigma is not None for ch in checks[:4]):
        try:
            square = LatinSquare(tuple(ch.sigma for ch in checks[:4]))
            iso = canonical_form(square) == canonical_form(klein_table())
        except ValueError:
            square = None
    return DesmicReport(checks, square, iso, consistent)


FAMILY_NAMES = (
    "conic",
    "fermat",
    "cubic",
    "hesse",
    "quartic-cyclic",
    "quartic-klein",
    "quintic-cyclic",
    "quintic-nongroup",
)

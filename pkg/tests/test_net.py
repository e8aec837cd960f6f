import random
from fractions import Fraction

import pytest
import sympy

from knets.errors import (
    BadBasePoints,
    CompletionFailed,
    DegenerateData,
    SharedLine,
    TooManyOnALine,
)
from knets.families import CONIC_POINTS, conic_net, cubic_net, hesse_net
from knets.field import QQ, make_cyclotomic_field
from knets.geometry import collinear, incident, join, line, meet, point
from knets.latin import LatinSquare, canonical_form, cyclic_table, is_orthogonal_pair, square
from knets.linalg import det3
from knets.net import (
    CHECK_NAMES,
    KNetConfig,
    axis_of_homology,
    complete_net,
    derive_latin_squares,
    discover_parallel_classes,
    find_perspectivities,
    is_admissible,
    label_net,
    perspectivity_search,
    verify_net,
)

from conftest import rand_frac
from witnesses import A1, COUNT1, COUNT2, COUNT4, pair

Z3 = cyclic_table(3)


def raw_cubic_bases(s0, s1, t0, t1):
    """A1, A2 with l22 = [s0:s1:s2], l23 = [t0:t1:t2] after imposing only the
    first two collinearity conditions (s0 t2 = s1 t0 and s1 t0 = s2 t1)."""
    t2 = s1 * t0 / s0
    s2 = s1 * t0 / t1
    return A1, [line(1, 1, 1), line(s0, s1, s2), line(t0, t1, t2)]


# -- verification --------------------------------------------------------------

def test_conic_net_verifies():
    report = verify_net(conic_net())
    assert report.passed and report.k == 3 and report.d == 2
    assert set(report.checks) == set(CHECK_NAMES)


def test_missing_point_is_reported():
    cfg = conic_net()
    broken = KNetConfig(cfg.classes, cfg.points[1:], cfg.field)
    report = verify_net(broken)
    assert not report.passed
    assert not report.checks["meets_are_points"].passed
    assert report.checks["meets_are_points"].witnesses


def test_shared_line_is_reported():
    cfg = conic_net()
    classes = [list(cfg.classes[0]), [cfg.classes[0][0], cfg.classes[1][1]], list(cfg.classes[2])]
    report = verify_net(KNetConfig.from_lines(classes, points=cfg.points))
    assert not report.checks["classes_disjoint"].passed


def test_unequal_class_sizes_are_reported():
    h = hesse_net()
    classes = [list(c) for c in h.classes]
    classes[3] = classes[3][:2]
    report = verify_net(KNetConfig.from_lines(classes, points=h.points))
    assert not report.checks["equal_class_sizes"].passed


# -- Latin squares of nets -----------------------------------------------------

def test_conic_square():
    assert derive_latin_squares(conic_net()) == [square([[1, 2], [2, 1]])]


def test_hesse_squares_are_orthogonal():
    M3, M4 = derive_latin_squares(hesse_net())
    assert is_orthogonal_pair(M3, M4)


def test_labelling_puts_first_row_in_order():
    for M in derive_latin_squares(hesse_net()):
        assert M.cells[0] == (1, 2, 3)


def test_cubic_square_is_z3(rng):
    for _ in range(5):
        s = [rand_frac(rng, nonzero=True), rand_frac(rng, nonzero=True)]
        t = [rand_frac(rng, nonzero=True), rand_frac(rng, nonzero=True)]
        try:
            cfg = cubic_net(s, t)
        except ValueError:
            continue
        [M] = derive_latin_squares(cfg)
        assert canonical_form(M) == canonical_form(Z3)


# -- completion ----------------------------------------------------------------

def test_completion_reproduces_l33():
    s0, s1, t0, t1 = map(Fraction, (1, 2, 1, 3))
    B1, B2 = raw_cubic_bases(s0, s1, t0, t1)
    cfg = complete_net(B1, B2, [Z3])
    assert cfg.classes[2][2] == line(s0 * t1, s0 * t1, s1 * t0) == line(3, 3, 2)
    assert verify_net(cfg).passed


def test_completion_matches_sympy_l33():
    # oracle: solve the third fiber's line symbolically, then substitute
    s0, s1, t0, t1 = sympy.symbols("s0 s1 t0 t1")
    t2 = s1 * t0 / s0
    s2 = s1 * t0 / t1
    p = sympy.Matrix([0, t2, -t1])
    q = sympy.Matrix([s2, 0, -s0])
    l33 = sympy.simplify(p.cross(q) * s0 * t1)
    ratio = [sympy.simplify(l33[i] / l33[2]) for i in range(3)]
    assert ratio == [s0 * t1 / (s1 * t0), s0 * t1 / (s1 * t0), 1]


def test_completion_failure_certificate():
    s0, s1, s2 = map(Fraction, (1, 2, 5))
    t0, t1, t2 = map(Fraction, (1, 3, 7))
    assert -s1 * t0 + s0 * t2 != 0
    with pytest.raises(CompletionFailed) as info:
        complete_net(A1, [line(1, 1, 1), line(s0, s1, s2), line(t0, t1, t2)], [Z3])
    cert = info.value.certificate
    assert (cert.square_index, cert.symbol) == (3, 1)
    assert not cert.determinant.is_zero()
    # same determinant up to the scaling of the three canonical points
    rows = [point(0, 1, -1), point(t2, 0, -t0), point(s1, -s0, 0)]
    assert set(cert.points) == set(rows)
    expected = det3(*(r.coords for r in rows))
    assert cert.determinant in (expected, -expected)
    raw = -s1 * t0 + s0 * t2
    assert (expected / raw).is_rational()


def test_completion_bad_bases():
    with pytest.raises(BadBasePoints):
        complete_net(A1, A1, [Z3])


# -- perspectivities -------------------------------------------------------------

def test_hesse_sixfold():
    h = hesse_net()
    assert len(find_perspectivities(h.classes[0], h.classes[1])) == 6


def test_cubic_threefold_rows_of_m3():
    cfg = label_net(cubic_net([1, 2], [1, 3]))
    found = find_perspectivities(cfg.classes[0], cfg.classes[1])
    [M] = derive_latin_squares(cfg)
    assert len(found) == 3
    # each perspectivity sends l_1i to the l_2j sharing a symbol-n point: a symbol fiber
    sigmas = {p.sigma for p in found}
    fibers = {tuple(next(j + 1 for j in range(3) if M[i, j] == n) for i in range(3)) for n in (1, 2, 3)}
    assert sigmas == fibers


@pytest.mark.parametrize("witness,count", [(COUNT1, 1), (COUNT2, 2), (COUNT4, 4)])
def test_fixed_witnesses(witness, count):
    A, B = pair(*witness)
    assert len(find_perspectivities(A, B)) == count


def test_generic_triangles_have_no_perspectivity(rng):
    for _ in range(20):
        B = [line(*(rand_frac(rng, nonzero=True) for _ in range(3))) for _ in range(3)]
        if len(set(B) | set(A1)) < 6:
            continue
        assert find_perspectivities(A1, B) == []


def test_shared_line_rejected():
    with pytest.raises(SharedLine):
        find_perspectivities(A1, [A1[0], line(1, 1, 1), line(1, 2, 3)])


def test_degenerate_permutations_are_separate():
    # all six lines pass through [1:1:1], so every permutation degenerates
    A = [line(1, -1, 0), line(0, 1, -1), line(1, 0, -1)]
    B = [line(1, 1, -2), line(1, -2, 1), line(-2, 1, 1)]
    res = perspectivity_search(A, B)
    assert res.perspectivities == []
    assert len(res.degenerate) == 6
    assert all(x == point(1, 1, 1) for _, x in res.degenerate)


# -- axis of homology --------------------------------------------------------------

def homology_pairs(A1, A2, M):
    """Each symbol-1 meet paired with the symbol-2 meet sharing neither its
    row nor its column; for Z/3 this is the projectivity between the first
    two lines of the third class."""
    cells = {n: [(i, j) for i in range(3) for j in range(3) if M[i, j] == n] for n in (1, 2)}
    out = []
    for i, j in cells[1]:
        (k, l), = [(k, l) for k, l in cells[2] if k != i and l != j]
        out.append((meet(A1[i], A2[j]), meet(A1[k], A2[l])))
    return out


def test_axis_on_cubic_member_is_l33():
    from knets.families import cubic_lines
    A, B, C = cubic_lines([1, 2], [1, 3])
    pairs = homology_pairs(A, B, Z3)
    axis = axis_of_homology(pairs, C[0], C[1])
    assert axis == C[2] == line(3, 3, 2)


def test_axis_on_hesse_rows():
    cfg = label_net(hesse_net())
    A, B = cfg.classes[0], cfg.classes[1]
    for M, C in zip(derive_latin_squares(cfg), cfg.classes[2:]):
        pairs = homology_pairs(A, B, M)
        assert axis_of_homology(pairs, C[0], C[1]) == C[2]


def test_axis_simple():
    # projectivity between x = 0 and y = 0 given by three pairs
    l, m = line(1, 0, 0), line(0, 1, 0)
    ps = [point(0, 1, 1), point(0, 2, 1), point(0, 3, 1)]
    qs = [point(1, 0, 1), point(2, 0, 1), point(3, 0, 1)]
    axis = axis_of_homology(list(zip(ps, qs)), l, m)
    for i in range(3):
        for j in range(3):
            if i != j:
                assert incident(meet(join(ps[i], qs[j]), join(ps[j], qs[i])), axis)
    with pytest.raises(DegenerateData):
        axis_of_homology(list(zip(ps, ps)), l, l)


# -- discovery ----------------------------------------------------------------------

def test_discover_hesse_and_conic():
    h = hesse_net()
    found = discover_parallel_classes(h.points, 3)
    assert len(found) == 4
    assert {c.as_set() for c in found} == {c.as_set() for c in h.classes}
    assert len(discover_parallel_classes(CONIC_POINTS, 2)) == 3


def test_discover_generic_points(rng):
    pts = []
    while len(pts) < 9:
        p = point(*(rand_frac(rng, 9, nonzero=True) for _ in range(3)))
        if p not in pts:
            pts.append(p)
    assert discover_parallel_classes(pts, 3) == []


def test_discover_too_many_on_a_line():
    pts = [point(1, i, 0) for i in range(4)] + [point(i, 1, 1) for i in range(5)]
    with pytest.raises(TooManyOnALine):
        discover_parallel_classes(pts, 3)


def test_admissibility():
    assert is_admissible(3, 2)
    assert not is_admissible(5, 5)
    assert is_admissible(5, 6)
    assert not any(is_admissible(6, d) for d in range(2, 12))

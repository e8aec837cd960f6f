import random
from fractions import Fraction

import pytest
import sympy

from knets.errors import CoincidentLines, CoincidentPoints, SingularTransform
from knets.field import QQ, make_cyclotomic_field
from knets.geometry import (
    ProjPoint,
    ProjPoint3,
    ProjTransform,
    collinear,
    concurrent,
    incident,
    join,
    line,
    meet,
    point,
    rank_of_point_matrix3d,
)
from knets.linalg import det, nullspace, rank, rref

from conftest import rand_frac


def test_canonical_representative():
    p = point(0, 2, -2)
    assert p == point(0, 1, -1)
    assert p.coords[1] == 1
    with pytest.raises(ValueError):
        point(0, 0, 0)


def test_incidence_examples():
    assert incident(point(0, 1, -1), line(1, 0, 0))
    assert not incident(point(1, 1, 1), line(1, 0, 0))
    assert incident(point(1, 0, 0), line(0, 0, 1))


def test_meet_examples():
    assert meet(line(1, 0, 0), line(1, 1, 1)) == point(0, 1, -1)
    assert meet(line(1, 0, 0), line(0, 1, 0)) == point(0, 0, 1)
    t = (Fraction(2), Fraction(-3), Fraction(5))
    assert meet(line(0, 1, 0), line(*t)) == point(t[2], 0, -t[0])
    with pytest.raises(CoincidentLines):
        meet(line(1, 2, 3), line(2, 4, 6))


def test_join_examples():
    assert join(point(1, 0, 0), point(0, 1, 0)) == line(0, 0, 1)
    assert join(point(0, 1, -1), point(1, 0, -1)) == line(1, 1, 1)
    with pytest.raises(CoincidentPoints):
        join(point(1, 2, 3), point(1, 2, 3))


def test_collinear_cubic_condition():
    # [0:1:-1], [t2:0:-t0], [s1:-s0:0] are collinear iff s0 t2 = s1 t0
    s0, s1, t0, t2 = 1, 2, 1, 2
    pts = [point(0, 1, -1), point(t2, 0, -t0), point(s1, -s0, 0)]
    assert collinear(pts)
    t2 = 3
    pts = [point(0, 1, -1), point(t2, 0, -t0), point(s1, -s0, 0)]
    assert not collinear(pts)
    assert collinear([point(1, 2, 3)] * 3)
    assert not collinear([point(1, 0, 0), point(0, 1, 0), point(0, 0, 1)])


def test_concurrent():
    assert concurrent([line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)])
    assert not concurrent([line(1, 0, 0), line(0, 1, 0), line(0, 0, 1)])
    K = make_cyclotomic_field(3)
    w = K.gen
    assert concurrent([line(1, 0, 0), line(1, 1, 1), line(w, 1, 1)])


def test_rank_in_p3():
    X1 = ProjPoint3((1, 0, 0, 0))
    Y1 = ProjPoint3((1, 1, 1, 1))
    Z1 = ProjPoint3((-1, 1, 1, 1))
    assert rank_of_point_matrix3d([X1, Y1, Z1]) == 2
    assert rank_of_point_matrix3d([X1, ProjPoint3((0, 1, 0, 0)), ProjPoint3((0, 0, 1, 0))]) == 3
    assert rank_of_point_matrix3d([Y1, Y1]) == 1


def test_transforms():
    I = ProjTransform.identity()
    assert I.apply(point(1, 2, 3)) == point(1, 2, 3)
    T = ProjTransform([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert T.apply(point(0, 0, 1)) == point(0, 0, 1)
    X = [point(1, 0, 0), point(0, 1, 0), point(0, 0, 1), point(1, 1, 1)]
    F = ProjTransform.from_frame(*X)
    assert F.apply(point(1, 0, 0)) == point(1, 0, 0)
    assert F.apply(point(1, 1, 1)) == point(1, 1, 1)
    with pytest.raises(SingularTransform):
        ProjTransform([[1, 2, 3], [2, 4, 6], [0, 0, 1]])


def test_transform_preserves_incidence(rng):
    for _ in range(40):
        M = [[rand_frac(rng) for _ in range(3)] for _ in range(3)]
        try:
            T = ProjTransform(M)
        except SingularTransform:
            continue
        p = point(*(rand_frac(rng, nonzero=True) for _ in range(3)))
        q = point(*(rand_frac(rng, nonzero=True) for _ in range(3)))
        if p == q:
            continue
        l = join(p, q)
        assert incident(T.apply(p), T.apply_line(l))
        assert T.apply_line(l) == join(T.apply(p), T.apply(q))


def test_meet_join_duality(rng):
    for _ in range(100):
        l = line(*(rand_frac(rng, nonzero=True) for _ in range(3)))
        m = line(*(rand_frac(rng, nonzero=True) for _ in range(3)))
        if l == m:
            continue
        x = meet(l, m)
        assert incident(x, l) and incident(x, m)


def test_linalg_against_sympy(rng):
    for _ in range(30):
        n, k = rng.randint(2, 4), rng.randint(2, 5)
        M = [[rand_frac(rng, 3) for _ in range(k)] for _ in range(n)]
        if rng.random() < 0.3:
            M[-1] = [a + b for a, b in zip(M[0], M[1 % n])]
        Ms = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in M])
        Q = [[QQ(x) for x in r] for r in M]
        assert rank(Q) == Ms.rank()
        R, piv = rref(Q)
        assert tuple(piv) == Ms.rref()[1]
        for v in nullspace(Q, QQ.zero, QQ.one):
            assert all(sum((a * b for a, b in zip(row, v)), QQ.zero).is_zero() for row in Q)
        assert len(nullspace(Q, QQ.zero, QQ.one)) == k - Ms.rank()
        if n == k:
            d = Ms.det()
            assert det(Q) == Fraction(int(d.p), int(d.q))

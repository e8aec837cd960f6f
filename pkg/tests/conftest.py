"""Shared helpers: random rationals and a sympy oracle for field elements."""

import random
from fractions import Fraction

import pytest
import sympy

from knets.field import Scalar

A = sympy.Symbol("a")


def rand_frac(rng: random.Random, bound: int = 7, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def to_sympy(x: Scalar):
    """Polynomial in the symbol a, reduced modulo the field's defining polynomial."""
    return sum(sympy.Rational(c.numerator, c.denominator) * A ** i for i, c in enumerate(x.coeffs))


def sympy_reduce(expr, field):
    poly = sum(sympy.Rational(c.numerator, c.denominator) * A ** i for i, c in enumerate(field.poly))
    return sympy.rem(sympy.expand(expr), poly, A)


def same_element(x: Scalar, expr) -> bool:
    return sympy.expand(sympy_reduce(expr, x.field) - to_sympy(x)) == 0


@pytest.fixture
def rng():
    return random.Random(20240611)


# -- acceptance summary ----------------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or not report.nodeid.split("::")[0].endswith("test_acceptance.py"):
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    if not name.startswith("test_criterion_"):
        return
    n = int(name.split("_")[2])
    # parametrized cases share a criterion; any failing case fails it
    previous = ACCEPTANCE.get(n, (name, "PASS"))[1]
    ACCEPTANCE[n] = (name, "PASS" if report.passed and previous == "PASS" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        name, status = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  ({name})")

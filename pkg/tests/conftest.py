import random

import numpy as np
import pytest
import sympy

from csazkp import Algebra, RatArray

# criterion number -> (name, passed, detail); filled by test_acceptance
CRITERIA = {}


def record(number, name, passed, detail=""):
    CRITERIA[number] = (name, bool(passed), detail)
    print(f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {name}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        name, passed, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {name}: {detail}")


@pytest.fixture
def rng():
    return random.Random(20240601)


def matrix_units(k):
    """Structure constants of M_k(Q) in the basis e_ij, index i*k + j."""
    m = k * k
    g = np.zeros((m, m, m), dtype=object)
    for i in range(k):
        for j in range(k):
            for l in range(k):
                g[i * k + j, j * k + l, i * k + l] = 1
    return Algebra(RatArray(g))


def to_sympy(a):
    return sympy.Matrix(a.rows, a.cols, [sympy.Rational(f.numerator, f.denominator) for f in a.entries])


def sympy_poly(f):
    t = sympy.Symbol("t")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], t)

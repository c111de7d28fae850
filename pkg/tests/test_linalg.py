from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from csazkp import RatArray, UsageError, determinant, invert_matrix, kernel_basis, rank, solve_linear
from csazkp.linalg import as_rational

from conftest import to_sympy

small = st.integers(-6, 6)
fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def mat(shape_r, shape_c, elems=fractions):
    return st.lists(st.lists(elems, min_size=shape_c, max_size=shape_c), min_size=shape_r, max_size=shape_r)


def random_matrix(rng, r, c, h=5):
    return RatArray([[rng.randint(-h, h) for _ in range(c)] for _ in range(r)])


def test_canonical_form():
    a = RatArray([2, 4, 6], 4)
    assert a.den == 2 and list(a.num) == [1, 2, 3]
    assert RatArray([1, 2], -3) == RatArray([-1, -2], 3)
    assert RatArray.of(["1/2", 1, Fraction(3, 4)]).entries == [Fraction(1, 2), 1, Fraction(3, 4)]
    assert RatArray.zeros((2, 2)).den == 1


def test_floats_refused():
    for bad in (0.5, True, np.float64(1.0)):
        with pytest.raises(UsageError):
            as_rational(bad)
    with pytest.raises(UsageError):
        RatArray.of([1.5, 2])


def test_arithmetic_and_indexing():
    a = RatArray.of([[1, "1/2"], [0, 3]])
    b = RatArray.identity(2)
    assert (a + b).tolist() == [[2, Fraction(1, 2)], [0, 4]]
    assert (a - a).is_zero()
    assert (a * Fraction(2)).is_integral()
    assert a[0, 1] == Fraction(1, 2)
    assert a[1].entries == [0, 3]
    assert (a @ b) == a
    with pytest.raises(UsageError):
        a @ RatArray.of([1, 2, 3])
    assert hash(RatArray.of([[1, 2]])) == hash(RatArray([[2, 4]], 2))


def test_solve_identity_system():
    x = solve_linear(RatArray.identity(2), RatArray.of([3, "1/2"]))
    assert x.entries == [3, Fraction(1, 2)]


def test_solve_inconsistent():
    assert solve_linear(RatArray.of([[1, 1], [2, 2]]), RatArray.of([1, 3])) is None


def test_solve_underdetermined_sets_free_variables_to_zero():
    x = solve_linear(RatArray.of([[1, 2, 3]]), RatArray.of([6]))
    assert x.entries == [6, 0, 0]


def test_solve_dimension_mismatch():
    with pytest.raises(UsageError):
        solve_linear(RatArray.identity(2), RatArray.of([1, 2, 3]))


def test_solve_random_multiply_back(rng):
    for _ in range(50):
        A = random_matrix(rng, 5, 5)
        if determinant(A) == 0:
            continue
        b = RatArray.of([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5)])
        assert A @ solve_linear(A, b) == b


def test_invert_small_cases():
    assert invert_matrix(RatArray.identity(3)) == RatArray.identity(3)
    swap = RatArray.of([[0, 1], [1, 0]])
    assert invert_matrix(swap) == swap
    assert invert_matrix(RatArray.of([[1, 2], [2, 4]])) is None
    with pytest.raises(UsageError):
        invert_matrix(RatArray.of([[1, 2, 3]]))


def test_invert_random_multiply_back(rng):
    for _ in range(50):
        A = random_matrix(rng, 4, 4)
        inv = invert_matrix(A)
        if determinant(A) == 0:
            assert inv is None
            continue
        assert A @ inv == RatArray.identity(4) == inv @ A


def test_kernel_small_cases():
    assert kernel_basis(RatArray.identity(2)) == []
    (v,) = kernel_basis(RatArray.of([[1, 1], [1, 1]]))
    assert v.entries == [1, -1]


def test_kernel_rank_deficient_against_sympy(rng):
    for _ in range(30):
        # 6x4 of rank at most 2
        A = random_matrix(rng, 6, 2) @ random_matrix(rng, 2, 4)
        basis = kernel_basis(A)
        assert len(basis) == 4 - to_sympy(A).rank()
        for v in basis:
            assert (A @ v).is_zero()
            assert v.entries[next(i for i, c in enumerate(v.entries) if c)] == 1


@settings(max_examples=60, deadline=None)
@given(mat(4, 4))
def test_determinant_and_rank_match_sympy(rows):
    A = RatArray.of(rows)
    S = sympy.Matrix(rows)
    assert determinant(A) == Fraction(str(S.det()))
    assert rank(A) == S.rank()


@settings(max_examples=60, deadline=None)
@given(mat(3, 5))
def test_rank_nullity(rows):
    A = RatArray.of(rows)
    assert rank(A) + len(kernel_basis(A)) == 5


@settings(max_examples=60, deadline=None)
@given(mat(4, 3), st.lists(fractions, min_size=4, max_size=4))
def test_solve_is_consistent_with_sympy(rows, rhs):
    A, b = RatArray.of(rows), RatArray.of(rhs)
    x = solve_linear(A, b)
    S = sympy.Matrix(rows)
    solvable = S.rank() == S.row_join(sympy.Matrix(rhs)).rank()
    assert (x is not None) == solvable
    if x is not None:
        assert A @ x == b


def test_empty_edge_cases():
    assert determinant(RatArray(np.zeros((0, 0), dtype=object))) == 1
    assert rank(RatArray(np.zeros((0, 3), dtype=object))) == 0

"""Exact linear algebra cross-checked against sympy."""

from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from hypothesis import given, settings, strategies as st

from leafatlas.linalg import (
    Lattice,
    Subspace,
    det,
    identity,
    integer_kernel,
    inverse,
    mat,
    matmul,
    nullspace,
    quotient_invariants,
    rank,
    row_hnf,
    rref,
    smith_normal_form,
    solve,
    subspace_from_columns,
)

small_frac = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


def _matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(small_frac, min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            )
        )
    )


@settings(max_examples=60, deadline=None)
@given(_matrices())
def test_rank_matches_sympy(rows):
    a = mat(rows)
    assert rank(a) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(_matrices())
def test_det_matches_sympy_when_square(rows):
    if len(rows) != len(rows[0]):
        return
    a = mat(rows)
    expected = sympy.Matrix(rows).det()
    assert det(a) == Fraction(expected.p, expected.q)


@settings(max_examples=40, deadline=None)
@given(_matrices())
def test_nullspace_is_kernel_of_right_dimension(rows):
    a = mat(rows)
    basis = nullspace(a)
    n = len(rows[0])
    assert len(basis) == n - rank(a)
    for v in basis:
        out = [sum(row[j] * v[j] for j in range(n)) for row in a]
        assert all(x == 0 for x in out)


def test_inverse_round_trip():
    a = mat([[1, 2, 0], [0, 1, 5], [2, 0, 1]])
    assert matmul(a, inverse(a)) == identity(3)


def test_inverse_rejects_singular():
    with pytest.raises(ValueError):
        inverse(mat([[1, 2], [2, 4]]))


def test_solve_returns_solution_or_none():
    a = mat([[1, 2], [3, 4]])
    x = solve(a, [Fraction(5), Fraction(11)])
    assert x == (Fraction(1), Fraction(2))
    assert solve(mat([[1, 1], [1, 1]]), [0, 1]) is None


def test_rref_pivot_columns_are_unit():
    r, pivots = rref(mat([[2, 4, 1], [1, 2, 3]]))
    for row_idx, col in enumerate(pivots):
        assert r[row_idx][col] == 1
        for other in range(len(r)):
            if other != row_idx:
                assert r[other][col] == 0


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-6, 6), min_size=3, max_size=3),
        min_size=2,
        max_size=4,
    )
)
def test_smith_form_transforms_and_divisibility(rows):
    u, d, v = smith_normal_form(rows)
    m, n = len(rows), len(rows[0])
    assert abs(det(mat(u))) == 1
    assert abs(det(mat(v))) == 1
    prod = matmul(matmul(mat(u), mat(rows)), mat(v))
    assert prod == mat(d)
    diag = [d[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0
    nonzero = [x for x in diag if x]
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    # the diagonal itself against sympy
    sd = sympy_snf(sympy.Matrix(rows))
    sdiag = [abs(int(sd[i, i])) for i in range(min(m, n))]
    assert [abs(int(x)) for x in diag] == sdiag


def test_row_hnf_canonicalizes_equal_lattices():
    a = Lattice(2, [[2, 0], [0, 3]])
    b = Lattice(2, [[2, 3], [2, -3], [4, 3]])
    assert a == b


def test_lattice_membership_sum_intersection():
    two = Lattice(1, [[2]])
    three = Lattice(1, [[3]])
    assert two.contains([4]) and not two.contains([3])
    assert two.sum(three) == Lattice(1, [[1]])
    assert two.intersection(three) == Lattice(1, [[6]])


def test_integer_kernel_is_integral_and_spans():
    a = [[2, -4, 0], [1, -2, 0]]
    ker = integer_kernel(a)
    assert len(ker) == 2
    for v in ker:
        assert all(isinstance(x, int) for x in v)
        assert all(sum(r[j] * v[j] for j in range(3)) == 0 for r in a)


def test_quotient_invariants_simple_cases():
    z2 = Lattice(2, [[1, 0], [0, 1]])
    assert quotient_invariants(z2, Lattice(2, [[2, 0], [0, 2]])) == ((2, 2), 0)
    assert quotient_invariants(z2, Lattice(2, [[1, 0], [0, 6]])) == ((6,), 0)
    # corank one sublattice leaves a free factor
    assert quotient_invariants(z2, Lattice(2, [[3, 0]])) == ((3,), 1)


def test_subspace_operations():
    x = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    y = Subspace(3, [(0, 1, 0), (0, 0, 1)])
    assert x.intersect(y).dim == 1
    assert x.add(y).dim == 3
    assert x.contains((Fraction(2), Fraction(-7), Fraction(0)))
    assert not x.contains((0, 0, 1))
    assert subspace_from_columns(mat([[1, 2], [2, 4], [0, 0]])).dim == 1

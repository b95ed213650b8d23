"""Exact rational linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vbgc.errors import DimensionMismatch, SubspaceNotPreserved
from vbgc.rational import (
    MatQ,
    induced_map_on_quotients,
    in_span,
    nullspace_basis,
    quotient_dim,
    rank,
    rref,
    solve,
    unit_vec,
    vec,
)


def test_rank_identity():
    assert rank(MatQ.identity(2)) == 2


def test_rank_zero():
    assert rank(MatQ.zeros(3, 4)) == 0


def test_rank_dependent_rows():
    # [[1,2],[2,4]] eliminates to a single pivot row
    assert rank(MatQ.from_rows([[1, 2], [2, 4]])) == 1


def test_rank_fractions():
    m = MatQ.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 2]])
    assert rank(m) == 2
    singular = MatQ.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(singular) == 1


def test_nullspace_identity_empty():
    assert nullspace_basis(MatQ.identity(3)) == []


def test_nullspace_zero_full():
    basis = nullspace_basis(MatQ.zeros(2, 2))
    assert len(basis) == 2


def test_nullspace_one_equation():
    (v,) = nullspace_basis(MatQ.from_rows([[1, 1]]))
    assert v == vec([-1, 1]) or v == vec([1, -1])
    # solve one equation x + y = 0: basis is (-1, 1) with free column 1
    assert v[0] + v[1] == 0 and v != vec([0, 0])


def test_quotient_dim_examples():
    assert quotient_dim(MatQ.identity(3), 3) == 0
    assert quotient_dim(MatQ.zeros(5, 2), 5) == 5
    assert quotient_dim(MatQ.from_rows([[1], [1]]), 2) == 1
    with pytest.raises(DimensionMismatch):
        quotient_dim(MatQ.identity(3), 4)


def test_induced_map_identity_on_quotient():
    k = MatQ.from_cols([vec([1, 0, 0])])
    m = induced_map_on_quotients(MatQ.identity(3), k, k)
    assert m == MatQ.identity(2)


def test_induced_map_zero():
    k = MatQ.from_cols([vec([1, 1])])
    m = induced_map_on_quotients(MatQ.zeros(2, 2), k, k)
    assert m.is_zero()


def test_induced_map_diag():
    # f = diag(1, 2), quotient by span{(1,0)} on both sides: induced = [2]
    f = MatQ.from_rows([[1, 0], [0, 2]])
    k = MatQ.from_cols([vec([1, 0])])
    m = induced_map_on_quotients(f, k, k)
    assert m == MatQ.from_rows([[2]])


def test_induced_map_rejects_nonpreserving():
    f = MatQ.from_rows([[0, 1], [1, 0]])  # swap does not preserve span{(1,0)}
    k = MatQ.from_cols([vec([1, 0])])
    with pytest.raises(SubspaceNotPreserved):
        induced_map_on_quotients(f, k, k)


def test_solve_exact():
    a = MatQ.from_rows([[2, 1], [1, 3]])
    x = solve(a, vec([5, 5]))
    assert a.apply(x) == vec([5, 5])


def test_in_span():
    k = MatQ.from_cols([vec([1, 2, 0])])
    assert in_span(k, vec([2, 4, 0]))
    assert not in_span(k, vec([1, 2, 1]))


small_entries = st.integers(min_value=-6, max_value=6)


@st.composite
def small_matrix(draw, max_dim=4):
    r = draw(st.integers(min_value=1, max_value=max_dim))
    c = draw(st.integers(min_value=1, max_value=max_dim))
    ents = draw(st.lists(small_entries, min_size=r * c, max_size=r * c))
    return MatQ(r, c, ents)


@given(small_matrix())
@settings(max_examples=60, deadline=None)
def test_rank_equals_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(small_matrix())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    assert rank(m) + len(nullspace_basis(m)) == m.cols


@given(small_matrix())
@settings(max_examples=40, deadline=None)
def test_rref_idempotent_and_consistent(m):
    r, pivots = rref(m)
    assert rank(m) == len(pivots)
    r2, pivots2 = rref(r)
    assert r2 == r and pivots2 == pivots


@given(small_matrix(max_dim=3))
@settings(max_examples=40, deadline=None)
def test_induced_identity_any_subspace(m):
    k = MatQ.from_cols(nullspace_basis(m)) if nullspace_basis(m) else MatQ.zeros(
        m.cols, 0
    )
    ind = induced_map_on_quotients(MatQ.identity(m.cols), k, k)
    assert ind == MatQ.identity(m.cols - rank(k))


def test_nullspace_vectors_are_in_kernel():
    m = MatQ.from_rows([[1, 2, 3], [0, 1, 1]])
    for v in nullspace_basis(m):
        assert m.apply(v) == vec([0, 0])

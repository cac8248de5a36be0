"""Exact sparse linear algebra, checked against sympy."""
from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, strategies as st

from electrical_lie.errors import DimensionMismatch
from electrical_lie.exactla import (
    EchelonBasis,
    SparseMatrix,
    bareiss_rank,
    commutator,
    nullspace,
    rank,
    solve_in_span,
    solve_linear_system,
    vec_to_dense,
)

small = st.integers(min_value=-3, max_value=3)
fracs = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def matrices(entry=small, max_side=6):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r))
    )


def sym(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Q) else x for x in row] for row in m])


@given(matrices())
def test_bareiss_rank_matches_sympy(m):
    assert bareiss_rank(m) == sym(m).rank()


@given(matrices(fracs))
def test_rank_matches_sympy(m):
    assert rank(m) == sym(m).rank()


@given(matrices(fracs))
def test_rank_of_transpose(m):
    s = SparseMatrix.from_dense(m)
    assert rank(s) == rank(s.transpose())


@given(matrices(fracs))
def test_nullspace_dimension_and_kernel(m):
    s = SparseMatrix.from_dense(m)
    ns = nullspace(s)
    assert len(ns) == len(sym(m).nullspace())
    for v in ns:
        assert s.apply(v) == {}


@given(st.lists(st.lists(fracs, min_size=4, max_size=4), min_size=1, max_size=5), st.lists(fracs, min_size=5, max_size=5))
def test_solve_in_span_recombines(vectors, coeffs):
    target = [sum(c * v[k] for c, v in zip(coeffs, vectors)) for k in range(4)]
    x = solve_in_span(vectors, target)
    assert x is not None
    assert [sum(c * v[k] for c, v in zip(x, vectors)) for k in range(4)] == target


def test_solve_in_span_outside():
    assert solve_in_span([[1, 0, 0], [0, 1, 0]], [0, 0, 1]) is None
    assert solve_in_span([[1, 1], [1, -1]], [3, 1]) == [Q(2), Q(1)]
    with pytest.raises(DimensionMismatch):
        solve_in_span([[1, 0]], [1, 0, 0])


@given(matrices(fracs, 5), st.lists(fracs, min_size=5, max_size=5))
def test_linear_system(m, x0):
    nv = len(m[0])
    x0 = x0[:nv]
    eqs = []
    for row in m:
        eq = {k: c for k, c in enumerate(row) if c}
        eq[None] = -sum(c * x for c, x in zip(row, x0))
        eqs.append(eq)
    sol, rk = solve_linear_system(eqs, nv)
    assert rk == sym(m).rank()
    assert sol is not None
    full = vec_to_dense(sol, nv)
    for row in m:
        assert sum(c * x for c, x in zip(row, full)) == sum(c * x for c, x in zip(row, x0))


def test_linear_system_inconsistent():
    sol, _ = solve_linear_system([{0: Q(1), None: Q(-1)}, {0: Q(1), None: Q(-2)}], 1)
    assert sol is None


def test_echelon_basis_tracks_combinations():
    b = EchelonBasis()
    assert b.add({0: 1, 1: 1})
    assert b.add({1: 1})
    assert not b.add({0: 2, 1: 3})
    assert b.independent == [0, 1]
    assert b.express({0: Q(1)}) == {0: Q(1), 1: Q(-1)}
    assert b.contains({0: 5, 1: 2})


def test_matrix_ops():
    a = SparseMatrix.from_dense([[0, 1], [0, 0]])
    b = SparseMatrix.from_dense([[0, 0], [1, 0]])
    h = commutator(a, b)
    assert h.to_dense() == [[1, 0], [0, -1]]
    assert (a @ b - b @ a).to_dense() == h.to_dense()
    assert (SparseMatrix.identity(2) @ a).to_dense() == a.to_dense()
    with pytest.raises(DimensionMismatch):
        SparseMatrix.from_dense([[1, 2], [3]])
    with pytest.raises(IndexError):
        SparseMatrix(2).add_entry(2, 0, 1)

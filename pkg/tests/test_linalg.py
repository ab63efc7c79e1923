from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.linalg.elimination import (
    columnspace_basis,
    inconsistency_witness,
    inverse,
    left_nullspace_rows,
    nullspace_basis,
    rank,
    row_space_canonical,
    rref,
    solve,
)
from src.linalg.matrix import RatMatrix, format_fraction, to_fraction


@st.composite
def small_matrices(draw, max_dim=4, bound=3):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=rows * cols, max_size=rows * cols))
    return RatMatrix.reshape(entries, rows, cols)


def test_to_fraction_accepts_text_and_rejects_booleans():
    assert to_fraction("1/100") == Fraction(1, 100)
    assert to_fraction(" 0.01 ") == Fraction(1, 100)
    assert to_fraction(3) == Fraction(3)
    with pytest.raises(TypeError):
        to_fraction(True)
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_format_fraction_always_writes_a_denominator():
    assert format_fraction(Fraction(3)) == "3/1"
    assert format_fraction(Fraction(-2, 4)) == "-1/2"


def test_string_round_trip_keeps_shape():
    m = RatMatrix.from_rows([["1/2", "0"], ["-3", "2/3"]])
    assert RatMatrix.from_strings(m.to_strings(), 2, 2) == m
    with pytest.raises(ValueError):
        RatMatrix.from_strings(m.to_strings(), 2, 3)


def test_empty_shapes():
    empty = RatMatrix.zeros(0, 3)
    assert empty.shape == (0, 3)
    assert empty.T.shape == (3, 0)
    assert (RatMatrix.zeros(2, 0) @ RatMatrix.zeros(0, 3)) == RatMatrix.zeros(2, 3)


def test_rref_and_rank():
    m = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    reduced, pivots = rref(m)
    assert pivots == (0, 1)
    assert reduced.row(0) == (1, 0, 1)
    assert reduced.row(1) == (0, 1, 1)
    assert rank(m) == 2


def test_nullspace_of_a_projection():
    basis = nullspace_basis(RatMatrix.from_rows([[1, 0]]))
    assert basis == RatMatrix.from_rows([[0], [1]])


def test_left_nullspace_is_a_quotient_by_the_column_space():
    m = RatMatrix.from_rows([[1], [1]])
    q = left_nullspace_rows(m)
    assert q.shape == (1, 2)
    assert (q @ m).is_zero()


def test_canonical_row_space_identifies_equal_spans():
    a = row_space_canonical(RatMatrix.from_rows([[2, 4], [1, 1]]))
    b = row_space_canonical(RatMatrix.from_rows([[1, 0], [0, 3]]))
    assert a == b == RatMatrix.identity(2)


def test_solve_and_inconsistency():
    m = RatMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, RatMatrix.from_rows([[2], [4]])) == RatMatrix.from_rows([[2], [0]])
    bad = RatMatrix.from_rows([[1], [0]])
    assert solve(m, bad) is None
    y = inconsistency_witness(m, bad)
    assert (y @ m).is_zero()
    assert not (y @ bad).is_zero()


def test_inverse():
    m = RatMatrix.from_rows([[2, 1], [1, 1]])
    assert inverse(m) @ m == RatMatrix.identity(2)
    assert inverse(RatMatrix.from_rows([[1, 2], [2, 4]])) is None
    assert inverse(RatMatrix.from_rows([[1, 2]])) is None


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_nullity(m):
    basis = nullspace_basis(m)
    assert (m @ basis).is_zero()
    assert rank(m) + basis.cols == m.cols
    assert rank(basis) == basis.cols
    assert columnspace_basis(m).cols == rank(m)


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.data())
def test_solve_recovers_consistent_systems(m, data):
    entries = data.draw(st.lists(st.integers(-3, 3), min_size=m.cols, max_size=m.cols))
    x = RatMatrix.reshape(entries, m.cols, 1)
    solution = solve(m, m @ x)
    assert solution is not None
    assert m @ solution == m @ x

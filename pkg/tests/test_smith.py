from hypothesis import given, settings
from hypothesis import strategies as st

from src.linalg.matrix import RatMatrix
from src.linalg.smith import integer_nullspace, smith_normal_form, solve_integer


@st.composite
def integer_matrices(draw, max_dim=3, bound=6):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=rows * cols, max_size=rows * cols))
    return RatMatrix.reshape(entries, rows, cols)


def test_known_diagonal():
    snf = smith_normal_form(RatMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert snf.diagonal == (2, 6, 12)
    assert snf.rank == 3


def test_relations_of_z2_plus_z():
    snf = smith_normal_form(RatMatrix.diagonal([0, 2]))
    assert snf.diagonal == (2, 0)


def test_solve_integer_distinguishes_integral_solutions():
    two = RatMatrix.from_rows([[2]])
    assert solve_integer(two, RatMatrix.from_rows([[4]])) == RatMatrix.from_rows([[2]])
    assert solve_integer(two, RatMatrix.from_rows([[1]])) is None
    assert solve_integer(two, RatMatrix.from_rows([["1/2"]])) is None


def test_integer_nullspace_of_doubling_against_relations():
    # 2x = 2y: the lattice is spanned by (1, 1)
    lattice = integer_nullspace(RatMatrix.from_rows([[2, -2]]))
    assert lattice.cols == 1
    x, y = lattice.column(0)
    assert x == y and abs(x) == 1


@settings(max_examples=80, deadline=None)
@given(integer_matrices())
def test_snf_is_a_unimodular_diagonalization(a):
    snf = smith_normal_form(a)
    assert snf.U @ a @ snf.V == snf.S
    assert snf.U @ snf.U_inv == RatMatrix.identity(a.rows)
    assert snf.V @ snf.V_inv == RatMatrix.identity(a.cols)
    assert snf.U_inv.is_integral() and snf.V_inv.is_integral()
    for i in range(snf.S.rows):
        for j in range(snf.S.cols):
            if i != j:
                assert snf.S[i, j] == 0
    diagonal = snf.diagonal
    nonzero = [d for d in diagonal if d]
    assert all(d > 0 for d in nonzero)
    assert list(diagonal[:len(nonzero)]) == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=60, deadline=None)
@given(integer_matrices(), st.data())
def test_solve_integer_finds_planted_solutions(a, data):
    entries = data.draw(st.lists(st.integers(-4, 4), min_size=a.cols, max_size=a.cols))
    x = RatMatrix.reshape(entries, a.cols, 1)
    solution = solve_integer(a, a @ x)
    assert solution is not None
    assert solution.is_integral()
    assert a @ solution == a @ x

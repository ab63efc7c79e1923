"""
Exact Gaussian elimination over the rationals.

Row reduction is delegated to sympy's ``DomainMatrix`` over ``QQ``, which
eliminates fraction-free and only divides out at the end. Everything else
(null spaces, column spaces, linear solving) is read off the reduced form.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.linalg.matrix import RatMatrix

logger = logging.getLogger(__name__)


def _to_domain(matrix: RatMatrix) -> DomainMatrix:
    rows = [[QQ(e.numerator, e.denominator) for e in row] for row in matrix.entries]
    return DomainMatrix(rows, matrix.shape, QQ)


def _from_domain(dm: DomainMatrix) -> RatMatrix:
    rows, cols = dm.shape
    data = [[Fraction(int(e.numerator), int(e.denominator)) for e in row] for row in dm.to_list()]
    return RatMatrix.from_rows(data, cols=cols) if rows else RatMatrix.zeros(0, cols)


@lru_cache(maxsize=1 << 16)
def rref(matrix: RatMatrix) -> Tuple[RatMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns. Cached: matrices are immutable."""
    if matrix.rows == 0 or matrix.cols == 0:
        return matrix, ()
    reduced, pivots = _to_domain(matrix).rref()
    return _from_domain(reduced), tuple(int(p) for p in pivots)


def rank(matrix: RatMatrix) -> int:
    return len(rref(matrix)[1])


def nullspace_basis(matrix: RatMatrix) -> RatMatrix:
    """Basis of {x : M x = 0}, one basis vector per column, one per free variable."""
    reduced, pivots = rref(matrix)
    n = matrix.cols
    free = [j for j in range(n) if j not in pivots]
    vectors = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        vectors.append(v)
    return RatMatrix.from_columns(vectors, n)


def columnspace_basis(matrix: RatMatrix) -> RatMatrix:
    """The pivot columns of M, a basis of its column space."""
    _, pivots = rref(matrix)
    return matrix.select_columns(pivots)


def left_nullspace_rows(matrix: RatMatrix) -> RatMatrix:
    """Rows spanning {y : y M = 0}; as a map it is a quotient by the column space of M."""
    return nullspace_basis(matrix.T).T


def row_space_canonical(matrix: RatMatrix) -> RatMatrix:
    """Non-zero rows of the RREF: the canonical basis of the row space."""
    reduced, pivots = rref(matrix)
    return reduced.select_rows(range(len(pivots)))


def solve(matrix: RatMatrix, rhs: RatMatrix) -> Optional[RatMatrix]:
    """Some X with M X = B, or None when the system is inconsistent.

    Free variables are set to zero, so the returned solution is deterministic.
    """
    if rhs.rows != matrix.rows:
        raise ValueError(f"right-hand side has {rhs.rows} rows, expected {matrix.rows}")
    n = matrix.cols
    if matrix.rows == 0:
        return RatMatrix.zeros(n, rhs.cols)
    reduced, pivots = rref(matrix.hstack(rhs))
    if any(p >= n for p in pivots):
        return None
    solution = [[Fraction(0)] * rhs.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        for j in range(rhs.cols):
            solution[p][j] = reduced[i, n + j]
    return RatMatrix.from_rows(solution, cols=rhs.cols) if n else RatMatrix.zeros(0, rhs.cols)


def inconsistency_witness(matrix: RatMatrix, rhs: RatMatrix) -> Optional[RatMatrix]:
    """A row vector y with y M = 0 and y B != 0, certifying that M X = B has no solution."""
    left = left_nullspace_rows(matrix)
    for i in range(left.rows):
        y = left.select_rows([i])
        if not (y @ rhs).is_zero():
            return y
    return None


def solve_vector(matrix: RatMatrix, target: List[Fraction]) -> Optional[List[Fraction]]:
    column = RatMatrix.from_columns([target], matrix.rows) if matrix.rows else RatMatrix.zeros(0, 1)
    solution = solve(matrix, column)
    if solution is None:
        return None
    return list(solution.column(0)) if solution.rows else []


def inverse(matrix: RatMatrix) -> Optional[RatMatrix]:
    if matrix.rows != matrix.cols:
        return None
    candidate = solve(matrix, RatMatrix.identity(matrix.rows))
    if candidate is None or candidate @ matrix != RatMatrix.identity(matrix.rows):
        return None
    return candidate

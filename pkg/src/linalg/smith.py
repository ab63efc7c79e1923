"""
Smith normal form over the integers, with unimodular transforms.

``smith_normal_form(A)`` returns U, S, V with U A V = S, S diagonal, every
diagonal entry non-negative and each dividing the next (zeros last). The
inverses of U and V are returned as well so that callers can move between
the original and the diagonal coordinates without re-solving.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from src.linalg.elimination import inverse
from src.linalg.matrix import RatMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnfDecomposition:
    U: RatMatrix
    S: RatMatrix
    V: RatMatrix
    U_inv: RatMatrix
    V_inv: RatMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(int(self.S[i, i]) for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _swap_rows(m: List[List[int]], i: int, j: int):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: List[List[int]], i: int, j: int):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: List[List[int]], target: int, source: int, factor: int):
    """row[target] += factor * row[source]"""
    if factor:
        m[target] = [a + factor * b for a, b in zip(m[target], m[source])]


def _add_col(m: List[List[int]], target: int, source: int, factor: int):
    """col[target] += factor * col[source]"""
    if factor:
        for row in m:
            row[target] += factor * row[source]


def _smallest_nonzero(s: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    for i in range(t, len(s)):
        for j in range(t, len(s[i])):
            if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(matrix: RatMatrix) -> SnfDecomposition:
    """Smith normal form of an integral matrix."""
    s = matrix.int_rows()
    m, n = matrix.rows, matrix.cols
    u = _identity(m)
    v = _identity(n)

    t = 0
    while t < min(m, n):
        position = _smallest_nonzero(s, t)
        if position is None:
            break
        i, j = position
        _swap_rows(s, t, i)
        _swap_rows(u, t, i)
        _swap_cols(s, t, j)
        _swap_cols(v, t, j)

        while True:
            clean = True
            for i in range(t + 1, m):
                q = s[i][t] // s[t][t]
                _add_row(s, i, t, -q)
                _add_row(u, i, t, -q)
                if s[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = s[t][j] // s[t][t]
                _add_col(s, j, t, -q)
                _add_col(v, j, t, -q)
                if s[t][j]:
                    clean = False
            if not clean:
                # a remainder survived: it is smaller than the pivot, move it up
                candidates = [(i, t) for i in range(t + 1, m) if s[i][t]] + \
                             [(t, j) for j in range(t + 1, n) if s[t][j]]
                i, j = min(candidates, key=lambda p: abs(s[p[0]][p[1]]))
                if i != t:
                    _swap_rows(s, t, i)
                    _swap_rows(u, t, i)
                else:
                    _swap_cols(s, t, j)
                    _swap_cols(v, t, j)
                continue
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % s[t][t]),
                None,
            )
            if offender is None:
                break
            _add_row(s, t, offender, 1)
            _add_row(u, t, offender, 1)

        if s[t][t] < 0:
            s[t] = [-a for a in s[t]]
            u[t] = [-a for a in u[t]]
        t += 1

    U = RatMatrix.from_rows(u, cols=m)
    V = RatMatrix.from_rows(v, cols=n)
    S = RatMatrix.from_rows(s, cols=n)
    U_inv = inverse(U)
    V_inv = inverse(V)
    logger.debug(f"Smith normal form of a {m}x{n} matrix has diagonal {[S[k, k] for k in range(min(m, n))]}")
    return SnfDecomposition(U=U, S=S, V=V, U_inv=U_inv, V_inv=V_inv)


def integer_nullspace(matrix: RatMatrix) -> RatMatrix:
    """Columns generating the lattice {x in Z^n : M x = 0}."""
    snf = smith_normal_form(matrix)
    return snf.V.select_columns(range(snf.rank, matrix.cols))


def solve_integer(matrix: RatMatrix, rhs: RatMatrix) -> Optional[RatMatrix]:
    """An integral X with M X = B, or None when no integral solution exists."""
    if rhs.rows != matrix.rows:
        raise ValueError(f"right-hand side has {rhs.rows} rows, expected {matrix.rows}")
    if not rhs.is_integral():
        return None
    snf = smith_normal_form(matrix)
    diagonal = snf.diagonal
    transformed = snf.U @ rhs
    y = [[Fraction(0)] * rhs.cols for _ in range(matrix.cols)]
    for col in range(rhs.cols):
        for i in range(matrix.rows):
            c = transformed[i, col]
            d = diagonal[i] if i < len(diagonal) else 0
            if d == 0:
                if c:
                    return None
                continue
            if c % d:
                return None
            y[i][col] = c / d
    y_matrix = RatMatrix.from_rows(y, cols=rhs.cols) if matrix.cols else RatMatrix.zeros(0, rhs.cols)
    return snf.V @ y_matrix

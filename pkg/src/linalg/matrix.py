"""
Immutable dense matrices over the rationals.

Entries are stored as ``fractions.Fraction`` (always in lowest terms), so every
computation built on top of this module is exact. Integer matrices used by the
Smith normal form code are ``RatMatrix`` values whose entries happen to be
integral.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

Scalar = Union[int, Fraction]


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and "p/q" strings into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"unsupported matrix entry {value!r}")


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")

    # Construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "RatMatrix":
        data = tuple(tuple(to_fraction(e) for e in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        return cls.from_rows(columns, cols=rows).T if columns else cls.zeros(rows, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        zero = Fraction(0)
        return cls(rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
        ))

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> "RatMatrix":
        n = len(values)
        return cls(n, n, tuple(
            tuple(to_fraction(values[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        ))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int, value: Scalar = 1) -> "RatMatrix":
        """Matrix with a single non-zero entry ``value`` at (i, j)."""
        v = to_fraction(value)
        return cls(rows, cols, tuple(
            tuple(v if (r, c) == (i, j) else Fraction(0) for c in range(cols))
            for r in range(rows)
        ))

    @classmethod
    def reshape(cls, flat: Sequence[Scalar], rows: int, cols: int) -> "RatMatrix":
        """Inverse of ``flatten`` (row-major)."""
        if len(flat) != rows * cols:
            raise ValueError(f"cannot reshape {len(flat)} entries into {rows}x{cols}")
        return cls.from_rows([flat[r * cols:(r + 1) * cols] for r in range(rows)], cols=cols)

    # Access

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def flatten(self) -> List[Fraction]:
        return [e for row in self.entries for e in row]

    def select_rows(self, indices: Iterable[int]) -> "RatMatrix":
        return RatMatrix.from_rows([self.entries[i] for i in indices], cols=self.cols)

    def select_columns(self, indices: Iterable[int]) -> "RatMatrix":
        idx = list(indices)
        return RatMatrix.from_rows([[row[j] for j in idx] for row in self.entries], cols=len(idx))

    # Arithmetic

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)
        ))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        return RatMatrix(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in other_cols)
            for row in self.entries
        ))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        ))

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, factor: Scalar) -> "RatMatrix":
        f = to_fraction(factor)
        return RatMatrix(self.rows, self.cols, tuple(tuple(f * a for a in row) for row in self.entries))

    def map_entries(self, fn) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(tuple(to_fraction(fn(a)) for a in row) for row in self.entries))

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError(f"cannot hstack {self.shape} and {other.shape}")
        return RatMatrix(self.rows, self.cols + other.cols, tuple(
            r1 + r2 for r1, r2 in zip(self.entries, other.entries)
        ))

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError(f"cannot vstack {self.shape} and {other.shape}")
        return RatMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        rows = []
        for a_row in self.entries:
            for b_row in other.entries:
                rows.append(tuple(a * b for a in a_row for b in b_row))
        return RatMatrix(self.rows * other.rows, self.cols * other.cols, tuple(rows))

    def direct_sum(self, other: "RatMatrix") -> "RatMatrix":
        top = self.hstack(RatMatrix.zeros(self.rows, other.cols))
        bottom = RatMatrix.zeros(other.rows, self.cols).hstack(other)
        return top.vstack(bottom)

    # Predicates

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for row in self.entries for e in row)

    def int_rows(self) -> List[List[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[int(e) for e in row] for row in self.entries]

    def _same_shape(self, other: "RatMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # Serialization

    def to_strings(self) -> List[List[str]]:
        return [[format_fraction(e) for e in row] for row in self.entries]

    @classmethod
    def from_strings(cls, data: Sequence[Sequence[str]], rows: int, cols: int) -> "RatMatrix":
        matrix = cls.from_rows(data, cols=cols) if rows else cls.zeros(0, cols)
        if matrix.shape != (rows, cols):
            raise ValueError(f"expected a {rows}x{cols} matrix, got {matrix.shape}")
        return matrix

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self.entries)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

"""
Exact evaluation of sequence norms and closure witnesses.

Sequences are finitely supported and stored run-length encoded, so the
witness x^n = (-1/n, ..., -1/n, 0, ...) costs one run whatever n is.

The closure witnesses show that (0, 1) lies in the closure of the range of
x -> (x, -sum(x)): the image of x^n is (x^n, 1), at distance 1/n from (0, 1)
in the maximum of the component norms.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from sympy import Poly, summation, symbols

from src.config.settings import SEQ_TABLE_GRID
from src.linalg.matrix import format_fraction, to_fraction

logger = logging.getLogger(__name__)

Run = Tuple[int, int, Fraction]


@dataclass(frozen=True)
class FiniteSeq:
    """Runs (first, last, value): x_j = value for first <= j <= last, indices from 1."""
    runs: Tuple[Run, ...] = ()

    def __post_init__(self):
        previous = 0
        for first, last, value in self.runs:
            if first <= previous or last < first or not value:
                raise ValueError(f"runs must be disjoint, increasing and non-zero: {self.runs!r}")
            previous = last

    @classmethod
    def zero(cls) -> "FiniteSeq":
        return cls()

    @classmethod
    def constant(cls, value, first: int, last: int) -> "FiniteSeq":
        v = to_fraction(value)
        if first < 1:
            raise ValueError(f"indices start at 1, got {first}")
        return cls(((first, last, v),)) if v and last >= first else cls()

    @classmethod
    def from_entries(cls, entries) -> "FiniteSeq":
        """From a list (x_1, x_2, ...) or a mapping index -> value."""
        items = entries.items() if isinstance(entries, Mapping) else enumerate(entries, start=1)
        runs: List[List] = []
        for j, value in sorted((int(j), to_fraction(v)) for j, v in items):
            if j < 1:
                raise ValueError(f"indices start at 1, got {j}")
            if not value:
                continue
            if runs and runs[-1][1] == j - 1 and runs[-1][2] == value:
                runs[-1][1] = j
            else:
                runs.append([j, j, value])
        return cls(tuple((first, last, value) for first, last, value in runs))

    def entry(self, j: int) -> Fraction:
        for first, last, value in self.runs:
            if first <= j <= last:
                return value
        return Fraction(0)

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        for first, last, value in self.runs:
            for j in range(first, last + 1):
                yield j, value

    @property
    def support_size(self) -> int:
        return sum(last - first + 1 for first, last, _ in self.runs)

    def scale(self, factor) -> "FiniteSeq":
        f = to_fraction(factor)
        if not f:
            return FiniteSeq()
        return FiniteSeq(tuple((first, last, f * value) for first, last, value in self.runs))

    def __neg__(self) -> "FiniteSeq":
        return self.scale(-1)

    def __repr__(self) -> str:
        body = ", ".join(f"[{a}..{b}]={format_fraction(v)}" for a, b, v in self.runs)
        return f"FiniteSeq({body})"


def make_xn(n: int) -> FiniteSeq:
    if n < 1:
        raise ValueError(f"x^n needs n >= 1, got {n}")
    return FiniteSeq.constant(Fraction(-1, n), 1, n)


def sup_norm(x: FiniteSeq) -> Fraction:
    return max((abs(value) for _, _, value in x.runs), default=Fraction(0))


def one_norm(x: FiniteSeq) -> Fraction:
    return sum(((last - first + 1) * abs(value) for first, last, value in x.runs), Fraction(0))


def sum_functional(x: FiniteSeq) -> Fraction:
    return sum(((last - first + 1) * value for first, last, value in x.runs), Fraction(0))


_j, _n = symbols("j n", integer=True, positive=True)


@lru_cache(maxsize=None)
def _power_sum(m: int) -> Poly:
    """1^m + 2^m + ... + n^m as a polynomial in n."""
    return Poly(summation(_j ** m, (_j, 1, _n)), _n)


def s_seminorm(x: FiniteSeq, m: int) -> Fraction:
    """sum_j j^m |x_j|"""
    if m < 1:
        raise ValueError(f"seminorm index must be >= 1, got {m}")
    total = _power_sum(m)
    return sum(
        (abs(value) * int(total.eval(last) - total.eval(first - 1)) for first, last, value in x.runs),
        Fraction(0),
    )


def product_seminorm(x: FiniteSeq, m: int) -> Fraction:
    """max_{1 <= j <= m} |x_j|"""
    if m < 1:
        raise ValueError(f"seminorm index must be >= 1, got {m}")
    return max((abs(value) for first, _, value in x.runs if first <= m), default=Fraction(0))


def parse_positive_rational(text) -> Fraction:
    """Parse "1/100", "0.01" or a number; rejects non-positive values."""
    try:
        value = to_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ValueError(f"not a rational number: {text!r}")
    if value <= 0:
        raise ValueError(f"expected a positive rational, got {text!r}")
    return value


def witness_index(eps: Fraction) -> int:
    """Smallest n with 1/n <= eps."""
    return max(1, -(-eps.denominator // eps.numerator))


class SeminormFamily(str, Enum):
    BANACH = "sup_norm"
    NUCLEAR = "product_seminorms"


class BoundWitness(BaseModel):
    """|sum(x)| <= s_seminorm(x, m) evaluated on the witness."""
    m: int
    sum_abs: str
    s_seminorm: str
    holds: bool


class ClosureCertificate(BaseModel):
    family: SeminormFamily
    epsilon: str
    n: int
    sequence_distance: str
    scalar_distance: str
    distance: str
    m_max: Optional[int] = None
    seminorms: List[str] = Field(default_factory=list)
    bounds: List[BoundWitness] = Field(default_factory=list)

    @property
    def distance_value(self) -> Fraction:
        return Fraction(self.distance)


def _scalar_defect(x: FiniteSeq) -> Fraction:
    """|1 - (-sum(x))|: the scalar component of (0, 1) - (x, -sum(x))."""
    return abs(1 + sum_functional(x))


def _nuclear_evidence(x: FiniteSeq, m_max: int) -> Tuple[List[Fraction], List[BoundWitness]]:
    seminorms = [product_seminorm(x, m) for m in range(1, m_max + 1)]
    sum_abs = abs(sum_functional(x))
    bounds = []
    for m in range(1, m_max + 1):
        s = s_seminorm(x, m)
        bounds.append(BoundWitness(m=m, sum_abs=format_fraction(sum_abs), s_seminorm=format_fraction(s), holds=sum_abs <= s))
    return seminorms, bounds


def banach_closure_witness(eps) -> ClosureCertificate:
    eps = parse_positive_rational(eps)
    n = witness_index(eps)
    x = make_xn(n)
    sequence_distance, scalar_distance = sup_norm(x), _scalar_defect(x)
    distance = max(sequence_distance, scalar_distance)
    logger.debug(f"sup-norm witness for eps={eps}: n={n}, distance={distance}")
    return ClosureCertificate(
        family=SeminormFamily.BANACH,
        epsilon=format_fraction(eps),
        n=n,
        sequence_distance=format_fraction(sequence_distance),
        scalar_distance=format_fraction(scalar_distance),
        distance=format_fraction(distance),
    )


def nuclear_closure_witness(eps, m_max: int) -> ClosureCertificate:
    eps = parse_positive_rational(eps)
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    n = witness_index(eps)
    x = make_xn(n)
    seminorms, bounds = _nuclear_evidence(x, m_max)
    sequence_distance, scalar_distance = max(seminorms), _scalar_defect(x)
    distance = max(sequence_distance, scalar_distance)
    logger.debug(f"product-seminorm witness for eps={eps}, m_max={m_max}: n={n}, distance={distance}")
    return ClosureCertificate(
        family=SeminormFamily.NUCLEAR,
        epsilon=format_fraction(eps),
        n=n,
        sequence_distance=format_fraction(sequence_distance),
        scalar_distance=format_fraction(scalar_distance),
        distance=format_fraction(distance),
        m_max=m_max,
        seminorms=[format_fraction(s) for s in seminorms],
        bounds=bounds,
    )


def verify_closure_certificate(cert: ClosureCertificate) -> bool:
    """Recompute every stored value from the stored n and compare exactly."""
    eps = Fraction(cert.epsilon)
    x = make_xn(cert.n)
    scalar_distance = _scalar_defect(x)
    if cert.family == SeminormFamily.BANACH:
        sequence_distance = sup_norm(x)
    else:
        if cert.m_max is None:
            return False
        seminorms, bounds = _nuclear_evidence(x, cert.m_max)
        if cert.seminorms != [format_fraction(s) for s in seminorms] or cert.bounds != bounds:
            return False
        sequence_distance = max(seminorms)
    distance = max(sequence_distance, scalar_distance)
    return (
        cert.sequence_distance == format_fraction(sequence_distance)
        and cert.scalar_distance == format_fraction(scalar_distance)
        and cert.distance == format_fraction(distance)
        and distance <= eps
    )


class SeqTableRow(BaseModel):
    n: int
    sup_norm: str
    one_norm: str
    sum: str
    defect: str


def invariant_table(grid: Sequence[int] = SEQ_TABLE_GRID) -> List[SeqTableRow]:
    """sup, one-norm, sum and scalar defect of x^n over a grid of n."""
    rows = []
    for n in grid:
        x = make_xn(n)
        rows.append(SeqTableRow(
            n=n,
            sup_norm=format_fraction(sup_norm(x)),
            one_norm=format_fraction(one_norm(x)),
            sum=format_fraction(sum_functional(x)),
            defect=format_fraction(_scalar_defect(x)),
        ))
    return rows

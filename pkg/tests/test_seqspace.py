from fractions import Fraction

import pytest

from src.seqspace.lab import (
    FiniteSeq,
    SeminormFamily,
    banach_closure_witness,
    invariant_table,
    make_xn,
    nuclear_closure_witness,
    one_norm,
    parse_positive_rational,
    product_seminorm,
    s_seminorm,
    sum_functional,
    sup_norm,
    verify_closure_certificate,
    witness_index,
)


def test_witness_sequence_invariants():
    for n in range(1, 10001):
        x = make_xn(n)
        assert sup_norm(x) == Fraction(1, n)
        assert one_norm(x) == 1
        assert sum_functional(x) == -1
        assert 1 + sum_functional(x) == 0


def test_witness_sequence_is_one_run():
    x = make_xn(1000)
    assert x.runs == ((1, 1000, Fraction(-1, 1000)),)
    assert x.support_size == 1000
    assert x.entry(1000) == Fraction(-1, 1000)
    assert x.entry(1001) == 0
    with pytest.raises(ValueError):
        make_xn(0)


@pytest.mark.parametrize("eps, n", [("1/10", 10), ("1/100", 100), ("1/1000", 1000), ("3/10", 4), ("2", 1)])
def test_witness_index(eps, n):
    assert witness_index(parse_positive_rational(eps)) == n


@pytest.mark.parametrize("eps", ["1/10", "1/100", "1/1000"])
def test_banach_closure_witness(eps):
    cert = banach_closure_witness(eps)
    assert cert.family == SeminormFamily.BANACH
    assert cert.n == Fraction(eps).denominator
    assert cert.distance_value == Fraction(eps)
    assert Fraction(cert.scalar_distance) == 0
    assert verify_closure_certificate(cert)


def test_nuclear_closure_witness():
    cert = nuclear_closure_witness("1/1000", 8)
    assert cert.n == 1000
    assert cert.m_max == 8
    assert [Fraction(s) for s in cert.seminorms] == [Fraction(1, 1000)] * 8
    assert all(bound.holds for bound in cert.bounds)
    assert cert.distance_value == Fraction(1, 1000)
    assert verify_closure_certificate(cert)


def test_coarse_epsilon_gives_the_first_sequence():
    cert = nuclear_closure_witness(1, 1)
    assert cert.n == 1
    assert cert.distance_value == 1
    assert verify_closure_certificate(cert)


def test_tampered_closure_certificates_do_not_verify():
    cert = banach_closure_witness("1/100")
    assert not verify_closure_certificate(cert.model_copy(update={"distance": "1/200"}))
    assert not verify_closure_certificate(cert.model_copy(update={"n": 50}))
    nuclear = nuclear_closure_witness("1/10", 3)
    assert not verify_closure_certificate(nuclear.model_copy(update={"seminorms": ["1/10", "1/10", "1/9"]}))
    assert not verify_closure_certificate(nuclear.model_copy(update={"m_max": None}))


def test_seminorms_of_a_short_sequence():
    x = FiniteSeq.from_entries([1, -2, 0, 3])
    assert s_seminorm(x, 1) == 1 + 4 + 12
    assert s_seminorm(x, 2) == 1 + 8 + 48
    assert product_seminorm(x, 1) == 1
    assert product_seminorm(x, 2) == 2
    assert product_seminorm(x, 3) == 2
    assert product_seminorm(x, 4) == 3
    with pytest.raises(ValueError):
        s_seminorm(x, 0)


def test_s_seminorm_of_a_long_run_is_exact():
    n = 10 ** 6
    assert s_seminorm(make_xn(n), 1) == Fraction(n + 1, 2)
    assert s_seminorm(make_xn(n), 3) == Fraction(n * (n + 1) ** 2, 4)
    x = FiniteSeq.constant(Fraction(1), 3, 5)
    assert s_seminorm(x, 2) == 9 + 16 + 25


def test_finite_seq_runs():
    x = FiniteSeq.from_entries({5: "1/2", 1: 1, 2: 1, 3: 0})
    assert x.runs == ((1, 2, Fraction(1)), (5, 5, Fraction(1, 2)))
    assert dict(x.items()) == {1: 1, 2: 1, 5: Fraction(1, 2)}
    assert (-x).entry(5) == Fraction(-1, 2)
    assert x.scale(0) == FiniteSeq.zero()
    for runs in (((2, 1, Fraction(1)),), ((1, 2, Fraction(0)),), ((1, 2, Fraction(1)), (2, 3, Fraction(1)))):
        with pytest.raises(ValueError):
            FiniteSeq(runs)
    with pytest.raises(ValueError):
        FiniteSeq.from_entries({0: 1})


@pytest.mark.parametrize("text", ["0", "-1/2", "abc", "1/0", ""])
def test_parse_positive_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_positive_rational(text)


def test_parse_positive_rational_accepts_decimals():
    assert parse_positive_rational("0.01") == Fraction(1, 100)
    assert parse_positive_rational(" 1/3 ") == Fraction(1, 3)


def test_invariant_table():
    rows = invariant_table((1, 10, 10000))
    assert [row.n for row in rows] == [1, 10, 10000]
    assert [row.sup_norm for row in rows] == ["1/1", "1/10", "1/10000"]
    assert {row.one_norm for row in rows} == {"1/1"}
    assert {row.sum for row in rows} == {"-1/1"}
    assert {row.defect for row in rows} == {"0/1"}

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.category.errors import InferenceContradiction
from src.checks.certificates import FailedCheck, PropertyCertificate, PropertyName
from src.checks.inference import Atom, Fact, FactBase, Source, facts_from_verdicts, infer

fact_bases = st.dictionaries(st.sampled_from(list(Atom)), st.booleans(), max_size=6)


def test_semi_abelian_but_not_integral_closure():
    base = FactBase.declare([(Atom.SEMI_ABELIAN, True), (Atom.INTEGRAL, False)])
    closed = infer(base)
    assert closed.literals() == {
        (Atom.SEMI_ABELIAN, True),
        (Atom.INTEGRAL, False),
        (Atom.LEFT_INTEGRAL, False),
        (Atom.RIGHT_INTEGRAL, False),
        (Atom.ENOUGH_PROJECTIVES, False),
        (Atom.ENOUGH_INJECTIVES, False),
    }
    assert closed.get(Atom.ENOUGH_PROJECTIVES).rule == "enough projectives implies left integral"


def test_quasi_abelian_closure():
    closed = infer(FactBase.declare([(Atom.QUASI_ABELIAN, True)]))
    assert closed.literals() == {
        (Atom.QUASI_ABELIAN, True),
        (Atom.SEMI_ABELIAN, True),
        (Atom.LEFT_SEMI_ABELIAN, True),
        (Atom.RIGHT_SEMI_ABELIAN, True),
        (Atom.LEFT_QUASI_ABELIAN, True),
        (Atom.RIGHT_QUASI_ABELIAN, True),
        (Atom.ADMISSIBLE_INTERSECTIONS, True),
    }


def test_sided_quasi_abelian_and_integral_give_sided_semi_abelian():
    closed = infer(FactBase.declare([(Atom.LEFT_QUASI_ABELIAN, True), (Atom.RIGHT_INTEGRAL, True)]))
    assert (Atom.LEFT_SEMI_ABELIAN, True) in closed
    assert (Atom.RIGHT_SEMI_ABELIAN, True) in closed
    assert closed.get(Atom.RIGHT_SEMI_ABELIAN).rule == "sided integral implies sided semi-abelian"
    assert closed.get(Atom.SEMI_ABELIAN).rule == "definition of semi-abelian"


def test_semi_abelian_alone_says_nothing_about_the_sides():
    closed = infer(FactBase.declare([(Atom.SEMI_ABELIAN, True)]))
    assert closed.literals() == {(Atom.SEMI_ABELIAN, True)}


def test_one_sided_failure_in_a_semi_abelian_category_is_two_sided():
    closed = infer(FactBase.declare([(Atom.SEMI_ABELIAN, True), (Atom.LEFT_QUASI_ABELIAN, False)]))
    assert (Atom.RIGHT_QUASI_ABELIAN, False) in closed
    assert (Atom.QUASI_ABELIAN, False) in closed
    assert (Atom.ADMISSIBLE_INTERSECTIONS, False) in closed


def test_infer_does_not_modify_its_input():
    base = FactBase.declare([(Atom.QUASI_ABELIAN, True)])
    infer(base)
    assert len(base) == 1


def test_certified_contradiction_raises():
    base = FactBase.declare([(Atom.INTEGRAL, True)], source=Source.CERTIFICATE)
    with pytest.raises(InferenceContradiction):
        base.add(Fact(atom=Atom.INTEGRAL, holds=False, source=Source.CERTIFICATE, certified=True))


def test_certificates_override_corpus_evidence():
    base = FactBase([Fact(atom=Atom.LEFT_INTEGRAL, holds=True, source=Source.CORPUS)])
    assert base.add(Fact(atom=Atom.LEFT_INTEGRAL, holds=False, source=Source.CERTIFICATE, certified=True))
    assert base.holds(Atom.LEFT_INTEGRAL) is False
    assert not base.add(Fact(atom=Atom.LEFT_INTEGRAL, holds=True, source=Source.CORPUS))


def test_facts_from_verdicts():
    cert = PropertyCertificate(
        property=PropertyName.LEFT_INTEGRAL,
        instance="vectq",
        failed_check=FailedCheck.PULLBACK_LEG_NOT_EPIC,
    )
    base = facts_from_verdicts({PropertyName.LEFT_SEMI_ABELIAN: None, PropertyName.LEFT_INTEGRAL: cert})
    assert base.get(Atom.LEFT_SEMI_ABELIAN).source == Source.CORPUS
    failed = base.get(Atom.LEFT_INTEGRAL)
    assert failed.certified and failed.holds is False
    assert failed.premises == ["pullback_leg_not_epic"]


@settings(max_examples=100, deadline=None)
@given(fact_bases)
def test_infer_is_idempotent(literals):
    closed = infer(FactBase.declare(literals.items()))
    again = infer(closed)
    assert again.literals() == closed.literals()
    assert [f.model_dump() for f in again.facts()] == [f.model_dump() for f in closed.facts()]


@settings(max_examples=100, deadline=None)
@given(fact_bases)
def test_infer_only_grows(literals):
    base = FactBase.declare(literals.items())
    assert base.literals() <= infer(base).literals()

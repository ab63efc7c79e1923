import logging

import pytest

from src.category import engine
from src.category.errors import CertificateError, DomainMismatchError, NotApplicable
from src.checks.certificates import encode_morphism, encode_square
from src.checks.corpus import corpus_from_morphisms
from src.config.settings import PAIR_FANOUT
from src.exact.intersections import (
    AiCertificate,
    AiOrigin,
    ExactAxiom,
    check_admissible_intersections,
    check_exact_axioms,
    section_trick_refute,
    verify_ai_certificate,
)
from src.exact.structure import (
    ExactStructure,
    StructureKind,
    is_admissible_epi,
    is_admissible_mono,
    is_conflation,
    is_kernel_cokernel_pair,
)


@pytest.fixture
def doubling(fgab):
    return fgab.map((0,), (0,), [[2]])


@pytest.fixture
def reduction(fgab):
    return fgab.map((0,), (2,), [[1]])


def test_kernel_cokernel_pairs(fgab, doubling, reduction):
    assert is_kernel_cokernel_pair(fgab, doubling, reduction)
    assert not is_kernel_cokernel_pair(fgab, doubling, fgab.map((0,), (4,), [[1]]))
    assert not is_kernel_cokernel_pair(fgab, reduction, fgab.identity(fgab.cyclic(2)))


def test_doubling_is_admissible_only_in_the_all_pairs_structure(fgab, doubling, reduction):
    everything = ExactStructure.all_pairs(fgab)
    split = ExactStructure.split(fgab)
    assert is_conflation(doubling, reduction, everything)
    assert not is_conflation(doubling, reduction, split)
    assert is_admissible_mono(doubling, everything) and not is_admissible_mono(doubling, split)
    assert is_admissible_epi(reduction, everything) and not is_admissible_epi(reduction, split)


def test_split_pairs_are_conflations_in_vectq(vectq):
    split = ExactStructure.split(vectq)
    inclusion, projection = vectq.matrix([[1], [0]]), vectq.matrix([[0, 1]])
    assert is_conflation(inclusion, projection, split)
    with pytest.raises(NotApplicable):
        section_trick_refute(inclusion, projection, split)
    with pytest.raises(NotApplicable):
        section_trick_refute(inclusion, vectq.matrix([[1, 0]]), split)


def test_section_construction_refutes_the_split_structure_on_fgab(fgab, doubling):
    split = ExactStructure.split(fgab)
    cert = check_admissible_intersections(split, corpus_from_morphisms(fgab, [doubling]))
    assert cert is not None
    assert cert.origin == AiOrigin.SECTION_TRICK
    assert cert.structure == StructureKind.SPLIT
    assert cert.failing_leg == "a"
    assert "leg a has no retraction: no solution of r . a = 1" in cert.transcript
    assert cert.transcript[-1] == "leg a is not an admissible monomorphism"
    assert verify_ai_certificate(split, cert)


def test_ai_certificate_is_bound_to_its_structure(fgab, doubling):
    split = ExactStructure.split(fgab)
    cert = check_admissible_intersections(split, corpus_from_morphisms(fgab, [doubling]))
    with pytest.raises(CertificateError):
        verify_ai_certificate(ExactStructure.all_pairs(fgab), cert)
    swapped = cert.model_copy(update={"c": cert.d, "d": cert.c})
    assert not verify_ai_certificate(split, swapped)


def test_split_structure_satisfies_the_axioms(fgab):
    split = ExactStructure.split(fgab)
    assert check_exact_axioms(split, corpus_from_morphisms(fgab, fgab.curated_probes())) is None


@pytest.mark.parametrize("name", ["vectq", "fgab", "pairvect"])
def test_all_pairs_structure_has_admissible_intersections(request, name):
    instance = request.getfixturevalue(name)
    corpus = corpus_from_morphisms(instance, instance.curated_probes()[:20])
    everything = ExactStructure.all_pairs(instance)
    assert check_exact_axioms(everything, corpus) is None
    assert check_admissible_intersections(everything, corpus) is None


def test_split_structure_on_vectq_has_admissible_intersections(vectq):
    corpus = corpus_from_morphisms(vectq, vectq.curated_probes()[:30])
    assert check_admissible_intersections(ExactStructure.split(vectq), corpus) is None


def test_custom_structure_without_composition_closure(fgab, doubling, reduction):
    custom = ExactStructure.custom(fgab, [(doubling, reduction)])
    assert is_admissible_mono(doubling, custom)
    violation = check_exact_axioms(custom, corpus_from_morphisms(fgab, [doubling]))
    assert violation is not None
    assert violation.axiom == ExactAxiom.MONO_COMPOSITION
    assert violation.structure == StructureKind.CUSTOM
    assert violation.transcript == ["composite is not admissible"]


def test_custom_structure_rejects_non_conflations(fgab, doubling):
    with pytest.raises(DomainMismatchError):
        ExactStructure.custom(fgab, [(doubling, fgab.map((0,), (4,), [[1]]))])


def test_exact_structures_are_closed_under_isomorphism(vectq, fgab, doubling, reduction):
    custom = ExactStructure.custom(fgab, [(doubling, reduction)])
    negated = fgab.negate(doubling)
    assert is_conflation(negated, reduction, custom)
    assert is_admissible_mono(negated, custom)
    assert is_admissible_epi(fgab.negate(reduction), custom)

    inclusion = vectq.matrix([[1], [2]])
    rescaled = vectq.compose(inclusion, vectq.matrix([[3]]))
    swapped = vectq.compose(vectq.matrix([[0, 1], [1, 0]]), inclusion)
    for structure in (ExactStructure.split(vectq), ExactStructure.all_pairs(vectq)):
        for f in (inclusion, rescaled, swapped):
            assert is_admissible_mono(f, structure)
            assert is_conflation(f, engine.cokernel(vectq, f).arrow, structure)


def test_ai_verification_ignores_the_structure_predicates(fgab, doubling, monkeypatch):
    split = ExactStructure.split(fgab)
    cert = check_admissible_intersections(split, corpus_from_morphisms(fgab, [doubling]))
    monkeypatch.setattr("src.exact.intersections.is_admissible_mono", lambda f, structure: True)
    assert verify_ai_certificate(split, cert)


def test_forged_ai_certificate_is_rejected(vectq, monkeypatch):
    split = ExactStructure.split(vectq)
    c, d = vectq.matrix([[1], [0]]), vectq.identity(vectq.space(2))
    forged = AiCertificate(
        instance=vectq.instance_id,
        structure=StructureKind.SPLIT,
        origin=AiOrigin.DIRECT,
        c=encode_morphism(vectq, c),
        d=encode_morphism(vectq, d),
        square=encode_square(vectq, engine.pullback(vectq, c, d)),
        failing_leg="a",
    )
    monkeypatch.setattr("src.exact.intersections.is_admissible_mono", lambda f, structure: f in (c, d))
    for leg in ("a", "b", "c"):
        assert not verify_ai_certificate(split, forged.model_copy(update={"failing_leg": leg}))


def test_truncated_partner_scans_are_logged(vectq, caplog):
    caplog.set_level(logging.DEBUG, logger="src.exact.intersections")
    corpus = corpus_from_morphisms(vectq, vectq.curated_probes())
    assert check_admissible_intersections(ExactStructure.all_pairs(vectq), corpus) is None
    assert f"admissible intersections: partner scan stopped after {PAIR_FANOUT} candidates" in caplog.text

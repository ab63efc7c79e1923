"""
Probe-based deciders for the semi-abelian / quasi-abelian / integral lattice.

Every checker scans its corpus in order and returns the first failure as a
PropertyCertificate, or None when no probe refutes the property. None means
"pass on corpus", never that the property holds.

Left variants test pullback stability (the leg parallel to the input d must
keep d's property), right variants test pushout stability (the leg parallel
to the input a).

Every property scanned here is invariant under composing with isomorphisms,
so each scan visits one representative per isomorphism class (the first in
corpus order) and reports the same first failure a full scan would.
"""
import logging
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Tuple

from src.category import engine
from src.category.instance import CategoryInstance
from src.category.objects import IsoSide, Morphism, ObjectRef
from src.checks.certificates import (
    FailedCheck,
    PropertyCertificate,
    PropertyName,
    encode_morphism,
    morphism_certificate,
    square_certificate,
)
from src.checks.corpus import ProbeCorpus
from src.config.settings import PAIR_FANOUT, PROJECTIVITY_OBJECTS

logger = logging.getLogger(__name__)

Checker = Callable[[CategoryInstance, ProbeCorpus], Optional[PropertyCertificate]]


# Semi-abelian


def _parallel_failure(instance: CategoryInstance, f: Morphism, prop: PropertyName) -> Optional[PropertyCertificate]:
    transcript = [f"probe {f!r}"]
    coim, through_coimage = engine.coimage_factor(instance, f)
    if through_coimage is None:
        transcript.append("no f' with f = f' . coim f")
        return morphism_certificate(instance, prop, FailedCheck.COIMAGE_FACTORIZATION_MISSING, f, transcript)
    im = engine.image(instance, f)
    parallel = instance.lift(im.arrow, through_coimage)
    if parallel is None:
        transcript.append("f' does not factor through im f")
        return morphism_certificate(instance, prop, FailedCheck.IMAGE_FACTORIZATION_MISSING, f, transcript)
    transcript.append(f"parallel morphism {parallel!r}")
    if prop == PropertyName.LEFT_SEMI_ABELIAN and not engine.is_mono(instance, parallel):
        transcript.append("parallel morphism has a non-zero kernel")
        return morphism_certificate(instance, prop, FailedCheck.PARALLEL_NOT_MONIC, f, transcript)
    if prop == PropertyName.RIGHT_SEMI_ABELIAN and not engine.is_epi(instance, parallel):
        transcript.append("parallel morphism has a non-zero cokernel")
        return morphism_certificate(instance, prop, FailedCheck.PARALLEL_NOT_EPIC, f, transcript)
    return None


def _scan_parallel(instance: CategoryInstance, corpus: ProbeCorpus, prop: PropertyName) -> Optional[PropertyCertificate]:
    classes = engine.representatives(instance, corpus.morphisms, IsoSide.BOTH)
    for f in classes:
        cert = _parallel_failure(instance, f, prop)
        if cert is not None:
            logger.info(f"{prop.value} fails on {instance.instance_id}: {cert.failed_check.value}")
            return cert
    logger.debug(f"{prop.value} passes on {len(corpus)} probes ({len(classes)} classes) of {instance.instance_id}")
    return None


def check_left_semi_abelian(instance: CategoryInstance, corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    """Every parallel morphism in the corpus is monic."""
    return _scan_parallel(instance, corpus, PropertyName.LEFT_SEMI_ABELIAN)


def check_right_semi_abelian(instance: CategoryInstance, corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    """Every parallel morphism in the corpus is epic."""
    return _scan_parallel(instance, corpus, PropertyName.RIGHT_SEMI_ABELIAN)


# Pullback / pushout stability


def _partners_by_target(corpus: ProbeCorpus, d: Morphism) -> Iterator[Morphism]:
    found = 0
    for c in corpus.morphisms:
        if found >= PAIR_FANOUT:
            return
        if c.target == d.target:
            found += 1
            yield c


def _partners_by_source(corpus: ProbeCorpus, a: Morphism) -> Iterator[Morphism]:
    found = 0
    for b in corpus.morphisms:
        if found >= PAIR_FANOUT:
            return
        if b.source == a.source:
            found += 1
            yield b


def _scan_pullbacks(instance: CategoryInstance, corpus: ProbeCorpus, prop: PropertyName,
                    failed: FailedCheck, has_property: Callable[[Morphism], bool]) -> Optional[PropertyCertificate]:
    for d in engine.representatives(instance, corpus.morphisms, IsoSide.SOURCE):
        if not has_property(d):
            continue
        for c in _partners_by_target(corpus, d):
            square = engine.pullback(instance, c, d)
            if not has_property(square.a):
                transcript = [f"d = {d!r}", f"c = {c!r}", f"pullback leg a = {square.a!r}", failed.value]
                logger.info(f"{prop.value} fails on {instance.instance_id}")
                return square_certificate(instance, prop, failed, square, transcript)
    return None


def _scan_pushouts(instance: CategoryInstance, corpus: ProbeCorpus, prop: PropertyName,
                   failed: FailedCheck, has_property: Callable[[Morphism], bool]) -> Optional[PropertyCertificate]:
    for a in engine.representatives(instance, corpus.morphisms, IsoSide.TARGET):
        if not has_property(a):
            continue
        for b in _partners_by_source(corpus, a):
            square = engine.pushout(instance, a, b)
            if not has_property(square.d):
                transcript = [f"a = {a!r}", f"b = {b!r}", f"pushout leg d = {square.d!r}", failed.value]
                logger.info(f"{prop.value} fails on {instance.instance_id}")
                return square_certificate(instance, prop, failed, square, transcript)
    return None


def check_left_quasi_abelian(instance: CategoryInstance, corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    """Cokernels in the corpus stay cokernels under pullback along corpus partners."""
    return _scan_pullbacks(
        instance, corpus, PropertyName.LEFT_QUASI_ABELIAN, FailedCheck.PULLBACK_LEG_NOT_COKERNEL,
        lambda f: bool(engine.is_cokernel_morphism(instance, f)),
    )


def check_right_quasi_abelian(instance: CategoryInstance, corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    """Kernels stay kernels under pushout."""
    return _scan_pushouts(
        instance, corpus, PropertyName.RIGHT_QUASI_ABELIAN, FailedCheck.PUSHOUT_LEG_NOT_KERNEL,
        lambda f: bool(engine.is_kernel_morphism(instance, f)),
    )


def check_left_integral(instance: CategoryInstance, corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    return _scan_pullbacks(
        instance, corpus, PropertyName.LEFT_INTEGRAL, FailedCheck.PULLBACK_LEG_NOT_EPIC,
        lambda f: engine.is_epi(instance, f),
    )


def check_right_integral(instance: CategoryInstance, corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    return _scan_pushouts(
        instance, corpus, PropertyName.RIGHT_INTEGRAL, FailedCheck.PUSHOUT_LEG_NOT_MONIC,
        lambda f: engine.is_mono(instance, f),
    )


# Fixed order; reports list verdicts in this order.
CHECKERS: Dict[PropertyName, Checker] = {
    PropertyName.LEFT_SEMI_ABELIAN: check_left_semi_abelian,
    PropertyName.RIGHT_SEMI_ABELIAN: check_right_semi_abelian,
    PropertyName.LEFT_QUASI_ABELIAN: check_left_quasi_abelian,
    PropertyName.RIGHT_QUASI_ABELIAN: check_right_quasi_abelian,
    PropertyName.LEFT_INTEGRAL: check_left_integral,
    PropertyName.RIGHT_INTEGRAL: check_right_integral,
}


# Projectivity


def _unliftable(instance: CategoryInstance, probe: ObjectRef, quotients: List[Morphism],
                prop: PropertyName) -> Optional[PropertyCertificate]:
    for q in quotients:
        for g in instance.hom_generators(probe, q.target):
            if instance.lift(q, g) is None:
                return PropertyCertificate(
                    property=prop,
                    instance=instance.instance_id,
                    failed_check=FailedCheck.GENERATOR_NOT_LIFTABLE,
                    probe_object=instance.object_to_json(probe),
                    morphism=encode_morphism(instance, q),
                    generator=encode_morphism(instance, g),
                    transcript=[f"P = {probe!r}", f"quotient {q!r}", f"generator {g!r} does not lift"],
                )
    return None


def _quotient_classes(instance: CategoryInstance, corpus: ProbeCorpus) -> List[Morphism]:
    # g lifts through q . phi iff it lifts through q
    return engine.representatives(instance, corpus.morphisms, IsoSide.SOURCE)


def is_projective_probe(probe: ObjectRef, instance: CategoryInstance,
                        corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    """Hom(P, -) is surjective on every epimorphism of the corpus."""
    epis = [f for f in _quotient_classes(instance, corpus) if engine.is_epi(instance, f)]
    return _unliftable(instance, probe, epis, PropertyName.PROJECTIVE)


def is_quasi_projective_probe(probe: ObjectRef, instance: CategoryInstance,
                              corpus: ProbeCorpus) -> Optional[PropertyCertificate]:
    """Hom(P, -) is surjective on every cokernel of the corpus."""
    cokernels = [f for f in _quotient_classes(instance, corpus) if engine.is_cokernel_morphism(instance, f)]
    return _unliftable(instance, probe, cokernels, PropertyName.QUASI_PROJECTIVE)


def projectivity_scan(instance: CategoryInstance, corpus: ProbeCorpus,
                      limit: int = PROJECTIVITY_OBJECTS) -> List[Tuple[ObjectRef, Optional[PropertyCertificate], Optional[PropertyCertificate]]]:
    """Projective and quasi-projective verdicts for the first corpus objects."""
    return [
        (obj, is_projective_probe(obj, instance, corpus), is_quasi_projective_probe(obj, instance, corpus))
        for obj in corpus.objects()[:limit]
    ]


# Cross-checks


def check_direct_factorization(instance: CategoryInstance, corpus: ProbeCorpus, left: bool = True) -> Optional[Morphism]:
    """
    Direct factorization check: the first probe f that is not i . p with i
    monic and p a cokernel (left), or with i a kernel and p epic (right).
    """
    for f in engine.representatives(instance, corpus.morphisms, IsoSide.BOTH):
        if left:
            _, mono_part = engine.coimage_factor(instance, f)
            if mono_part is None or not engine.is_mono(instance, mono_part):
                return f
        else:
            im = engine.image(instance, f)
            epi_part = instance.lift(im.arrow, f)
            if epi_part is None or not engine.is_epi(instance, epi_part):
                return f
    return None


def bimorphism_witnesses(instance: CategoryInstance, corpus: ProbeCorpus) -> List[Morphism]:
    """Corpus morphisms that are monic and epic but not isomorphisms."""
    verdicts: Dict[Hashable, bool] = {}
    for f in engine.representatives(instance, corpus.morphisms, IsoSide.BOTH):
        verdicts[engine.iso_class_key(instance, f, IsoSide.BOTH)] = (
            engine.is_mono(instance, f) and engine.is_epi(instance, f) and not engine.is_isomorphism(instance, f)
        )
    return [f for f in corpus.morphisms if verdicts[engine.iso_class_key(instance, f, IsoSide.BOTH)]]


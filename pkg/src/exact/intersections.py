"""
Exact axioms and admissible intersections.

``check_admissible_intersections`` looks for two admissible monomorphisms
into a common object whose pullback legs are not admissible. It tries the
section construction first: for a kernel-cokernel pair (f, g) outside the
structure, (1, g)^T and (1, 0)^T: B -> B (+) C are sections, hence admissible
in every exact structure, and their pullback legs are both isomorphic to f.
"""
import logging
from enum import Enum
from typing import Any, Callable, Dict, Hashable, List, Optional

from pydantic import BaseModel, Field

from src.category import engine
from src.category.errors import CertificateError, NotApplicable
from src.category.objects import IsoSide, Morphism, SquareKind
from src.checks.certificates import SquarePayload, decode_morphism, decode_square, encode_morphism, encode_square
from src.checks.corpus import ProbeCorpus
from src.checks.verify import invertible, is_pullback_square, kernel_like
from src.config.settings import PAIR_FANOUT
from src.exact.structure import (
    ExactStructure,
    StructureKind,
    is_admissible_epi,
    is_admissible_mono,
    is_conflation,
    is_kernel_cokernel_pair,
)

logger = logging.getLogger(__name__)


class ExactAxiom(str, Enum):
    IDENTITY_CONFLATION = "identity_conflation"
    MONO_COMPOSITION = "admissible_mono_composition"
    EPI_COMPOSITION = "admissible_epi_composition"
    PUSHOUT_STABILITY = "admissible_mono_pushout"
    PULLBACK_STABILITY = "admissible_epi_pullback"


class ExactViolation(BaseModel):
    instance: str
    structure: StructureKind
    axiom: ExactAxiom
    morphisms: List[Dict[str, Any]] = Field(default_factory=list)
    transcript: List[str] = Field(default_factory=list)


class AiOrigin(str, Enum):
    SECTION_TRICK = "section_trick"
    DIRECT = "direct"


class AiCertificate(BaseModel):
    instance: str
    structure: StructureKind
    origin: AiOrigin
    c: Dict[str, Any]
    d: Dict[str, Any]
    square: SquarePayload
    failing_leg: str
    transcript: List[str] = Field(default_factory=list)


def _violation(structure: ExactStructure, axiom: ExactAxiom, morphisms: List[Morphism], note: str) -> ExactViolation:
    instance = structure.instance
    logger.info(f"{structure!r} violates {axiom.value}: {note}")
    return ExactViolation(
        instance=instance.instance_id,
        structure=structure.kind,
        axiom=axiom,
        morphisms=[encode_morphism(instance, m) for m in morphisms],
        transcript=[note],
    )


def _bounded(candidates, label: str, limit: int = PAIR_FANOUT):
    """The first ``limit`` candidates; logs when more were available."""
    for i, item in enumerate(candidates):
        if i >= limit:
            logger.debug(f"{label}: partner scan stopped after {limit} candidates")
            return
        yield item


class _Verdicts:
    """An admissibility predicate, decided once per isomorphism class."""

    def __init__(self, structure: ExactStructure, predicate: Callable[[Morphism, ExactStructure], bool]):
        self.structure = structure
        self.predicate = predicate
        self.known: Dict[Hashable, bool] = {}

    def __call__(self, f: Morphism) -> bool:
        key = self.structure.class_key(f, IsoSide.SOURCE)
        if key not in self.known:
            self.known[key] = self.predicate(f, self.structure)
        return self.known[key]

    def select(self, morphisms) -> List[Morphism]:
        return [f for f in morphisms if self(f)]


def check_exact_axioms(structure: ExactStructure, corpus: ProbeCorpus) -> Optional[ExactViolation]:
    """First axiom violation on the corpus, or None."""
    instance = structure.instance
    zero = instance.zero_object()
    for obj in corpus.objects():
        identity = instance.identity(obj)
        if not is_conflation(identity, instance.zero_morphism(obj, zero), structure):
            return _violation(structure, ExactAxiom.IDENTITY_CONFLATION, [identity], f"X -> X -> 0 for {obj!r}")
        if not is_conflation(instance.zero_morphism(zero, obj), identity, structure):
            return _violation(structure, ExactAxiom.IDENTITY_CONFLATION, [identity], f"0 -> X -> X for {obj!r}")

    admissible_mono = _Verdicts(structure, is_admissible_mono)
    admissible_epi = _Verdicts(structure, is_admissible_epi)
    monos = admissible_mono.select(corpus.morphisms)
    epis = admissible_epi.select(corpus.morphisms)

    for f in structure.representatives(monos, IsoSide.SOURCE):
        for g in _bounded((m for m in monos if m.source == f.target), "mono composition"):
            composite = instance.compose(g, f)
            if not admissible_mono(composite):
                return _violation(structure, ExactAxiom.MONO_COMPOSITION, [f, g], "composite is not admissible")
    for f in structure.representatives(epis, IsoSide.SOURCE):
        for g in _bounded((e for e in epis if e.source == f.target), "epi composition"):
            composite = instance.compose(g, f)
            if not admissible_epi(composite):
                return _violation(structure, ExactAxiom.EPI_COMPOSITION, [f, g], "composite is not admissible")

    for a in structure.representatives(monos, IsoSide.TARGET):
        for b in _bounded((m for m in corpus.morphisms if m.source == a.source), "pushout stability"):
            square = engine.pushout(instance, a, b)
            if not admissible_mono(square.d):
                return _violation(structure, ExactAxiom.PUSHOUT_STABILITY, [a, b], "pushout leg is not admissible")
    for d in structure.representatives(epis, IsoSide.SOURCE):
        for c in _bounded((m for m in corpus.morphisms if m.target == d.target), "pullback stability"):
            square = engine.pullback(instance, c, d)
            if not admissible_epi(square.a):
                return _violation(structure, ExactAxiom.PULLBACK_STABILITY, [c, d], "pullback leg is not admissible")
    logger.debug(f"{structure!r} satisfies the exact axioms on {len(corpus)} probes")
    return None


def _isomorphic_subobjects(instance, leg: Morphism, f: Morphism) -> bool:
    """leg = f . phi for an isomorphism phi."""
    phi = instance.lift(f, leg)
    return phi is not None and engine.is_isomorphism(instance, phi) and instance.compose(f, phi) == leg


def section_trick_refute(f: Morphism, g: Morphism, structure: ExactStructure) -> AiCertificate:
    """
    For a kernel-cokernel pair (f, g) outside the structure, pull back the
    sections (1, g)^T and (1, 0)^T into B (+) C. Raises NotApplicable when
    (f, g) is not a kernel-cokernel pair or already a conflation.
    """
    instance = structure.instance
    if not is_kernel_cokernel_pair(instance, f, g):
        raise NotApplicable(f"({f!r}, {g!r}) is not a kernel-cokernel pair")
    if is_conflation(f, g, structure):
        raise NotApplicable(f"({f!r}, {g!r}) already belongs to {structure!r}")

    total = engine.biproduct(instance, f.target, g.target)
    i1, i2 = total.injections
    graph = instance.add(i1, instance.compose(i2, g))
    axis = i1
    transcript = [f"f = {f!r}", f"g = {g!r}", "sections (1, g)^T and (1, 0)^T into B (+) C"]
    if not (is_admissible_mono(graph, structure) and is_admissible_mono(axis, structure)):
        raise CertificateError("the section legs are not admissible; the structure is not exact")

    square = engine.pullback(instance, graph, axis)
    for name, leg in (("a", square.a), ("b", square.b)):
        if not _isomorphic_subobjects(instance, leg, f):
            raise CertificateError(f"pullback leg {name} is not isomorphic to f")
        transcript.append(f"pullback leg {name} is isomorphic to f")
    if is_admissible_mono(square.a, structure):
        raise NotApplicable("the pullback leg is admissible although f is not")
    if structure.kind == StructureKind.SPLIT:
        transcript.append("leg a has no retraction: no solution of r . a = 1")
    transcript.append("leg a is not an admissible monomorphism")
    logger.info(f"admissible intersections fail for {structure!r} via the section construction")
    return AiCertificate(
        instance=instance.instance_id,
        structure=structure.kind,
        origin=AiOrigin.SECTION_TRICK,
        c=encode_morphism(instance, graph),
        d=encode_morphism(instance, axis),
        square=encode_square(instance, square),
        failing_leg="a",
        transcript=transcript,
    )


def check_admissible_intersections(structure: ExactStructure, corpus: ProbeCorpus) -> Optional[AiCertificate]:
    """
    Pullbacks of admissible monomorphisms have admissible legs, on the corpus.
    Kernel-cokernel pairs of the corpus outside the structure are refuted by
    the section construction first, then direct pairs are scanned.
    """
    instance = structure.instance
    if structure.kind != StructureKind.ALL_PAIRS:
        for f in structure.representatives(corpus.morphisms, IsoSide.SOURCE):
            if not engine.is_kernel_morphism(instance, f):
                continue
            g = engine.cokernel(instance, f).arrow
            if is_conflation(f, g, structure):
                continue
            try:
                return section_trick_refute(f, g, structure)
            except NotApplicable as e:
                logger.debug(f"section construction skipped: {e}")

    admissible = _Verdicts(structure, is_admissible_mono)
    monos = admissible.select(corpus.morphisms)
    for c in structure.representatives(monos, IsoSide.SOURCE):
        for d in _bounded((m for m in monos if m.target == c.target), "admissible intersections"):
            square = engine.pullback(instance, c, d)
            for name, leg in (("a", square.a), ("b", square.b)):
                if not admissible(leg):
                    logger.info(f"admissible intersections fail for {structure!r}")
                    return AiCertificate(
                        instance=instance.instance_id,
                        structure=structure.kind,
                        origin=AiOrigin.DIRECT,
                        c=encode_morphism(instance, c),
                        d=encode_morphism(instance, d),
                        square=encode_square(instance, square),
                        failing_leg=name,
                        transcript=[f"c = {c!r}", f"d = {d!r}", f"pullback leg {name} is not admissible"],
                    )
    return None


def _admissible_mono_directly(structure: ExactStructure, f: Morphism) -> bool:
    """
    Admissibility re-derived from the instance primitives: a solution of
    r . f = 1, else the kernel comparison and (for a custom structure) an
    invertible comparison with a listed monomorphism.
    """
    instance = structure.instance
    identity = instance.identity(f.source)
    retraction = instance.extend(f, identity)
    if retraction is not None and instance.compose(retraction, f) == identity:
        return True
    if structure.kind == StructureKind.SPLIT or not kernel_like(instance, f):
        return False
    if structure.kind == StructureKind.ALL_PAIRS:
        return True
    return any(
        listed.target == f.target and invertible(instance, instance.lift(listed, f))
        for listed, _ in structure.conflations
    )


def verify_ai_certificate(structure: ExactStructure, cert: AiCertificate) -> bool:
    """
    Recheck admissibility of c and d, the pullback square and the failing leg.
    Only instance primitives are used, never the structure predicates.
    """
    instance = structure.instance
    if cert.instance != instance.instance_id or cert.structure != structure.kind:
        raise CertificateError(f"certificate for {cert.instance}/{cert.structure.value} checked against {structure!r}")
    c, d = decode_morphism(instance, cert.c), decode_morphism(instance, cert.d)
    square = decode_square(instance, cert.square)
    if square.kind != SquareKind.PULLBACK or (square.c, square.d) != (c, d):
        return False
    if cert.failing_leg not in ("a", "b"):
        return False
    if not (_admissible_mono_directly(structure, c) and _admissible_mono_directly(structure, d)):
        return False
    if not is_pullback_square(instance, square):
        return False
    leg = square.a if cert.failing_leg == "a" else square.b
    return not _admissible_mono_directly(structure, leg)

"""
Counterexample certificates.

A certificate names the property that failed, the sub-check that failed and
the witness data (a square, a morphism, or an object with an un-liftable
morphism). Morphisms are stored in their instance's JSON form so that a
certificate can be written out, read back and re-verified from scratch.
"""
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.category.errors import CategoryError, CertificateError
from src.category.instance import CategoryInstance
from src.category.objects import Morphism, SquareKind, SquareWitness


class PropertyName(str, Enum):
    LEFT_SEMI_ABELIAN = "left_semi_abelian"
    RIGHT_SEMI_ABELIAN = "right_semi_abelian"
    LEFT_QUASI_ABELIAN = "left_quasi_abelian"
    RIGHT_QUASI_ABELIAN = "right_quasi_abelian"
    LEFT_INTEGRAL = "left_integral"
    RIGHT_INTEGRAL = "right_integral"
    PROJECTIVE = "projective"
    QUASI_PROJECTIVE = "quasi_projective"


class FailedCheck(str, Enum):
    PARALLEL_NOT_MONIC = "parallel_not_monic"
    PARALLEL_NOT_EPIC = "parallel_not_epic"
    COIMAGE_FACTORIZATION_MISSING = "coimage_factorization_missing"
    IMAGE_FACTORIZATION_MISSING = "image_factorization_missing"
    PULLBACK_LEG_NOT_COKERNEL = "pullback_leg_not_cokernel"
    PUSHOUT_LEG_NOT_KERNEL = "pushout_leg_not_kernel"
    PULLBACK_LEG_NOT_EPIC = "pullback_leg_not_epic"
    PUSHOUT_LEG_NOT_MONIC = "pushout_leg_not_monic"
    GENERATOR_NOT_LIFTABLE = "generator_not_liftable"


# Which property each failed sub-check refutes
REFUTES = {
    FailedCheck.PARALLEL_NOT_MONIC: {PropertyName.LEFT_SEMI_ABELIAN},
    FailedCheck.PARALLEL_NOT_EPIC: {PropertyName.RIGHT_SEMI_ABELIAN},
    FailedCheck.COIMAGE_FACTORIZATION_MISSING: {PropertyName.LEFT_SEMI_ABELIAN, PropertyName.RIGHT_SEMI_ABELIAN},
    FailedCheck.IMAGE_FACTORIZATION_MISSING: {PropertyName.LEFT_SEMI_ABELIAN, PropertyName.RIGHT_SEMI_ABELIAN},
    FailedCheck.PULLBACK_LEG_NOT_COKERNEL: {PropertyName.LEFT_QUASI_ABELIAN},
    FailedCheck.PUSHOUT_LEG_NOT_KERNEL: {PropertyName.RIGHT_QUASI_ABELIAN},
    FailedCheck.PULLBACK_LEG_NOT_EPIC: {PropertyName.LEFT_INTEGRAL},
    FailedCheck.PUSHOUT_LEG_NOT_MONIC: {PropertyName.RIGHT_INTEGRAL},
    FailedCheck.GENERATOR_NOT_LIFTABLE: {PropertyName.PROJECTIVE, PropertyName.QUASI_PROJECTIVE},
}


class SquarePayload(BaseModel):
    kind: SquareKind
    a: Dict[str, Any]
    b: Dict[str, Any]
    c: Dict[str, Any]
    d: Dict[str, Any]


class PropertyCertificate(BaseModel):
    property: PropertyName
    instance: str
    failed_check: FailedCheck
    square: Optional[SquarePayload] = None
    morphism: Optional[Dict[str, Any]] = None
    probe_object: Optional[Any] = None
    generator: Optional[Dict[str, Any]] = None
    transcript: List[str] = Field(default_factory=list)


def encode_morphism(instance: CategoryInstance, f: Morphism) -> Dict[str, Any]:
    return instance.morphism_to_json(f)


def decode_morphism(instance: CategoryInstance, data: Dict[str, Any]) -> Morphism:
    try:
        return instance.morphism_from_json(data)
    except (CategoryError, KeyError, TypeError, ValueError) as e:
        raise CertificateError(f"cannot decode morphism {data!r}: {e}")


def encode_square(instance: CategoryInstance, square: SquareWitness) -> SquarePayload:
    return SquarePayload(
        kind=square.kind,
        a=encode_morphism(instance, square.a),
        b=encode_morphism(instance, square.b),
        c=encode_morphism(instance, square.c),
        d=encode_morphism(instance, square.d),
    )


def decode_square(instance: CategoryInstance, payload: SquarePayload) -> SquareWitness:
    a, b, c, d = (decode_morphism(instance, m) for m in (payload.a, payload.b, payload.c, payload.d))
    if a.source != b.source or c.target != d.target or a.target != c.source or b.target != d.source:
        raise CertificateError("square legs do not fit together")
    return SquareWitness(kind=payload.kind, A=a.source, B=a.target, C=b.target, D=c.target, a=a, b=b, c=c, d=d)


def square_certificate(instance: CategoryInstance, prop: PropertyName, failed: FailedCheck,
                       square: SquareWitness, transcript: List[str]) -> PropertyCertificate:
    return PropertyCertificate(
        property=prop,
        instance=instance.instance_id,
        failed_check=failed,
        square=encode_square(instance, square),
        transcript=transcript,
    )


def morphism_certificate(instance: CategoryInstance, prop: PropertyName, failed: FailedCheck,
                         f: Morphism, transcript: List[str]) -> PropertyCertificate:
    return PropertyCertificate(
        property=prop,
        instance=instance.instance_id,
        failed_check=failed,
        morphism=encode_morphism(instance, f),
        transcript=transcript,
    )

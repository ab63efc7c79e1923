"""
Independent re-verification of certificates.

Nothing here goes through the engine or the checkers: every predicate is
re-derived directly from the instance primitives (kernel, cokernel,
biproduct, lift, extend), so a certificate that passes here does not depend
on the code that produced it.
"""
import logging
from typing import Optional

from src.category.errors import CertificateError
from src.category.instance import CategoryInstance
from src.category.objects import Morphism, ObjectRef, SquareKind, SquareWitness
from src.checks.certificates import (
    REFUTES,
    FailedCheck,
    PropertyCertificate,
    PropertyName,
    decode_morphism,
    decode_square,
)

logger = logging.getLogger(__name__)


def _zero(instance: CategoryInstance, obj: ObjectRef) -> bool:
    return instance.identity(obj) == instance.zero_morphism(obj, obj)


def _mono(instance: CategoryInstance, f: Morphism) -> bool:
    return _zero(instance, instance.kernel(f).object)


def _epi(instance: CategoryInstance, f: Morphism) -> bool:
    return _zero(instance, instance.cokernel(f).object)


def invertible(instance: CategoryInstance, f: Optional[Morphism]) -> bool:
    """f is given and has a two-sided inverse."""
    if f is None:
        return False
    h = instance.lift(f, instance.identity(f.target))
    return h is not None and instance.compose(h, f) == instance.identity(f.source)


def kernel_like(instance: CategoryInstance, f: Morphism) -> bool:
    """The comparison into Ker(coker f) is invertible."""
    inclusion = instance.kernel(instance.cokernel(f).arrow).arrow
    return invertible(instance, instance.lift(inclusion, f))


def cokernel_like(instance: CategoryInstance, f: Morphism) -> bool:
    projection = instance.cokernel(instance.kernel(f).arrow).arrow
    return invertible(instance, instance.extend(projection, f))


def _commutes(instance: CategoryInstance, square: SquareWitness) -> bool:
    return instance.compose(square.c, square.a) == instance.compose(square.d, square.b)


def is_pullback_square(instance: CategoryInstance, square: SquareWitness) -> bool:
    if not _commutes(instance, square):
        return False
    total = instance.biproduct(square.B, square.C)
    (i1, i2), (p1, p2) = total.injections, total.projections
    difference = instance.subtract(instance.compose(square.c, p1), instance.compose(square.d, p2))
    joint = instance.add(instance.compose(i1, square.a), instance.compose(i2, square.b))
    return invertible(instance, instance.lift(instance.kernel(difference).arrow, joint))


def is_pushout_square(instance: CategoryInstance, square: SquareWitness) -> bool:
    if not _commutes(instance, square):
        return False
    total = instance.biproduct(square.B, square.C)
    (i1, i2), (p1, p2) = total.injections, total.projections
    difference = instance.subtract(instance.compose(i1, square.a), instance.compose(i2, square.b))
    joint = instance.add(instance.compose(square.c, p1), instance.compose(square.d, p2))
    return invertible(instance, instance.extend(instance.cokernel(difference).arrow, joint))


def _verify_parallel(instance: CategoryInstance, failed: FailedCheck, f: Morphism) -> bool:
    coimage = instance.cokernel(instance.kernel(f).arrow).arrow
    image = instance.kernel(instance.cokernel(f).arrow).arrow
    through_coimage = instance.extend(coimage, f)
    if failed == FailedCheck.COIMAGE_FACTORIZATION_MISSING:
        return through_coimage is None
    if through_coimage is None:
        return False
    parallel = instance.lift(image, through_coimage)
    if failed == FailedCheck.IMAGE_FACTORIZATION_MISSING:
        return parallel is None
    if parallel is None:
        return False
    if failed == FailedCheck.PARALLEL_NOT_MONIC:
        return not _mono(instance, parallel)
    return not _epi(instance, parallel)


def _verify_square(instance: CategoryInstance, failed: FailedCheck, square: SquareWitness) -> bool:
    if failed in (FailedCheck.PULLBACK_LEG_NOT_COKERNEL, FailedCheck.PULLBACK_LEG_NOT_EPIC):
        if square.kind != SquareKind.PULLBACK or not is_pullback_square(instance, square):
            return False
        if failed == FailedCheck.PULLBACK_LEG_NOT_COKERNEL:
            return cokernel_like(instance, square.d) and not cokernel_like(instance, square.a)
        return _epi(instance, square.d) and not _epi(instance, square.a)
    if square.kind != SquareKind.PUSHOUT or not is_pushout_square(instance, square):
        return False
    if failed == FailedCheck.PUSHOUT_LEG_NOT_KERNEL:
        return kernel_like(instance, square.a) and not kernel_like(instance, square.d)
    return _mono(instance, square.a) and not _mono(instance, square.d)


def _verify_projectivity(instance: CategoryInstance, cert: PropertyCertificate) -> bool:
    probe = instance.object_from_json(cert.probe_object)
    quotient = decode_morphism(instance, cert.morphism)
    generator = decode_morphism(instance, cert.generator)
    if generator.source != probe or generator.target != quotient.target:
        return False
    if cert.property == PropertyName.PROJECTIVE and not _epi(instance, quotient):
        return False
    if cert.property == PropertyName.QUASI_PROJECTIVE and not cokernel_like(instance, quotient):
        return False
    return instance.lift(quotient, generator) is None


def verify_certificate(instance: CategoryInstance, cert: PropertyCertificate) -> bool:
    """Re-derive the claimed failure from the stored witness."""
    if cert.instance != instance.instance_id:
        raise CertificateError(f"certificate for {cert.instance} checked against {instance.instance_id}")
    if cert.property not in REFUTES[cert.failed_check]:
        logger.debug(f"{cert.failed_check.value} cannot refute {cert.property.value}")
        return False
    failed = cert.failed_check
    if failed in (FailedCheck.PARALLEL_NOT_MONIC, FailedCheck.PARALLEL_NOT_EPIC,
                  FailedCheck.COIMAGE_FACTORIZATION_MISSING, FailedCheck.IMAGE_FACTORIZATION_MISSING):
        if cert.morphism is None:
            raise CertificateError("parallel-morphism certificate without a witness morphism")
        verdict = _verify_parallel(instance, failed, decode_morphism(instance, cert.morphism))
    elif failed == FailedCheck.GENERATOR_NOT_LIFTABLE:
        if cert.morphism is None or cert.generator is None or cert.probe_object is None:
            raise CertificateError("projectivity certificate is missing witness data")
        verdict = _verify_projectivity(instance, cert)
    else:
        if cert.square is None:
            raise CertificateError("stability certificate without a square")
        verdict = _verify_square(instance, failed, decode_square(instance, cert.square))
    logger.debug(f"certificate {cert.property.value}/{failed.value} on {cert.instance}: verified={verdict}")
    return verdict

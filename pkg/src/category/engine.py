"""
Generic additive-category engine.

Every construction here is expressed through the CategoryInstance interface
only: images and coimages from (co)kernels, the parallel morphism by two
factorizations, pullbacks and pushouts as the (co)kernel of the difference
map on a biproduct, and mono/epi by vanishing of the (co)kernel.

Universal-property checks are relative to a finite set of probes: a failure
is absolute, a pass only says no probe refuted the property.

Kernels, cokernels, recognitions and squares are memoized on the instance,
keyed by the (immutable) input morphisms.
"""
import logging
from typing import Hashable, Iterable, List, Optional, Tuple

from src.category.errors import DomainMismatchError, FactorizationError, InstanceMismatchError
from src.category.instance import CategoryInstance
from src.category.objects import (
    Biproduct,
    CokernelResult,
    IsoSide,
    KernelResult,
    Morphism,
    ObjectRef,
    Recognition,
    SquareKind,
    SquareWitness,
)

logger = logging.getLogger(__name__)


def compose(instance: CategoryInstance, f: Morphism, g: Morphism) -> Morphism:
    """f . g; the target of g must be the source of f."""
    return instance.compose(f, g)


def biproduct(instance: CategoryInstance, first: ObjectRef, second: ObjectRef) -> Biproduct:
    if first.instance_id != second.instance_id:
        raise InstanceMismatchError(f"{first!r} and {second!r} live in different instances")
    return instance.biproduct(first, second)


def column(instance: CategoryInstance, total: Biproduct, f: Morphism, g: Morphism) -> Morphism:
    """(f, g)^T : X -> B (+) C for f: X -> B and g: X -> C."""
    i1, i2 = total.injections
    return instance.add(instance.compose(i1, f), instance.compose(i2, g))


def row(instance: CategoryInstance, total: Biproduct, f: Morphism, g: Morphism) -> Morphism:
    """[f, g] : B (+) C -> Y for f: B -> Y and g: C -> Y."""
    p1, p2 = total.projections
    return instance.add(instance.compose(f, p1), instance.compose(g, p2))


def kernel(instance: CategoryInstance, f: Morphism) -> KernelResult:
    return instance.memo("kernel", f, lambda: instance.kernel(f))


def cokernel(instance: CategoryInstance, f: Morphism) -> CokernelResult:
    return instance.memo("cokernel", f, lambda: instance.cokernel(f))


def image(instance: CategoryInstance, f: Morphism) -> KernelResult:
    """Im f = Ker(coker f)."""
    return kernel(instance, cokernel(instance, f).arrow)


def coimage(instance: CategoryInstance, f: Morphism) -> CokernelResult:
    """Coim f = Coker(ker f)."""
    return cokernel(instance, kernel(instance, f).arrow)


def iso_class_key(instance: CategoryInstance, f: Morphism, side: IsoSide) -> Hashable:
    return instance.memo(f"iso_class:{side.value}", f, lambda: instance.iso_class_key(f, side))


def representatives(instance: CategoryInstance, morphisms: Iterable[Morphism], side: IsoSide) -> List[Morphism]:
    """
    The first morphism of each isomorphism class (automorphisms composed on
    ``side``), in order. Properties invariant under such isomorphisms only
    need to be decided once per class.
    """
    first = {}
    for f in morphisms:
        first.setdefault(iso_class_key(instance, f, side), f)
    return list(first.values())


def is_zero_morphism(instance: CategoryInstance, f: Morphism) -> bool:
    return f == instance.zero_morphism(f.source, f.target)


def is_zero_object(instance: CategoryInstance, obj: ObjectRef) -> bool:
    """An object is zero iff its identity equals its zero endomorphism."""
    return instance.identity(obj) == instance.zero_morphism(obj, obj)


def _inverse(instance: CategoryInstance, f: Morphism) -> Optional[Morphism]:
    candidate = instance.lift(f, instance.identity(f.target))
    if candidate is None:
        return None
    if instance.compose(candidate, f) != instance.identity(f.source):
        return None
    return candidate


def inverse(instance: CategoryInstance, f: Morphism) -> Optional[Morphism]:
    """The two-sided inverse of f, or None. A right inverse of an iso is its inverse."""
    return instance.memo("inverse", f, lambda: _inverse(instance, f))


def is_isomorphism(instance: CategoryInstance, f: Morphism) -> bool:
    return inverse(instance, f) is not None


def is_mono(instance: CategoryInstance, f: Morphism) -> bool:
    return is_zero_object(instance, kernel(instance, f).object)


def is_epi(instance: CategoryInstance, f: Morphism) -> bool:
    return is_zero_object(instance, cokernel(instance, f).object)


def coimage_factor(instance: CategoryInstance, f: Morphism) -> Tuple[CokernelResult, Optional[Morphism]]:
    """The coimage of f and the unique f' with f = f' . coim."""
    coim = coimage(instance, f)
    return coim, instance.extend(coim.arrow, f)


def parallel_morphism(instance: CategoryInstance, f: Morphism) -> Morphism:
    """The canonical morphism Coim f -> Im f through which f factors."""
    coim, through_coimage = coimage_factor(instance, f)
    if through_coimage is None:
        raise FactorizationError(f"{f!r} does not factor through its coimage")
    im = image(instance, f)
    parallel = instance.lift(im.arrow, through_coimage)
    if parallel is None:
        raise FactorizationError(f"{f!r} does not factor through its image")
    recomposed = instance.compose(im.arrow, instance.compose(parallel, coim.arrow))
    if recomposed != f:
        raise FactorizationError(f"image/coimage factorization of {f!r} does not recompose")
    return parallel


def _recognize_kernel(instance: CategoryInstance, f: Morphism) -> Recognition:
    k = image(instance, f)
    comparison = instance.lift(k.arrow, f)
    if comparison is None or not is_isomorphism(instance, comparison):
        return Recognition(False)
    return Recognition(True, comparison)


def _recognize_cokernel(instance: CategoryInstance, f: Morphism) -> Recognition:
    c = coimage(instance, f)
    comparison = instance.extend(c.arrow, f)
    if comparison is None or not is_isomorphism(instance, comparison):
        return Recognition(False)
    return Recognition(True, comparison)


def is_kernel_morphism(instance: CategoryInstance, f: Morphism) -> Recognition:
    """f is a kernel iff the canonical map into Ker(coker f) is an isomorphism."""
    return instance.memo("is_kernel", f, lambda: _recognize_kernel(instance, f))


def is_cokernel_morphism(instance: CategoryInstance, f: Morphism) -> Recognition:
    """f is a cokernel iff the canonical map out of Coker(ker f) is an isomorphism."""
    return instance.memo("is_cokernel", f, lambda: _recognize_cokernel(instance, f))


def pullback(instance: CategoryInstance, c: Morphism, d: Morphism) -> SquareWitness:
    """Pullback of c: B -> D and d: C -> D, as the kernel of [c, -d] on B (+) C."""
    if c.target != d.target:
        raise DomainMismatchError(f"pullback needs a common target: {c!r}, {d!r}")
    return instance.memo("pullback", (c, d), lambda: _pullback(instance, c, d))


def _pullback(instance: CategoryInstance, c: Morphism, d: Morphism) -> SquareWitness:
    total = biproduct(instance, c.source, d.source)
    difference = row(instance, total, c, instance.negate(d))
    k = instance.kernel(difference)
    p1, p2 = total.projections
    return SquareWitness(
        kind=SquareKind.PULLBACK,
        A=k.object, B=c.source, C=d.source, D=c.target,
        a=instance.compose(p1, k.arrow),
        b=instance.compose(p2, k.arrow),
        c=c, d=d,
    )


def pushout(instance: CategoryInstance, a: Morphism, b: Morphism) -> SquareWitness:
    """Pushout of a: A -> B and b: A -> C, as the cokernel of (a, -b)^T into B (+) C."""
    if a.source != b.source:
        raise DomainMismatchError(f"pushout needs a common source: {a!r}, {b!r}")
    return instance.memo("pushout", (a, b), lambda: _pushout(instance, a, b))


def _pushout(instance: CategoryInstance, a: Morphism, b: Morphism) -> SquareWitness:
    total = biproduct(instance, a.target, b.target)
    difference = column(instance, total, a, instance.negate(b))
    q = instance.cokernel(difference)
    i1, i2 = total.injections
    return SquareWitness(
        kind=SquareKind.PUSHOUT,
        A=a.source, B=a.target, C=b.target, D=q.object,
        a=a, b=b,
        c=instance.compose(q.arrow, i1),
        d=instance.compose(q.arrow, i2),
    )


def square_commutes(instance: CategoryInstance, square: SquareWitness) -> bool:
    return instance.compose(square.c, square.a) == instance.compose(square.d, square.b)


# Probe-relative universal property checks


def verify_kernel(instance: CategoryInstance, f: Morphism, result: KernelResult,
                  probes: Iterable[Morphism]) -> bool:
    """Composite zero, arrow monic, and every probe h with f . h = 0 factors through it."""
    if not is_zero_morphism(instance, instance.compose(f, result.arrow)):
        return False
    if not is_mono(instance, result.arrow):
        return False
    for h in probes:
        if h.target != f.source or not is_zero_morphism(instance, instance.compose(f, h)):
            continue
        factor = instance.lift(result.arrow, h)
        if factor is None or instance.compose(result.arrow, factor) != h:
            logger.debug(f"kernel of {f!r} fails against probe {h!r}")
            return False
    return True


def verify_cokernel(instance: CategoryInstance, f: Morphism, result: CokernelResult,
                    probes: Iterable[Morphism]) -> bool:
    if not is_zero_morphism(instance, instance.compose(result.arrow, f)):
        return False
    if not is_epi(instance, result.arrow):
        return False
    for h in probes:
        if h.source != f.target or not is_zero_morphism(instance, instance.compose(h, f)):
            continue
        factor = instance.extend(result.arrow, h)
        if factor is None or instance.compose(factor, result.arrow) != h:
            logger.debug(f"cokernel of {f!r} fails against probe {h!r}")
            return False
    return True


def verify_square(instance: CategoryInstance, square: SquareWitness,
                  cones: Iterable[Tuple[Morphism, Morphism]]) -> bool:
    """
    Check a pullback (pushout) square against probe cones (u: Q -> B, v: Q -> C)
    (cocones u: B -> Q, v: C -> Q): a mediating morphism exists for every
    commuting cone, and it is unique because the joint leg is monic (epic).
    """
    if not square_commutes(instance, square):
        return False
    if square.kind == SquareKind.PULLBACK:
        total = biproduct(instance, square.B, square.C)
        joint = column(instance, total, square.a, square.b)
        if not is_mono(instance, joint):
            return False
        for u, v in cones:
            if instance.compose(square.c, u) != instance.compose(square.d, v):
                continue
            if instance.lift(joint, column(instance, total, u, v)) is None:
                return False
        return True
    total = biproduct(instance, square.B, square.C)
    joint = row(instance, total, square.c, square.d)
    if not is_epi(instance, joint):
        return False
    for u, v in cones:
        if instance.compose(u, square.a) != instance.compose(v, square.b):
            continue
        if instance.extend(joint, row(instance, total, u, v)) is None:
            return False
    return True


def dual_square(square: SquareWitness, opposite: CategoryInstance) -> SquareWitness:
    """
    The same square read in an opposite instance (one offering ``dual``): a
    pullback of (c, d) becomes a pushout of (d, c) whose stability leg is a.
    """
    kind = SquareKind.PUSHOUT if square.kind == SquareKind.PULLBACK else SquareKind.PULLBACK
    d, c, b, a = (opposite.dual(m) for m in (square.a, square.b, square.c, square.d))
    return SquareWitness(kind=kind, A=a.source, B=a.target, C=b.target, D=c.target, a=a, b=b, c=c, d=d)

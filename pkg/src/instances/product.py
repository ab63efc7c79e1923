"""
The product of two instances.

Objects and morphisms are pairs, and every construction is computed
componentwise. A morphism of the product is monic (epic, an isomorphism)
exactly when both components are, which is what lets a counterexample in one
factor be carried into the product by padding it with the zero object.
"""
import logging
import random
from typing import Any, Dict, Hashable, List, Optional, Tuple

from src.category import engine
from src.category.errors import CertificateError, InstanceMismatchError, InvalidMorphismError, InvalidObjectError
from src.category.instance import CategoryInstance
from src.category.objects import Biproduct, CokernelResult, IsoSide, KernelResult, Morphism, ObjectRef, SquareWitness
from src.checks.certificates import PropertyCertificate, decode_morphism, decode_square, encode_square
from src.checks.verify import verify_certificate

logger = logging.getLogger(__name__)


class ProductInstance(CategoryInstance):

    def __init__(self, first: CategoryInstance, second: CategoryInstance):
        self.first = first
        self.second = second
        self.instance_id = f"product:{first.instance_id}:{second.instance_id}"

    @property
    def components(self) -> Tuple[CategoryInstance, CategoryInstance]:
        return (self.first, self.second)

    # Objects and morphisms

    def make_object(self, payload: Any) -> ObjectRef:
        try:
            x, y = payload
        except (TypeError, ValueError):
            raise InvalidObjectError(f"product objects are pairs, got {payload!r}")
        if not (self.first.owns(x) and self.second.owns(y)):
            raise InstanceMismatchError(f"({x!r}, {y!r}) is not an object of {self.instance_id}")
        return ObjectRef(self.instance_id, (x, y))

    def pair_object(self, x: ObjectRef, y: ObjectRef) -> ObjectRef:
        return self.make_object((x, y))

    def make_morphism(self, source: ObjectRef, target: ObjectRef, payload: Any) -> Morphism:
        self.require_owned(source, target)
        try:
            f, g = payload
        except (TypeError, ValueError):
            raise InvalidMorphismError(f"product morphisms are pairs, got {payload!r}")
        self.first.require_owned(f)
        self.second.require_owned(g)
        if (f.source, g.source) != source.payload or (f.target, g.target) != target.payload:
            raise InvalidMorphismError(f"components ({f!r}, {g!r}) do not match {source!r} -> {target!r}")
        return Morphism(source, target, (f, g))

    def pair(self, f: Morphism, g: Morphism) -> Morphism:
        return self.make_morphism(
            self.pair_object(f.source, g.source), self.pair_object(f.target, g.target), (f, g)
        )

    def _map(self, method: str, *items) -> Tuple[Any, Any]:
        """Apply a component method to the split arguments."""
        firsts = [item.payload[0] for item in items]
        seconds = [item.payload[1] for item in items]
        return getattr(self.first, method)(*firsts), getattr(self.second, method)(*seconds)

    def zero_object(self) -> ObjectRef:
        return self.pair_object(self.first.zero_object(), self.second.zero_object())

    def identity(self, obj: ObjectRef) -> Morphism:
        self.require_owned(obj)
        return self.pair(*self._map("identity", obj))

    def zero_morphism(self, source: ObjectRef, target: ObjectRef) -> Morphism:
        self.require_owned(source, target)
        (x1, y1), (x2, y2) = source.payload, target.payload
        return self.pair(self.first.zero_morphism(x1, x2), self.second.zero_morphism(y1, y2))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        self.require_composable(f, g)
        return self.pair(*self._map("compose", f, g))

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        self.require_owned(f, g)
        return self.pair(*self._map("add", f, g))

    def negate(self, f: Morphism) -> Morphism:
        self.require_owned(f)
        return self.pair(*self._map("negate", f))

    # Universal constructions

    def biproduct(self, first: ObjectRef, second: ObjectRef) -> Biproduct:
        self.require_owned(first, second)
        left, right = self._map("biproduct", first, second)
        return Biproduct(
            self.pair_object(left.object, right.object),
            tuple(self.pair(f, g) for f, g in zip(left.injections, right.injections)),
            tuple(self.pair(f, g) for f, g in zip(left.projections, right.projections)),
        )

    def kernel(self, f: Morphism) -> KernelResult:
        self.require_owned(f)
        left, right = self._map("kernel", f)
        return KernelResult(self.pair_object(left.object, right.object), self.pair(left.arrow, right.arrow))

    def cokernel(self, f: Morphism) -> CokernelResult:
        self.require_owned(f)
        left, right = self._map("cokernel", f)
        return CokernelResult(self.pair_object(left.object, right.object), self.pair(left.arrow, right.arrow))

    def lift(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        left, right = self._map("lift", f, g)
        if left is None or right is None:
            return None
        return self.pair(left, right)

    def extend(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        left, right = self._map("extend", f, g)
        if left is None or right is None:
            return None
        return self.pair(left, right)

    def hom_generators(self, source: ObjectRef, target: ObjectRef) -> List[Morphism]:
        (x1, y1), (x2, y2) = source.payload, target.payload
        zero_first = self.first.zero_morphism(x1, x2)
        zero_second = self.second.zero_morphism(y1, y2)
        return [self.pair(h, zero_second) for h in self.first.hom_generators(x1, x2)] + \
               [self.pair(zero_first, h) for h in self.second.hom_generators(y1, y2)]

    def iso_class_key(self, f: Morphism, side: IsoSide) -> Hashable:
        # isomorphisms of a product are componentwise
        first, second = f.payload
        return self.first.iso_class_key(first, side), self.second.iso_class_key(second, side)

    # Serialization

    def object_to_json(self, obj: ObjectRef) -> Any:
        x, y = obj.payload
        return [self.first.object_to_json(x), self.second.object_to_json(y)]

    def object_from_json(self, data: Any) -> ObjectRef:
        if not isinstance(data, list) or len(data) != 2:
            raise InvalidObjectError(f"product objects serialize as two-element lists, got {data!r}")
        return self.pair_object(self.first.object_from_json(data[0]), self.second.object_from_json(data[1]))

    def morphism_to_json(self, f: Morphism) -> Dict[str, Any]:
        left, right = f.payload
        return {
            "source": self.object_to_json(f.source),
            "target": self.object_to_json(f.target),
            "components": [self.first.morphism_to_json(left), self.second.morphism_to_json(right)],
        }

    def morphism_from_json(self, data: Dict[str, Any]) -> Morphism:
        left, right = data["components"]
        f = self.pair(self.first.morphism_from_json(left), self.second.morphism_from_json(right))
        if "source" in data and self.object_from_json(data["source"]) != f.source:
            raise InvalidMorphismError(f"declared source does not match the components of {data!r}")
        if "target" in data and self.object_from_json(data["target"]) != f.target:
            raise InvalidMorphismError(f"declared target does not match the components of {data!r}")
        return f

    # Probe corpus

    def pad(self, f: Morphism, position: int) -> Morphism:
        """A component morphism paired with the zero endomorphism of the zero object."""
        if position == 0:
            zero = self.second.zero_object()
            return self.pair(f, self.second.identity(zero))
        zero = self.first.zero_object()
        return self.pair(self.first.identity(zero), f)

    def curated_probes(self) -> List[Morphism]:
        firsts, seconds = self.first.curated_probes(), self.second.curated_probes()
        probes = [self.pair(f, g) for f, g in zip(firsts, seconds)]
        probes += [self.pad(f, 0) for f in firsts]
        probes += [self.pad(g, 1) for g in seconds]
        return probes

    def random_probe(self, rng: random.Random) -> Morphism:
        return self.pair(self.first.random_probe(rng), self.second.random_probe(rng))


def product_lift(instance: ProductInstance, opname: str, *args) -> Tuple[Any, Any]:
    """
    Run an engine operation on each component of product arguments.

    ``product_lift(p, "kernel", f)`` is ``(engine.kernel(A, f1), engine.kernel(B, f2))``.
    """
    operation = getattr(engine, opname, None)
    if operation is None or not callable(operation):
        raise AttributeError(f"engine has no operation {opname!r}")
    for arg in args:
        instance.require_owned(arg)
    firsts = [arg.payload[0] for arg in args]
    seconds = [arg.payload[1] for arg in args]
    return operation(instance.first, *firsts), operation(instance.second, *seconds)


def lift_counterexample_to_product(cert: PropertyCertificate, product: ProductInstance,
                                   position: int = 0) -> PropertyCertificate:
    """
    Carry a failure square from one factor into the product, filling the other
    factor with the zero object, and re-verify it there.
    """
    component = product.components[position]
    if cert.instance != component.instance_id:
        raise CertificateError(f"certificate is for {cert.instance}, not {component.instance_id}")
    if cert.square is not None:
        square = decode_square(component, cert.square)
        a, b, c, d = (product.pad(leg, position) for leg in (square.a, square.b, square.c, square.d))
        lifted = SquareWitness(kind=square.kind, A=a.source, B=a.target, C=b.target, D=c.target, a=a, b=b, c=c, d=d)
        update = {"square": encode_square(product, lifted)}
    elif cert.morphism is not None and cert.generator is None:
        update = {"morphism": product.morphism_to_json(product.pad(decode_morphism(component, cert.morphism), position))}
    else:
        raise CertificateError("only square and morphism certificates can be lifted to a product")
    lifted_cert = cert.model_copy(update={
        **update,
        "instance": product.instance_id,
        "transcript": cert.transcript + [f"padded into {product.instance_id} at position {position}"],
    })
    if not verify_certificate(product, lifted_cert):
        raise CertificateError(f"lifted certificate does not re-verify in {product.instance_id}")
    logger.info(f"lifted {cert.property.value} counterexample into {product.instance_id}")
    return lifted_cert

"""
The opposite of an instance.

A morphism X -> Y of the opposite category is a morphism Y -> X of the inner
one. Kernels become cokernels, lifting becomes extending and injections
become projections, so every left-hand check run on ``OppositeInstance(I)``
is the right-hand check on ``I``.
"""
import logging
import random
from typing import Any, Dict, Hashable, List, Optional

from src.category.errors import InvalidMorphismError
from src.category.instance import CategoryInstance
from src.category.objects import Biproduct, CokernelResult, IsoSide, KernelResult, Morphism, ObjectRef

logger = logging.getLogger(__name__)


class OppositeInstance(CategoryInstance):

    def __init__(self, inner: CategoryInstance):
        self.inner = inner
        self.instance_id = f"op:{inner.instance_id}"

    def make_object(self, payload: Any) -> ObjectRef:
        self.inner.require_owned(payload)
        return ObjectRef(self.instance_id, payload)

    def make_morphism(self, source: ObjectRef, target: ObjectRef, payload: Any) -> Morphism:
        self.require_owned(source, target)
        self.inner.require_owned(payload)
        if payload.source != target.payload or payload.target != source.payload:
            raise InvalidMorphismError(f"{payload!r} is not the reverse of {source!r} -> {target!r}")
        return Morphism(source, target, payload)

    def dual(self, f: Morphism) -> Morphism:
        """The opposite of an inner morphism."""
        return self.make_morphism(self.make_object(f.target), self.make_object(f.source), f)

    def zero_object(self) -> ObjectRef:
        return self.make_object(self.inner.zero_object())

    def identity(self, obj: ObjectRef) -> Morphism:
        return self.dual(self.inner.identity(obj.payload))

    def zero_morphism(self, source: ObjectRef, target: ObjectRef) -> Morphism:
        return self.dual(self.inner.zero_morphism(target.payload, source.payload))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        self.require_composable(f, g)
        return self.dual(self.inner.compose(g.payload, f.payload))

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        self.require_owned(f, g)
        return self.dual(self.inner.add(f.payload, g.payload))

    def negate(self, f: Morphism) -> Morphism:
        return self.dual(self.inner.negate(f.payload))

    def biproduct(self, first: ObjectRef, second: ObjectRef) -> Biproduct:
        total = self.inner.biproduct(first.payload, second.payload)
        return Biproduct(
            self.make_object(total.object),
            tuple(self.dual(p) for p in total.projections),
            tuple(self.dual(i) for i in total.injections),
        )

    def kernel(self, f: Morphism) -> KernelResult:
        self.require_owned(f)
        result = self.inner.cokernel(f.payload)
        return KernelResult(self.make_object(result.object), self.dual(result.arrow))

    def cokernel(self, f: Morphism) -> CokernelResult:
        self.require_owned(f)
        result = self.inner.kernel(f.payload)
        return CokernelResult(self.make_object(result.object), self.dual(result.arrow))

    def lift(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        h = self.inner.extend(f.payload, g.payload)
        return None if h is None else self.dual(h)

    def extend(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        h = self.inner.lift(f.payload, g.payload)
        return None if h is None else self.dual(h)

    def hom_generators(self, source: ObjectRef, target: ObjectRef) -> List[Morphism]:
        return [self.dual(h) for h in self.inner.hom_generators(target.payload, source.payload)]

    def iso_class_key(self, f: Morphism, side: IsoSide) -> Hashable:
        return self.inner.iso_class_key(f.payload, side.flipped)

    def object_to_json(self, obj: ObjectRef) -> Any:
        return self.inner.object_to_json(obj.payload)

    def object_from_json(self, data: Any) -> ObjectRef:
        return self.make_object(self.inner.object_from_json(data))

    def morphism_to_json(self, f: Morphism) -> Dict[str, Any]:
        return {
            "source": self.object_to_json(f.source),
            "target": self.object_to_json(f.target),
            "dual": self.inner.morphism_to_json(f.payload),
        }

    def morphism_from_json(self, data: Dict[str, Any]) -> Morphism:
        return self.dual(self.inner.morphism_from_json(data["dual"]))

    def curated_probes(self) -> List[Morphism]:
        return [self.dual(f) for f in self.inner.curated_probes()]

    def random_probe(self, rng: random.Random) -> Morphism:
        return self.dual(self.inner.random_probe(rng))

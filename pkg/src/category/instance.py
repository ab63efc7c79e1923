"""
The CategoryInstance interface and a shared base for matrix-presented categories.

An instance supplies kernels, cokernels, biproducts, Hom-space generators and
the two solving primitives every derived construction is built from:

    lift(f, g)    some h with f . h = g   (g factors through f on the left)
    extend(f, g)  some h with h . f = g   (g factors through f on the right)
"""
import logging
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, List, Optional, Tuple

from src.category.errors import DomainMismatchError, InstanceMismatchError, InvalidMorphismError
from src.category.objects import Biproduct, CokernelResult, IsoSide, KernelResult, Morphism, ObjectRef
from src.linalg.elimination import solve_vector
from src.linalg.matrix import RatMatrix

logger = logging.getLogger(__name__)


class CategoryInstance(ABC):
    instance_id: str

    # Objects and morphisms

    @abstractmethod
    def make_object(self, payload: Any) -> ObjectRef:
        """Validate a payload and wrap it as an object of this instance."""

    @abstractmethod
    def make_morphism(self, source: ObjectRef, target: ObjectRef, payload: Any) -> Morphism:
        """Validate and normalize a payload and wrap it as a morphism."""

    @abstractmethod
    def zero_object(self) -> ObjectRef:
        pass

    @abstractmethod
    def identity(self, obj: ObjectRef) -> Morphism:
        pass

    @abstractmethod
    def zero_morphism(self, source: ObjectRef, target: ObjectRef) -> Morphism:
        pass

    @abstractmethod
    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """f . g (apply g first)."""

    @abstractmethod
    def add(self, f: Morphism, g: Morphism) -> Morphism:
        pass

    @abstractmethod
    def negate(self, f: Morphism) -> Morphism:
        pass

    def subtract(self, f: Morphism, g: Morphism) -> Morphism:
        return self.add(f, self.negate(g))

    # Universal constructions

    @abstractmethod
    def biproduct(self, first: ObjectRef, second: ObjectRef) -> Biproduct:
        pass

    @abstractmethod
    def kernel(self, f: Morphism) -> KernelResult:
        pass

    @abstractmethod
    def cokernel(self, f: Morphism) -> CokernelResult:
        pass

    # Solving

    @abstractmethod
    def lift(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        pass

    @abstractmethod
    def extend(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        pass

    @abstractmethod
    def hom_generators(self, source: ObjectRef, target: ObjectRef) -> List[Morphism]:
        """Generators of Hom(source, target) as a group (a basis for linear instances)."""

    # Serialization

    @abstractmethod
    def object_to_json(self, obj: ObjectRef) -> Any:
        pass

    @abstractmethod
    def object_from_json(self, data: Any) -> ObjectRef:
        pass

    @abstractmethod
    def morphism_to_json(self, f: Morphism) -> Dict[str, Any]:
        pass

    @abstractmethod
    def morphism_from_json(self, data: Dict[str, Any]) -> Morphism:
        pass

    # Probe corpus

    @abstractmethod
    def curated_probes(self) -> List[Morphism]:
        pass

    @abstractmethod
    def random_probe(self, rng: random.Random) -> Morphism:
        pass

    # Isomorphism classes

    def iso_class_key(self, f: Morphism, side: IsoSide) -> Hashable:
        """
        A key shared by f and every morphism obtained from it by composing an
        automorphism on ``side``. The default only identifies equal morphisms;
        instances with a cheap normal form override it.
        """
        return f

    # Memo table

    def memo(self, name: str, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Result of a pure construction on this instance, computed once per key."""
        table = self.__dict__.setdefault("_memo", {})
        try:
            return table[name, key]
        except KeyError:
            value = table[name, key] = compute()
            return value

    def clear_memo(self):
        self.__dict__.pop("_memo", None)

    # Helpers

    def owns(self, item) -> bool:
        return getattr(item, "instance_id", None) == self.instance_id

    def require_owned(self, *items):
        for item in items:
            if not self.owns(item):
                raise InstanceMismatchError(
                    f"{item!r} does not belong to instance {self.instance_id}"
                )

    def require_composable(self, f: Morphism, g: Morphism):
        self.require_owned(f, g)
        if g.target != f.source:
            raise DomainMismatchError(f"cannot compose: target of {g!r} is not the source of {f!r}")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.instance_id}>"


class MatrixInstance(CategoryInstance):
    """
    Base for instances whose objects have a coordinate count and whose
    morphisms are matrices (target coordinates x source coordinates).
    """

    @abstractmethod
    def size(self, obj: ObjectRef) -> int:
        """Number of coordinates (generators) of an object."""

    @abstractmethod
    def _validate_payload(self, source: ObjectRef, target: ObjectRef, matrix: RatMatrix):
        """Raise InvalidMorphismError if the matrix is not a morphism source -> target."""

    @abstractmethod
    def _direct_sum(self, first: ObjectRef, second: ObjectRef) -> Tuple[ObjectRef, RatMatrix, RatMatrix]:
        """
        The biproduct object together with the coordinate change P from the
        concatenated coordinates into it and Q back out of it.
        """

    def _normalize(self, source: ObjectRef, target: ObjectRef, matrix: RatMatrix) -> RatMatrix:
        return matrix

    def _null_generators(self, source: ObjectRef, target: ObjectRef) -> List[RatMatrix]:
        """Matrices representing the zero morphism source -> target (beyond 0 itself)."""
        return []

    def _solve_coefficients(self, system: RatMatrix, target: List[Fraction]) -> Optional[List[Fraction]]:
        return solve_vector(system, target)

    # Morphisms

    def make_morphism(self, source: ObjectRef, target: ObjectRef, payload: Any) -> Morphism:
        self.require_owned(source, target)
        matrix = payload if isinstance(payload, RatMatrix) else RatMatrix.from_rows(payload, cols=self.size(source))
        expected = (self.size(target), self.size(source))
        if matrix.shape != expected:
            raise InvalidMorphismError(f"matrix shape {matrix.shape} does not match {expected}")
        self._validate_payload(source, target, matrix)
        return Morphism(source, target, self._normalize(source, target, matrix))

    def identity(self, obj: ObjectRef) -> Morphism:
        return self.make_morphism(obj, obj, RatMatrix.identity(self.size(obj)))

    def zero_morphism(self, source: ObjectRef, target: ObjectRef) -> Morphism:
        return self.make_morphism(source, target, RatMatrix.zeros(self.size(target), self.size(source)))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        self.require_composable(f, g)
        return self.make_morphism(g.source, f.target, f.payload @ g.payload)

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        self.require_owned(f, g)
        if (f.source, f.target) != (g.source, g.target):
            raise DomainMismatchError(f"cannot add {f!r} and {g!r}")
        return self.make_morphism(f.source, f.target, f.payload + g.payload)

    def negate(self, f: Morphism) -> Morphism:
        return self.make_morphism(f.source, f.target, -f.payload)

    def biproduct(self, first: ObjectRef, second: ObjectRef) -> Biproduct:
        self.require_owned(first, second)
        total, to_sum, from_sum = self._direct_sum(first, second)
        a, b = self.size(first), self.size(second)
        upper = RatMatrix.identity(a).vstack(RatMatrix.zeros(b, a))
        lower = RatMatrix.zeros(a, b).vstack(RatMatrix.identity(b))
        injections = (
            self.make_morphism(first, total, to_sum @ upper),
            self.make_morphism(second, total, to_sum @ lower),
        )
        projections = (
            self.make_morphism(total, first, upper.T @ from_sum),
            self.make_morphism(total, second, lower.T @ from_sum),
        )
        return Biproduct(total, injections, projections)

    # Solving

    def _combine(self, source, target, generators: List[Morphism], coefficients) -> Morphism:
        total = RatMatrix.zeros(self.size(target), self.size(source))
        for c, gen in zip(coefficients, generators):
            if c:
                total = total + gen.payload.scale(c)
        return self.make_morphism(source, target, total)

    def _solve_span(self, products: List[RatMatrix], slack: List[RatMatrix], target: RatMatrix):
        rhs = target.flatten()
        if not rhs:
            return [Fraction(0)] * len(products)
        columns = [m.flatten() for m in products] + [m.flatten() for m in slack]
        system = RatMatrix.from_columns(columns, len(rhs))
        coefficients = self._solve_coefficients(system, rhs)
        if coefficients is None:
            return None
        return coefficients[:len(products)]

    def lift(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        if g.target != f.target:
            raise DomainMismatchError(f"cannot lift {g!r} through {f!r}: targets differ")
        generators = self.hom_generators(g.source, f.source)
        products = [f.payload @ h.payload for h in generators]
        coefficients = self._solve_span(products, self._null_generators(g.source, f.target), g.payload)
        if coefficients is None:
            return None
        return self._combine(g.source, f.source, generators, coefficients)

    def extend(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        if g.source != f.source:
            raise DomainMismatchError(f"cannot extend {g!r} along {f!r}: sources differ")
        generators = self.hom_generators(f.target, g.target)
        products = [h.payload @ f.payload for h in generators]
        coefficients = self._solve_span(products, self._null_generators(f.source, g.target), g.payload)
        if coefficients is None:
            return None
        return self._combine(f.target, g.target, generators, coefficients)

    # Serialization

    def morphism_to_json(self, f: Morphism) -> Dict[str, Any]:
        return {
            "source": self.object_to_json(f.source),
            "target": self.object_to_json(f.target),
            "matrix": f.payload.to_strings(),
        }

    def morphism_from_json(self, data: Dict[str, Any]) -> Morphism:
        source = self.object_from_json(data["source"])
        target = self.object_from_json(data["target"])
        matrix = RatMatrix.from_strings(data["matrix"], self.size(target), self.size(source))
        return self.make_morphism(source, target, matrix)

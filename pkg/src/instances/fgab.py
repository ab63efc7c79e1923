"""
fgab: finitely generated abelian groups.

An object is stored by its invariant factors (d_1, ..., d_g): the group
Z/d_1 + ... + Z/d_g with 1 < d_1 | d_2 | ... and free summands written as 0 at
the end. That is the Smith-normalized presentation Z^g / diag(d) Z^g, so
object equality is equality of invariant factors.

A morphism is an integer matrix on generators. It is well defined when it
maps relations into relations, and it is stored with row i reduced modulo
d_i, so morphism equality is congruence modulo relations.
"""
import logging
import random
from math import gcd
from typing import Any, List, Optional, Sequence, Tuple

from src.category.errors import InvalidMorphismError, InvalidObjectError
from src.category.instance import MatrixInstance
from src.category.objects import CokernelResult, KernelResult, Morphism, ObjectRef
from src.config.settings import ENTRY_BOUND
from src.linalg.matrix import RatMatrix
from src.linalg.smith import integer_nullspace, smith_normal_form, solve_integer

logger = logging.getLogger(__name__)

RANDOM_OBJECTS: Tuple[Tuple[int, ...], ...] = ((), (0,), (2,), (3,), (4,), (6,), (0, 0), (2, 4), (2, 0))


def normalize_presentation(generators: int, relations: RatMatrix) -> Tuple[Tuple[int, ...], RatMatrix, RatMatrix]:
    """
    Bring Z^g / relations into invariant-factor form.

    Returns the factors, P mapping old generator coordinates to the new ones,
    and Q mapping new coordinates back (P Q = I).
    """
    if relations.rows != generators:
        raise ValueError(f"relation matrix has {relations.rows} rows for {generators} generators")
    snf = smith_normal_form(relations)
    diagonal = snf.diagonal
    factors, kept = [], []
    for i in range(generators):
        d = diagonal[i] if i < len(diagonal) else 0
        if d != 1:
            factors.append(d)
            kept.append(i)
    return tuple(factors), snf.U.select_rows(kept), snf.U_inv.select_columns(kept)


class FgAbInstance(MatrixInstance):
    instance_id = "fgab"

    def make_object(self, payload: Any) -> ObjectRef:
        try:
            factors = tuple(int(d) for d in payload)
        except (TypeError, ValueError):
            raise InvalidObjectError(f"fgab objects are invariant-factor lists, got {payload!r}")
        torsion = [d for d in factors if d != 0]
        if any(d < 2 for d in torsion) or factors[:len(torsion)] != tuple(torsion):
            raise InvalidObjectError(f"invariant factors must be >= 2 with free summands last: {factors}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise InvalidObjectError(f"invariant factors must form a divisibility chain: {factors}")
        return ObjectRef(self.instance_id, factors)

    def group(self, *factors: int) -> ObjectRef:
        return self.make_object(factors)

    def free(self, rank: int) -> ObjectRef:
        return self.make_object((0,) * rank)

    def cyclic(self, order: int) -> ObjectRef:
        return self.make_object((order,) if order != 1 else ())

    def size(self, obj: ObjectRef) -> int:
        return len(obj.payload)

    def relations(self, obj: ObjectRef) -> RatMatrix:
        return RatMatrix.diagonal(obj.payload)

    def zero_object(self) -> ObjectRef:
        return self.make_object(())

    def _validate_payload(self, source, target, matrix):
        if not matrix.is_integral():
            raise InvalidMorphismError("fgab morphisms are integer matrices")
        image_of_relations = matrix @ self.relations(source)
        if solve_integer(self.relations(target), image_of_relations) is None:
            raise InvalidMorphismError(
                f"matrix {matrix!r} does not map the relations of {source.payload} into those of {target.payload}"
            )

    def _normalize(self, source, target, matrix):
        moduli = target.payload
        return RatMatrix.from_rows(
            [[e % moduli[i] if moduli[i] else e for e in matrix.row(i)] for i in range(matrix.rows)],
            cols=matrix.cols,
        )

    def _null_generators(self, source, target) -> List[RatMatrix]:
        m, n = self.size(target), self.size(source)
        return [
            RatMatrix.unit(m, n, i, j, d)
            for i, d in enumerate(target.payload) if d
            for j in range(n)
        ]

    def _solve_coefficients(self, system, target):
        column = RatMatrix.from_columns([target], system.rows)
        solution = solve_integer(system, column)
        if solution is None:
            return None
        return list(solution.column(0)) if solution.rows else []

    def _from_presentation(self, generators: int, relations: RatMatrix):
        factors, to_new, from_new = normalize_presentation(generators, relations)
        return self.make_object(factors), to_new, from_new

    def _direct_sum(self, first, second):
        factors = first.payload + second.payload
        return self._from_presentation(len(factors), RatMatrix.diagonal(factors))

    def kernel(self, f: Morphism) -> KernelResult:
        """
        x in Z^a lies in the kernel iff F x = D_Y y for some y. The lattice of
        such x is generated by the columns of K0; relations among those
        generators are the c with K0 c in D_X Z^a.
        """
        self.require_owned(f)
        a = self.size(f.source)
        d_x, d_y = self.relations(f.source), self.relations(f.target)
        solutions = integer_nullspace(f.payload.hstack(-d_y))
        generators = solutions.select_rows(range(a))
        k = generators.cols
        relation_lattice = integer_nullspace(generators.hstack(-d_x))
        relations = relation_lattice.select_rows(range(k))
        obj, _, from_new = self._from_presentation(k, relations)
        return KernelResult(obj, self.make_morphism(obj, f.source, generators @ from_new))

    def cokernel(self, f: Morphism) -> CokernelResult:
        """Y / (D_Y Z^b + F Z^a), normalized."""
        self.require_owned(f)
        b = self.size(f.target)
        relations = self.relations(f.target).hstack(f.payload)
        obj, to_new, _ = self._from_presentation(b, relations)
        return CokernelResult(obj, self.make_morphism(f.target, obj, to_new))

    def _entry_step(self, source_order: int, target_order: int) -> Optional[int]:
        """Generator of the admissible values for one matrix entry, None if only 0."""
        if target_order == 0:
            return 1 if source_order == 0 else None
        if source_order == 0:
            return 1
        step = target_order // gcd(source_order, target_order)
        return step if step != target_order else None

    def hom_generators(self, source: ObjectRef, target: ObjectRef) -> List[Morphism]:
        m, n = self.size(target), self.size(source)
        generators = []
        for i, t in enumerate(target.payload):
            for j, s in enumerate(source.payload):
                step = self._entry_step(s, t)
                if step is not None:
                    generators.append(self.make_morphism(source, target, RatMatrix.unit(m, n, i, j, step)))
        return generators

    def object_to_json(self, obj: ObjectRef) -> Any:
        return list(obj.payload)

    def object_from_json(self, data: Any) -> ObjectRef:
        if not isinstance(data, list):
            raise InvalidObjectError(f"fgab objects serialize as lists, got {data!r}")
        return self.make_object(data)

    def map(self, source: Sequence[int], target: Sequence[int], rows) -> Morphism:
        return self.make_morphism(self.make_object(source), self.make_object(target), rows)

    def curated_probes(self) -> List[Morphism]:
        """Hand-picked maps between groups with invariant factors up to 6."""
        z, z2 = (0,), (0, 0)
        return [
            self.map(z, z, [[2]]),
            self.map(z, (2,), [[1]]),
            self.map(z, z, [[3]]),
            self.map(z, (6,), [[1]]),
            self.map((6,), (6,), [[1]]),
            self.map((2,), (6,), [[3]]),
            self.map((3,), (6,), [[2]]),
            self.map((6,), (2,), [[1]]),
            self.map((6,), (3,), [[1]]),
            self.map((2,), (4,), [[2]]),
            self.map((4,), (2,), [[1]]),
            self.map((4,), (4,), [[2]]),
            self.map(z, (), RatMatrix.zeros(0, 1)),
            self.map((), z, RatMatrix.zeros(1, 0)),
            self.map(z, z2, [[1], [0]]),
            self.map(z, z2, [[1], [2]]),
            self.map(z2, z, [[1, 1]]),
            self.map((2, 4), (2,), [[1, 0]]),
            self.map((2,), (2, 4), [[0], [2]]),
        ]

    def random_probe(self, rng: random.Random) -> Morphism:
        source = self.make_object(rng.choice(RANDOM_OBJECTS))
        target = self.make_object(rng.choice(RANDOM_OBJECTS))
        generators = self.hom_generators(source, target)
        total = self.zero_morphism(source, target)
        for gen in generators:
            coefficient = rng.randint(-ENTRY_BOUND, ENTRY_BOUND)
            if coefficient:
                total = self.add(total, self.make_morphism(source, target, gen.payload.scale(coefficient)))
        return total

"""
pairvect: pairs (U ⊆ V) of finite-dimensional rational spaces.

An object is an ambient dimension n together with a subspace of Q^n, stored
by the canonical RREF basis of the subspace (one row per basis vector), so
two objects are equal iff they describe the same subspace. A morphism
(U ⊆ Q^n) -> (U' ⊆ Q^m) is an m x n matrix F with F(U) ⊆ U'.

Kernels and cokernels are computed on the ambient spaces and equipped with
the induced subspace (intersection, resp. image). The category is
quasi-abelian but not abelian: the identity of Q regarded as a map
(0 ⊆ Q) -> (Q ⊆ Q) is monic and epic without being invertible.
"""
import logging
import random
from typing import Any, List, Sequence, Tuple

from src.category.errors import InvalidMorphismError, InvalidObjectError
from src.category.instance import MatrixInstance
from src.category.objects import CokernelResult, KernelResult, Morphism, ObjectRef
from src.config.settings import ENTRY_BOUND, MAX_RANDOM_DIM
from src.linalg.elimination import left_nullspace_rows, nullspace_basis, row_space_canonical
from src.linalg.matrix import RatMatrix

logger = logging.getLogger(__name__)

E1 = ((1, 0),)


def _canonical_rows(n: int, vectors: RatMatrix) -> Tuple[Tuple, ...]:
    """Canonical basis rows of the span of the rows of ``vectors`` (each of length n)."""
    if vectors.rows == 0:
        return ()
    return row_space_canonical(vectors).entries


class PairVectInstance(MatrixInstance):
    instance_id = "pairvect"

    def make_object(self, payload: Any) -> ObjectRef:
        try:
            n, rows = payload
            n = int(n)
        except (TypeError, ValueError):
            raise InvalidObjectError(f"pairvect objects are (dim, subspace rows), got {payload!r}")
        if n < 0:
            raise InvalidObjectError(f"negative ambient dimension {n}")
        rows = list(rows)
        if any(len(r) != n for r in rows):
            raise InvalidObjectError(f"subspace vectors must have length {n}: {rows!r}")
        vectors = RatMatrix.from_rows(rows, cols=n) if rows else RatMatrix.zeros(0, n)
        return ObjectRef(self.instance_id, (n, _canonical_rows(n, vectors)))

    def pair(self, n: int, basis: Sequence[Sequence] = ()) -> ObjectRef:
        return self.make_object((n, basis))

    def full(self, n: int) -> ObjectRef:
        return self.pair(n, RatMatrix.identity(n).entries)

    def size(self, obj: ObjectRef) -> int:
        return obj.payload[0]

    def subspace(self, obj: ObjectRef) -> RatMatrix:
        """Basis of the subspace as columns (n x k)."""
        n, rows = obj.payload
        return RatMatrix.from_rows(rows, cols=n).T if rows else RatMatrix.zeros(n, 0)

    def annihilator(self, obj: ObjectRef) -> RatMatrix:
        """Rows cutting out the subspace: A x = 0 iff x lies in it."""
        return left_nullspace_rows(self.subspace(obj))

    def zero_object(self) -> ObjectRef:
        return self.pair(0)

    def _validate_payload(self, source, target, matrix):
        if not (self.annihilator(target) @ matrix @ self.subspace(source)).is_zero():
            raise InvalidMorphismError(
                f"matrix {matrix!r} does not map the subspace of {source!r} into that of {target!r}"
            )

    def _direct_sum(self, first, second):
        n = self.size(first) + self.size(second)
        basis = self.subspace(first).direct_sum(self.subspace(second))
        obj = self.make_object((n, basis.T.entries))
        return obj, RatMatrix.identity(n), RatMatrix.identity(n)

    def kernel(self, f: Morphism) -> KernelResult:
        """(ker F, ker F ∩ U) with the inclusion."""
        self.require_owned(f)
        inclusion = nullspace_basis(f.payload)
        k = inclusion.cols
        inside = nullspace_basis(self.annihilator(f.source) @ inclusion)
        obj = self.make_object((k, inside.T.entries))
        return KernelResult(obj, self.make_morphism(obj, f.source, inclusion))

    def cokernel(self, f: Morphism) -> CokernelResult:
        """(V' / F(V), image of U') with the projection."""
        self.require_owned(f)
        quotient = left_nullspace_rows(f.payload)
        image = quotient @ self.subspace(f.target)
        obj = self.make_object((quotient.rows, image.T.entries))
        return CokernelResult(obj, self.make_morphism(f.target, obj, quotient))

    def hom_generators(self, source: ObjectRef, target: ObjectRef) -> List[Morphism]:
        # row-major vec(A F U) = (A kron U^T) vec(F)
        m, n = self.size(target), self.size(source)
        constraint = self.annihilator(target).kron(self.subspace(source).T)
        if constraint.cols == 0:
            return []
        basis = nullspace_basis(constraint)
        return [
            self.make_morphism(source, target, RatMatrix.reshape(list(vec), m, n))
            for vec in basis.columns()
        ]

    def object_to_json(self, obj: ObjectRef) -> Any:
        n, rows = obj.payload
        return {"dim": n, "subspace": RatMatrix.from_rows(rows, cols=n).to_strings() if rows else []}

    def object_from_json(self, data: Any) -> ObjectRef:
        if not isinstance(data, dict) or "dim" not in data:
            raise InvalidObjectError(f"pairvect objects serialize as {{dim, subspace}}, got {data!r}")
        n = data["dim"]
        rows = data.get("subspace", [])
        vectors = RatMatrix.from_strings(rows, len(rows), n)
        return self.make_object((n, vectors.entries))

    def witness(self) -> Morphism:
        """The identity of Q as a map (0 ⊆ Q) -> (Q ⊆ Q): monic and epic, not an isomorphism."""
        return self.make_morphism(self.pair(1), self.full(1), [[1]])

    def curated_probes(self) -> List[Morphism]:
        line, plane = self.full(1), self.full(2)
        axis = self.pair(2, E1)
        bare_line, bare_plane = self.pair(1), self.pair(2)
        zero = self.zero_object()
        return [
            self.witness(),
            self.identity(line),
            self.identity(bare_line),
            self.make_morphism(bare_line, bare_plane, [[1], [0]]),
            self.make_morphism(axis, line, [[1, 0]]),
            self.make_morphism(axis, line, [[0, 1]]),
            self.make_morphism(line, axis, [[1], [0]]),
            self.make_morphism(axis, plane, [[1, 0], [0, 1]]),
            self.make_morphism(axis, axis, [[1, 1], [0, 1]]),
            self.make_morphism(bare_plane, bare_line, [[1, 1]]),
            self.make_morphism(plane, line, [[1, -1]]),
            self.make_morphism(line, plane, [[1], [1]]),
            self.make_morphism(bare_line, line, [[0]]),
            self.zero_morphism(zero, line),
            self.zero_morphism(line, zero),
        ]

    def _random_object(self, rng: random.Random) -> ObjectRef:
        n = rng.randint(1, MAX_RANDOM_DIM)
        k = rng.randint(0, n)
        vectors = [[rng.randint(-ENTRY_BOUND, ENTRY_BOUND) for _ in range(n)] for _ in range(k)]
        return self.pair(n, vectors)

    def random_probe(self, rng: random.Random) -> Morphism:
        source, target = self._random_object(rng), self._random_object(rng)
        total = self.zero_morphism(source, target)
        for gen in self.hom_generators(source, target):
            coefficient = rng.randint(-ENTRY_BOUND, ENTRY_BOUND)
            if coefficient:
                total = self.add(total, self.make_morphism(source, target, gen.payload.scale(coefficient)))
        return total

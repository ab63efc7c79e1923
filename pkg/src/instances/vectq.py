"""
vect-q: finite-dimensional rational vector spaces.

Objects are dimensions, morphisms are matrices. Kernels include the RREF
null-space basis; cokernels project onto the canonical basis of the left null
space. This is the abelian reference instance.
"""
import logging
import random
from itertools import product
from typing import Any, Hashable, List, Optional, Tuple

from src.category.errors import DomainMismatchError, InvalidObjectError
from src.category.instance import MatrixInstance
from src.category.objects import CokernelResult, IsoSide, KernelResult, Morphism, ObjectRef
from src.config.settings import ENTRY_BOUND, MAX_RANDOM_DIM
from src.linalg.elimination import left_nullspace_rows, nullspace_basis, rank, row_space_canonical, solve
from src.linalg.matrix import RatMatrix

logger = logging.getLogger(__name__)


class VectQInstance(MatrixInstance):
    instance_id = "vectq"

    def make_object(self, payload: Any) -> ObjectRef:
        if isinstance(payload, bool) or not isinstance(payload, int) or payload < 0:
            raise InvalidObjectError(f"vectq objects are non-negative dimensions, got {payload!r}")
        return ObjectRef(self.instance_id, payload)

    def space(self, dim: int) -> ObjectRef:
        return self.make_object(dim)

    def matrix(self, rows) -> Morphism:
        """Morphism Q^cols -> Q^rows from a list of rows (at least one row)."""
        m = RatMatrix.from_rows(rows)
        return self.make_morphism(self.space(m.cols), self.space(m.rows), m)

    def size(self, obj: ObjectRef) -> int:
        return obj.payload

    def zero_object(self) -> ObjectRef:
        return self.space(0)

    def _validate_payload(self, source, target, matrix):
        pass

    def _direct_sum(self, first, second) -> Tuple[ObjectRef, RatMatrix, RatMatrix]:
        n = first.payload + second.payload
        return self.space(n), RatMatrix.identity(n), RatMatrix.identity(n)

    def kernel(self, f: Morphism) -> KernelResult:
        self.require_owned(f)
        basis = nullspace_basis(f.payload)
        obj = self.space(basis.cols)
        return KernelResult(obj, self.make_morphism(obj, f.source, basis))

    def cokernel(self, f: Morphism) -> CokernelResult:
        self.require_owned(f)
        quotient = left_nullspace_rows(f.payload)
        obj = self.space(quotient.rows)
        return CokernelResult(obj, self.make_morphism(f.target, obj, quotient))

    # Every matrix is a morphism, so lifting is one linear solve F X = G.

    def lift(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        if g.target != f.target:
            raise DomainMismatchError(f"cannot lift {g!r} through {f!r}: targets differ")
        solution = solve(f.payload, g.payload)
        return None if solution is None else self.make_morphism(g.source, f.source, solution)

    def extend(self, f: Morphism, g: Morphism) -> Optional[Morphism]:
        self.require_owned(f, g)
        if g.source != f.source:
            raise DomainMismatchError(f"cannot extend {g!r} along {f!r}: sources differ")
        solution = solve(f.payload.T, g.payload.T)
        return None if solution is None else self.make_morphism(f.target, g.target, solution.T)

    def hom_generators(self, source: ObjectRef, target: ObjectRef) -> List[Morphism]:
        m, n = self.size(target), self.size(source)
        return [
            self.make_morphism(source, target, RatMatrix.unit(m, n, i, j))
            for i in range(m) for j in range(n)
        ]

    def iso_class_key(self, f: Morphism, side: IsoSide) -> Hashable:
        """
        Up to automorphisms of the source a map is determined by its column
        space, up to automorphisms of the target by its row space, and up to
        both by its rank.
        """
        m = f.payload
        if side == IsoSide.SOURCE:
            return side, m.cols, row_space_canonical(m.T)
        if side == IsoSide.TARGET:
            return side, m.rows, row_space_canonical(m)
        return side, m.rows, m.cols, rank(m)

    def object_to_json(self, obj: ObjectRef) -> Any:
        return obj.payload

    def object_from_json(self, data: Any) -> ObjectRef:
        return self.make_object(data)

    def curated_probes(self) -> List[Morphism]:
        """Every matrix with entries in {-1, 0, 1} of size up to 2x2, plus the empty maps."""
        probes = [
            self.zero_morphism(self.space(0), self.space(1)),
            self.zero_morphism(self.space(1), self.space(0)),
        ]
        for rows in (1, 2):
            for cols in (1, 2):
                for entries in product((-1, 0, 1), repeat=rows * cols):
                    probes.append(self.make_morphism(
                        self.space(cols), self.space(rows), RatMatrix.reshape(entries, rows, cols)
                    ))
        return probes

    def random_probe(self, rng: random.Random) -> Morphism:
        rows = rng.randint(1, MAX_RANDOM_DIM)
        cols = rng.randint(1, MAX_RANDOM_DIM)
        entries = [rng.randint(-ENTRY_BOUND, ENTRY_BOUND) for _ in range(rows * cols)]
        return self.make_morphism(self.space(cols), self.space(rows), RatMatrix.reshape(entries, rows, cols))

import pytest

from src.category.objects import CokernelResult, IsoSide, Morphism
from src.checks.corpus import corpus_from_morphisms
from src.instances.fgab import FgAbInstance
from src.instances.opposite import OppositeInstance
from src.instances.pairvect import PairVectInstance
from src.instances.product import ProductInstance
from src.instances.vectq import VectQInstance
from src.linalg.elimination import left_nullspace_rows
from src.linalg.matrix import RatMatrix


class PlaneClosureVectQInstance(VectQInstance):
    """
    vect-q with a broken cokernel: a non-zero map into Q^2 has the quotient
    by its range plus the first axis as "cokernel". Every left and right
    property of the lattice fails somewhere on small probes, which is what
    the failure paths of the checkers are tested against.
    """
    instance_id = "vectq-plane"

    def cokernel(self, f: Morphism) -> CokernelResult:
        if f.target.payload != 2 or f.payload.is_zero():
            return super().cokernel(f)
        axis = RatMatrix.from_rows([[1], [0]])
        quotient = left_nullspace_rows(f.payload.hstack(axis))
        obj = self.space(quotient.rows)
        return CokernelResult(obj, self.make_morphism(f.target, obj, quotient))

    def iso_class_key(self, f: Morphism, side: IsoSide):
        # the broken cokernel does not respect isomorphisms
        return f


@pytest.fixture
def vectq():
    return VectQInstance()


@pytest.fixture
def fgab():
    return FgAbInstance()


@pytest.fixture
def pairvect():
    return PairVectInstance()


@pytest.fixture
def plane():
    return PlaneClosureVectQInstance()


@pytest.fixture
def op_plane(plane):
    return OppositeInstance(plane)


@pytest.fixture
def mixed_product(vectq, pairvect):
    return ProductInstance(vectq, pairvect)


@pytest.fixture
def left_integral_corpus(plane):
    """d = (0, 1)^T is "epic"; its pullback along c = (1, 0)^T is 0 -> Q."""
    d = plane.matrix([[0], [1]])
    c = plane.matrix([[1], [0]])
    return corpus_from_morphisms(plane, [d, c])


@pytest.fixture
def left_quasi_corpus(plane):
    """d: Q^3 -> Q^2 is a cokernel; its pullback along c is [1 0], which is not."""
    d = plane.matrix([[1, 0, 0], [0, 1, 0]])
    c = plane.matrix([[1], [0]])
    return corpus_from_morphisms(plane, [d, c])


@pytest.fixture
def identity_corpus(plane):
    """Pushing the identity of Q out along itself lands in the collapsed plane."""
    return corpus_from_morphisms(plane, [plane.identity(plane.space(1))])

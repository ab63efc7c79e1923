import random

import pytest

from src.category import engine
from src.category.errors import InvalidMorphismError, InvalidObjectError, UnknownInstanceError
from src.instances import get_instance
from src.instances.fgab import normalize_presentation
from src.instances.opposite import OppositeInstance
from src.instances.product import ProductInstance, product_lift
from src.linalg.elimination import nullspace_basis, rank
from src.linalg.matrix import RatMatrix


# fgab


def test_fgab_objects_are_invariant_factor_chains(fgab):
    assert fgab.group(2, 4).payload == (2, 4)
    assert fgab.cyclic(1) == fgab.zero_object()
    for bad in ((4, 2), (1,), (0, 2), (2, 3)):
        with pytest.raises(InvalidObjectError):
            fgab.make_object(bad)


def test_normalize_presentation_merges_coprime_factors():
    factors, to_new, from_new = normalize_presentation(2, RatMatrix.diagonal([2, 3]))
    assert factors == (6,)
    assert to_new.shape == (1, 2)
    assert from_new.shape == (2, 1)


def test_fgab_doubling_is_a_kernel_with_cyclic_cokernel(fgab):
    doubling = fgab.map((0,), (0,), [[2]])
    assert fgab.kernel(doubling).object == fgab.zero_object()
    assert fgab.cokernel(doubling).object == fgab.cyclic(2)
    assert engine.is_mono(fgab, doubling)
    assert not engine.is_epi(fgab, doubling)
    assert engine.is_kernel_morphism(fgab, doubling)


def test_fgab_kernel_of_a_torsion_quotient(fgab):
    reduction = fgab.map((6,), (2,), [[1]])
    assert fgab.kernel(reduction).object == fgab.cyclic(3)
    assert engine.is_epi(fgab, fgab.map((0,), (6,), [[1]]))


def test_fgab_kernel_of_reduction_mod_two_is_doubling(fgab):
    reduction = fgab.map((0,), (2,), [[1]])
    k = engine.kernel(fgab, reduction)
    assert k.object == fgab.free(1)
    assert k.arrow in (fgab.map((0,), (0,), [[2]]), fgab.map((0,), (0,), [[-2]]))
    assert engine.is_kernel_morphism(fgab, fgab.map((0,), (0,), [[2]]))
    assert engine.verify_kernel(fgab, reduction, k, fgab.curated_probes())


def test_fgab_morphisms_are_reduced_modulo_the_target(fgab):
    assert fgab.map((4,), (2,), [[3]]) == fgab.map((4,), (2,), [[1]])
    with pytest.raises(InvalidMorphismError):
        fgab.map((2,), (0,), [[1]])
    with pytest.raises(InvalidMorphismError):
        fgab.map((0,), (0,), [["1/2"]])


def test_fgab_hom_generators_and_integer_lifting(fgab):
    assert len(fgab.hom_generators(fgab.cyclic(2), fgab.cyclic(4))) == 1
    assert fgab.hom_generators(fgab.cyclic(2), fgab.cyclic(3)) == []
    doubling = fgab.map((0,), (0,), [[2]])
    quadrupling = fgab.map((0,), (0,), [[4]])
    assert fgab.lift(doubling, quadrupling) == doubling
    assert fgab.lift(doubling, fgab.identity(fgab.free(1))) is None
    assert fgab.extend(doubling, fgab.identity(fgab.free(1))) is None


def test_fgab_biproduct_of_coprime_cyclics(fgab):
    total = fgab.biproduct(fgab.cyclic(2), fgab.cyclic(3))
    assert total.object == fgab.cyclic(6)
    (i1, i2), (p1, p2) = total.injections, total.projections
    assert fgab.compose(p1, i1) == fgab.identity(fgab.cyclic(2))
    assert fgab.compose(p2, i2) == fgab.identity(fgab.cyclic(3))
    assert engine.is_zero_morphism(fgab, fgab.compose(p1, i2))


# pairvect


def test_pairvect_witness_is_a_bimorphism_but_not_strict(pairvect):
    w = pairvect.witness()
    assert engine.is_mono(pairvect, w)
    assert engine.is_epi(pairvect, w)
    assert not engine.is_isomorphism(pairvect, w)
    assert not engine.is_kernel_morphism(pairvect, w)
    assert not engine.is_cokernel_morphism(pairvect, w)


def test_pairvect_objects_are_canonical(pairvect):
    assert pairvect.pair(2, [[2, 0]]) == pairvect.pair(2, [[1, 0]])
    assert pairvect.pair(2, [[1, 0], [0, 5]]) == pairvect.full(2)
    with pytest.raises(InvalidObjectError):
        pairvect.pair(2, [[1]])


def test_pairvect_morphisms_respect_subspaces(pairvect):
    with pytest.raises(InvalidMorphismError):
        pairvect.make_morphism(pairvect.full(1), pairvect.pair(1), [[1]])
    assert pairvect.hom_generators(pairvect.full(1), pairvect.pair(1)) == []
    assert len(pairvect.hom_generators(pairvect.pair(1), pairvect.full(1))) == 1


def test_pairvect_kernel_and_cokernel_carry_induced_subspaces(pairvect):
    difference = pairvect.make_morphism(pairvect.full(2), pairvect.full(1), [[1, -1]])
    assert pairvect.kernel(difference).object == pairvect.full(1)
    inclusion = pairvect.make_morphism(pairvect.pair(1), pairvect.pair(2), [[1], [0]])
    assert pairvect.cokernel(inclusion).object == pairvect.pair(1)
    assert pairvect.cokernel(pairvect.witness()).object == pairvect.zero_object()


def test_pairvect_kernels_carry_preimages_and_cokernels_images(pairvect):
    rng = random.Random(3)
    probes = pairvect.curated_probes() + [pairvect.random_probe(rng) for _ in range(40)]
    kernels = cokernels = 0
    for f in probes:
        if engine.is_kernel_morphism(pairvect, f):
            kernels += 1
            assert engine.is_mono(pairvect, f)
            preimage = nullspace_basis(pairvect.annihilator(f.target) @ f.payload)
            assert pairvect.subspace(f.source).cols == preimage.cols
        if engine.is_cokernel_morphism(pairvect, f):
            cokernels += 1
            assert rank(f.payload) == pairvect.size(f.target)
            assert rank(f.payload @ pairvect.subspace(f.source)) == pairvect.subspace(f.target).cols
    assert kernels and cokernels


def test_object_json_round_trip(vectq, fgab, pairvect):
    for instance, obj in ((vectq, vectq.space(3)), (fgab, fgab.group(2, 4, 0)), (pairvect, pairvect.pair(3, [[1, "1/2", 0]]))):
        assert instance.object_from_json(instance.object_to_json(obj)) == obj


# product


def test_product_constructions_are_componentwise(mixed_product, vectq, pairvect):
    rng = random.Random(7)
    for _ in range(1000):
        f = mixed_product.random_probe(rng)
        f1, f2 = f.payload
        assert mixed_product.kernel(f).arrow.payload == (vectq.kernel(f1).arrow, pairvect.kernel(f2).arrow)
        assert mixed_product.cokernel(f).arrow.payload == (vectq.cokernel(f1).arrow, pairvect.cokernel(f2).arrow)
        target, source = mixed_product.identity(f.target), mixed_product.identity(f.source)
        pb = engine.pullback(mixed_product, f, target)
        pb1, pb2 = engine.pullback(vectq, f1, target.payload[0]), engine.pullback(pairvect, f2, target.payload[1])
        assert (pb.a.payload, pb.b.payload) == ((pb1.a, pb2.a), (pb1.b, pb2.b))
        po = engine.pushout(mixed_product, f, source)
        po1, po2 = engine.pushout(vectq, f1, source.payload[0]), engine.pushout(pairvect, f2, source.payload[1])
        assert (po.c.payload, po.d.payload) == ((po1.c, po2.c), (po1.d, po2.d))


def test_product_lift_runs_engine_operations_per_component(mixed_product, vectq, pairvect):
    f = mixed_product.pair(vectq.matrix([[1, 0]]), pairvect.witness())
    mono = product_lift(mixed_product, "is_mono", f)
    assert mono == (False, True)
    assert engine.is_mono(mixed_product, f) is False
    with pytest.raises(AttributeError):
        product_lift(mixed_product, "no_such_operation", f)


def test_product_bimorphism_needs_both_components(mixed_product, vectq, pairvect):
    f = mixed_product.pad(pairvect.witness(), 1)
    assert engine.is_mono(mixed_product, f) and engine.is_epi(mixed_product, f)
    assert not engine.is_isomorphism(mixed_product, f)


def test_product_morphism_json(mixed_product, vectq, pairvect):
    f = mixed_product.pair(vectq.matrix([[1, 2]]), pairvect.witness())
    data = mixed_product.morphism_to_json(f)
    assert set(data) == {"source", "target", "components"}
    assert mixed_product.morphism_from_json(data) == f


# opposite


def test_opposite_swaps_kernels_and_cokernels(vectq):
    op = OppositeInstance(vectq)
    projection = vectq.matrix([[1, 0]])
    f = op.dual(projection)
    assert f.source.payload == vectq.space(1)
    assert op.kernel(f).arrow.payload == vectq.cokernel(projection).arrow
    assert engine.is_mono(op, f)
    assert not engine.is_epi(op, f)
    total = op.biproduct(op.zero_object(), op.make_object(vectq.space(1)))
    assert total.injections[1].payload == vectq.biproduct(vectq.zero_object(), vectq.space(1)).projections[1]


def test_opposite_morphism_json(vectq):
    op = OppositeInstance(vectq)
    f = op.dual(vectq.matrix([[1, 2]]))
    data = op.morphism_to_json(f)
    assert "dual" in data
    assert op.morphism_from_json(data) == f


# registry


def test_registry_names():
    assert get_instance("vectq").instance_id == "vectq"
    assert get_instance("product:vectq:pairvect").instance_id == "product:vectq:pairvect"
    assert get_instance("op:fgab").instance_id == "op:fgab"
    assert isinstance(get_instance("product:fgab:fgab"), ProductInstance)
    for nested in ("product:op:vectq:fgab", "product:product:vectq:fgab:pairvect", "product:op:vectq:product:fgab:pairvect"):
        assert get_instance(nested).instance_id == nested
    inner = get_instance("product:product:vectq:fgab:pairvect").first
    assert isinstance(inner, ProductInstance) and inner.instance_id == "product:vectq:fgab"
    for bad in ("nope", "product:vectq", "op:nope", "product:vectq:nope", "product:op:vectq"):
        with pytest.raises(UnknownInstanceError):
            get_instance(bad)

"""
Exact structures on an instance.

An exact structure is a class of kernel-cokernel pairs (conflations). Three
kinds are supported: all kernel-cokernel pairs, the split ones, and an
explicit list of pairs (always together with the split ones). Listed pairs
are matched up to isomorphism over the same middle object.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, List, Tuple

from src.category import engine
from src.category.errors import DomainMismatchError
from src.category.instance import CategoryInstance
from src.category.objects import IsoSide, Morphism

logger = logging.getLogger(__name__)


class StructureKind(str, Enum):
    ALL_PAIRS = "all"
    SPLIT = "split"
    CUSTOM = "custom"


@dataclass(frozen=True)
class ExactStructure:
    instance: CategoryInstance
    kind: StructureKind
    conflations: Tuple[Tuple[Morphism, Morphism], ...] = ()

    @classmethod
    def all_pairs(cls, instance: CategoryInstance) -> "ExactStructure":
        return cls(instance, StructureKind.ALL_PAIRS)

    @classmethod
    def split(cls, instance: CategoryInstance) -> "ExactStructure":
        return cls(instance, StructureKind.SPLIT)

    @classmethod
    def custom(cls, instance: CategoryInstance, conflations) -> "ExactStructure":
        pairs = tuple((f, g) for f, g in conflations)
        for f, g in pairs:
            instance.require_owned(f, g)
            if not is_kernel_cokernel_pair(instance, f, g):
                raise DomainMismatchError(f"({f!r}, {g!r}) is not a kernel-cokernel pair")
        return cls(instance, StructureKind.CUSTOM, pairs)

    def class_key(self, f: Morphism, side: IsoSide) -> Hashable:
        """
        Morphisms with equal keys are interchangeable for admissibility.
        Listed pairs are matched over a fixed middle object only, so a custom
        structure compares morphisms exactly.
        """
        if self.kind == StructureKind.CUSTOM:
            return f
        return engine.iso_class_key(self.instance, f, side)

    def representatives(self, morphisms: Iterable[Morphism], side: IsoSide) -> List[Morphism]:
        first = {}
        for f in morphisms:
            first.setdefault(self.class_key(f, side), f)
        return list(first.values())

    def __repr__(self) -> str:
        return f"<ExactStructure {self.kind.value} on {self.instance.instance_id}>"


def is_kernel_cokernel_pair(instance: CategoryInstance, f: Morphism, g: Morphism) -> bool:
    """g . f = 0, f is a kernel of g and g is a cokernel of f (by canonical comparisons)."""
    if f.target != g.source:
        return False
    if not engine.is_zero_morphism(instance, instance.compose(g, f)):
        return False
    kernel_comparison = instance.lift(instance.kernel(g).arrow, f)
    if kernel_comparison is None or not engine.is_isomorphism(instance, kernel_comparison):
        return False
    cokernel_comparison = instance.extend(instance.cokernel(f).arrow, g)
    return cokernel_comparison is not None and engine.is_isomorphism(instance, cokernel_comparison)


def has_retraction(instance: CategoryInstance, f: Morphism) -> bool:
    return instance.extend(f, instance.identity(f.source)) is not None


def has_section(instance: CategoryInstance, g: Morphism) -> bool:
    return instance.lift(g, instance.identity(g.target)) is not None


def _listed(structure: ExactStructure, f: Morphism) -> bool:
    instance = structure.instance
    for listed, _ in structure.conflations:
        if listed.target != f.target:
            continue
        comparison = instance.lift(listed, f)
        if comparison is not None and engine.is_isomorphism(instance, comparison):
            return True
    return False


def is_conflation(f: Morphism, g: Morphism, structure: ExactStructure) -> bool:
    instance = structure.instance
    if not is_kernel_cokernel_pair(instance, f, g):
        return False
    if structure.kind == StructureKind.ALL_PAIRS:
        return True
    if has_retraction(instance, f):
        return True
    return structure.kind == StructureKind.CUSTOM and _listed(structure, f)


def is_admissible_mono(f: Morphism, structure: ExactStructure) -> bool:
    """f is the first leg of some conflation."""
    instance = structure.instance
    if structure.kind == StructureKind.SPLIT:
        return has_retraction(instance, f)
    if not engine.is_kernel_morphism(instance, f):
        return False
    if structure.kind == StructureKind.ALL_PAIRS:
        # a kernel is the kernel of its own cokernel
        return True
    return is_conflation(f, engine.cokernel(instance, f).arrow, structure)


def is_admissible_epi(g: Morphism, structure: ExactStructure) -> bool:
    """g is the second leg of some conflation."""
    instance = structure.instance
    if structure.kind == StructureKind.SPLIT:
        return has_section(instance, g)
    if not engine.is_cokernel_morphism(instance, g):
        return False
    if structure.kind == StructureKind.ALL_PAIRS:
        return True
    return is_conflation(engine.kernel(instance, g).arrow, g, structure)

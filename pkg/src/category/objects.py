"""
Value types shared by every category instance.

Objects and morphisms are immutable and carry an instance-specific payload
(a dimension, an invariant-factor tuple, a subspace, a matrix, a pair of
component morphisms...). Only the owning ``CategoryInstance`` interprets it.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Tuple


@dataclass(frozen=True)
class ObjectRef:
    instance_id: str
    payload: Any

    def __repr__(self) -> str:
        return f"<{self.instance_id} {self.payload!r}>"


@dataclass(frozen=True)
class Morphism:
    source: ObjectRef
    target: ObjectRef
    payload: Any

    @property
    def instance_id(self) -> str:
        return self.source.instance_id

    def __repr__(self) -> str:
        return f"<{self.source!r} -> {self.target!r}: {self.payload!r}>"


@dataclass(frozen=True)
class KernelResult:
    """A kernel (or image) object with its monic inclusion arrow."""
    object: ObjectRef
    arrow: Morphism


@dataclass(frozen=True)
class CokernelResult:
    """A cokernel (or coimage) object with its epic projection arrow."""
    object: ObjectRef
    arrow: Morphism


@dataclass(frozen=True)
class Biproduct:
    object: ObjectRef
    injections: Tuple[Morphism, Morphism]
    projections: Tuple[Morphism, Morphism]


class SquareKind(str, Enum):
    PULLBACK = "pullback"
    PUSHOUT = "pushout"


@dataclass(frozen=True)
class SquareWitness:
    """
    A commutative square

        A --a--> B
        |        |
        b        c
        v        v
        C --d--> D

    For a pullback, c and d are the input and (A, a, b) is constructed; for a
    pushout, a and b are the input and (D, c, d) is constructed. The leg
    parallel to d is a, the leg parallel to a is d.
    """
    kind: SquareKind
    A: ObjectRef
    B: ObjectRef
    C: ObjectRef
    D: ObjectRef
    a: Morphism
    b: Morphism
    c: Morphism
    d: Morphism


@dataclass(frozen=True)
class Recognition:
    """Verdict of a kernel/cokernel recognizer plus the comparison isomorphism."""
    verdict: bool
    comparison: Any = None

    def __bool__(self) -> bool:
        return self.verdict


class IsoSide(str, Enum):
    """Which end of a morphism an isomorphism may be composed onto."""
    SOURCE = "source"   # f ~ f . phi
    TARGET = "target"   # f ~ psi . f
    BOTH = "both"       # f ~ psi . f . phi

    @property
    def flipped(self) -> "IsoSide":
        if self == IsoSide.SOURCE:
            return IsoSide.TARGET
        if self == IsoSide.TARGET:
            return IsoSide.SOURCE
        return self

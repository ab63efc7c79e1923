"""
Forward-chaining inference over signed property atoms.

A FactBase maps each atom to at most one signed fact with its provenance.
``infer`` closes it under a fixed rule set: the definitions of the sided
notions, "quasi-abelian or integral implies semi-abelian", the left/right
equivalences for semi-abelian categories, the projectivity implications and
"quasi-abelian iff admissible intersections", each with contrapositives.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field

from src.category.errors import InferenceContradiction
from src.checks.certificates import PropertyCertificate, PropertyName

logger = logging.getLogger(__name__)


class Atom(str, Enum):
    SEMI_ABELIAN = "semi_abelian"
    LEFT_SEMI_ABELIAN = "left_semi_abelian"
    RIGHT_SEMI_ABELIAN = "right_semi_abelian"
    QUASI_ABELIAN = "quasi_abelian"
    LEFT_QUASI_ABELIAN = "left_quasi_abelian"
    RIGHT_QUASI_ABELIAN = "right_quasi_abelian"
    INTEGRAL = "integral"
    LEFT_INTEGRAL = "left_integral"
    RIGHT_INTEGRAL = "right_integral"
    ENOUGH_PROJECTIVES = "enough_projectives"
    ENOUGH_INJECTIVES = "enough_injectives"
    ENOUGH_QUASI_PROJECTIVES = "enough_quasi_projectives"
    ENOUGH_QUASI_INJECTIVES = "enough_quasi_injectives"
    ADMISSIBLE_INTERSECTIONS = "admissible_intersections"


class Source(str, Enum):
    CERTIFICATE = "certificate"
    CORPUS = "corpus"
    DECLARED = "declared"
    INFERRED = "inferred"


Literal = Tuple[Atom, bool]


def literal_name(literal: Literal) -> str:
    atom, holds = literal
    return atom.value if holds else f"not {atom.value}"


class Fact(BaseModel):
    atom: Atom
    holds: bool
    source: Source
    certified: bool = False
    rule: Optional[str] = None
    premises: List[str] = Field(default_factory=list)

    @property
    def literal(self) -> Literal:
        return (self.atom, self.holds)


@dataclass(frozen=True)
class Rule:
    name: str
    premises: Tuple[Literal, ...]
    conclusion: Literal


def _rule(name: str, conclusion: Literal, *premises: Literal) -> Rule:
    return Rule(name, premises, conclusion)


A = Atom
SEMI, LS, RS = A.SEMI_ABELIAN, A.LEFT_SEMI_ABELIAN, A.RIGHT_SEMI_ABELIAN
QUASI, LQ, RQ = A.QUASI_ABELIAN, A.LEFT_QUASI_ABELIAN, A.RIGHT_QUASI_ABELIAN
INT, LI, RI = A.INTEGRAL, A.LEFT_INTEGRAL, A.RIGHT_INTEGRAL
EP, EI = A.ENOUGH_PROJECTIVES, A.ENOUGH_INJECTIVES
EQP, EQI = A.ENOUGH_QUASI_PROJECTIVES, A.ENOUGH_QUASI_INJECTIVES
AI = A.ADMISSIBLE_INTERSECTIONS


def _two_sided(name: str, both: Atom, left: Atom, right: Atom) -> List[Rule]:
    return [
        _rule(name, (left, True), (both, True)),
        _rule(name, (right, True), (both, True)),
        _rule(name, (both, True), (left, True), (right, True)),
        _rule(name, (both, False), (left, False)),
        _rule(name, (both, False), (right, False)),
        _rule(name, (right, False), (both, False), (left, True)),
        _rule(name, (left, False), (both, False), (right, True)),
    ]


def _left_right_symmetry(name: str, left: Atom, right: Atom) -> List[Rule]:
    return [
        _rule(name, (right, True), (SEMI, True), (left, True)),
        _rule(name, (left, True), (SEMI, True), (right, True)),
        _rule(name, (right, False), (SEMI, True), (left, False)),
        _rule(name, (left, False), (SEMI, True), (right, False)),
    ]


RULES: Tuple[Rule, ...] = tuple(
    _two_sided("definition of quasi-abelian", QUASI, LQ, RQ)
    + _two_sided("definition of integral", INT, LI, RI)
    + [
        _rule("definition of semi-abelian", (SEMI, True), (LS, True), (RS, True)),
        _rule("definition of semi-abelian", (SEMI, False), (LS, False)),
        _rule("definition of semi-abelian", (SEMI, False), (RS, False)),
        _rule("definition of semi-abelian", (RS, False), (SEMI, False), (LS, True)),
        _rule("definition of semi-abelian", (LS, False), (SEMI, False), (RS, True)),
        _rule("quasi-abelian implies semi-abelian", (SEMI, True), (QUASI, True)),
        _rule("integral implies semi-abelian", (SEMI, True), (INT, True)),
        _rule("quasi-abelian implies semi-abelian", (QUASI, False), (SEMI, False)),
        _rule("integral implies semi-abelian", (INT, False), (SEMI, False)),
        _rule("sided quasi-abelian implies sided semi-abelian", (LS, True), (LQ, True)),
        _rule("sided quasi-abelian implies sided semi-abelian", (RS, True), (RQ, True)),
        _rule("sided integral implies sided semi-abelian", (LS, True), (LI, True)),
        _rule("sided integral implies sided semi-abelian", (RS, True), (RI, True)),
        _rule("sided quasi-abelian implies sided semi-abelian", (LQ, False), (LS, False)),
        _rule("sided quasi-abelian implies sided semi-abelian", (RQ, False), (RS, False)),
        _rule("sided integral implies sided semi-abelian", (LI, False), (LS, False)),
        _rule("sided integral implies sided semi-abelian", (RI, False), (RS, False)),
    ]
    + _left_right_symmetry("left/right quasi-abelian agree when semi-abelian", LQ, RQ)
    + _left_right_symmetry("left/right integral agree when semi-abelian", LI, RI)
    + [
        _rule("semi-abelian, not integral", (LI, False), (SEMI, True), (INT, False)),
        _rule("semi-abelian, not integral", (RI, False), (SEMI, True), (INT, False)),
        _rule("semi-abelian, not quasi-abelian", (LQ, False), (SEMI, True), (QUASI, False)),
        _rule("semi-abelian, not quasi-abelian", (RQ, False), (SEMI, True), (QUASI, False)),
        _rule("enough quasi-projectives implies left quasi-abelian", (LQ, True), (EQP, True)),
        _rule("enough quasi-injectives implies right quasi-abelian", (RQ, True), (EQI, True)),
        _rule("enough projectives implies left integral", (LI, True), (EP, True)),
        _rule("enough injectives implies right integral", (RI, True), (EI, True)),
        _rule("enough quasi-projectives implies left quasi-abelian", (EQP, False), (LQ, False)),
        _rule("enough quasi-injectives implies right quasi-abelian", (EQI, False), (RQ, False)),
        _rule("enough projectives implies left integral", (EP, False), (LI, False)),
        _rule("enough injectives implies right integral", (EI, False), (RI, False)),
        _rule("quasi-abelian iff admissible intersections", (AI, True), (QUASI, True)),
        _rule("quasi-abelian iff admissible intersections", (QUASI, True), (AI, True)),
        _rule("quasi-abelian iff admissible intersections", (AI, False), (QUASI, False)),
        _rule("quasi-abelian iff admissible intersections", (QUASI, False), (AI, False)),
    ]
)


class FactBase:
    def __init__(self, facts: Iterable[Fact] = ()):
        self._facts: Dict[Atom, Fact] = {}
        for fact in facts:
            self.add(fact)

    @classmethod
    def declare(cls, literals: Iterable[Literal], source: Source = Source.DECLARED) -> "FactBase":
        return cls(
            Fact(atom=atom, holds=holds, source=source, certified=source == Source.CERTIFICATE)
            for atom, holds in literals
        )

    def add(self, fact: Fact) -> bool:
        """Store a fact; returns whether the base changed."""
        existing = self._facts.get(fact.atom)
        if existing is None:
            self._facts[fact.atom] = fact
            return True
        if existing.holds == fact.holds:
            return False
        if existing.certified and fact.certified:
            raise InferenceContradiction(
                f"{literal_name(existing.literal)} ({existing.source.value}) contradicts "
                f"{literal_name(fact.literal)} ({fact.source.value})"
            )
        if fact.certified and fact.source != Source.INFERRED:
            logger.warning(f"replacing {literal_name(existing.literal)} by certified {literal_name(fact.literal)}")
            self._facts[fact.atom] = fact
            return True
        logger.warning(f"skipping {literal_name(fact.literal)}: contradicts {literal_name(existing.literal)}")
        return False

    def get(self, atom: Atom) -> Optional[Fact]:
        return self._facts.get(atom)

    def holds(self, atom: Atom) -> Optional[bool]:
        fact = self._facts.get(atom)
        return None if fact is None else fact.holds

    def satisfies(self, literal: Literal) -> bool:
        return self.holds(literal[0]) == literal[1]

    def literals(self) -> FrozenSet[Literal]:
        return frozenset(f.literal for f in self._facts.values())

    def facts(self) -> List[Fact]:
        return sorted(self._facts.values(), key=lambda f: list(Atom).index(f.atom))

    def copy(self) -> "FactBase":
        clone = FactBase()
        clone._facts = dict(self._facts)
        return clone

    def __len__(self) -> int:
        return len(self._facts)

    def __contains__(self, literal: Literal) -> bool:
        return self.satisfies(literal)

    def __repr__(self) -> str:
        return f"FactBase({sorted(literal_name(lit) for lit in self.literals())})"


def infer(base: FactBase) -> FactBase:
    """Closure of ``base`` under RULES. The input is not modified."""
    closed = base.copy()
    changed = True
    while changed:
        changed = False
        for rule in RULES:
            if closed.satisfies(rule.conclusion) or not all(closed.satisfies(p) for p in rule.premises):
                continue
            premises = [closed.get(atom) for atom, _ in rule.premises]
            fact = Fact(
                atom=rule.conclusion[0],
                holds=rule.conclusion[1],
                source=Source.INFERRED,
                certified=all(p.certified for p in premises),
                rule=rule.name,
                premises=[literal_name(p.literal) for p in premises],
            )
            if closed.add(fact):
                logger.debug(f"inferred {literal_name(fact.literal)} by {rule.name}")
                changed = True
    return closed


PROPERTY_ATOMS: Dict[PropertyName, Atom] = {
    PropertyName.LEFT_SEMI_ABELIAN: LS,
    PropertyName.RIGHT_SEMI_ABELIAN: RS,
    PropertyName.LEFT_QUASI_ABELIAN: LQ,
    PropertyName.RIGHT_QUASI_ABELIAN: RQ,
    PropertyName.LEFT_INTEGRAL: LI,
    PropertyName.RIGHT_INTEGRAL: RI,
}


def facts_from_verdicts(verdicts: Dict[PropertyName, Optional[PropertyCertificate]]) -> FactBase:
    """Certified negatives for failures, corpus-level positives for passes."""
    base = FactBase()
    for prop, cert in verdicts.items():
        atom = PROPERTY_ATOMS[prop]
        if cert is None:
            base.add(Fact(atom=atom, holds=True, source=Source.CORPUS))
        else:
            base.add(Fact(atom=atom, holds=False, source=Source.CERTIFICATE, certified=True,
                          premises=[cert.failed_check.value]))
    return base

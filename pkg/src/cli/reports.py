"""
Run reports.

Every command writes one RunReport. Verdicts point into the certificate list
by index, so each "certificate" verdict can be re-verified on its own, and
the inferred facts can be replayed from the verdicts alone. Nothing
time-dependent goes into a report: the same inputs and seed give the same
bytes.
"""
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from src import __version__
from src.category.instance import CategoryInstance
from src.checks.certificates import PropertyCertificate, PropertyName
from src.checks.corpus import ProbeCorpus
from src.checks.inference import Atom, Fact, FactBase, Source, facts_from_verdicts, infer
from src.checks.orchestrator import Classification
from src.config.settings import SCHEMA_VERSION
from src.exact.intersections import AiCertificate, ExactViolation
from src.exact.structure import ExactStructure, StructureKind
from src.seqspace.lab import ClosureCertificate, SeqTableRow

logger = logging.getLogger(__name__)

ADMISSIBLE_INTERSECTIONS = "admissible_intersections"
EXACT_AXIOMS = "exact_axioms"


class Command(str, Enum):
    CLASSIFY = "classify"
    AI_CHECK = "ai-check"
    SEQ_VERIFY = "seq-verify"


class Outcome(str, Enum):
    PASS_ON_CORPUS = "pass_on_corpus"
    CERTIFICATE = "certificate"
    VIOLATION = "violation"


class CertificateKind(str, Enum):
    PROPERTY = "property"
    ADMISSIBLE_INTERSECTIONS = "admissible_intersections"
    CLOSURE = "closure"


class CertificateRecord(BaseModel):
    kind: CertificateKind
    payload: Dict[str, Any]


class Verdict(BaseModel):
    property: str
    outcome: Outcome
    certificate: Optional[int] = None


class CorpusInfo(BaseModel):
    seed: Optional[int] = None
    curated: int
    random: int
    fingerprint: str


class ProjectivityRow(BaseModel):
    object: Any
    projective: Outcome
    projective_certificate: Optional[int] = None
    quasi_projective: Outcome
    quasi_projective_certificate: Optional[int] = None


class RunReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(SCHEMA_VERSION, alias="schema")
    version: str = __version__
    command: Command
    instance: Optional[str] = None
    structure: Optional[StructureKind] = None
    corpus: Optional[CorpusInfo] = None
    verdicts: List[Verdict] = Field(default_factory=list)
    certificates: List[CertificateRecord] = Field(default_factory=list)
    facts: List[Fact] = Field(default_factory=list)
    diagram: Dict[str, Optional[bool]] = Field(default_factory=dict)
    bimorphisms: List[Dict[str, Any]] = Field(default_factory=list)
    projectivity: List[ProjectivityRow] = Field(default_factory=list)
    exact_violation: Optional[ExactViolation] = None
    table: List[SeqTableRow] = Field(default_factory=list)

    def add_certificate(self, kind: CertificateKind, cert: BaseModel) -> int:
        self.certificates.append(CertificateRecord(kind=kind, payload=cert.model_dump(mode="json")))
        return len(self.certificates) - 1

    def record(self, prop: str, cert: Optional[BaseModel], kind: CertificateKind = CertificateKind.PROPERTY) -> Verdict:
        if cert is None:
            verdict = Verdict(property=prop, outcome=Outcome.PASS_ON_CORPUS)
        else:
            verdict = Verdict(property=prop, outcome=Outcome.CERTIFICATE, certificate=self.add_certificate(kind, cert))
        self.verdicts.append(verdict)
        return verdict

    def set_facts(self, base: FactBase):
        self.facts = base.facts()
        self.diagram = classification_diagram(base)


def classification_diagram(base: FactBase) -> Dict[str, Optional[bool]]:
    """Every node of the classification diagram: true, false, or unknown (None)."""
    return {atom.value: base.holds(atom) for atom in Atom}


def corpus_info(instance: CategoryInstance, corpus: ProbeCorpus) -> CorpusInfo:
    return CorpusInfo(
        seed=corpus.seed,
        curated=len(corpus.curated),
        random=len(corpus.random),
        fingerprint=corpus.fingerprint(instance),
    )


def classification_report(instance: CategoryInstance, corpus: ProbeCorpus, result: Classification) -> RunReport:
    report = RunReport(command=Command.CLASSIFY, instance=instance.instance_id, corpus=corpus_info(instance, corpus))
    for prop, cert in result.verdicts.items():
        report.record(prop.value, cert)
    report.set_facts(replay_facts(report))
    report.bimorphisms = [instance.morphism_to_json(f) for f in result.bimorphisms]
    for obj, projective, quasi in result.projectivity:
        report.projectivity.append(ProjectivityRow(
            object=instance.object_to_json(obj),
            projective=Outcome.CERTIFICATE if projective else Outcome.PASS_ON_CORPUS,
            projective_certificate=report.add_certificate(CertificateKind.PROPERTY, projective) if projective else None,
            quasi_projective=Outcome.CERTIFICATE if quasi else Outcome.PASS_ON_CORPUS,
            quasi_projective_certificate=report.add_certificate(CertificateKind.PROPERTY, quasi) if quasi else None,
        ))
    return report


def ai_report(structure: ExactStructure, corpus: ProbeCorpus, violation: Optional[ExactViolation],
              cert: Optional[AiCertificate]) -> RunReport:
    instance = structure.instance
    report = RunReport(
        command=Command.AI_CHECK,
        instance=instance.instance_id,
        structure=structure.kind,
        corpus=corpus_info(instance, corpus),
        exact_violation=violation,
    )
    report.verdicts.append(Verdict(
        property=EXACT_AXIOMS,
        outcome=Outcome.VIOLATION if violation else Outcome.PASS_ON_CORPUS,
    ))
    report.record(ADMISSIBLE_INTERSECTIONS, cert, CertificateKind.ADMISSIBLE_INTERSECTIONS)
    report.set_facts(replay_facts(report))
    return report


def seq_report(banach: ClosureCertificate, nuclear: ClosureCertificate, table: List[SeqTableRow]) -> RunReport:
    report = RunReport(command=Command.SEQ_VERIFY, table=table)
    for cert in (banach, nuclear):
        index = report.add_certificate(CertificateKind.CLOSURE, cert)
        report.verdicts.append(Verdict(property=f"closure_{cert.family.value}", outcome=Outcome.CERTIFICATE, certificate=index))
    return report


def replay_facts(report: RunReport) -> FactBase:
    """
    The inferred facts of a report, recomputed from its verdicts. Admissible
    intersections only says something about the classification for the
    structure of all kernel-cokernel pairs.
    """
    if report.command == Command.CLASSIFY:
        verdicts = {}
        for verdict in report.verdicts:
            prop = PropertyName(verdict.property)
            cert = None
            if verdict.certificate is not None:
                cert = PropertyCertificate.model_validate(report.certificates[verdict.certificate].payload)
            verdicts[prop] = cert
        return infer(facts_from_verdicts(verdicts))
    if report.command == Command.AI_CHECK and report.structure == StructureKind.ALL_PAIRS:
        base = FactBase()
        for verdict in report.verdicts:
            if verdict.property != ADMISSIBLE_INTERSECTIONS:
                continue
            failed = verdict.outcome == Outcome.CERTIFICATE
            base.add(Fact(
                atom=Atom.ADMISSIBLE_INTERSECTIONS,
                holds=not failed,
                source=Source.CERTIFICATE if failed else Source.CORPUS,
                certified=failed,
            ))
        return infer(base)
    return FactBase()


def dump_report(report: RunReport) -> str:
    return json.dumps(report.model_dump(mode="json", by_alias=True), sort_keys=True, indent=2) + "\n"


def write_report(report: RunReport, path: Union[str, Path]):
    Path(path).write_text(dump_report(report), encoding="utf-8")
    logger.info(f"wrote {report.command.value} report to {path}")


def load_report(path: Union[str, Path]) -> RunReport:
    """Raises OSError, ValueError (bad JSON) or pydantic.ValidationError."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return RunReport.model_validate(data)

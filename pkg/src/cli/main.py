"""
Command line entry point.

    python -m src.cli.main classify fgab --seed 3 --json fgab.json
    python -m src.cli.main ai-check fgab split
    python -m src.cli.main seq-verify 1/1000 8 --json seq.json
    python -m src.cli.main verify fgab.json
    python -m src.cli.main corpus gen pairvect --seed 1 --size 50 --json pairs.json

Exit codes: 0 on completion whatever the verdicts, 1 when ``verify`` rejects
a report, 2 for an unknown instance or a bad argument, 3 for a malformed
corpus or report file.
"""
import argparse
import logging
import sys
from typing import List, Optional

from src import __version__
from src.category.errors import CategoryError, CertificateError, CorpusError, UnknownInstanceError
from src.checks.certificates import PropertyCertificate
from src.checks.corpus import ProbeCorpus, build_corpus
from src.checks.orchestrator import classify
from src.checks.verify import verify_certificate
from src.cli.corpus_io import dump_corpus, load_corpus, save_corpus
from src.cli.reports import (
    CertificateKind,
    RunReport,
    ai_report,
    classification_report,
    dump_report,
    load_report,
    replay_facts,
    seq_report,
    write_report,
)
from src.config.settings import DEFAULT_SEED, LOG_FORMAT, LOG_LEVEL, RANDOM_PROBES
from src.exact.intersections import AiCertificate, check_admissible_intersections, check_exact_axioms, verify_ai_certificate
from src.exact.structure import ExactStructure, StructureKind
from src.instances import get_instance
from src.seqspace.lab import (
    ClosureCertificate,
    banach_closure_witness,
    invariant_table,
    nuclear_closure_witness,
    parse_positive_rational,
    verify_closure_certificate,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_MALFORMED = 3


def _emit(report: RunReport, path: Optional[str]):
    if path:
        write_report(report, path)
    else:
        sys.stdout.write(dump_report(report))


def _corpus(instance, args) -> ProbeCorpus:
    if args.corpus:
        return load_corpus(instance, args.corpus)
    return build_corpus(instance, seed=args.seed, size=args.size)


def cmd_classify(args) -> int:
    instance = get_instance(args.instance)
    corpus = _corpus(instance, args)
    result = classify(instance, corpus)
    report = classification_report(instance, corpus, result)
    failed = [v.property for v in report.verdicts if v.certificate is not None]
    logger.info(f"{instance.instance_id}: {len(report.verdicts) - len(failed)} properties pass on corpus, failed: {failed}")
    _emit(report, args.json)
    return EXIT_OK


def _structure(instance, kind: StructureKind) -> ExactStructure:
    if kind == StructureKind.ALL_PAIRS:
        return ExactStructure.all_pairs(instance)
    return ExactStructure.split(instance)


def cmd_ai_check(args) -> int:
    instance = get_instance(args.instance)
    corpus = _corpus(instance, args)
    structure = _structure(instance, StructureKind(args.structure))
    violation = check_exact_axioms(structure, corpus)
    cert = check_admissible_intersections(structure, corpus)
    verdict = "fails" if cert else "passes on corpus"
    logger.info(f"admissible intersections for {structure!r} {verdict}")
    _emit(ai_report(structure, corpus, violation, cert), args.json)
    return EXIT_OK


def cmd_seq_verify(args) -> int:
    eps = parse_positive_rational(args.eps)
    if args.m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {args.m_max}")
    report = seq_report(banach_closure_witness(eps), nuclear_closure_witness(eps, args.m_max), invariant_table())
    _emit(report, args.json)
    return EXIT_OK


def _verify_record(report: RunReport, index: int) -> bool:
    record = report.certificates[index]
    if record.kind == CertificateKind.CLOSURE:
        return verify_closure_certificate(ClosureCertificate.model_validate(record.payload))
    instance = get_instance(report.instance)
    if record.kind == CertificateKind.PROPERTY:
        return verify_certificate(instance, PropertyCertificate.model_validate(record.payload))
    cert = AiCertificate.model_validate(record.payload)
    if cert.structure == StructureKind.CUSTOM:
        raise CertificateError("custom exact structures cannot be rebuilt from a report")
    return verify_ai_certificate(_structure(instance, cert.structure), cert)


def verify_report(report: RunReport) -> List[str]:
    """Problems found in a report; empty when every certificate re-verifies."""
    problems = []
    for index in range(len(report.certificates)):
        try:
            ok = _verify_record(report, index)
        except (CertificateError, ValueError) as e:
            problems.append(f"certificate {index}: {e}")
            continue
        if not ok:
            problems.append(f"certificate {index} does not re-verify")
    try:
        replayed = replay_facts(report).facts()
    except (CategoryError, ValueError) as e:
        problems.append(f"facts cannot be replayed: {e}")
    else:
        if replayed != report.facts:
            problems.append("facts do not follow from the verdicts")
    return problems


def cmd_verify(args) -> int:
    try:
        report = load_report(args.file)
    except (OSError, ValueError) as e:
        logger.error(f"cannot read report {args.file}: {e}")
        return EXIT_MALFORMED
    problems = verify_report(report)
    for problem in problems:
        logger.error(problem)
    if problems:
        return EXIT_REJECTED
    logger.info(f"{len(report.certificates)} certificates in {args.file} re-verify")
    return EXIT_OK


def cmd_corpus_gen(args) -> int:
    instance = get_instance(args.instance)
    corpus = build_corpus(instance, seed=args.seed, size=args.size)
    if args.json:
        save_corpus(instance, corpus, args.json)
    else:
        sys.stdout.write(dump_corpus(instance, corpus))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="preab", description="Exact checks for pre-abelian category instances")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", metavar="PATH", help="write the JSON output here instead of stdout")

    probes = argparse.ArgumentParser(add_help=False)
    probes.add_argument("--corpus", metavar="PATH", help="probe corpus file (replaces the generated corpus)")
    probes.add_argument("--seed", type=int, default=DEFAULT_SEED)
    probes.add_argument("--size", type=int, default=RANDOM_PROBES, help="number of random probes")

    classify_cmd = commands.add_parser("classify", parents=[output, probes], help="run the property checkers")
    classify_cmd.add_argument("instance")
    classify_cmd.set_defaults(handler=cmd_classify)

    ai_cmd = commands.add_parser("ai-check", parents=[output, probes], help="check admissible intersections")
    ai_cmd.add_argument("instance")
    ai_cmd.add_argument("structure", nargs="?", default=StructureKind.ALL_PAIRS.value,
                        choices=[StructureKind.ALL_PAIRS.value, StructureKind.SPLIT.value])
    ai_cmd.set_defaults(handler=cmd_ai_check)

    seq_cmd = commands.add_parser("seq-verify", parents=[output], help="closure witnesses for the sequence space")
    seq_cmd.add_argument("eps")
    seq_cmd.add_argument("m_max", type=int)
    seq_cmd.set_defaults(handler=cmd_seq_verify)

    verify_cmd = commands.add_parser("verify", help="re-verify every certificate in a report")
    verify_cmd.add_argument("file")
    verify_cmd.set_defaults(handler=cmd_verify)

    corpus_cmd = commands.add_parser("corpus", help="probe corpus files")
    corpus_commands = corpus_cmd.add_subparsers(dest="corpus_command", required=True)
    gen_cmd = corpus_commands.add_parser("gen", parents=[output], help="write a seeded corpus")
    gen_cmd.add_argument("instance")
    gen_cmd.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen_cmd.add_argument("--size", type=int, default=RANDOM_PROBES)
    gen_cmd.set_defaults(handler=cmd_corpus_gen)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except UnknownInstanceError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except CorpusError as e:
        logger.error(f"malformed corpus: {e}")
        return EXIT_MALFORMED
    except ValueError as e:
        logger.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""
Probe corpus files: a JSON list of morphism records in the instance's own
JSON form ({"source", "target", "matrix"} for matrix instances).
"""
import json
import logging
from pathlib import Path
from typing import Union

from src.category.errors import CategoryError, CorpusError
from src.category.instance import CategoryInstance
from src.checks.corpus import ProbeCorpus, corpus_from_morphisms

logger = logging.getLogger(__name__)


def dump_corpus(instance: CategoryInstance, corpus: ProbeCorpus) -> str:
    records = [instance.morphism_to_json(f) for f in corpus.morphisms]
    return json.dumps(records, sort_keys=True, indent=2) + "\n"


def save_corpus(instance: CategoryInstance, corpus: ProbeCorpus, path: Union[str, Path]):
    Path(path).write_text(dump_corpus(instance, corpus), encoding="utf-8")
    logger.info(f"wrote {len(corpus)} probes for {instance.instance_id} to {path}")


def parse_corpus(instance: CategoryInstance, text: str) -> ProbeCorpus:
    try:
        records = json.loads(text)
    except json.JSONDecodeError as e:
        raise CorpusError(f"corpus is not valid JSON: {e}")
    if not isinstance(records, list) or not records:
        raise CorpusError("a corpus is a non-empty JSON list of morphism records")
    morphisms = []
    for i, record in enumerate(records):
        if not isinstance(record, dict) or "source" not in record or "target" not in record:
            raise CorpusError(f"record {i} needs 'source' and 'target' keys")
        try:
            morphisms.append(instance.morphism_from_json(record))
        except (CategoryError, KeyError, TypeError, ValueError) as e:
            raise CorpusError(f"record {i} is not a morphism of {instance.instance_id}: {e}")
    return corpus_from_morphisms(instance, morphisms)


def load_corpus(instance: CategoryInstance, path: Union[str, Path]) -> ProbeCorpus:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CorpusError(f"cannot read corpus {path}: {e}")
    corpus = parse_corpus(instance, text)
    logger.info(f"loaded {len(corpus)} probes for {instance.instance_id} from {path}")
    return corpus

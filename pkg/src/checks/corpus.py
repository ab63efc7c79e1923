"""
Probe corpora: the finite sets of morphisms every universally quantified
property is tested on. Curated witnesses come first, then seeded random
probes, so the first failure a checker reports is reproducible.
"""
import hashlib
import json
import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.category.instance import CategoryInstance
from src.category.objects import Morphism, ObjectRef
from src.config.settings import DEFAULT_SEED, RANDOM_PROBES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProbeCorpus:
    instance_id: str
    seed: Optional[int]
    curated: Tuple[Morphism, ...]
    random: Tuple[Morphism, ...] = ()

    @property
    def morphisms(self) -> Tuple[Morphism, ...]:
        return self.curated + self.random

    def __len__(self) -> int:
        return len(self.curated) + len(self.random)

    def objects(self) -> List[ObjectRef]:
        """Distinct sources and targets in corpus order."""
        seen = {}
        for f in self.morphisms:
            seen.setdefault(f.source, None)
            seen.setdefault(f.target, None)
        return list(seen)

    def fingerprint(self, instance: CategoryInstance) -> str:
        encoded = json.dumps([instance.morphism_to_json(f) for f in self.morphisms], sort_keys=True)
        return hashlib.sha256(encoded.encode("utf-8")).hexdigest()[:16]


def build_corpus(instance: CategoryInstance, seed: int = DEFAULT_SEED, size: int = RANDOM_PROBES) -> ProbeCorpus:
    rng = random.Random(seed)
    curated = tuple(instance.curated_probes())
    generated = tuple(instance.random_probe(rng) for _ in range(size))
    logger.info(f"built corpus for {instance.instance_id}: {len(curated)} curated + {len(generated)} random (seed {seed})")
    return ProbeCorpus(instance.instance_id, seed, curated, generated)


def corpus_from_morphisms(instance: CategoryInstance, morphisms: Sequence[Morphism]) -> ProbeCorpus:
    """A corpus of explicitly given morphisms (loaded from a file or built in a test)."""
    instance.require_owned(*morphisms)
    return ProbeCorpus(instance.instance_id, None, tuple(morphisms))

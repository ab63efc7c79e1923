"""
Classification orchestrator.

Runs the six property checkers side by side on one corpus, then feeds the
verdicts through inference. Checkers are independent pure computations, so
they are dispatched to worker threads and gathered; the verdicts are read
back in the fixed CHECKERS order so the report does not depend on timing.
"""
import asyncio
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from src.category.instance import CategoryInstance
from src.category.objects import Morphism, ObjectRef
from src.checks.certificates import PropertyCertificate, PropertyName
from src.checks.corpus import ProbeCorpus
from src.checks.inference import FactBase, facts_from_verdicts, infer
from src.checks.property_checker import CHECKERS, bimorphism_witnesses, projectivity_scan

logger = logging.getLogger(__name__)


class CheckerStatus(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    DONE = "done"
    ERROR = "error"


class CheckerMetrics(BaseModel):
    """Bookkeeping for a single checker run"""
    status: CheckerStatus = CheckerStatus.PENDING
    elapsed_ms: Optional[float] = None
    probes: int = 0
    error: Optional[str] = None


@dataclass
class Classification:
    instance_id: str
    verdicts: Dict[PropertyName, Optional[PropertyCertificate]]
    facts: FactBase
    bimorphisms: List[Morphism] = field(default_factory=list)
    projectivity: List[Tuple[ObjectRef, Optional[PropertyCertificate], Optional[PropertyCertificate]]] = field(default_factory=list)


class ClassificationOrchestrator:
    """
    Runs every property checker for one instance and corpus and
    consolidates the results.
    """

    def __init__(self, instance: CategoryInstance, corpus: ProbeCorpus):
        self.instance = instance
        self.corpus = corpus
        self.metrics = {prop: CheckerMetrics() for prop in CHECKERS}

    async def run_checker(self, prop: PropertyName) -> Optional[PropertyCertificate]:
        metrics = self.metrics[prop]
        metrics.status = CheckerStatus.RUNNING
        metrics.probes = len(self.corpus)
        start_time = time.time()
        try:
            cert = await asyncio.to_thread(CHECKERS[prop], self.instance, self.corpus)
        except Exception as e:
            metrics.status = CheckerStatus.ERROR
            metrics.error = str(e)
            logger.error(f"Error running {prop.value} on {self.instance.instance_id}: {str(e)}")
            raise
        metrics.elapsed_ms = (time.time() - start_time) * 1000
        metrics.status = CheckerStatus.DONE
        verdict = "fails" if cert else "passes on corpus"
        logger.info(f"{prop.value} {verdict} ({metrics.elapsed_ms:.0f} ms)")
        return cert

    async def run_all(self) -> Dict[PropertyName, Optional[PropertyCertificate]]:
        props = list(CHECKERS)
        results = await asyncio.gather(*(self.run_checker(p) for p in props), return_exceptions=True)
        for result in results:
            if isinstance(result, BaseException):
                raise result
        return dict(zip(props, results))

    async def classify(self, with_extras: bool = True) -> Classification:
        logger.info(f"Classifying {self.instance.instance_id} on {len(self.corpus)} probes")
        verdicts = await self.run_all()
        facts = infer(facts_from_verdicts(verdicts))
        result = Classification(self.instance.instance_id, verdicts, facts)
        if with_extras:
            result.bimorphisms, result.projectivity = await asyncio.gather(
                asyncio.to_thread(bimorphism_witnesses, self.instance, self.corpus),
                asyncio.to_thread(projectivity_scan, self.instance, self.corpus),
            )
        logger.info(f"Classification of {self.instance.instance_id} complete")
        return result


def classify(instance: CategoryInstance, corpus: ProbeCorpus, with_extras: bool = True) -> Classification:
    """Synchronous entry point."""
    return asyncio.run(ClassificationOrchestrator(instance, corpus).classify(with_extras))

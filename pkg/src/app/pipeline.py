"""Pipeline orchestrating mention detection, linking and relation extraction."""

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from src.app.document import Document, doc_from_text
from src.app.pipeline_config import PipelineConfig, load_config, validate_config
from src.lib import InvalidInput
from src.lib.component import iter_batches

logger = logging.getLogger(__name__)

MENTIONS_STAGE = "mentions_extractor"
LINKER_STAGE = "linker"
RELATIONS_STAGE = "relations_extractor"
STAGES = (MENTIONS_STAGE, LINKER_STAGE, RELATIONS_STAGE)


@dataclass(frozen=True)
class StageTiming:
    """Wall-clock time one stage spent on one batch."""

    stage: str
    seconds: float
    documents: int

    def __post_init__(self):
        if self.seconds < 0:
            raise ValueError("seconds must be non-negative")
        if self.documents < 0:
            raise ValueError("documents must be non-negative")


class Pipeline:
    """Runs the configured stages over batches of documents."""

    def __init__(self, config: PipelineConfig):
        """
        Initialize the pipeline.

        Parameters:
            config: Pipeline configuration; validated here

        Raises:
            ConfigError: If the configuration is invalid
        """
        self.config = validate_config(config)
        self.mentions_extractor = config.mentions_extractor
        self.linker = config.linker
        self.relations_extractor = config.relations_extractor
        # Aggregate across calls; guarded for concurrent annotate calls
        self.call_counts: Dict[str, int] = {stage: 0 for stage in STAGES}
        self._counter_lock = threading.Lock()
        # Serializes whole calls when a component keeps mutable state
        self._exclusive_lock = threading.Lock() if self.has_exclusive_component else None
        logger.info(
            f"Pipeline ready: mentions={self._key(self.mentions_extractor)}, "
            f"linker={self._key(self.linker)}, relations={self._key(self.relations_extractor)}, "
            f"batch_size={config.batch_size}, workers={config.workers}, device={config.device}"
        )

    @classmethod
    def from_file(cls, path) -> "Pipeline":
        return cls(load_config(path))

    @staticmethod
    def _key(component) -> Optional[str]:
        return None if component is None else component.registry_key

    @property
    def has_exclusive_component(self) -> bool:
        return any(c.exclusive for c in self.config.components)

    @property
    def runs_mention_stage(self) -> bool:
        """The mention stage is skipped when an end-to-end linker is configured."""
        if self.mentions_extractor is None:
            return False
        return self.linker is None or not self.linker.is_end_to_end

    def _count(self, stage: str) -> None:
        with self._counter_lock:
            self.call_counts[stage] += 1

    def reset_counters(self) -> None:
        with self._counter_lock:
            for stage in STAGES:
                self.call_counts[stage] = 0

    def _process_batch(self, batch: List[Document]) -> List[StageTiming]:
        timings = []
        batch_size = len(batch)

        if self.runs_mention_stage:
            start = time.perf_counter()
            results = self.mentions_extractor.predict(batch, batch_size=batch_size)
            self._count(MENTIONS_STAGE)
            for doc, spans in zip(batch, results):
                doc.set_mentions(spans)
            timings.append(StageTiming(MENTIONS_STAGE, time.perf_counter() - start, batch_size))

        if self.linker is not None:
            start = time.perf_counter()
            results = self.linker.predict(batch, self.config.entities, batch_size=batch_size)
            self._count(LINKER_STAGE)
            for doc, spans in zip(batch, results):
                doc.set_entities(spans)
            timings.append(StageTiming(LINKER_STAGE, time.perf_counter() - start, batch_size))

        if self.relations_extractor is not None:
            start = time.perf_counter()
            results = self.relations_extractor.predict(batch, self.config.relations, batch_size=batch_size)
            self._count(RELATIONS_STAGE)
            for doc, triples in zip(batch, results):
                doc.set_relations(triples)
            timings.append(StageTiming(RELATIONS_STAGE, time.perf_counter() - start, batch_size))

        for doc in batch:
            for timing in timings:
                doc.timing[timing.stage] = timing.seconds / timing.documents
            doc.finalize()
        return timings

    @staticmethod
    def _to_documents(texts_or_docs: Sequence) -> List[Document]:
        docs = []
        for index, item in enumerate(texts_or_docs):
            if isinstance(item, Document):
                docs.append(item)
            elif isinstance(item, str):
                docs.append(doc_from_text(item))
            else:
                raise InvalidInput(f"Input {index} must be text or a Document, got {type(item).__name__}")
        return docs

    def annotate(self, texts_or_docs: Sequence, batch_size: int = None, workers: int = None) -> List[Document]:
        """
        Annotate texts (or Documents) with every configured stage.

        Parameters:
            texts_or_docs: Inputs, in order
            batch_size: Overrides the configured batch size
            workers: Overrides the configured worker count

        Returns:
            List[Document]: One annotated Document per input, in input order

        Raises:
            InvalidInput: If an input is neither text nor a Document
            ComponentError: Propagated from components
        """
        if isinstance(texts_or_docs, (str, Document)):
            raise InvalidInput("annotate expects a list of inputs; use annotate_one for a single text")
        docs = self._to_documents(texts_or_docs)
        batch_size = self.config.batch_size if batch_size is None else batch_size
        workers = self.config.workers if workers is None else workers
        if batch_size <= 0:
            raise ValueError("batch_size must be positive")
        if workers <= 0:
            raise ValueError("workers must be positive")
        batches = list(iter_batches(docs, batch_size))

        if self._exclusive_lock is not None:
            with self._exclusive_lock:
                self._run_batches(batches, 1)
        else:
            self._run_batches(batches, workers)
        logger.debug(f"Annotated {len(docs)} documents in {len(batches)} batches")
        return docs

    def _run_batches(self, batches: List[List[Document]], workers: int) -> None:
        if workers > 1 and len(batches) > 1:
            with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="Pipeline") as pool:
                # list() re-raises the first component error
                list(pool.map(self._process_batch, batches))
        else:
            for batch in batches:
                self._process_batch(batch)

    def annotate_one(self, text) -> Document:
        """Annotate a single text; same result as ``annotate([text])[0]``."""
        return self.annotate([text])[0]

    def __call__(self, text) -> Document:
        return self.annotate_one(text)

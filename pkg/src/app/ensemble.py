"""Ensembles of linkers and description variants combined by span voting."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from src.app.classes import Entity
from src.app.span import Span, resolve_overlaps
from src.lib import ConfigError, EmptyEnsemble, InconsistentVariants
from src.lib.component import Component, ComponentKind
from src.lib.linker.interface import LinkerInterface
from src.lib.mentions.interface import MentionsExtractorInterface
from src.lib.registry import create_component, register_component

logger = logging.getLogger(__name__)


def _check_threshold(threshold) -> float:
    if isinstance(threshold, bool) or not isinstance(threshold, (int, float)):
        raise ConfigError("threshold must be a number")
    if not 0.0 < threshold <= 1.0:
        raise ConfigError(f"threshold must be in (0, 1], got {threshold}")
    return float(threshold)


@dataclass
class EnsembleConfig:
    """
    Linkers crossed with description variants; N = len(linkers) * len(variants).

    Every variant must describe the same set of entity names.
    """

    linkers: List[LinkerInterface]
    description_variants: List[List[Entity]]
    threshold: float = 0.5

    def __post_init__(self):
        self.linkers = list(self.linkers or [])
        self.description_variants = [
            [e if isinstance(e, Entity) else Entity.from_dict(e) for e in variant]
            for variant in (self.description_variants or [])
        ]
        if not self.linkers:
            raise EmptyEnsemble("Ensemble needs at least one linker")
        if not self.description_variants or not all(self.description_variants):
            raise EmptyEnsemble("Ensemble needs at least one non-empty description variant")
        names = [frozenset(e.name for e in variant) for variant in self.description_variants]
        if any(n != names[0] for n in names[1:]):
            raise InconsistentVariants(
                f"Description variants cover different entity names: {[sorted(n) for n in names]}"
            )
        self.threshold = _check_threshold(self.threshold)

    @property
    def size(self) -> int:
        return len(self.linkers) * len(self.description_variants)


@dataclass
class VoteTally:
    """Votes collected by one span key across sub-pipelines."""

    key: Hashable
    votes: int
    scores: List[float] = field(default_factory=list)

    def __post_init__(self):
        if self.votes < 1:
            raise ValueError("votes must be at least 1")

    @property
    def mean_score(self) -> float:
        return math.fsum(self.scores) / len(self.scores) if self.scores else 0.0


def tally_votes(predictions: Sequence[Sequence[Span]], key=lambda span: span.key) -> List[VoteTally]:
    """
    Count, for every span key, how many sub-pipelines predicted it.

    Parameters:
        predictions: One span list per sub-pipeline
        key: Function mapping a span to its vote key

    Returns:
        List[VoteTally]: Sorted by key; a sub-pipeline votes at most once per key
    """
    tallies: Dict[Hashable, VoteTally] = {}
    for spans in predictions:
        best: Dict[Hashable, float] = {}
        for span in spans:
            k = key(span)
            score = span.score if span.score is not None else 1.0
            best[k] = max(best.get(k, score), score)
        for k, score in best.items():
            if k in tallies:
                tallies[k].votes += 1
                tallies[k].scores.append(score)
            else:
                tallies[k] = VoteTally(key=k, votes=1, scores=[score])
    return [tallies[k] for k in sorted(tallies, key=_sort_key)]


def _sort_key(key) -> tuple:
    return tuple("" if part is None else part for part in key)


def vote_filter(tallies: Sequence[VoteTally], n: int, threshold: float) -> List[VoteTally]:
    """Keep tallies with ``votes / n >= threshold``, preserving order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    for tally in tallies:
        if not 1 <= tally.votes <= n:
            raise ValueError(f"votes must be in [1, {n}], got {tally.votes}")
    return [t for t in tallies if t.votes / n >= threshold]


def _kept_spans(tallies: Sequence[VoteTally], n: int) -> List[Span]:
    spans = []
    priority = {}
    for tally in tallies:
        start, end = tally.key[0], tally.key[1]
        label = tally.key[2] if len(tally.key) > 2 else None
        span = Span(start, end, label=label, score=tally.votes / n)
        spans.append(span)
        priority[span.key] = (-tally.votes, -tally.mean_score, -(end - start), start, label or "")
    return resolve_overlaps(spans, lambda s: priority[s.key])


def ensemble_predict(config: EnsembleConfig, docs: Sequence, workers: int = 1) -> List[List[Span]]:
    """
    Run every (linker, variant) sub-pipeline and keep spans with enough votes.

    Kept spans are scored ``votes / N``; overlaps are resolved by more votes,
    then higher mean sub-pipeline score, then longer span, then smaller start.
    """
    docs = list(docs)
    pairs = list(product(config.linkers, config.description_variants))

    def run(pair):
        linker, variant = pair
        return linker.predict(docs, variant)

    exclusive = any(linker.exclusive for linker in config.linkers)
    if workers > 1 and len(pairs) > 1 and not exclusive:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="Ensemble") as pool:
            outputs = list(pool.map(run, pairs))
    else:
        outputs = [run(pair) for pair in pairs]

    n = config.size
    results = []
    for index in range(len(docs)):
        tallies = tally_votes([output[index] for output in outputs])
        kept = vote_filter(tallies, n, config.threshold)
        results.append(_kept_spans(kept, n))
    logger.debug(f"Ensemble of {n} sub-pipelines annotated {len(docs)} documents")
    return results


@register_component("ensemble", ComponentKind.LINKER, is_end_to_end=None)
class EnsembleLinker(LinkerInterface):
    """
    Linker voting over linkers crossed with description variants.

    Without explicit variants the entities given to ``predict`` form the single variant.
    It is end-to-end only if all its linkers are.
    """

    def __init__(
        self,
        linkers: Sequence[LinkerInterface],
        description_variants: Optional[Sequence[Sequence[Entity]]] = None,
        threshold: float = 0.5,
        workers: int = 1,
    ):
        """
        Initialize the ensemble.

        Parameters:
            linkers: Sub-linkers
            description_variants: Entity lists describing the same classes differently
            threshold: Minimum fraction of sub-pipelines voting for a span
            workers: Sub-pipelines run concurrently when greater than 1

        Raises:
            EmptyEnsemble: If no linkers are given
            InconsistentVariants: If variants cover different entity names
        """
        self.linkers = list(linkers or [])
        self.description_variants = (
            None if description_variants is None
            else [[e if isinstance(e, Entity) else Entity.from_dict(e) for e in v] for v in description_variants]
        )
        self.threshold = _check_threshold(threshold)
        self.workers = workers
        if not self.linkers:
            raise EmptyEnsemble("Ensemble needs at least one linker")
        if self.description_variants is not None:
            # Validate eagerly
            EnsembleConfig(self.linkers, self.description_variants, self.threshold)

    @classmethod
    def from_config(cls, entry: dict) -> "EnsembleLinker":
        params = dict(entry.get("params") or {})
        for name in ("linkers", "description_variants", "threshold", "workers"):
            if name in entry:
                params[name] = entry[name]
        linker_entries = params.pop("linkers", None)
        if not linker_entries:
            raise EmptyEnsemble("Ensemble entry needs a non-empty 'linkers' list")
        linkers = [create_component(ComponentKind.LINKER, s) for s in linker_entries]
        try:
            return cls(linkers=linkers, **params)
        except TypeError as e:
            raise ConfigError(f"Invalid parameters for component 'ensemble': {e}") from e

    def to_config(self) -> dict:
        data = {
            "type": self.registry_key,
            "linkers": [linker.to_config() for linker in self.linkers],
            "threshold": self.threshold,
        }
        if self.description_variants is not None:
            data["description_variants"] = [[e.to_dict() for e in v] for v in self.description_variants]
        return data

    def params(self) -> dict:
        return {"linkers": len(self.linkers), "threshold": self.threshold}

    @property
    def is_end_to_end(self) -> bool:
        return all(linker.is_end_to_end for linker in self.linkers)

    @property
    def exclusive(self) -> bool:
        return any(linker.exclusive for linker in self.linkers)

    def ensemble_config(self, entities: Sequence[Entity]) -> EnsembleConfig:
        variants = self.description_variants if self.description_variants is not None else [list(entities or [])]
        return EnsembleConfig(self.linkers, variants, self.threshold)

    def predict(self, docs: Sequence, entities: Sequence[Entity], batch_size: int = None) -> List[List[Span]]:
        return ensemble_predict(self.ensemble_config(entities), docs, workers=self.workers)


@register_component("mentions-ensemble", ComponentKind.MENTIONS_EXTRACTOR)
class MentionsEnsemble(MentionsExtractorInterface):
    """Mention extractor keeping (start, end) spans voted by enough sub-extractors."""

    def __init__(self, extractors: Sequence[MentionsExtractorInterface], threshold: float = 0.5):
        self.extractors = list(extractors or [])
        if not self.extractors:
            raise EmptyEnsemble("Mentions ensemble needs at least one extractor")
        self.threshold = _check_threshold(threshold)

    @classmethod
    def from_config(cls, entry: dict) -> "MentionsEnsemble":
        params = dict(entry.get("params") or {})
        for name in ("extractors", "threshold"):
            if name in entry:
                params[name] = entry[name]
        extractor_entries = params.pop("extractors", None)
        if not extractor_entries:
            raise EmptyEnsemble("Mentions ensemble entry needs a non-empty 'extractors' list")
        extractors = [create_component(ComponentKind.MENTIONS_EXTRACTOR, s) for s in extractor_entries]
        try:
            return cls(extractors=extractors, **params)
        except TypeError as e:
            raise ConfigError(f"Invalid parameters for component 'mentions-ensemble': {e}") from e

    def to_config(self) -> dict:
        return {
            "type": self.registry_key,
            "extractors": [e.to_config() for e in self.extractors],
            "threshold": self.threshold,
        }

    @property
    def exclusive(self) -> bool:
        return any(e.exclusive for e in self.extractors)

    def predict(self, docs: Sequence, batch_size: int = None) -> List[List[Span]]:
        docs = list(docs)
        outputs = [extractor.predict(docs, batch_size=batch_size) for extractor in self.extractors]
        n = len(self.extractors)
        results = []
        for index in range(len(docs)):
            tallies = tally_votes([o[index] for o in outputs], key=lambda span: span.boundaries)
            kept = vote_filter(tallies, n, self.threshold)
            spans = _kept_spans(kept, n)
            results.append([Span(s.start, s.end) for s in spans])
        return results

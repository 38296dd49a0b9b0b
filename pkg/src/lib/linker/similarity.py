"""End-to-end linker labeling tokens by description similarity."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.app.classes import Entity
from src.app.span import Span
from src.app.tokenizer import tokenize
from src.lib.component import ComponentKind, iter_batches
from src.lib.embedding.interface import EncoderInterface
from src.lib.embedding.trigram import TrigramHashEncoder, clip_score
from src.lib.linker.interface import LinkerInterface, require_entities
from src.lib.registry import register_component

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.35


def _unit_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    return np.divide(matrix, norms, out=np.zeros_like(matrix), where=norms > 0)


@register_component("similarity-linker", ComponentKind.LINKER, is_end_to_end=True)
class SimilarityLinker(LinkerInterface):
    """
    Labels each word with the entity class whose description it resembles most.

    A word is embedded together with its neighbouring words; words whose best
    score stays below ``threshold`` are left unlabeled, and runs of adjacent
    words sharing a label become one span scored with the mean word score.
    """

    end_to_end = True

    def __init__(self, threshold: float = DEFAULT_THRESHOLD, encoder: EncoderInterface = None):
        """
        Initialize the linker.

        Parameters:
            threshold: Minimum similarity for a word to get a label (abstain below)
            encoder: Text encoder, defaults to the trigram hashing encoder
        """
        if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
            raise ValueError("threshold must be a number")
        self.threshold = float(threshold)
        self.encoder = encoder or TrigramHashEncoder()

    def params(self) -> dict:
        return {"threshold": self.threshold}

    def _entity_matrix(self, entities: Sequence[Entity]) -> np.ndarray:
        return _unit_rows(np.vstack([self.encoder.encode(e.side_information) for e in entities]))

    def label_tokens(self, doc, entities: Sequence[Entity]) -> List[Tuple[int, int, Optional[str], float]]:
        """
        Score every word of ``doc``.

        Returns:
            list: (start, end, label or None, score) per word, in text order
        """
        entities = require_entities(entities)
        tokens = tokenize(doc.text)
        if not tokens:
            return []
        entity_matrix = self._entity_matrix(entities)
        labeled = []
        for i, tok in enumerate(tokens):
            previous = tokens[i - 1].text if i > 0 else ""
            following = tokens[i + 1].text if i + 1 < len(tokens) else ""
            context = self.encoder.encode(f"{previous} {tok.text} {following}")
            norm = np.linalg.norm(context)
            if norm == 0:
                labeled.append((tok.start, tok.end, None, 0.0))
                continue
            scores = entity_matrix @ (context / norm)
            best = int(np.argmax(scores))
            score = clip_score(float(scores[best]))
            label = entities[best].name if score >= self.threshold else None
            labeled.append((tok.start, tok.end, label, score))
        return labeled

    def _merge_runs(self, labeled) -> List[Span]:
        spans = []
        run = []
        for item in labeled + [(None, None, None, 0.0)]:
            if run and item[2] == run[0][2]:
                run.append(item)
                continue
            if run and run[0][2] is not None:
                mean = clip_score(sum(t[3] for t in run) / len(run))
                spans.append(Span(run[0][0], run[-1][1], label=run[0][2], score=mean))
            run = [item] if item[2] is not None else []
        return spans

    def predict(
        self, docs: Sequence, entities: Sequence[Entity], batch_size: int = None
    ) -> List[List[Span]]:
        entities = require_entities(entities)
        results = []
        for batch in iter_batches(docs, batch_size):
            for doc in batch:
                results.append(self._merge_runs(self.label_tokens(doc, entities)))
            logger.debug(f"Similarity linker: processed batch of {len(batch)} documents")
        return results

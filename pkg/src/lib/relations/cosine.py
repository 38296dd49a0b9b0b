"""Relation extractor picking the closest relation description for each entity pair."""

import logging
from typing import List, Sequence

import numpy as np

from src.app.classes import Relation, RelationTriple
from src.lib.component import ComponentKind, iter_batches
from src.lib.embedding.interface import EncoderInterface
from src.lib.embedding.trigram import TrigramHashEncoder, clip_score, cosine
from src.lib.registry import register_component
from src.lib.relations.interface import (
    RelationsExtractorInterface,
    require_entity_layer,
    require_relations,
)

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.1


@register_component("cosine-relations", ComponentKind.RELATIONS_EXTRACTOR)
class CosineRelationExtractor(RelationsExtractorInterface):
    """
    Classifies every ordered pair of distinct entity spans.

    The pair is embedded as subject text, the text between the two spans and
    object text; the relation with the most similar ``name + description`` wins
    if its score reaches ``threshold``, otherwise the pair gets no relation.
    """

    def __init__(self, threshold: float = DEFAULT_THRESHOLD, encoder: EncoderInterface = None):
        """
        Initialize the extractor.

        Parameters:
            threshold: Minimum score for emitting a relation (abstain below)
            encoder: Text encoder, defaults to the trigram hashing encoder
        """
        if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
            raise ValueError("threshold must be a number")
        self.threshold = float(threshold)
        self.encoder = encoder or TrigramHashEncoder()

    def params(self) -> dict:
        return {"threshold": self.threshold}

    @staticmethod
    def pair_text(text: str, subject, obj) -> str:
        """Subject text, the text strictly between the spans, object text."""
        if subject.end <= obj.start:
            between = text[subject.end:obj.start]
        elif obj.end <= subject.start:
            between = text[obj.end:subject.start]
        else:
            between = ""
        return f"{subject.text_in(text)} {between} {obj.text_in(text)}"

    def score_pairs(self, doc, relations: Sequence[Relation]):
        """
        Score every ordered pair of distinct entity spans.

        Returns:
            list: (subject, object, best relation name, best score) per pair
        """
        relation_vectors = [self.encoder.encode(r.side_information) for r in relations]
        spans = list(doc.entities)
        scored = []
        for subject in spans:
            for obj in spans:
                if subject.boundaries == obj.boundaries:
                    continue
                pair_vector = self.encoder.encode(self.pair_text(doc.text, subject, obj))
                scores = [clip_score(cosine(pair_vector, v)) for v in relation_vectors]
                best = int(np.argmax(scores))
                scored.append((subject, obj, relations[best].name, scores[best]))
        return scored

    def predict(
        self, docs: Sequence, relations: Sequence[Relation], batch_size: int = None
    ) -> List[List[RelationTriple]]:
        relations = require_relations(relations)
        require_entity_layer(docs)
        results = []
        for batch in iter_batches(docs, batch_size):
            for doc in batch:
                results.append([
                    RelationTriple(subject, obj, label, score)
                    for subject, obj, label, score in self.score_pairs(doc, relations)
                    if score >= self.threshold
                ])
            logger.debug(f"Cosine relations: processed batch of {len(batch)} documents")
        return results

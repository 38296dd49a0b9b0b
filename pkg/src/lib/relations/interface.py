"""Abstract interface for relation extractors."""

from abc import abstractmethod
from typing import List, Sequence

from src.app.classes import Relation, RelationTriple
from src.lib import MissingEntityAnnotations, NoRelationsConfigured
from src.lib.component import Component, ComponentKind


class RelationsExtractorInterface(Component):
    """Abstract base class for relation extractors."""

    kind = ComponentKind.RELATIONS_EXTRACTOR

    @abstractmethod
    def predict(
        self, docs: Sequence, relations: Sequence[Relation], batch_size: int = None
    ) -> List[List[RelationTriple]]:
        """
        Extract relation triples between entity spans.

        Parameters:
            docs: Documents carrying a linked entity layer
            relations: Relation classes to choose from
            batch_size: Number of documents handled per inner step

        Returns:
            List[List[RelationTriple]]: One list of triples per document, in input order

        Raises:
            NoRelationsConfigured: If relations is empty
            MissingEntityAnnotations: If a document was never linked
        """
        pass


def require_relations(relations: Sequence[Relation]) -> List[Relation]:
    relations = list(relations or [])
    if not relations:
        raise NoRelationsConfigured("Relation extractor needs at least one relation class")
    return relations


def require_entity_layer(docs: Sequence) -> None:
    for index, doc in enumerate(docs):
        if "entities" not in doc.layers:
            raise MissingEntityAnnotations(f"Document {index} has no entity annotations")

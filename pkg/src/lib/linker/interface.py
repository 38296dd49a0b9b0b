"""Abstract interface for linkers."""

from abc import abstractmethod
from typing import List, Sequence

from src.app.classes import Entity
from src.app.span import Span, resolve_overlaps
from src.lib import NoEntitiesConfigured
from src.lib.component import Component, ComponentKind


class LinkerInterface(Component):
    """
    Abstract base class for linkers (entity classification and/or linking).

    End-to-end linkers find their own spans; the others label the mentions
    already present on each document.
    """

    kind = ComponentKind.LINKER
    end_to_end: bool = True

    @property
    def is_end_to_end(self) -> bool:
        return self.end_to_end

    @abstractmethod
    def predict(
        self, docs: Sequence, entities: Sequence[Entity], batch_size: int = None
    ) -> List[List[Span]]:
        """
        Label spans with entity classes.

        Parameters:
            docs: Documents to process (carrying mentions for non end-to-end linkers)
            entities: Entity classes to choose from
            batch_size: Number of documents handled per inner step

        Returns:
            List[List[Span]]: One list of labeled, scored, non-overlapping spans per document

        Raises:
            NoEntitiesConfigured: If entities is empty
        """
        pass


def require_entities(entities: Sequence[Entity]) -> List[Entity]:
    entities = list(entities or [])
    if not entities:
        raise NoEntitiesConfigured("Linker needs at least one entity class")
    return entities


def linker_priority(span: Span):
    """Higher score, then longer span, then smaller start offset wins."""
    return (-(span.score or 0.0), -len(span), span.start)


def resolve_linker_overlaps(spans: Sequence[Span]) -> List[Span]:
    return resolve_overlaps(spans, linker_priority)

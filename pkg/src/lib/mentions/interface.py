"""Abstract interface for mention extractors."""

from abc import abstractmethod
from typing import List, Sequence

from src.app.span import Span
from src.lib.component import Component, ComponentKind


class MentionsExtractorInterface(Component):
    """Abstract base class for mention extractors."""

    kind = ComponentKind.MENTIONS_EXTRACTOR

    @abstractmethod
    def predict(self, docs: Sequence, batch_size: int = None) -> List[List[Span]]:
        """
        Find candidate entity mentions.

        Parameters:
            docs: Documents to process
            batch_size: Number of documents handled per inner step

        Returns:
            List[List[Span]]: One list of unlabeled spans per document, in input order
        """
        pass

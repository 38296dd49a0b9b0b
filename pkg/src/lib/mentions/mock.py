"""Mock implementation of MentionsExtractorInterface for testing."""

from typing import List, Sequence

from src.app.span import Span
from src.lib import ComponentError
from src.lib.mentions.interface import MentionsExtractorInterface


class MentionsExtractorMock(MentionsExtractorInterface):
    """Mock extractor returning preset spans per document text."""

    registry_key = "mock-mentions"

    def __init__(self, spans_by_text: dict = None):
        """
        Initialize mock extractor.

        Parameters:
            spans_by_text: Mapping from document text to (start, end) pairs
        """
        self._spans_by_text = dict(spans_by_text or {})
        self._error = False
        self.calls = 0

    def predict(self, docs: Sequence, batch_size: int = None) -> List[List[Span]]:
        """Return the preset spans (mock)."""
        if self._error:
            raise ComponentError("Mock mentions extractor error")
        self.calls += 1
        return [
            [Span(start, end) for start, end in self._spans_by_text.get(doc.text, [])]
            for doc in docs
        ]

    def set_error(self, error: bool) -> None:
        """Set error state (for testing)."""
        self._error = error

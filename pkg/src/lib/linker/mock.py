"""Mock implementation of LinkerInterface for testing."""

from typing import List, Sequence

from src.app.span import Span
from src.lib import ComponentError
from src.lib.linker.interface import LinkerInterface, require_entities


class LinkerMock(LinkerInterface):
    """
    Mock linker returning preset labeled spans per document text.

    With ``end_to_end=False`` it labels each incoming mention with ``default_label``.
    """

    registry_key = "mock-linker"

    def __init__(self, spans_by_text: dict = None, end_to_end: bool = True, default_label: str = None):
        """
        Initialize mock linker.

        Parameters:
            spans_by_text: Mapping from document text to (start, end, label, score) tuples
            end_to_end: Whether the mock claims to need no mentions
            default_label: Label given to mentions when not end-to-end
        """
        self._spans_by_text = dict(spans_by_text or {})
        self.end_to_end = end_to_end
        self.default_label = default_label
        self._error = False
        self.calls = 0

    def predict(self, docs: Sequence, entities, batch_size: int = None) -> List[List[Span]]:
        """Return the preset spans (mock)."""
        if self._error:
            raise ComponentError("Mock linker error")
        entities = require_entities(entities)
        self.calls += 1
        label = self.default_label or entities[0].name
        results = []
        for doc in docs:
            if self.end_to_end:
                results.append([
                    Span(start, end, label=lab, score=score)
                    for start, end, lab, score in self._spans_by_text.get(doc.text, [])
                ])
            else:
                results.append([Span(m.start, m.end, label=label, score=1.0) for m in doc.mentions])
        return results

    def set_error(self, error: bool) -> None:
        """Set error state (for testing)."""
        self._error = error

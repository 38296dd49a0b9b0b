"""Mention extractor selecting words that contain given characters."""

import logging
from typing import List, Sequence

from src.app.span import Span
from src.app.tokenizer import tokenize
from src.lib.component import ComponentKind, iter_batches
from src.lib.mentions.interface import MentionsExtractorInterface
from src.lib.registry import register_component

logger = logging.getLogger(__name__)


@register_component("pattern-mentions", ComponentKind.MENTIONS_EXTRACTOR)
class PatternMentionsExtractor(MentionsExtractorInterface):
    """Emits every alphanumeric word containing at least one of ``letters``."""

    def __init__(self, letters: str = "s", case_sensitive: bool = True):
        """
        Initialize the extractor.

        Parameters:
            letters: Characters a word must contain (any one of them suffices)
            case_sensitive: If False, match letters regardless of case

        Raises:
            ValueError: If letters is empty
        """
        if not isinstance(letters, str) or not letters:
            raise ValueError("letters must be a non-empty string")
        self.letters = letters
        self.case_sensitive = case_sensitive
        self._letter_set = frozenset(letters if case_sensitive else letters.lower())

    def params(self) -> dict:
        return {"letters": self.letters, "case_sensitive": self.case_sensitive}

    def matches(self, word: str) -> bool:
        if not self.case_sensitive:
            word = word.lower()
        return any(ch in self._letter_set for ch in word)

    def predict(self, docs: Sequence, batch_size: int = None) -> List[List[Span]]:
        results = []
        for batch in iter_batches(docs, batch_size):
            for doc in batch:
                results.append([
                    Span(tok.start, tok.end) for tok in tokenize(doc.text) if self.matches(tok.text)
                ])
            logger.debug(f"Pattern mentions: processed batch of {len(batch)} documents")
        return results

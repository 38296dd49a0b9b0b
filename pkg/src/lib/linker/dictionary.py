"""End-to-end gazetteer linker using longest match at word boundaries."""

import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple

from src.app.classes import Entity
from src.app.span import Span
from src.lib.component import ComponentKind, iter_batches
from src.lib.linker.interface import LinkerInterface, require_entities
from src.lib.registry import register_component

logger = logging.getLogger(__name__)


# Alphanumeric neighbours (underscore excluded, as in the tokenizer)
BEFORE_WORD = r"(?<![^\W_])"
AFTER_WORD = r"(?![^\W_])"


def _is_word_char(ch: str) -> bool:
    return ch.isalnum()


@register_component("dictionary-linker", ComponentKind.LINKER, is_end_to_end=True)
class DictionaryLinker(LinkerInterface):
    """
    Matches entity surface forms case-insensitively, preferring the longest match.

    Surface forms come from each entity's ``vocabulary`` and from the optional
    ``vocabulary`` parameter mapping class names to extra forms.
    """

    end_to_end = True

    def __init__(self, vocabulary: Optional[Dict[str, List[str]]] = None):
        """
        Initialize the linker.

        Parameters:
            vocabulary: Extra surface forms per entity class name
        """
        if vocabulary is not None and not isinstance(vocabulary, dict):
            raise ValueError("vocabulary must map class names to lists of surface forms")
        self.vocabulary = {name: list(forms) for name, forms in (vocabulary or {}).items()}

    def params(self) -> dict:
        return {"vocabulary": self.vocabulary} if self.vocabulary else {}

    def build_patterns(self, entities: Sequence[Entity]) -> List[Tuple[str, str]]:
        """
        Collect (surface form, class name) pairs, longest first.

        Forms are compared case-insensitively; a form claimed by two classes
        stays with the first class in entity order.
        """
        owners: Dict[str, Tuple[str, str]] = {}
        for entity in entities:
            forms = list(entity.vocabulary or []) + self.vocabulary.get(entity.name, [])
            for form in forms:
                key = form.casefold()
                if not key.strip():
                    continue
                if key in owners and owners[key][1] != entity.name:
                    logger.warning(
                        f"Surface form '{form}' claimed by '{owners[key][1]}' and '{entity.name}'; "
                        f"keeping '{owners[key][1]}'"
                    )
                    continue
                owners.setdefault(key, (form, entity.name))
        patterns = sorted(owners.values(), key=lambda item: (-len(item[0]), item[0].casefold()))
        logger.debug(f"Built {len(patterns)} dictionary patterns")
        return patterns

    @staticmethod
    def compile_patterns(patterns: Sequence[Tuple[str, str]]) -> Optional[re.Pattern]:
        """
        One case-insensitive alternation, one group per form, in pattern order.

        A form edge that is alphanumeric must not touch another alphanumeric
        character in the text.
        """
        if not patterns:
            return None
        alternatives = []
        for form, _ in patterns:
            head = BEFORE_WORD if _is_word_char(form[0]) else ""
            tail = AFTER_WORD if _is_word_char(form[-1]) else ""
            alternatives.append(f"({head}{re.escape(form)}{tail})")
        return re.compile("|".join(alternatives), re.IGNORECASE)

    def match(self, text: str, patterns: Sequence[Tuple[str, str]], matcher: re.Pattern = None) -> List[Span]:
        """Scan ``text`` left to right, emitting the longest match at each position."""
        matcher = matcher or self.compile_patterns(patterns)
        if matcher is None:
            return []
        return [
            Span(m.start(), m.end(), label=patterns[m.lastindex - 1][1], score=1.0)
            for m in matcher.finditer(text)
        ]

    def predict(
        self, docs: Sequence, entities: Sequence[Entity], batch_size: int = None
    ) -> List[List[Span]]:
        entities = require_entities(entities)
        patterns = self.build_patterns(entities)
        matcher = self.compile_patterns(patterns)
        results = []
        for batch in iter_batches(docs, batch_size):
            for doc in batch:
                results.append(self.match(doc.text, patterns, matcher))
        return results

"""Document entity: immutable text plus accumulating annotation layers."""

import json
import logging
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from src.app.classes import RelationTriple
from src.app.span import Span
from src.lib import ParseError

logger = logging.getLogger(__name__)

LAYERS = ("mentions", "entities", "relations")


class Document:
    """A text and the annotations the pipeline stages add to it."""

    def __init__(
        self,
        text: str,
        mentions: Optional[List[Span]] = None,
        entities: Optional[List[Span]] = None,
        relations: Optional[List[RelationTriple]] = None,
        timing: Optional[Dict[str, float]] = None,
        layers: Optional[Iterable[str]] = None,
    ):
        """
        Initialize Document.

        Parameters:
            text: Document text; never changes after construction
            mentions: Unlabeled mention spans
            entities: Labeled entity spans
            relations: Relation triples between entity spans
            timing: Mapping from stage name to elapsed seconds
            layers: Names of the stages that annotated this document

        Raises:
            ValueError: If text is not a string or a span does not fit the text
        """
        if not isinstance(text, str):
            raise ValueError("text must be a string")
        self._text = text
        self.mentions: List[Span] = []
        self.entities: List[Span] = []
        self.relations: List[RelationTriple] = []
        self.timing: Dict[str, float] = dict(timing or {})
        self.layers = set(layers or ())
        if mentions:
            self.set_mentions(mentions)
        if entities:
            self.set_entities(entities)
        if relations:
            self.set_relations(relations)

    @property
    def text(self) -> str:
        return self._text

    def _check_span(self, span: Span) -> None:
        if not span.fits(self._text):
            raise ValueError(
                f"span ({span.start}, {span.end}) exceeds text length {len(self._text)}"
            )

    def set_mentions(self, spans: Iterable[Span]) -> None:
        spans = list(spans)
        for span in spans:
            self._check_span(span)
        self.mentions = spans
        self.layers.add("mentions")

    def set_entities(self, spans: Iterable[Span]) -> None:
        spans = list(spans)
        for span in spans:
            self._check_span(span)
        self.entities = spans
        self.layers.add("entities")

    def set_relations(self, triples: Iterable[RelationTriple]) -> None:
        triples = list(triples)
        for triple in triples:
            self._check_span(triple.subject)
            self._check_span(triple.object)
        self.relations = triples
        self.layers.add("relations")

    def span_text(self, span: Span) -> str:
        return span.text_in(self._text)

    def finalize(self) -> "Document":
        """Deduplicate every layer on its key, keeping the first occurrence, in text order."""
        self.mentions = _dedupe(self.mentions, lambda s: s.key)
        self.entities = _dedupe(self.entities, lambda s: s.key)
        self.relations = _dedupe(self.relations, lambda t: t.key)
        self.mentions.sort(key=lambda s: (s.start, s.end))
        self.entities.sort(key=lambda s: (s.start, s.end))
        return self

    def to_dict(self, include_timing: bool = True) -> dict:
        data = {
            "text": self._text,
            "mentions": [s.to_dict() for s in self.mentions],
            "entities": [s.to_dict() for s in self.entities],
            "relations": [t.to_dict() for t in self.relations],
        }
        if include_timing:
            data["timing"] = dict(self.timing)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Document":
        if "text" not in data:
            raise ValueError("document is missing 'text'")
        layers = [name for name in LAYERS if name in data]
        return cls(
            text=data["text"],
            mentions=[Span.from_dict(s) for s in data.get("mentions", [])],
            entities=[Span.from_dict(s) for s in data.get("entities", [])],
            relations=[RelationTriple.from_dict(t) for t in data.get("relations", [])],
            timing=data.get("timing"),
            layers=layers,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return self.to_dict(include_timing=False) == other.to_dict(include_timing=False)

    def __repr__(self) -> str:
        return (
            f"Document(text={self._text[:30]!r}, mentions={len(self.mentions)}, "
            f"entities={len(self.entities)}, relations={len(self.relations)})"
        )


def _dedupe(items, key) -> list:
    seen = set()
    unique = []
    for item in items:
        k = key(item)
        if k not in seen:
            seen.add(k)
            unique.append(item)
    return unique


def doc_from_text(text: str) -> Document:
    """Create a Document with the given text and empty annotation layers."""
    return Document(text)


def write_documents(path, documents: Iterable[Document], include_timing: bool = True) -> int:
    """
    Write documents as JSONL, one per line.

    Returns:
        int: Number of documents written
    """
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for doc in documents:
            f.write(json.dumps(doc.to_dict(include_timing=include_timing), ensure_ascii=False))
            f.write("\n")
            count += 1
    logger.debug(f"Wrote {count} documents to {path}")
    return count


def read_lines(path) -> Iterator[Tuple[int, str]]:
    """
    Yield (1-based line number, line without its terminator) from a UTF-8 file.

    Raises:
        ParseError: If a line is not valid UTF-8
        OSError: If the file cannot be read
    """
    with open(Path(path), "rb") as f:
        for line_number, raw in enumerate(f, 1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise ParseError(f"invalid UTF-8: {e.reason}", path=path, line_number=line_number) from e
            yield line_number, line.rstrip("\r\n")


def read_documents(path) -> List[Document]:
    """
    Read annotated documents from a JSONL file.

    Raises:
        ParseError: If a line is not valid JSON or not a valid document
        OSError: If the file cannot be read
    """
    documents = []
    for line_number, line in read_lines(path):
        line = line.strip()
        if not line:
            continue
        try:
            documents.append(Document.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise ParseError(str(e), path=path, line_number=line_number) from e
    return documents

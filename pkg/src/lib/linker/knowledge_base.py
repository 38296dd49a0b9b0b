"""Knowledge-base linking: alias candidate generation plus context disambiguation."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from src.app.classes import Entity
from src.app.span import Span
from src.lib import EmptyKnowledgeBase, ParseError
from src.lib.component import ComponentKind, iter_batches
from src.lib.embedding.interface import EncoderInterface
from src.lib.embedding.trigram import TrigramHashEncoder, clip_score, cosine
from src.lib.linker.interface import LinkerInterface, require_entities, resolve_linker_overlaps
from src.lib.registry import register_component

logger = logging.getLogger(__name__)

CONTEXT_WINDOW = 40


@dataclass(frozen=True)
class KnowledgeBaseEntry:
    """One entry of a local knowledge base."""

    id: str
    title: str
    aliases: Tuple[str, ...] = field(default_factory=tuple)
    description: str = ""

    def __post_init__(self):
        if not self.id:
            raise ValueError("knowledge base entry id must be non-empty")
        object.__setattr__(self, "aliases", tuple(self.aliases or ()))

    @property
    def surface_forms(self) -> Tuple[str, ...]:
        """Title plus aliases."""
        return (self.title,) + self.aliases

    @classmethod
    def from_dict(cls, data: dict) -> "KnowledgeBaseEntry":
        return cls(
            id=str(data["id"]),
            title=data.get("title", ""),
            aliases=tuple(data.get("aliases", [])),
            description=data.get("description", ""),
        )


def normalize_alias(text: str) -> str:
    """Case- and whitespace-insensitive form used for alias matching."""
    return " ".join(text.split()).casefold()


def load_knowledge_base(path) -> List[KnowledgeBaseEntry]:
    """
    Load a knowledge base from JSONL (``{"id","title","aliases","description"}`` per line).

    Raises:
        ParseError: If a line is malformed or an id repeats
        OSError: If the file cannot be read
    """
    entries = []
    seen = set()
    with open(Path(path), "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            try:
                entry = KnowledgeBaseEntry.from_dict(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                raise ParseError(str(e), path=path, line_number=line_number) from e
            if entry.id in seen:
                raise ParseError(f"duplicate knowledge base id '{entry.id}'", path=path, line_number=line_number)
            seen.add(entry.id)
            entries.append(entry)
    logger.info(f"Loaded {len(entries)} knowledge base entries from {path}")
    return entries


def kb_link(
    mention_span: Span,
    doc,
    kb: Sequence[KnowledgeBaseEntry],
    encoder: EncoderInterface = None,
    window: int = CONTEXT_WINDOW,
) -> Optional[Tuple[str, float]]:
    """
    Link a mention to a knowledge-base entry.

    Candidates are entries with an alias equal to the mention text; the winner
    is the candidate whose description best matches the text around the mention.

    Parameters:
        mention_span: Mention to link
        doc: Document containing the mention
        kb: Knowledge base entries
        encoder: Text encoder, defaults to the trigram hashing encoder
        window: Characters of context taken on each side of the mention

    Returns:
        tuple: (entry id, score), or None when no entry has a matching alias

    Raises:
        EmptyKnowledgeBase: If kb is empty
    """
    if not kb:
        raise EmptyKnowledgeBase("Knowledge base has no entries")
    encoder = encoder or TrigramHashEncoder()
    mention = normalize_alias(doc.span_text(mention_span))
    candidates = [e for e in kb if any(normalize_alias(a) == mention for a in e.surface_forms)]
    if not candidates:
        return None
    start = max(0, mention_span.start - window)
    context = doc.text[start:mention_span.end + window]
    context_vector = encoder.encode(context)
    best_entry = None
    best_score = -1.0
    for entry in candidates:
        score = cosine(context_vector, encoder.encode(entry.description))
        if score > best_score:
            best_entry, best_score = entry, score
    return best_entry.id, clip_score(best_score)


@register_component("kb-linker", ComponentKind.LINKER, is_end_to_end=False)
class KnowledgeBaseLinker(LinkerInterface):
    """
    Links mentions to a local knowledge base and classifies them by entry description.

    Needs mentions: each mention is linked with :func:`kb_link`; on a hit the
    span gets the entry id and the entity class closest to the entry description.
    """

    end_to_end = False

    def __init__(
        self,
        knowledge_base=None,
        entries: Sequence[dict] = None,
        window: int = CONTEXT_WINDOW,
        encoder: EncoderInterface = None,
    ):
        """
        Initialize the linker.

        Parameters:
            knowledge_base: Path to a knowledge base JSONL file
            entries: Inline entries (dicts or KnowledgeBaseEntry), used with or instead of the file
            window: Context characters on each side of a mention
            encoder: Text encoder, defaults to the trigram hashing encoder

        Raises:
            EmptyKnowledgeBase: If no entries are provided
        """
        self.knowledge_base = str(knowledge_base) if knowledge_base is not None else None
        loaded = load_knowledge_base(knowledge_base) if knowledge_base is not None else []
        for item in entries or []:
            loaded.append(item if isinstance(item, KnowledgeBaseEntry) else KnowledgeBaseEntry.from_dict(item))
        if not loaded:
            raise EmptyKnowledgeBase("kb-linker needs a knowledge_base file or inline entries")
        if window < 0:
            raise ValueError("window must be non-negative")
        self.entries = tuple(loaded)
        self.window = window
        self.encoder = encoder or TrigramHashEncoder()

    def params(self) -> dict:
        params = {"window": self.window}
        if self.knowledge_base is not None:
            params["knowledge_base"] = self.knowledge_base
        else:
            params["entries"] = [
                {"id": e.id, "title": e.title, "aliases": list(e.aliases), "description": e.description}
                for e in self.entries
            ]
        return params

    def classify_entry(self, entry: KnowledgeBaseEntry, entities: Sequence[Entity]) -> str:
        """Entity class whose side information best matches the entry description."""
        entry_vector = self.encoder.encode(f"{entry.title} {entry.description}")
        scores = [cosine(entry_vector, self.encoder.encode(e.side_information)) for e in entities]
        return entities[scores.index(max(scores))].name

    def predict(
        self, docs: Sequence, entities: Sequence[Entity], batch_size: int = None
    ) -> List[List[Span]]:
        entities = require_entities(entities)
        by_id = {e.id: e for e in self.entries}
        results = []
        for batch in iter_batches(docs, batch_size):
            for doc in batch:
                spans = []
                for mention in doc.mentions:
                    linked = kb_link(mention, doc, self.entries, self.encoder, self.window)
                    if linked is None:
                        continue
                    entry_id, score = linked
                    label = self.classify_entry(by_id[entry_id], entities)
                    spans.append(Span(mention.start, mention.end, label=label, score=score, kb_id=entry_id))
                results.append(resolve_linker_overlaps(spans))
        return results


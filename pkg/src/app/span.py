"""Span entity: a half-open character interval in a document."""

from dataclasses import dataclass, replace
from typing import Optional, Tuple


@dataclass(frozen=True)
class Span:
    """
    A half-open character interval ``[start, end)``, optionally labeled and scored.

    Bounds against the owning text are checked by Document, which knows the text.
    """

    start: int
    end: int
    label: Optional[str] = None
    score: Optional[float] = None
    kb_id: Optional[str] = None

    def __post_init__(self):
        if isinstance(self.start, bool) or not isinstance(self.start, int):
            raise ValueError("start must be an integer")
        if isinstance(self.end, bool) or not isinstance(self.end, int):
            raise ValueError("end must be an integer")
        if self.start < 0:
            raise ValueError("start must be non-negative")
        if self.end <= self.start:
            raise ValueError(f"end ({self.end}) must be greater than start ({self.start})")
        if self.label is not None and not self.label:
            raise ValueError("label must be non-empty when set")
        if self.score is not None and not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be between 0.0 and 1.0, got {self.score}")

    @property
    def key(self) -> Tuple[int, int, Optional[str]]:
        """Identity used for deduplication, voting and metric matching."""
        return (self.start, self.end, self.label)

    @property
    def boundaries(self) -> Tuple[int, int]:
        return (self.start, self.end)

    def __len__(self) -> int:
        return self.end - self.start

    def text_in(self, text: str) -> str:
        """Return the substring of ``text`` covered by this span."""
        return text[self.start:self.end]

    def fits(self, text: str) -> bool:
        return self.end <= len(text)

    def with_label(self, label: Optional[str], score: Optional[float] = None) -> "Span":
        return replace(self, label=label, score=score)

    def unlabeled(self) -> "Span":
        return Span(self.start, self.end)

    def to_dict(self) -> dict:
        data = {"start": self.start, "end": self.end}
        if self.label is not None:
            data["label"] = self.label
        if self.score is not None:
            data["score"] = self.score
        if self.kb_id is not None:
            data["kb_id"] = self.kb_id
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Span":
        return cls(
            start=data["start"],
            end=data["end"],
            label=data.get("label"),
            score=data.get("score"),
            kb_id=data.get("kb_id"),
        )


def span_overlaps(a: Span, b: Span) -> bool:
    """True iff the half-open intervals of ``a`` and ``b`` intersect."""
    return a.start < b.end and b.start < a.end


def has_overlaps(spans) -> bool:
    """True iff any two spans of ``spans`` overlap."""
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    for previous, current in zip(ordered, ordered[1:]):
        if span_overlaps(previous, current):
            return True
    return False


def resolve_overlaps(spans, priority) -> list:
    """
    Greedily keep the best spans so that no two kept spans overlap.

    Parameters:
        spans: Candidate spans
        priority: Key function; smaller keys win

    Returns:
        list: Kept spans, sorted by start offset
    """
    kept = []
    for candidate in sorted(spans, key=priority):
        if not any(span_overlaps(candidate, other) for other in kept):
            kept.append(candidate)
    return sorted(kept, key=lambda s: (s.start, s.end))

"""Output class descriptors (the zero-shot side information) and relation triples."""

from dataclasses import dataclass, field
from typing import List, Optional

from src.app.span import Span


@dataclass(frozen=True)
class Entity:
    """An entity class described only by its name and a free-text description."""

    name: str
    description: str = ""
    vocabulary: Optional[List[str]] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.strip():
            raise ValueError("entity name must be non-empty")
        if not isinstance(self.description, str):
            raise ValueError("entity description must be text")
        if self.vocabulary is not None:
            # Frozen dataclass: store an immutable copy
            object.__setattr__(self, "vocabulary", tuple(self.vocabulary))

    @property
    def side_information(self) -> str:
        """Text embedded to represent the class."""
        return f"{self.name} {self.description}"

    def to_dict(self) -> dict:
        data = {"name": self.name, "description": self.description}
        if self.vocabulary is not None:
            data["vocabulary"] = list(self.vocabulary)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Entity":
        return cls(
            name=data["name"],
            description=data.get("description", ""),
            vocabulary=data.get("vocabulary"),
        )


@dataclass(frozen=True)
class Relation:
    """A relation class described by its name and a free-text description."""

    name: str
    description: str = ""

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.strip():
            raise ValueError("relation name must be non-empty")
        if not isinstance(self.description, str):
            raise ValueError("relation description must be text")

    @property
    def side_information(self) -> str:
        return f"{self.name} {self.description}"

    def to_dict(self) -> dict:
        return {"name": self.name, "description": self.description}

    @classmethod
    def from_dict(cls, data: dict) -> "Relation":
        return cls(name=data["name"], description=data.get("description", ""))


@dataclass(frozen=True)
class RelationTriple:
    """A labeled, scored relation from a subject span to an object span."""

    subject: Span
    object: Span
    label: str
    score: float = 1.0

    def __post_init__(self):
        if self.subject.boundaries == self.object.boundaries:
            raise ValueError("subject and object must have different boundaries")
        if not self.label:
            raise ValueError("relation label must be non-empty")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be between 0.0 and 1.0, got {self.score}")

    @property
    def key(self) -> tuple:
        """Identity for dedup and metrics: (subject key, object key, label)."""
        return (self.subject.boundaries, self.object.boundaries, self.label)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject.to_dict(),
            "object": self.object.to_dict(),
            "label": self.label,
            "score": self.score,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RelationTriple":
        return cls(
            subject=Span.from_dict(data["subject"]),
            object=Span.from_dict(data["object"]),
            label=data["label"],
            score=data.get("score", 1.0),
        )

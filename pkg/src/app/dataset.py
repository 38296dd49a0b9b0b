"""Zero-shot datasets: JSONL examples plus per-split class catalogs."""

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Sequence

from src.app.classes import Entity, Relation, RelationTriple
from src.app.document import Document, read_lines
from src.app.span import Span
from src.lib import DatasetIOError, ParseError, SpanOutOfBounds, UnknownClassLabel

logger = logging.getLogger(__name__)

SPLIT_NAMES = ("train", "validation", "test")


@dataclass
class LabeledExample:
    """A text with its gold entity spans and gold relation triples."""

    text: str
    entities: List[Span] = field(default_factory=list)
    relations: List[RelationTriple] = field(default_factory=list)

    def to_document(self) -> Document:
        """Gold annotations as a Document (the form compute_metrics compares)."""
        return Document(self.text, entities=self.entities, relations=self.relations)


@dataclass
class DatasetSplit:
    """One split: its examples and the classes (names + descriptions) it uses."""

    name: str
    examples: List[LabeledExample] = field(default_factory=list)
    entities: List[Entity] = field(default_factory=list)
    relations: List[Relation] = field(default_factory=list)

    def __post_init__(self):
        if self.name not in SPLIT_NAMES:
            raise ValueError(f"split name must be one of {SPLIT_NAMES}, got '{self.name}'")

    @property
    def texts(self) -> List[str]:
        return [example.text for example in self.examples]

    def __len__(self) -> int:
        return len(self.examples)


def _dedupe_classes(items, cls) -> list:
    unique = {}
    for item in items:
        value = item if isinstance(item, cls) else cls.from_dict(item)
        unique.setdefault(value.name, value)
    return list(unique.values())


def load_catalog(path):
    """
    Load ``classes.{split}.json``.

    Returns:
        tuple: (entities, relations), deduplicated by name (first wins)
    """
    try:
        with open(path, "rb") as f:
            data = json.loads(f.read().decode("utf-8"))
    except UnicodeDecodeError as e:
        raise ParseError(f"invalid UTF-8: {e.reason}", path=path) from e
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", path=path, line_number=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError("class catalog must be a JSON object", path=path)
    try:
        entities = _dedupe_classes(data.get("entities", []), Entity)
        relations = _dedupe_classes(data.get("relations", []), Relation)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"invalid class entry: {e}", path=path) from e
    return entities, relations


def _require_keys(item, *keys) -> None:
    if not isinstance(item, dict):
        raise TypeError(f"expected an object, got {type(item).__name__}")
    missing = [k for k in keys if k not in item]
    if missing:
        raise KeyError(", ".join(missing))


def _parse_span(data: dict, text: str, example_index: int, labeled: bool) -> Span:
    try:
        span = Span(data["start"], data["end"], label=data["label"] if labeled else None)
    except ValueError as e:
        raise SpanOutOfBounds(str(e), example_index=example_index) from e
    if not span.fits(text):
        raise SpanOutOfBounds(
            f"span ({span.start}, {span.end}) exceeds text length {len(text)}",
            example_index=example_index,
        )
    return span


def load_examples(path) -> List[LabeledExample]:
    """
    Load ``{split}.jsonl``; one example per line.

    Raises:
        ParseError: With the 1-based line number of a malformed line
        SpanOutOfBounds: With the 0-based example index of an invalid span
    """
    examples = []
    for line_number, line in read_lines(path):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            text = data["text"]
            if not isinstance(text, str):
                raise TypeError("'text' must be a string")
            entity_items = data.get("entities", [])
            relation_items = data.get("relations", [])
            for item in entity_items:
                _require_keys(item, "start", "end", "label")
            for item in relation_items:
                _require_keys(item, "subject", "object", "label")
                _require_keys(item["subject"], "start", "end")
                _require_keys(item["object"], "start", "end")
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ParseError(f"malformed example: {e}", path=path, line_number=line_number) from e
        index = len(examples)
        entities = [_parse_span(item, text, index, labeled=True) for item in entity_items]
        relations = []
        for item in relation_items:
            subject = _parse_span(item["subject"], text, index, labeled=False)
            obj = _parse_span(item["object"], text, index, labeled=False)
            try:
                relations.append(RelationTriple(subject, obj, item["label"]))
            except ValueError as e:
                raise ParseError(str(e), path=path, line_number=line_number) from e
        examples.append(LabeledExample(text, entities, relations))
    return examples


def _check_labels(split: DatasetSplit) -> None:
    entity_names = {e.name for e in split.entities}
    relation_names = {r.name for r in split.relations}
    for index, example in enumerate(split.examples):
        for span in example.entities:
            if span.label not in entity_names:
                raise UnknownClassLabel(
                    f"{split.name} example {index}: entity label '{span.label}' not in class catalog"
                )
        for triple in example.relations:
            if triple.label not in relation_names:
                raise UnknownClassLabel(
                    f"{split.name} example {index}: relation label '{triple.label}' not in class catalog"
                )


def load_split(directory, name: str) -> DatasetSplit:
    directory = Path(directory)
    examples_path = directory / f"{name}.jsonl"
    catalog_path = directory / f"classes.{name}.json"
    if not catalog_path.exists():
        raise DatasetIOError(f"Missing class catalog {catalog_path}")
    try:
        examples = load_examples(examples_path)
        entities, relations = load_catalog(catalog_path)
    except OSError as e:
        raise DatasetIOError(f"Cannot read split '{name}': {e}") from e
    split = DatasetSplit(name, examples, entities, relations)
    _check_labels(split)
    logger.info(
        f"Loaded split '{name}': {len(examples)} examples, "
        f"{len(entities)} entity classes, {len(relations)} relation classes"
    )
    return split


def load_dataset(path) -> Dict[str, DatasetSplit]:
    """
    Load every split present in a dataset directory.

    A split is present when ``{split}.jsonl`` exists; it then needs ``classes.{split}.json``.

    Raises:
        DatasetIOError: If the directory or a class catalog is missing
        ParseError: If a file is malformed
        SpanOutOfBounds: If a gold span does not fit its text
    """
    directory = Path(path)
    if not directory.is_dir():
        raise DatasetIOError(f"Dataset directory not found: {directory}")
    splits = {}
    for name in SPLIT_NAMES:
        if (directory / f"{name}.jsonl").exists():
            splits[name] = load_split(directory, name)
    if not splits:
        raise DatasetIOError(f"No split files found in {directory}")
    return splits


@dataclass(frozen=True)
class SplitViolation:
    """A class name shared by two splits."""

    class_name: str
    kind: str
    first_split: str
    second_split: str

    def __str__(self) -> str:
        return f"{self.kind} '{self.class_name}' shared by {self.first_split}/{self.second_split}"


@dataclass
class SplitValidationReport:
    ok: bool
    violations: List[SplitViolation] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"class": v.class_name, "kind": v.kind, "splits": [v.first_split, v.second_split]}
                for v in self.violations
            ],
        }


def validate_zero_shot_splits(splits: Dict[str, DatasetSplit]) -> SplitValidationReport:
    """
    Check that no entity or relation class is shared between two splits.

    Entities and relations are checked independently.
    """
    violations = []
    present = [name for name in SPLIT_NAMES if name in splits]
    for first, second in combinations(present, 2):
        for kind, attribute in (("entity", "entities"), ("relation", "relations")):
            a = {c.name for c in getattr(splits[first], attribute)}
            b = {c.name for c in getattr(splits[second], attribute)}
            for name in sorted(a & b):
                violations.append(SplitViolation(name, kind, first, second))
    for violation in violations:
        logger.warning(f"Zero-shot split violation: {violation}")
    return SplitValidationReport(ok=not violations, violations=violations)

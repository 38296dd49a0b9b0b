"""PipelineConfig: output classes plus the component filling each stage."""

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional

from src.app.classes import Entity, Relation
from src.lib import (
    ConfigError,
    DuplicateClassName,
    EmptyConfig,
    MissingMentionsExtractor,
)
from src.lib.component import Component, ComponentKind
from src.lib.registry import create_component

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 32
DEFAULT_DEVICE = "cpu"


def _resolve(kind: ComponentKind, value) -> Optional[Component]:
    if value is None or isinstance(value, Component):
        return value
    return create_component(kind, value)


@dataclass
class PipelineConfig:
    """
    Declarative pipeline configuration.

    Stage fields accept component instances or registry entries
    (``{"type": key, "params": {...}}``), which are instantiated on construction.
    """

    entities: List[Entity] = field(default_factory=list)
    relations: List[Relation] = field(default_factory=list)
    mentions_extractor: Optional[Component] = None
    linker: Optional[Component] = None
    relations_extractor: Optional[Component] = None
    batch_size: int = DEFAULT_BATCH_SIZE
    device: str = DEFAULT_DEVICE
    workers: int = 1

    def __post_init__(self):
        self.entities = [e if isinstance(e, Entity) else Entity.from_dict(e) for e in self.entities]
        self.relations = [r if isinstance(r, Relation) else Relation.from_dict(r) for r in self.relations]
        self.mentions_extractor = _resolve(ComponentKind.MENTIONS_EXTRACTOR, self.mentions_extractor)
        self.linker = _resolve(ComponentKind.LINKER, self.linker)
        self.relations_extractor = _resolve(ComponentKind.RELATIONS_EXTRACTOR, self.relations_extractor)
        for name, expected in (
            ("mentions_extractor", ComponentKind.MENTIONS_EXTRACTOR),
            ("linker", ComponentKind.LINKER),
            ("relations_extractor", ComponentKind.RELATIONS_EXTRACTOR),
        ):
            component = getattr(self, name)
            if component is not None and component.kind != expected:
                raise ConfigError(f"{name} must be a {expected.value} component, got {component.kind}")

    @property
    def components(self) -> List[Component]:
        return [c for c in (self.mentions_extractor, self.linker, self.relations_extractor) if c is not None]

    def with_classes(self, entities=None, relations=None) -> "PipelineConfig":
        """Copy of this config with the class lists replaced (None keeps the current list)."""
        return replace(
            self,
            entities=list(self.entities if entities is None else entities),
            relations=list(self.relations if relations is None else relations),
        )

    def to_dict(self) -> dict:
        data = {
            "entities": [e.to_dict() for e in self.entities],
            "relations": [r.to_dict() for r in self.relations],
            "batch_size": self.batch_size,
            "device": self.device,
            "workers": self.workers,
        }
        for name in ("mentions_extractor", "linker", "relations_extractor"):
            component = getattr(self, name)
            if component is not None:
                data[name] = component.to_config()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        """
        Build a config from its JSON form.

        Raises:
            ConfigError: If the document is malformed or names an unknown component
        """
        if not isinstance(data, dict):
            raise ConfigError("Pipeline configuration must be a JSON object")
        known = {
            "entities", "relations", "mentions_extractor", "linker",
            "relations_extractor", "batch_size", "device", "workers",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(sorted(unknown))}")
        try:
            return cls(
                entities=list(data.get("entities", [])),
                relations=list(data.get("relations", [])),
                mentions_extractor=data.get("mentions_extractor"),
                linker=data.get("linker"),
                relations_extractor=data.get("relations_extractor"),
                batch_size=data.get("batch_size", DEFAULT_BATCH_SIZE),
                device=data.get("device", DEFAULT_DEVICE),
                workers=data.get("workers", 1),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"Invalid pipeline configuration: {e}") from e


def _check_unique(names, kind: str) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise DuplicateClassName(f"Duplicate {kind} name '{name}'")
        seen.add(name)


def _is_positive_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value > 0


def validate_config(config: PipelineConfig) -> PipelineConfig:
    """
    Check the configuration invariants.

    Returns:
        PipelineConfig: The same config, unchanged

    Raises:
        DuplicateClassName: If two entities or two relations share a name
        EmptyConfig: If no stage is configured
        MissingMentionsExtractor: If a linker needs mentions and none are produced
        ConfigError: If batch_size or workers is not a positive integer
    """
    _check_unique((e.name for e in config.entities), "entity")
    _check_unique((r.name for r in config.relations), "relation")
    if not config.components:
        raise EmptyConfig("No pipeline stage configured")
    if config.linker is not None and not config.linker.is_end_to_end and config.mentions_extractor is None:
        raise MissingMentionsExtractor(
            f"Linker '{config.linker.registry_key}' needs mentions but no mentions_extractor is configured"
        )
    if not _is_positive_int(config.batch_size):
        raise ConfigError(f"batch_size must be a positive integer, got {config.batch_size!r}")
    if not _is_positive_int(config.workers):
        raise ConfigError(f"workers must be a positive integer, got {config.workers!r}")
    return config


def load_config(path) -> PipelineConfig:
    """
    Load and validate a pipeline configuration file.

    Raises:
        ConfigError: If the file is not valid JSON or violates a config rule
        OSError: If the file cannot be read
    """
    with open(Path(path), "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON: {e}") from e
    config = validate_config(PipelineConfig.from_dict(data))
    logger.info(
        f"Loaded config {path}: {len(config.entities)} entities, {len(config.relations)} relations, "
        f"stages={[c.registry_key for c in config.components]}"
    )
    return config

"""Shared base for pipeline components."""

import logging
from abc import ABC
from enum import Enum
from typing import Iterator, List, Sequence

from src.lib import ConfigError

logger = logging.getLogger(__name__)


class ComponentKind(str, Enum):
    """The pipeline stage a component fills."""

    MENTIONS_EXTRACTOR = "mentions_extractor"
    LINKER = "linker"
    RELATIONS_EXTRACTOR = "relations_extractor"


class Component(ABC):
    """
    Base class for all pipeline components.

    Components are immutable after construction. A component that keeps mutable
    state across ``predict`` calls must set ``exclusive = True`` so pipelines
    serialize calls to it.
    """

    kind: ComponentKind = None
    registry_key: str = None
    exclusive: bool = False

    @classmethod
    def from_config(cls, entry: dict) -> "Component":
        """
        Build a component from its configuration entry ``{"type", "params"}``.

        Raises:
            ConfigError: If the parameters are not accepted by the constructor
        """
        params = dict(entry.get("params") or {})
        try:
            return cls(**params)
        except TypeError as e:
            raise ConfigError(f"Invalid parameters for component '{entry.get('type')}': {e}") from e

    def to_config(self) -> dict:
        """Configuration entry reproducing this component."""
        return {"type": self.registry_key, "params": self.params()}

    def params(self) -> dict:
        return {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.params()})"


def iter_batches(items: Sequence, batch_size: int = None) -> Iterator[List]:
    """Yield consecutive slices of ``items`` of at most ``batch_size`` elements."""
    items = list(items)
    if batch_size is None or batch_size <= 0:
        batch_size = max(1, len(items))
    for i in range(0, len(items), batch_size):
        yield items[i:i + batch_size]

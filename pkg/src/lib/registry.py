"""
Component registry.

Maps text keys to component classes per stage so configuration files can
name components.
"""

import importlib
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Type

from src.lib import ConfigError, UnknownComponent
from src.lib.component import Component, ComponentKind

logger = logging.getLogger(__name__)

# Modules whose import registers the built-in components
BUILTIN_MODULES = (
    "src.lib.mentions.pattern",
    "src.lib.linker.similarity",
    "src.lib.linker.dictionary",
    "src.lib.linker.knowledge_base",
    "src.lib.relations.cosine",
    "src.app.ensemble",
)


@dataclass(frozen=True)
class ComponentDescriptor:
    """Registry entry describing a component class."""

    key: str
    kind: ComponentKind
    # None when it depends on the configured instance
    is_end_to_end: Optional[bool]
    component_class: Type[Component]


class ComponentRegistry:
    """Registry of component classes keyed by (kind, key)."""

    def __init__(self):
        self._entries: Dict[Tuple[ComponentKind, str], ComponentDescriptor] = {}
        self._builtins_loaded = False

    def register(self, key: str, kind: ComponentKind, is_end_to_end: Optional[bool] = False):
        """
        Decorator registering a component class under ``key``.

        Usage:
            @register_component("pattern-mentions", ComponentKind.MENTIONS_EXTRACTOR)
            class PatternMentionsExtractor(MentionsExtractorInterface):
                ...
        """
        def decorator(cls):
            entry_key = (kind, key)
            existing = self._entries.get(entry_key)
            if existing is not None and existing.component_class is not cls:
                raise ConfigError(f"Component key '{key}' already registered for {kind.value}")
            cls.registry_key = key
            self._entries[entry_key] = ComponentDescriptor(key, kind, is_end_to_end, cls)
            return cls
        return decorator

    def load_builtins(self) -> None:
        if self._builtins_loaded:
            return
        for module_name in BUILTIN_MODULES:
            importlib.import_module(module_name)
        self._builtins_loaded = True

    def get(self, kind: ComponentKind, key: str) -> ComponentDescriptor:
        """
        Look up a registered component.

        Raises:
            UnknownComponent: If ``key`` is not registered for ``kind``
        """
        self.load_builtins()
        try:
            return self._entries[(ComponentKind(kind), key)]
        except KeyError:
            known = ", ".join(sorted(k for (kd, k) in self._entries if kd == ComponentKind(kind)))
            raise UnknownComponent(
                f"Unknown {ComponentKind(kind).value} component '{key}' (known: {known})"
            ) from None

    def create(self, kind: ComponentKind, entry) -> Component:
        """
        Instantiate a component from a configuration entry.

        Parameters:
            kind: Stage the component must fill
            entry: ``{"type": key, "params": {...}}`` or a bare key string

        Raises:
            UnknownComponent: If the key is not registered
            ConfigError: If the entry is malformed
        """
        if isinstance(entry, str):
            entry = {"type": entry}
        if not isinstance(entry, dict) or "type" not in entry:
            raise ConfigError(f"Component entry for {ComponentKind(kind).value} must have a 'type'")
        descriptor = self.get(kind, entry["type"])
        component = descriptor.component_class.from_config(entry)
        logger.debug(f"Created {descriptor.kind.value} '{descriptor.key}': {component!r}")
        return component

    def list_all(self) -> List[ComponentDescriptor]:
        """Return all registered components sorted by kind then key."""
        self.load_builtins()
        order = list(ComponentKind)
        return sorted(self._entries.values(), key=lambda d: (order.index(d.kind), d.key))


# Global component registry instance
_registry = ComponentRegistry()


def register_component(key: str, kind: ComponentKind, is_end_to_end: Optional[bool] = False):
    """Decorator to register a component class in the global registry."""
    return _registry.register(key, kind, is_end_to_end)


def create_component(kind: ComponentKind, entry) -> Component:
    return _registry.create(kind, entry)


def get_descriptor(kind: ComponentKind, key: str) -> ComponentDescriptor:
    return _registry.get(kind, key)


def list_components() -> List[ComponentDescriptor]:
    return _registry.list_all()


def get_registry() -> ComponentRegistry:
    """Get the global component registry instance."""
    return _registry

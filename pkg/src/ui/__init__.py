"""HTML renderers for annotated documents."""

from src.lib import ZeroShotError


class RenderError(ZeroShotError):
    """Base exception for rendering errors."""
    pass


class DanglingRelation(RenderError):
    """A relation triple references a span missing from the entity layer."""
    pass

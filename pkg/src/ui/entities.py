"""Inline entity highlighting."""

import html
import logging
from typing import Sequence

from src.app.span import has_overlaps
from src.lib import OverlappingSpans
from src.ui.interface import RendererInterface
from src.ui.palette import assign_colors

logger = logging.getLogger(__name__)

MARK_TEMPLATE = (
    '<mark class="entity" style="background: {color}; padding: 0.45em 0.6em; margin: 0 0.25em; '
    'line-height: 1; border-radius: 0.35em;">{text}<span class="entity-label" style="font-size: 0.8em; '
    'font-weight: bold; line-height: 1; vertical-align: middle; margin-left: 0.5rem;">{label}</span></mark>'
)
CONTAINER_TEMPLATE = '<div class="entities" style="line-height: 2.5; direction: ltr;">{content}</div>'


class EntityRenderer(RendererInterface):
    """Wraps each entity span in a colored ``<mark>`` tagged with its class name."""

    style = "ent"

    def __init__(self, palette: Sequence[str] = None, classes: Sequence[str] = None):
        """
        Initialize the renderer.

        Parameters:
            palette: Colors to use, defaults to the built-in palette
            classes: Class names to color; defaults to the classes of each document
        """
        self.palette = palette
        self.classes = list(classes) if classes is not None else None

    def render(self, doc) -> str:
        """
        Raises:
            OverlappingSpans: If entity spans overlap
        """
        if has_overlaps(doc.entities):
            raise OverlappingSpans("Cannot render overlapping entity spans")
        names = self.classes if self.classes is not None else [s.label for s in doc.entities if s.label]
        colors = assign_colors(names, self.palette)
        parts = []
        cursor = 0
        for span in sorted(doc.entities, key=lambda s: s.start):
            parts.append(html.escape(doc.text[cursor:span.start]))
            tag = span.label if span.kb_id is None else f"{span.label} {span.kb_id}"
            parts.append(MARK_TEMPLATE.format(
                color=colors.get(span.label, "#dddddd"),
                text=html.escape(doc.span_text(span)),
                label=html.escape(tag),
            ))
            cursor = span.end
        parts.append(html.escape(doc.text[cursor:]))
        return self.page("Entities", CONTAINER_TEMPLATE.format(content="".join(parts)))


def render_entities(doc, palette: Sequence[str] = None) -> str:
    """Render the entity layer of ``doc`` as HTML."""
    return EntityRenderer(palette=palette).render(doc)

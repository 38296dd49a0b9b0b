"""Relation rendering: entity boxes joined by labeled SVG arcs."""

import html
import logging
from typing import Sequence

from src.app.span import has_overlaps
from src.lib import OverlappingSpans
from src.ui import DanglingRelation
from src.ui.interface import RendererInterface
from src.ui.palette import assign_colors

logger = logging.getLogger(__name__)

# Layout in pixels; boxes are sized by character count, not font metrics
CHAR_WIDTH = 10
BOX_PADDING = 10
BOX_GAP = 40
BOX_HEIGHT = 50
ARC_UNIT = 40
MARGIN = 20
LABEL_ROOM = 30
ARC_COLOR = "#555555"

SVG_OPEN = (
    '<svg xmlns="http://www.w3.org/2000/svg" class="relations" width="{width}" height="{height}" '
    'style="font-family: monospace; font-size: 14px;">'
)
ARROW_DEFS = (
    '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="4" refY="4" orient="auto">'
    '<path d="M0,0 L8,4 L0,8 Z" style="fill: ' + ARC_COLOR + ';"/></marker></defs>'
)
BOX_TEMPLATE = (
    '<g class="entity"><rect x="{x}" y="{y}" width="{width}" height="{height}" rx="6" '
    'style="fill: {color};"/><text x="{cx}" y="{text_y}" text-anchor="middle">{text}</text>'
    '<text class="entity-label" x="{cx}" y="{label_y}" text-anchor="middle">{label}</text></g>'
)
ARC_TEMPLATE = (
    '<path class="arc" d="M{x1},{y} C{x1},{peak} {x2},{peak} {x2},{y}" '
    'style="fill: none; stroke: ' + ARC_COLOR + '; stroke-width: 2;" marker-end="url(#arrow)"/>'
)
ARC_LABEL_TEMPLATE = '<text class="arc-label" x="{x}" y="{y}" text-anchor="middle">{label}</text>'


class RelationRenderer(RendererInterface):
    """
    Draws entity spans as boxes in text order and each relation as an arc.

    Arc height grows with the number of boxes between subject and object.
    """

    style = "rel"

    def __init__(self, palette: Sequence[str] = None):
        self.palette = palette

    def render(self, doc) -> str:
        """
        Raises:
            OverlappingSpans: If entity spans overlap
            DanglingRelation: If a triple references a span missing from the entity layer
        """
        if has_overlaps(doc.entities):
            raise OverlappingSpans("Cannot render overlapping entity spans")
        spans = sorted(doc.entities, key=lambda s: (s.start, s.end))
        index = {span.boundaries: i for i, span in enumerate(spans)}
        for triple in doc.relations:
            for role, span in (("subject", triple.subject), ("object", triple.object)):
                if span.boundaries not in index:
                    raise DanglingRelation(
                        f"Relation '{triple.label}' {role} ({span.start}, {span.end}) is not an entity span"
                    )

        colors = assign_colors([s.label for s in spans if s.label], self.palette)
        widths = [max(len(doc.span_text(s)), len(s.label or "")) * CHAR_WIDTH + 2 * BOX_PADDING for s in spans]
        xs = []
        x = MARGIN
        for width in widths:
            xs.append(x)
            x += width + BOX_GAP
        centers = [x + w // 2 for x, w in zip(xs, widths)]
        distances = [abs(index[t.subject.boundaries] - index[t.object.boundaries]) for t in doc.relations]
        top = LABEL_ROOM + ARC_UNIT * max(distances, default=0)
        svg_width = xs[-1] + widths[-1] + MARGIN if spans else 2 * MARGIN
        svg_height = top + BOX_HEIGHT + MARGIN

        lines = [SVG_OPEN.format(width=svg_width, height=svg_height), ARROW_DEFS]
        for span, x, width, cx in zip(spans, xs, widths, centers):
            lines.append(BOX_TEMPLATE.format(
                x=x, y=top, width=width, height=BOX_HEIGHT, cx=cx,
                color=colors.get(span.label, "#dddddd"),
                text_y=top + 22, label_y=top + 40,
                text=html.escape(doc.span_text(span)),
                label=html.escape(span.label or ""),
            ))
        for triple, distance in zip(doc.relations, distances):
            x1 = centers[index[triple.subject.boundaries]]
            x2 = centers[index[triple.object.boundaries]]
            height = ARC_UNIT * distance
            lines.append(ARC_TEMPLATE.format(x1=x1, x2=x2, y=top, peak=top - height))
            lines.append(ARC_LABEL_TEMPLATE.format(
                x=(x1 + x2) // 2, y=top - (3 * height) // 4 - 4, label=html.escape(triple.label),
            ))
        lines.append("</svg>")

        body = f'<p class="text">{html.escape(doc.text)}</p>\n' + "\n".join(lines)
        return self.page("Relations", body)


def render_relations(doc, palette: Sequence[str] = None) -> str:
    """Render the entity boxes and relation arcs of ``doc`` as HTML."""
    return RelationRenderer(palette=palette).render(doc)

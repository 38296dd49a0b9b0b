"""Class-to-color assignment for entity renderings."""

import logging
import os
from typing import Dict, Iterable, Optional, Sequence

logger = logging.getLogger(__name__)

DEFAULT_PALETTE = (
    "#7aecec",
    "#bfeeb7",
    "#feca74",
    "#ff9561",
    "#aa9cfc",
    "#c887fb",
    "#9cc9cc",
    "#ffeb80",
    "#ff8197",
    "#f0d0ff",
    "#bfe1d9",
    "#e4e7d2",
)


def palette_from_env() -> Optional[Sequence[str]]:
    """Colors from ``ZSIE_PALETTE`` (comma-separated), or None when unset."""
    value = os.environ.get("ZSIE_PALETTE", "").strip()
    if not value:
        return None
    colors = [c.strip() for c in value.split(",") if c.strip()]
    return colors or None


def assign_colors(class_names: Iterable[str], palette: Sequence[str] = None) -> Dict[str, str]:
    """
    Map class names to colors: names sorted, then palette colors taken in order.

    Colors cycle once the palette is exhausted.
    """
    palette = list(palette or palette_from_env() or DEFAULT_PALETTE)
    if not palette:
        raise ValueError("palette must contain at least one color")
    names = sorted(set(class_names))
    if len(names) > len(palette):
        logger.debug(f"{len(names)} classes for {len(palette)} colors; colors will repeat")
    return {name: palette[i % len(palette)] for i, name in enumerate(names)}

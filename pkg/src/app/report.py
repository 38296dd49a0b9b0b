"""Text and JSON renderings of evaluation results."""

import json
import logging
from typing import Dict, Mapping, Optional

from src.app.metrics import METRIC_KEYS, RATIO_KEYS, MetricsReport

logger = logging.getLogger(__name__)

MISSING = "-"


def format_ratio(value: Optional[float]) -> str:
    """0.2096 -> '20.96%'."""
    return MISSING if value is None else f"{value * 100:.2f}%"


def format_timing(value: Optional[float]) -> str:
    """1811.5927 -> '1811.5927'."""
    return MISSING if value is None else f"{value:.4f}"


def format_value(key: str, value) -> str:
    return format_ratio(value) if key in RATIO_KEYS else format_timing(value)


def format_report(results: Mapping[str, Mapping[str, MetricsReport]]) -> str:
    """
    Render results as a plain-text table.

    One row per metric (fixed order), one column per (pipeline label, split).

    Parameters:
        results: Pipeline label to split name to MetricsReport
    """
    columns = [
        (f"{label} {split}", report)
        for label, by_split in results.items()
        for split, report in by_split.items()
    ]
    header = ["Metric"] + [title for title, _ in columns]
    rows = [
        [key] + [format_value(key, report.get(key)) for _, report in columns]
        for key in METRIC_KEYS
    ]
    widths = [max(len(row[i]) for row in [header] + rows) for i in range(len(header))]

    def render(row) -> str:
        cells = [row[0].ljust(widths[0])] + [cell.rjust(w) for cell, w in zip(row[1:], widths[1:])]
        return "  ".join(cells).rstrip()

    rule = "-" * len(render(header))
    lines = [rule, render(header), rule] + [render(row) for row in rows] + [rule]
    return "\n".join(lines) + "\n"


def results_to_dict(results: Mapping[str, Mapping[str, MetricsReport]]) -> Dict[str, Dict[str, dict]]:
    return {
        label: {split: report.to_dict() for split, report in by_split.items()}
        for label, by_split in results.items()
    }


def write_metrics_json(results: Mapping[str, Mapping[str, MetricsReport]], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(results_to_dict(results), f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info(f"Wrote metrics to {path}")

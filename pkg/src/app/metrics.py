"""Span-level precision/recall/F1 and token-level BIO accuracy."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from seqeval.metrics import accuracy_score

from src.app.span import Span, has_overlaps
from src.app.tokenizer import tokenize
from src.lib import AlignmentError, OverlappingSpans

logger = logging.getLogger(__name__)

OUTSIDE = "O"

# Row order of the report table
RATIO_KEYS = (
    "overall_precision_micro",
    "overall_recall_micro",
    "overall_f1_micro",
    "overall_precision_macro",
    "overall_recall_macro",
    "overall_f1_macro",
    "overall_accuracy",
)
TIMING_KEYS = ("total_time_in_seconds", "samples_per_second", "latency_in_seconds")
METRIC_KEYS = RATIO_KEYS + TIMING_KEYS


def spans_to_bio(text: str, spans: Sequence[Span]) -> List[str]:
    """
    Tag every word of ``text`` as B-<label>, I-<label> or O.

    A span not aligned to word boundaries tags every word it touches. A word
    touched by two spans keeps the tag of the earlier span.

    Raises:
        OverlappingSpans: If two spans overlap
    """
    if has_overlaps(spans):
        raise OverlappingSpans("spans_to_bio needs non-overlapping spans")
    tokens = tokenize(text)
    tags = [OUTSIDE] * len(tokens)
    for span in sorted(spans, key=lambda s: s.start):
        inside = False
        for i, tok in enumerate(tokens):
            if tok.end <= span.start or tok.start >= span.end or tags[i] != OUTSIDE:
                continue
            tags[i] = f"{'I' if inside else 'B'}-{span.label}"
            inside = True
    return tags


def bio_to_spans(text: str, tags: Sequence[str]) -> List[Span]:
    """
    Convert word tags back to character spans (inverse of :func:`spans_to_bio`).

    An I- tag that does not continue a span of the same label starts a new one.
    """
    tokens = tokenize(text)
    if len(tokens) != len(tags):
        raise AlignmentError(f"{len(tags)} tags for {len(tokens)} tokens")
    spans = []
    current = None
    for tok, tag in zip(tokens, tags):
        prefix, _, label = tag.partition("-")
        if tag == OUTSIDE:
            if current:
                spans.append(Span(*current))
            current = None
        elif prefix == "I" and current is not None and current[2] == label:
            current = (current[0], tok.end, label)
        else:
            if current:
                spans.append(Span(*current))
            current = (tok.start, tok.end, label)
    if current:
        spans.append(Span(*current))
    return spans


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def _f1(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1, "support": self.support}


@dataclass
class MetricsReport:
    """Overall and per-class scores for one split, plus timing."""

    overall_precision_micro: float = 0.0
    overall_recall_micro: float = 0.0
    overall_f1_micro: float = 0.0
    overall_precision_macro: float = 0.0
    overall_recall_macro: float = 0.0
    overall_f1_macro: float = 0.0
    # None for relation extraction, where token accuracy does not apply
    overall_accuracy: Optional[float] = 0.0
    per_class: Dict[str, ClassMetrics] = field(default_factory=dict)
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0
    total_time_in_seconds: float = 0.0
    samples_per_second: float = 0.0
    latency_in_seconds: float = 0.0

    def set_timing(self, total_seconds: float, samples: int) -> None:
        """Fill the timing fields from the wall time spent on ``samples`` examples."""
        if total_seconds < 0:
            raise ValueError("total_seconds must be non-negative")
        self.total_time_in_seconds = total_seconds
        self.samples_per_second = samples / total_seconds if total_seconds > 0 else 0.0
        self.latency_in_seconds = total_seconds / samples if samples > 0 else 0.0

    def get(self, key: str):
        return getattr(self, key)

    def to_dict(self) -> dict:
        data = {key: getattr(self, key) for key in METRIC_KEYS}
        data["per_class"] = {name: m.to_dict() for name, m in sorted(self.per_class.items())}
        data["counts"] = {
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "false_negatives": self.false_negatives,
        }
        return data


def _layer(item, task: str):
    if task == "entities":
        return item.entities
    if task == "relations":
        return item.relations
    raise ValueError(f"task must be 'entities' or 'relations', got '{task}'")


def compute_metrics(gold: Sequence, pred: Sequence, task: str = "entities") -> MetricsReport:
    """
    Exact-match span (or triple) metrics between aligned gold and predicted documents.

    A prediction is a true positive iff its (start, end, label) key is in gold;
    for relations the key is (subject key, object key, label). Macro averages
    run over every class present in gold or predictions. Any 0/0 is 0.

    Parameters:
        gold: Gold examples or Documents
        pred: Predicted Documents, aligned by index with gold
        task: "entities" or "relations"

    Raises:
        AlignmentError: If lengths or texts differ
    """
    if len(gold) != len(pred):
        raise AlignmentError(f"{len(gold)} gold examples but {len(pred)} predictions")

    tp, fp, fn = Counter(), Counter(), Counter()
    support = Counter()
    gold_tags: List[List[str]] = []
    pred_tags: List[List[str]] = []
    for index, (g, p) in enumerate(zip(gold, pred)):
        if g.text != p.text:
            raise AlignmentError(f"Example {index}: gold and predicted texts differ")
        gold_keys = {item.key for item in _layer(g, task)}
        pred_keys = {item.key for item in _layer(p, task)}
        for key in gold_keys:
            support[key[2]] += 1
            (tp if key in pred_keys else fn)[key[2]] += 1
        for key in pred_keys - gold_keys:
            fp[key[2]] += 1
        if task == "entities":
            gold_tags.append(spans_to_bio(g.text, g.entities))
            pred_tags.append(spans_to_bio(p.text, p.entities))

    total_tp, total_fp, total_fn = sum(tp.values()), sum(fp.values()), sum(fn.values())
    precision = _ratio(total_tp, total_tp + total_fp)
    recall = _ratio(total_tp, total_tp + total_fn)

    per_class = {}
    for label in sorted(set(tp) | set(fp) | set(fn)):
        p_c = _ratio(tp[label], tp[label] + fp[label])
        r_c = _ratio(tp[label], tp[label] + fn[label])
        per_class[label] = ClassMetrics(p_c, r_c, _f1(p_c, r_c), support[label])

    def macro(attribute: str) -> float:
        if not per_class:
            return 0.0
        return sum(getattr(m, attribute) for m in per_class.values()) / len(per_class)

    accuracy = None
    if task == "entities":
        token_count = sum(len(tags) for tags in gold_tags)
        accuracy = float(accuracy_score(gold_tags, pred_tags)) if token_count else 0.0

    report = MetricsReport(
        overall_precision_micro=precision,
        overall_recall_micro=recall,
        overall_f1_micro=_f1(precision, recall),
        overall_precision_macro=macro("precision"),
        overall_recall_macro=macro("recall"),
        overall_f1_macro=macro("f1"),
        overall_accuracy=accuracy,
        per_class=per_class,
        true_positives=total_tp,
        false_positives=total_fp,
        false_negatives=total_fn,
    )
    logger.debug(f"Computed {task} metrics: tp={total_tp}, fp={total_fp}, fn={total_fn}")
    return report

"""Precision and recall of a generated index against a gold index."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from statistics import fmean
from typing import Callable, Sequence

from .book_index import BookIndex, load_index
from .errors import EmptyAggregateError, IdentityError

# Gold indexes share the BookIndex export format and loader.
GoldIndex = BookIndex
load_gold = load_index


class Mode(str, Enum):
    TERM = "term"
    PAGE = "page"


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


@dataclass(frozen=True)
class EvalReport:
    doc_id: str
    tp: int
    fp: int
    fn: int
    mode: Mode = Mode.TERM

    @property
    def precision(self) -> float | None:
        """None when nothing was predicted (undefined, not zero)."""
        return _ratio(self.tp, self.tp + self.fp)

    @property
    def recall(self) -> float | None:
        return _ratio(self.tp, self.tp + self.fn)


def _items(index: BookIndex, mode: Mode, key: Callable[[str], str]) -> set:
    if mode is Mode.TERM:
        return {key(t) for t, _ in index.entries}
    return {(key(t), p) for t, pages in index.entries for p in pages}


def compare_index(
    auto: BookIndex,
    gold: BookIndex,
    mode: Mode | str = Mode.TERM,
    term_key: Callable[[str], str] | None = None,
) -> EvalReport:
    """Count tp/fp/fn over terms or (term, page) pairs.

    ``term_key`` maps each term before matching, e.g. ``RootingConfig().root``
    to match on roots instead of exact surface forms.
    """
    if auto.doc_id != gold.doc_id:
        raise IdentityError(f"auto index is for {auto.doc_id!r}, gold for {gold.doc_id!r}")
    mode = Mode(mode)
    key = term_key or (lambda t: t)
    a, g = _items(auto, mode, key), _items(gold, mode, key)
    return EvalReport(auto.doc_id, len(a & g), len(a - g), len(g - a), mode)


@dataclass(frozen=True)
class EvalSummary:
    documents: int
    macro_precision: float | None
    macro_recall: float | None
    micro_precision: float | None
    micro_recall: float | None
    tp: int
    fp: int
    fn: int


def _mean_defined(values) -> float | None:
    vals = [v for v in values if v is not None]
    return fmean(vals) if vals else None


def aggregate(reports: Sequence[EvalReport]) -> EvalSummary:
    """Macro averages skip documents where the ratio is undefined."""
    if not reports:
        raise EmptyAggregateError("nothing to aggregate")
    tp = sum(r.tp for r in reports)
    fp = sum(r.fp for r in reports)
    fn = sum(r.fn for r in reports)
    return EvalSummary(
        len(reports),
        _mean_defined(r.precision for r in reports),
        _mean_defined(r.recall for r in reports),
        _ratio(tp, tp + fp),
        _ratio(tp, tp + fn),
        tp, fp, fn,
    )


def fmt(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.4f}"


def report_to_dict(report: EvalReport) -> dict:
    return {
        "doc_id": report.doc_id, "mode": report.mode.value,
        "tp": report.tp, "fp": report.fp, "fn": report.fn,
        "precision": report.precision, "recall": report.recall,
    }


def summary_to_dict(summary: EvalSummary) -> dict:
    return {
        "documents": summary.documents,
        "macro_precision": summary.macro_precision, "macro_recall": summary.macro_recall,
        "micro_precision": summary.micro_precision, "micro_recall": summary.micro_recall,
        "tp": summary.tp, "fp": summary.fp, "fn": summary.fn,
    }


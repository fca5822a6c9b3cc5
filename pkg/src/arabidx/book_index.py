"""Back-of-book index: term frequencies, frequency banding, page mapping,
and rendering the index at the end of the document."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

from .errors import ConfigError, EmptyIndexError, IdentityError, IndexFormatError
from .normalize import NormalizedDocument, RawDocument
from .rooting import RootingConfig

SEPARATOR = "\n----\nفهرس\n"


@dataclass(frozen=True)
class TermStats:
    term: str
    frequency: int
    pages: tuple[int, ...]


@dataclass(frozen=True)
class RankingBand:
    """Drop the top ``high_cut`` fraction of terms and every term with
    frequency <= ``low_min_freq``."""

    high_cut: float = 0.05
    low_min_freq: int = 1

    def __post_init__(self):
        if not 0 <= self.high_cut < 1:
            raise ConfigError(f"high_cut must be in [0, 1), got {self.high_cut}")
        if self.low_min_freq < 0:
            raise ConfigError("low_min_freq must be non-negative")

    def n_top(self, n_terms: int) -> int:
        # Decimal avoids 0.07 * 100 == 7.000000000000001 -> 8
        return math.ceil(Decimal(repr(self.high_cut)) * n_terms)


@dataclass(frozen=True)
class BookIndex:
    doc_id: str
    entries: tuple[tuple[str, tuple[int, ...]], ...]
    grouped_by_root: bool = False
    band: RankingBand | None = None

    @property
    def terms(self) -> list[str]:
        return [t for t, _ in self.entries]


def term_frequencies(doc: NormalizedDocument) -> list[TermStats]:
    counts: Counter = Counter()
    pages: dict[str, set[int]] = {}
    for tok in doc.tokens:
        counts[tok.surface] += 1
        pages.setdefault(tok.surface, set()).add(tok.page)
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [TermStats(t, f, tuple(sorted(pages[t]))) for t, f in ordered]


def apply_band(stats: list[TermStats], band: RankingBand) -> list[TermStats]:
    top = band.n_top(len(stats))
    kept = [s for s in stats[top:] if s.frequency > band.low_min_freq]
    if not kept:
        raise EmptyIndexError(
            f"band (high_cut={band.high_cut}, low_min_freq={band.low_min_freq}) "
            f"leaves no terms out of {len(stats)}"
        )
    return kept


def build_book_index(
    doc: NormalizedDocument,
    band: RankingBand | None = None,
    group_roots: bool = False,
    rooting: RootingConfig | None = None,
) -> BookIndex:
    band = band or RankingBand()
    kept = apply_band(term_frequencies(doc), band)
    if not group_roots:
        entries = sorted((s.term, s.pages) for s in kept)
        return BookIndex(doc.doc_id, tuple(entries), False, band)

    rooting = rooting or RootingConfig()
    groups: dict[str, list[TermStats]] = {}
    for s in kept:
        groups.setdefault(rooting.root(s.term), []).append(s)
    entries = []
    for members in groups.values():
        # kept is frequency-descending with codepoint tie-break, so members[0] is the headword
        pages = sorted(set().union(*(m.pages for m in members)))
        entries.append((members[0].term, tuple(pages)))
    entries.sort()
    return BookIndex(doc.doc_id, tuple(entries), True, band)


def render_index(raw: RawDocument, index: BookIndex, force: bool = False) -> str:
    """Append the index after a fixed separator; the original text is kept byte for byte."""
    if raw.doc_id != index.doc_id:
        raise IdentityError(f"index is for {index.doc_id!r}, document is {raw.doc_id!r}")
    if not index.entries and not force:
        raise EmptyIndexError(f"index for {raw.doc_id!r} is empty")
    lines = "".join(f"{term}: {', '.join(map(str, pages))}\n" for term, pages in index.entries)
    return raw.text + SEPARATOR + lines


def strip_index(rendered: str) -> str:
    cut = rendered.rfind(SEPARATOR)
    if cut < 0:
        raise IndexFormatError("no appended index found")
    return rendered[:cut]


# -- machine-readable export (also the gold-index format) ------------------

def index_to_dict(index: BookIndex) -> dict:
    band = None if index.band is None else {"high_cut": index.band.high_cut, "low_min_freq": index.band.low_min_freq}
    return {
        "doc_id": index.doc_id,
        "band": band,
        "grouped_by_root": index.grouped_by_root,
        "entries": [[t, list(p)] for t, p in index.entries],
    }


def dumps_index(index: BookIndex) -> str:
    return json.dumps(index_to_dict(index), ensure_ascii=False, indent=1) + "\n"


def index_from_dict(data: dict) -> BookIndex:
    try:
        band = data.get("band")
        band = None if band is None else RankingBand(band["high_cut"], band["low_min_freq"])
        entries = tuple((str(t), tuple(int(p) for p in pages)) for t, pages in data["entries"])
        return BookIndex(str(data["doc_id"]), entries, bool(data.get("grouped_by_root", False)), band)
    except (KeyError, TypeError, ValueError) as exc:
        raise IndexFormatError(f"malformed index document: {exc!r}") from None


def load_index(path: str | Path) -> BookIndex:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IndexFormatError(f"{path}: {exc.msg}", exc.pos) from None
    except UnicodeDecodeError as exc:
        raise IndexFormatError(f"{path}: invalid UTF-8", exc.start) from None
    return index_from_dict(data)

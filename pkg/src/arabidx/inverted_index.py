"""Corpus inverted index, document-level or positional.

Positions are token ordinals in the normalized stream (stop words already
removed), so phrase queries match on that same stream.
"""

from __future__ import annotations

import bisect
import hashlib
import json
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

from .errors import DuplicateDocumentError, IndexFormatError, UnsupportedVariantError
from .normalize import NormalizedDocument

FORMAT_VERSION = 1


class Variant(str, Enum):
    DOCUMENT_LEVEL = "document_level"
    POSITIONAL = "positional"


@dataclass(frozen=True)
class Posting:
    doc_id: str
    term_frequency: int
    positions: tuple[int, ...] = ()


def fingerprint(doc: NormalizedDocument) -> str:
    return hashlib.sha256(" ".join(doc.surfaces).encode("utf-8")).hexdigest()


@dataclass
class InvertedIndex:
    variant: Variant = Variant.POSITIONAL
    postings: dict[str, list[Posting]] = field(default_factory=dict)
    doc_registry: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.variant = Variant(self.variant)

    @property
    def doc_count(self) -> int:
        return len(self.doc_registry)

    def add_document(self, doc: NormalizedDocument) -> None:
        """Index ``doc``; raises DuplicateDocumentError (index untouched) if
        its id or its token-stream fingerprint is already registered."""
        if doc.doc_id in self.doc_registry:
            raise DuplicateDocumentError(doc.doc_id, "doc_id already registered")
        fp = fingerprint(doc)
        for other, other_fp in self.doc_registry.items():
            if other_fp == fp:
                raise DuplicateDocumentError(doc.doc_id, f"same content as {other!r}")

        positions: dict[str, list[int]] = {}
        for tok in doc.tokens:
            positions.setdefault(tok.surface, []).append(tok.ordinal)
        self.doc_registry[doc.doc_id] = fp
        positional = self.variant is Variant.POSITIONAL
        for term, pos in positions.items():
            posting = Posting(doc.doc_id, len(pos), tuple(pos) if positional else ())
            plist = self.postings.setdefault(term, [])
            bisect.insort(plist, posting, key=lambda p: p.doc_id)

    def query_term(self, term: str) -> list[Posting]:
        return list(self.postings.get(term, ()))

    def query_phrase(self, terms: Sequence[str]) -> list[tuple[str, list[int]]]:
        """Documents where ``terms`` occur at consecutive positions, with the
        start position of every match."""
        if self.variant is not Variant.POSITIONAL:
            raise UnsupportedVariantError("phrase queries need a positional index")
        if len(terms) < 2:
            raise ValueError("a phrase needs at least two terms")
        lists = [{p.doc_id: p.positions for p in self.postings.get(t, ())} for t in terms]
        common = set(lists[0]).intersection(*lists[1:])
        hits = []
        for doc_id in sorted(common):
            later = [set(l[doc_id]) for l in lists[1:]]
            starts = [p for p in lists[0][doc_id] if all(p + k + 1 in s for k, s in enumerate(later))]
            if starts:
                hits.append((doc_id, starts))
        return hits

    def stats(self) -> dict:
        return {
            "variant": self.variant.value,
            "doc_count": self.doc_count,
            "terms": len(self.postings),
            "postings": sum(len(v) for v in self.postings.values()),
        }

    # -- persistence -------------------------------------------------------

    def to_dict(self) -> dict:
        positional = self.variant is Variant.POSITIONAL
        terms = {}
        for term in sorted(self.postings):
            terms[term] = [
                [p.doc_id, p.term_frequency, list(p.positions)] if positional else [p.doc_id, p.term_frequency]
                for p in self.postings[term]
            ]
        return {
            "format_version": FORMAT_VERSION,
            "variant": self.variant.value,
            "doc_count": self.doc_count,
            "registry": dict(sorted(self.doc_registry.items())),
            "terms": terms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=1) + "\n"

    def persist(self, path: str | Path) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(self.dumps(), encoding="utf-8")
        os.replace(tmp, path)

    @classmethod
    def from_dict(cls, data: dict) -> "InvertedIndex":
        if not isinstance(data, dict):
            raise IndexFormatError("index file is not a JSON object")
        version = data.get("format_version")
        if version != FORMAT_VERSION:
            raise IndexFormatError(f"unsupported format_version {version!r}, expected {FORMAT_VERSION}")
        try:
            variant = Variant(data["variant"])
            registry = {str(k): str(v) for k, v in data["registry"].items()}
            if data["doc_count"] != len(registry):
                raise IndexFormatError("doc_count does not match registry size")
            positional = variant is Variant.POSITIONAL
            postings = {}
            for term, plist in data["terms"].items():
                out = []
                for rec in plist:
                    doc_id, tf = str(rec[0]), int(rec[1])
                    pos = tuple(int(x) for x in rec[2]) if positional else ()
                    if doc_id not in registry:
                        raise IndexFormatError(f"posting for unregistered document {doc_id!r}")
                    if positional and len(pos) != tf:
                        raise IndexFormatError(f"term {term!r}: positions do not match tf in {doc_id!r}")
                    out.append(Posting(doc_id, tf, pos))
                if [p.doc_id for p in out] != sorted({p.doc_id for p in out}):
                    raise IndexFormatError(f"posting list for {term!r} not sorted/unique")
                postings[term] = out
        except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
            raise IndexFormatError(f"malformed index: {exc!r}") from None
        return cls(variant, postings, registry)

    @classmethod
    def load(cls, path: str | Path) -> "InvertedIndex":
        raw = Path(path).read_bytes()
        try:
            data = json.loads(raw.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise IndexFormatError(f"{path}: invalid UTF-8", exc.start) from None
        except json.JSONDecodeError as exc:
            raise IndexFormatError(f"{path}: {exc.msg}", exc.pos) from None
        return cls.from_dict(data)


def build_index(docs: Sequence[NormalizedDocument], variant: Variant | str = Variant.POSITIONAL) -> InvertedIndex:
    index = InvertedIndex(Variant(variant))
    for doc in docs:
        index.add_document(doc)
    return index

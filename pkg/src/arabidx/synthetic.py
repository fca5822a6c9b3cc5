"""Deterministic synthetic Arabic-letter corpora for testing and demos.

Words are random letter strings, not real Arabic; what matters is that
class vocabularies can be made disjoint and every placement is known.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .normalize import load_stopwords

LETTERS = "ابتثجحخدذرزسشصضطظعغفقكلمنهوي"
NOISE = ["،", ".", "!", "؟", "(", ")", "2024", "ABC", "%", "-", "َ", "ِ", "ـ"]


def class_alphabets(k: int) -> list[str]:
    """Split the 28 letters into ``k`` disjoint alphabets."""
    return [LETTERS[i::k] for i in range(k)]


def make_vocabulary(rng: random.Random, letters: str, size: int, min_len: int = 5, max_len: int = 8) -> list[str]:
    stop = load_stopwords()
    vocab: set[str] = set()
    while len(vocab) < size:
        word = "".join(rng.choice(letters) for _ in range(rng.randint(min_len, max_len)))
        if word not in stop:
            vocab.add(word)
    return sorted(vocab)


def zipf_words(rng: random.Random, vocab: list[str], count: int, exponent: float = 1.0) -> list[str]:
    weights = [1.0 / (r + 1) ** exponent for r in range(len(vocab))]
    return rng.choices(vocab, weights=weights, k=count)


def add_noise(rng: random.Random, words: list[str], rate: float = 0.1) -> str:
    """Join words with occasional punctuation, digits, Latin and harakat."""
    out = []
    for w in words:
        if rng.random() < rate:
            mark = rng.choice(NOISE)
            if mark in ("َ", "ِ", "ـ") and len(w) > 1:
                i = rng.randrange(1, len(w))
                w = w[:i] + mark + w[i:]
            else:
                w = w + mark if rng.random() < 0.5 else mark + " " + w
        out.append(w)
    return " ".join(out)


@dataclass
class SyntheticDocument:
    doc_id: str
    label: str
    pages: list[list[str]]  # clean words per page, as placed

    @property
    def words(self) -> list[str]:
        return [w for page in self.pages for w in page]

    def text(self, rng: random.Random, noise: float = 0.1) -> str:
        return "\f".join(add_noise(rng, page, noise) for page in self.pages)


def make_document(rng: random.Random, doc_id: str, label: str, vocab: list[str],
                  pages: int, words_per_page: int) -> SyntheticDocument:
    return SyntheticDocument(doc_id, label, [zipf_words(rng, vocab, words_per_page) for _ in range(pages)])


def classified_corpus(seed: int = 0, classes: int = 3, train: int = 10, test: int = 10,
                      vocab_size: int = 60, pages: int = 3, words_per_page: int = 60):
    """Return ``(train_docs, test_docs)``; classes use disjoint alphabets."""
    rng = random.Random(seed)
    train_docs, test_docs = [], []
    for c, letters in enumerate(class_alphabets(classes)):
        label = f"class{c}"
        vocab = make_vocabulary(rng, letters, vocab_size)
        rng.shuffle(vocab)
        for i in range(train):
            train_docs.append(make_document(rng, f"{label}/train{i:02d}", label, vocab, pages, words_per_page))
        for i in range(test):
            test_docs.append(make_document(rng, f"{label}/test{i:02d}", label, vocab, pages, words_per_page))
    return train_docs, test_docs


def gold_entries(doc: SyntheticDocument, min_freq: int = 2) -> list[list]:
    """A stand-in manual index: every word placed at least ``min_freq`` times, with its pages."""
    freq: dict[str, int] = {}
    pages: dict[str, set[int]] = {}
    for p, page in enumerate(doc.pages, start=1):
        for w in page:
            freq[w] = freq.get(w, 0) + 1
            pages.setdefault(w, set()).add(p)
    return [[w, sorted(pages[w])] for w in sorted(freq) if freq[w] >= min_freq]


def write_corpus(out: str | Path, seed: int = 0, **kwargs) -> Path:
    """Write ``train/<label>/*.txt``, ``test/<label>/*.txt`` and ``gold/<label>/*.json``."""
    out = Path(out)
    train_docs, test_docs = classified_corpus(seed, **kwargs)
    rng = random.Random(seed + 1)
    for split, docs in (("train", train_docs), ("test", test_docs)):
        for doc in docs:
            path = out / split / f"{doc.doc_id}.txt"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(doc.text(rng), encoding="utf-8")
    for doc in test_docs:
        path = out / "gold" / f"{doc.doc_id}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        gold = {"doc_id": doc.doc_id, "band": None, "grouped_by_root": False, "entries": gold_entries(doc)}
        path.write_text(json.dumps(gold, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    return out

"""Character N-gram profiles, rank-order and Dice similarity, classification."""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    ConfigError,
    IncompatibleProfileError,
    IndexFormatError,
    NoModelError,
    StoreConflictError,
    UndefinedSimilarityError,
)
from .normalize import NormalizedDocument

MIN_N, MAX_N = 2, 5


class Metric(str, Enum):
    MANHATTAN = "manhattan"
    DICE = "dice"


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not MIN_N <= n <= MAX_N:
        raise ConfigError(f"n must be an integer in [{MIN_N}, {MAX_N}], got {n!r}")


@dataclass(frozen=True)
class ProfileConfig:
    n: int = 3
    profile_size: int = 100
    word_limit: int | None = 100
    # Manhattan penalty for a gram absent from one profile; None = |p|.
    missing_penalty: int | None = None

    def __post_init__(self):
        _check_n(self.n)
        if self.profile_size <= 0:
            raise ConfigError("profile_size must be positive")
        if self.word_limit is not None and self.word_limit <= 0:
            raise ConfigError("word_limit must be positive or None")
        if self.missing_penalty is not None and self.missing_penalty < 0:
            raise ConfigError("missing_penalty must be non-negative")


@dataclass(frozen=True)
class NGramProfile:
    """Grams in rank order: frequency descending, then codepoint ascending."""

    n: int
    entries: tuple[tuple[str, int], ...]
    source_id: str = ""

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, "entries", tuple((g, int(f)) for g, f in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def grams(self) -> list[str]:
        return [g for g, _ in self.entries]

    def ranks(self) -> dict[str, int]:
        return {g: i for i, (g, _) in enumerate(self.entries)}

    @classmethod
    def from_ranked(cls, grams: Sequence[str], n: int | None = None, source_id: str = "") -> "NGramProfile":
        """Profile from grams already in rank order (frequencies synthesised
        as descending integers so the rank order is reproduced)."""
        if n is None:
            n = len(grams[0]) if grams else MIN_N
        k = len(grams)
        return cls(n, tuple((g, k - i) for i, g in enumerate(grams)), source_id)


def extract_ngrams(token: str, n: int) -> list[str]:
    """Sliding window of width ``n`` inside one token; no padding."""
    _check_n(n)
    return [token[i : i + n] for i in range(len(token) - n + 1)]


def rank_counts(counts: Counter | dict, size: int) -> tuple[tuple[str, int], ...]:
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return tuple(ranked[:size])


def count_ngrams(tokens: Iterable[str], n: int) -> Counter:
    counts: Counter = Counter()
    for tok in tokens:
        counts.update(extract_ngrams(tok, n))
    return counts


def _consumed(doc: NormalizedDocument | Sequence[str], word_limit: int | None) -> list[str]:
    surfaces = doc.surfaces if isinstance(doc, NormalizedDocument) else list(doc)
    return surfaces if word_limit is None else surfaces[:word_limit]


def build_profile(doc: NormalizedDocument | Sequence[str], config: ProfileConfig | None = None) -> NGramProfile:
    config = config or ProfileConfig()
    counts = count_ngrams(_consumed(doc, config.word_limit), config.n)
    source = doc.doc_id if isinstance(doc, NormalizedDocument) else ""
    return NGramProfile(config.n, rank_counts(counts, config.profile_size), source)


def _check_compatible(p: NGramProfile, q: NGramProfile) -> None:
    if p.n != q.n:
        raise IncompatibleProfileError(f"cannot compare {p.n}-gram and {q.n}-gram profiles")


def manhattan_distance(p: NGramProfile, q: NGramProfile, missing_penalty: int | None = None) -> int:
    """Rank-order ("out of place") distance summed over the union of grams.

    A gram present in only one of the profiles costs ``missing_penalty``,
    which defaults to ``len(p)``.
    """
    _check_compatible(p, q)
    penalty = len(p) if missing_penalty is None else missing_penalty
    rp, rq = p.ranks(), q.ranks()
    total = 0
    for gram, i in rp.items():
        j = rq.get(gram)
        total += penalty if j is None else abs(i - j)
    total += penalty * sum(1 for gram in rq if gram not in rp)
    return total


def dice_similarity(p: NGramProfile, q: NGramProfile) -> float:
    _check_compatible(p, q)
    if not p.entries and not q.entries:
        raise UndefinedSimilarityError("Dice similarity of two empty profiles is undefined")
    shared = len(set(p.grams) & set(q.grams))
    return 2 * shared / (len(p) + len(q))


@dataclass(frozen=True)
class ClassModel:
    class_label: str
    profile: NGramProfile
    trained_doc_count: int = 0


@dataclass(frozen=True)
class ClassificationResult:
    chosen_class: str
    metric: Metric
    scores: tuple[tuple[str, float], ...]  # best first


def train_class(
    docs: Sequence[NormalizedDocument | Sequence[str]],
    label: str,
    config: ProfileConfig | None = None,
    store: "ProfileStore | None" = None,
    overwrite: bool = False,
) -> ClassModel:
    """Pool gram counts over every (word-limited) document of one class."""
    config = config or ProfileConfig()
    if not docs:
        raise ConfigError(f"no training documents for class {label!r}")
    if store is not None and not overwrite and label in store:
        raise StoreConflictError(f"class {label!r} already in store {store.root}")
    counts: Counter = Counter()
    for doc in docs:
        counts.update(count_ngrams(_consumed(doc, config.word_limit), config.n))
    model = ClassModel(label, NGramProfile(config.n, rank_counts(counts, config.profile_size), label), len(docs))
    if store is not None:
        store.save(model, overwrite=overwrite)
    return model


def classify(
    doc: NormalizedDocument | Sequence[str] | NGramProfile,
    store: Sequence[ClassModel],
    metric: Metric | str = Metric.MANHATTAN,
    config: ProfileConfig | None = None,
) -> ClassificationResult:
    config = config or ProfileConfig()
    metric = Metric(metric)
    if not store:
        raise NoModelError("model store is empty")
    profile = doc if isinstance(doc, NGramProfile) else build_profile(doc, config)
    scored = []
    for model in store:
        if model.profile.n != profile.n:
            raise IncompatibleProfileError(
                f"model {model.class_label!r} uses n={model.profile.n}, document profile n={profile.n}"
            )
        if metric is Metric.MANHATTAN:
            score = manhattan_distance(profile, model.profile, config.missing_penalty)
        elif profile.entries or model.profile.entries:
            score = dice_similarity(profile, model.profile)
        else:
            score = 0.0
        scored.append((model.class_label, score))
    if metric is Metric.MANHATTAN:
        scored.sort(key=lambda ls: (ls[1], ls[0]))
    else:
        scored.sort(key=lambda ls: (-ls[1], ls[0]))
    return ClassificationResult(scored[0][0], metric, tuple(scored))


# -- persistence -----------------------------------------------------------

def model_to_dict(model: ClassModel) -> dict:
    return {
        "label": model.class_label,
        "n": model.profile.n,
        "trained_doc_count": model.trained_doc_count,
        "entries": [[g, f] for g, f in model.profile.entries],
    }


def model_from_dict(data: dict) -> ClassModel:
    try:
        label = data["label"]
        profile = NGramProfile(data["n"], tuple((g, f) for g, f in data["entries"]), label)
        return ClassModel(label, profile, data["trained_doc_count"])
    except (KeyError, TypeError, ValueError) as exc:
        raise IndexFormatError(f"malformed class model: {exc}") from None


def profile_to_dict(profile: NGramProfile) -> dict:
    return {"source_id": profile.source_id, "n": profile.n, "entries": [[g, f] for g, f in profile.entries]}


class ProfileStore:
    """Directory holding one JSON file per class label.

    Single writer: callers serialise :meth:`save`. :meth:`snapshot` reads an
    immutable list of models for classification.
    """

    suffix = ".profile.json"

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def _path(self, label: str) -> Path:
        if not label or "/" in label or os.sep in label or label.startswith("."):
            raise ConfigError(f"invalid class label {label!r}")
        return self.root / f"{label}{self.suffix}"

    def __contains__(self, label: str) -> bool:
        return self._path(label).exists()

    def labels(self) -> list[str]:
        if not self.root.is_dir():
            return []
        return sorted(p.name[: -len(self.suffix)] for p in self.root.glob(f"*{self.suffix}"))

    def save(self, model: ClassModel, overwrite: bool = False) -> Path:
        path = self._path(model.class_label)
        if path.exists() and not overwrite:
            raise StoreConflictError(f"class {model.class_label!r} already in store {self.root}")
        self.root.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(model_to_dict(model), ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
        os.replace(tmp, path)
        return path

    def load(self, label: str) -> ClassModel:
        path = self._path(label)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise IndexFormatError(f"{path}: {exc.msg}", exc.pos) from None
        return model_from_dict(data)

    def snapshot(self) -> list[ClassModel]:
        return [self.load(label) for label in self.labels()]

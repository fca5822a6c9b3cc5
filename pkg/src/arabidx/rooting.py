"""Weight x rank root extraction.

Each letter of a word gets a weight (how often it serves as an affix
letter) and a rank (a function of its position and the word length). The
``root_len`` letters with the smallest weight*rank products form the root,
emitted in their original order.

The default rank rule, ``rank(i, len) = i + 1``, is a stand-in: only the
dependence on word length is known for the original scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ConfigError
from .normalize import ARABIC_LETTERS, decode_bytes

WEIGHT_LEVELS = frozenset({5.0, 3.5, 3.0, 2.0, 1.0, 0.0})


@dataclass(frozen=True)
class WeightTable:
    weights: Mapping[str, float]
    default_weight: float = 0.0
    strict_levels: bool = True

    def __post_init__(self):
        clean = {}
        for letter, w in self.weights.items():
            if len(letter) != 1 or letter not in ARABIC_LETTERS:
                raise ConfigError(f"weight table key {letter!r} is not a single Arabic letter")
            w = float(w)
            if not math.isfinite(w) or w < 0:
                raise ConfigError(f"weight for {letter!r} must be finite and non-negative")
            if self.strict_levels and w not in WEIGHT_LEVELS:
                raise ConfigError(f"weight {w} for {letter!r} not in {sorted(WEIGHT_LEVELS)}")
            clean[letter] = w
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    def weight(self, letter: str) -> float:
        return self.weights.get(letter, self.default_weight)

    def scaled(self, factor: float) -> "WeightTable":
        if factor <= 0:
            raise ConfigError("scale factor must be positive")
        return WeightTable({k: v * factor for k, v in self.weights.items()},
                           self.default_weight * factor, strict_levels=False)


def parse_weight_table(text: str) -> WeightTable:
    weights = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"weight table line {lineno}: expected LETTER<TAB>WEIGHT")
        try:
            weights[parts[0].strip()] = float(parts[1])
        except ValueError:
            raise ConfigError(f"weight table line {lineno}: bad weight {parts[1]!r}") from None
    return WeightTable(weights)


def load_weight_table(path: str | Path | None = None) -> WeightTable:
    if path is None:
        text = resources.files("arabidx").joinpath("data/weights.tsv").read_text("utf-8")
    else:
        text = decode_bytes(Path(path).read_bytes(), str(path))
    return parse_weight_table(text)


@dataclass(frozen=True)
class RankRule:
    """``positional``: rank = offset + step * i (parameters ``(offset, step)``,
    default ``(1, 1)``). ``custom``: parameters are explicit ranks per position."""

    rule_id: str = "positional"
    parameters: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(float(p) for p in self.parameters))
        if self.rule_id == "positional":
            offset, step = self.parameters or (1.0, 1.0)
            if offset <= 0 or step < 0:
                raise ConfigError("positional rank rule needs offset > 0 and step >= 0")
        elif self.rule_id == "custom":
            if not self.parameters or min(self.parameters) <= 0:
                raise ConfigError("custom rank rule needs a non-empty list of positive ranks")
        else:
            raise ConfigError(f"unknown rank rule {self.rule_id!r}")

    def rank(self, i: int, length: int) -> float:
        if not 0 <= i < length:
            raise IndexError(i)
        if self.rule_id == "positional":
            offset, step = self.parameters or (1.0, 1.0)
            return offset + step * i
        if length > len(self.parameters):
            raise ConfigError(f"custom rank rule defines {len(self.parameters)} ranks, word has {length} letters")
        return self.parameters[i]


@dataclass(frozen=True)
class RootResult:
    word: str
    root: str
    products: tuple[tuple[str, float, float, float], ...]  # (letter, weight, rank, product)
    positions: tuple[int, ...] = ()
    short: bool = False  # word shorter than root_len; returned unchanged


def extract_root(word: str, table: WeightTable | None = None, rule: RankRule | None = None,
                 root_len: int = 3) -> RootResult:
    table = table if table is not None else default_table()
    rule = rule or RankRule()
    if root_len <= 0:
        raise ConfigError("root_len must be positive")
    n = len(word)
    trace = []
    for i, letter in enumerate(word):
        w, r = table.weight(letter), rule.rank(i, n)
        trace.append((letter, w, r, w * r))
    if n < root_len:
        return RootResult(word, word, tuple(trace), tuple(range(n)), short=True)
    picked = sorted(sorted(range(n), key=lambda i: (trace[i][3], i))[:root_len])
    return RootResult(word, "".join(word[i] for i in picked), tuple(trace), tuple(picked))


def group_by_root(terms: Iterable[str], table: WeightTable | None = None, rule: RankRule | None = None,
                  root_len: int = 3) -> dict[str, list[str]]:
    table = table if table is not None else default_table()
    groups: dict[str, list[str]] = {}
    seen = set()
    for term in terms:
        if term in seen:
            continue
        seen.add(term)
        groups.setdefault(extract_root(term, table, rule, root_len).root, []).append(term)
    return groups


@dataclass(frozen=True)
class RootingConfig:
    table: WeightTable = field(default_factory=lambda: default_table())
    rule: RankRule = field(default_factory=RankRule)
    root_len: int = 3

    def root(self, word: str) -> str:
        return extract_root(word, self.table, self.rule, self.root_len).root


_DEFAULT: WeightTable | None = None


def default_table() -> WeightTable:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_weight_table()
    return _DEFAULT

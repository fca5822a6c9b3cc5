"""Arabic text cleaning, tokenization and page attribution.

Every operation here is a pure function of its inputs. The output of
:func:`normalize_document` is the token stream that all downstream modules
(profiles, rooting, book index, inverted index) consume.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import ConfigError, DecodeError

# Core Arabic letters: hamza through ghain, feh through yeh. Tatweel (U+0640)
# sits between the two runs and is not a letter.
ARABIC_LETTERS = frozenset(
    [chr(c) for c in range(0x0621, 0x063B)] + [chr(c) for c in range(0x0641, 0x064B)]
)

# Punctuation and symbols that must always be stripped.
PAPER_SYMBOLS = frozenset(".:;/\\-+?<>@$%&*()!~")
ARABIC_PUNCTUATION = frozenset("،؛؟٪٫٬«»…")
DEFAULT_STRIP_CHARS = PAPER_SYMBOLS | ARABIC_PUNCTUATION | frozenset(",'\"[]{}|_=^#`")

# Harakat U+064B-U+0652, tatweel, extended combining marks, superscript alef
# and Quranic annotation marks. These are deleted, never turned into spaces.
DEFAULT_DIACRITICS = frozenset(
    [chr(c) for c in range(0x064B, 0x0660)]
    + ["ـ", "ٰ"]
    + [chr(c) for c in range(0x06D6, 0x06EE)]
)

ALEF_VARIANTS = {"أ": "ا", "إ": "ا", "آ": "ا"}
DEFINITE_ARTICLE = "ال"
PAGE_BREAK = "\f"


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load a one-term-per-line UTF-8 stoplist; ``None`` loads the bundled list."""
    if path is None:
        text = resources.files("arabidx").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        text = decode_bytes(Path(path).read_bytes(), str(path))
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def decode_bytes(data: bytes, source: str = "<bytes>") -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(source, exc.start, exc.reason) from None


@dataclass(frozen=True)
class NormalizationConfig:
    strip_chars: frozenset[str] = DEFAULT_STRIP_CHARS
    diacritic_range: frozenset[str] = DEFAULT_DIACRITICS
    stopwords: frozenset[str] = field(default_factory=load_stopwords)
    fold_alef: bool = False
    fold_teh_marbuta: bool = False
    fold_alef_maqsura: bool = False
    strip_definite_article: bool = False

    def __post_init__(self):
        missing = PAPER_SYMBOLS - set(self.strip_chars)
        if missing:
            raise ConfigError(f"strip_chars must include {''.join(sorted(missing))!r}")
        required = {chr(c) for c in range(0x064B, 0x0653)} | {"ـ"}
        if not required <= set(self.diacritic_range):
            raise ConfigError("diacritic_range must cover U+064B-U+0652 and tatweel")
        for name in ("strip_chars", "diacritic_range", "stopwords"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))


@dataclass(frozen=True)
class Pagination:
    """Form-feed breaks are honoured when present; otherwise a fixed
    number of (post-stopword) tokens goes on each page."""

    words_per_page: int = 300
    honor_form_feeds: bool = True

    def __post_init__(self):
        if not isinstance(self.words_per_page, int) or self.words_per_page <= 0:
            raise ConfigError(f"words_per_page must be a positive integer, got {self.words_per_page!r}")


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    text: str
    source_path: str | None = None
    category: str | None = None

    def __post_init__(self):
        if not self.doc_id:
            raise ConfigError("doc_id must be non-empty")


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    page: int
    ordinal: int


@dataclass(frozen=True)
class NormalizedDocument:
    doc_id: str
    tokens: tuple[Token, ...]
    page_count: int = 1

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    @classmethod
    def from_surfaces(cls, doc_id: str, surfaces: Iterable[str], pages: Iterable[int] | None = None):
        """Build a document straight from already-clean tokens (tests, synthetic corpora)."""
        surfaces = list(surfaces)
        pages = [1] * len(surfaces) if pages is None else list(pages)
        if len(pages) != len(surfaces):
            raise ValueError("pages and surfaces differ in length")
        tokens = tuple(Token(s, p, i) for i, (s, p) in enumerate(zip(surfaces, pages)))
        return cls(doc_id, tokens, max(pages, default=1))


def load_document(path: str | Path, doc_id: str | None = None, category: str | None = None) -> RawDocument:
    path = Path(path)
    text = decode_bytes(path.read_bytes(), str(path))
    return RawDocument(doc_id or path.stem, text, str(path), category)


def _char_class(chars: Iterable[str]) -> str:
    return "".join(re.escape(c) for c in sorted(chars))


_NON_LETTER_RUN = re.compile("[^" + _char_class(ARABIC_LETTERS) + "]+")


def strip_noise(text: str, config: NormalizationConfig) -> str:
    """Drop diacritics, then replace every non-letter with a single space.

    Diacritics and tatweel are deleted outright so that a vowelled word
    stays one word. Symbols, digits, Latin and any other script act as
    word separators.
    """
    if config.diacritic_range:
        text = re.sub("[" + _char_class(config.diacritic_range) + "]", "", text)
    if config.strip_chars:
        text = re.sub("[" + _char_class(config.strip_chars) + "]", " ", text)
    return _NON_LETTER_RUN.sub(" ", text).strip()


def tokenize(text: str) -> list[str]:
    return text.split()


def remove_stopwords(tokens: Iterable[str], stopwords: Iterable[str]) -> list[str]:
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else set(stopwords)
    return [t for t in tokens if t not in stop]


def fold_letters(token: str, config: NormalizationConfig) -> str:
    if config.fold_alef:
        token = "".join(ALEF_VARIANTS.get(c, c) for c in token)
    if config.fold_teh_marbuta:
        token = token.replace("ة", "ه")
    if config.fold_alef_maqsura:
        token = token.replace("ى", "ي")
    return token


def _strip_article(token: str) -> str:
    # keep at least two letters behind
    if token.startswith(DEFINITE_ARTICLE) and len(token) >= 4:
        return token[2:]
    return token


def clean_tokens(text: str, config: NormalizationConfig) -> list[str]:
    """strip_noise -> tokenize -> fold -> (article) -> stopword removal."""
    tokens = [fold_letters(t, config) for t in tokenize(strip_noise(text, config))]
    if config.strip_definite_article:
        tokens = [_strip_article(t) for t in tokens]
    stop = config.stopwords | {fold_letters(w, config) for w in config.stopwords}
    return remove_stopwords(tokens, stop)


def paginate(
    text: str,
    rule: Pagination | None = None,
    config: NormalizationConfig | None = None,
    doc_id: str = "doc",
) -> NormalizedDocument:
    rule = rule or Pagination()
    config = config or NormalizationConfig()
    if rule.honor_form_feeds and PAGE_BREAK in text:
        segments = text.split(PAGE_BREAK)
        surfaces: list[str] = []
        pages: list[int] = []
        for page, segment in enumerate(segments, start=1):
            seg_tokens = clean_tokens(segment, config)
            surfaces.extend(seg_tokens)
            pages.extend([page] * len(seg_tokens))
        page_count = len(segments)
    else:
        surfaces = clean_tokens(text, config)
        pages = [i // rule.words_per_page + 1 for i in range(len(surfaces))]
        page_count = max(pages, default=1)
    tokens = tuple(Token(s, p, i) for i, (s, p) in enumerate(zip(surfaces, pages)))
    return NormalizedDocument(doc_id, tokens, page_count)


def normalize_document(
    raw: RawDocument,
    config: NormalizationConfig | None = None,
    rule: Pagination | None = None,
) -> NormalizedDocument:
    return paginate(raw.text, rule, config, raw.doc_id)


def render_normalized(doc: NormalizedDocument) -> str:
    """Cleaned text: tokens space-separated, pages separated by form feeds."""
    pages: list[list[str]] = [[] for _ in range(doc.page_count)]
    for tok in doc.tokens:
        pages[tok.page - 1].append(tok.surface)
    return PAGE_BREAK.join(" ".join(p) for p in pages) + "\n"

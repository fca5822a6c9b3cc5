"""Automatic indexing and N-gram classification of Arabic documents."""

from .book_index import BookIndex, RankingBand, TermStats, apply_band, build_book_index, render_index, term_frequencies
from .evaluation import EvalReport, aggregate, compare_index
from .inverted_index import InvertedIndex, Posting, Variant
from .ngram import (
    ClassModel,
    NGramProfile,
    ProfileConfig,
    build_profile,
    classify,
    dice_similarity,
    extract_ngrams,
    manhattan_distance,
    train_class,
)
from .normalize import (
    NormalizationConfig,
    NormalizedDocument,
    Pagination,
    RawDocument,
    Token,
    fold_letters,
    normalize_document,
    paginate,
    remove_stopwords,
    strip_noise,
    tokenize,
)
from .rooting import RankRule, RootResult, WeightTable, extract_root, group_by_root

__version__ = "0.1.0"

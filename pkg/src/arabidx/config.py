"""Run configuration loaded from a TOML file. Unknown keys are rejected."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .book_index import RankingBand
from .errors import ConfigError
from .ngram import ProfileConfig
from .normalize import DEFAULT_STRIP_CHARS, NormalizationConfig, Pagination, load_stopwords
from .rooting import RankRule, RootingConfig, default_table, load_weight_table

SCHEMA = {
    "normalization": {"stoplist", "extra_strip_chars", "fold_alef", "fold_teh_marbuta",
                      "fold_alef_maqsura", "strip_definite_article"},
    "pagination": {"words_per_page", "honor_form_feeds"},
    "profile": {"n", "profile_size", "word_limit", "missing_penalty"},
    "band": {"high_cut", "low_min_freq"},
    "rooting": {"weights", "rank_rule", "rank_parameters", "root_len"},
    "paths": {"store", "index"},
}


@dataclass(frozen=True)
class RunConfig:
    normalization: NormalizationConfig = field(default_factory=NormalizationConfig)
    pagination: Pagination = field(default_factory=Pagination)
    profile: ProfileConfig = field(default_factory=ProfileConfig)
    band: RankingBand = field(default_factory=RankingBand)
    rooting: RootingConfig = field(default_factory=RootingConfig)
    store_path: Path | None = None
    index_path: Path | None = None

    def with_overrides(self, **sections) -> "RunConfig":
        """Replace fields inside sections, e.g. ``profile={"n": 4}``; ``None`` values are ignored."""
        updates = {}
        for name, values in sections.items():
            values = {k: v for k, v in values.items() if v is not None}
            if values:
                updates[name] = replace(getattr(self, name), **values)
        return replace(self, **updates) if updates else self


def _existing(base: Path, value: str, key: str) -> Path:
    path = (base / value) if not Path(value).is_absolute() else Path(value)
    if not path.exists():
        raise ConfigError(f"{key}: file {path} does not exist")
    return path


def parse_config(data: dict, base: Path = Path(".")) -> RunConfig:
    for section, body in data.items():
        if section not in SCHEMA:
            raise ConfigError(f"unknown config section {section!r}")
        if not isinstance(body, dict):
            raise ConfigError(f"config section {section!r} must be a table")
        unknown = set(body) - SCHEMA[section]
        if unknown:
            raise ConfigError(f"unknown config key {section}.{sorted(unknown)[0]}")

    try:
        norm = dict(data.get("normalization", {}))
        kwargs = {k: norm[k] for k in ("fold_alef", "fold_teh_marbuta", "fold_alef_maqsura",
                                       "strip_definite_article") if k in norm}
        if "stoplist" in norm:
            kwargs["stopwords"] = load_stopwords(_existing(base, norm["stoplist"], "normalization.stoplist"))
        if "extra_strip_chars" in norm:
            kwargs["strip_chars"] = DEFAULT_STRIP_CHARS | frozenset(norm["extra_strip_chars"])
        normalization = NormalizationConfig(**kwargs)

        pagination = Pagination(**data.get("pagination", {}))
        profile = ProfileConfig(**data.get("profile", {}))
        band = RankingBand(**data.get("band", {}))

        root = dict(data.get("rooting", {}))
        table = load_weight_table(_existing(base, root["weights"], "rooting.weights")) if "weights" in root else default_table()
        rule = RankRule(root.get("rank_rule", "positional"), tuple(root.get("rank_parameters", ())))
        rooting = RootingConfig(table, rule, root.get("root_len", 3))
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}") from None

    paths = data.get("paths", {})
    store = base / paths["store"] if "store" in paths else None
    index = base / paths["index"] if "index" in paths else None
    return RunConfig(normalization, pagination, profile, band, rooting, store, index)


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file {path} not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return parse_config(data, path.parent)


import pytest
from hypothesis import given, settings, strategies as st

from arabidx.errors import ConfigError, DecodeError
from arabidx.normalize import (
    ARABIC_LETTERS,
    NormalizationConfig,
    Pagination,
    RawDocument,
    fold_letters,
    load_document,
    normalize_document,
    paginate,
    remove_stopwords,
    render_normalized,
    strip_noise,
    tokenize,
)

import oracles

MIXED_SAMPLE = (
    "بِسْمِ اللَّهِ الرَّحْمَنِ الرَّحِيمِ. The quick brown fox (2024)!\n\n"
    "ذَهَبَ الوَلَدُ إلى المدرسةِ، وقرأ 3 كتبٍ عن Python و C++؛ هل فهمها؟\n\n"
    "السّلامُ عليكم — email: test@example.com — نسبة النجاح 100% ~ ممتاز ـــ جدا"
)


def test_strip_diacritics():
    assert strip_noise("كَتَبَ", NormalizationConfig()) == "كتب"


def test_strip_digits_and_symbols():
    assert strip_noise("100% نجاح!", NormalizationConfig()) == "نجاح"


def test_strip_mixed_sample_matches_table_filter(cfg):
    assert strip_noise(MIXED_SAMPLE, cfg) == oracles.filter_chars(MIXED_SAMPLE)
    out = strip_noise(MIXED_SAMPLE, cfg)
    assert set(out) <= ARABIC_LETTERS | {" "}
    assert "  " not in out


def test_paper_symbol_list_is_stripped(cfg):
    symbols = ". : ; / \\ - + ? < > @ $ % & * ( ) ! ~"
    assert strip_noise("كلمة" + symbols.replace(" ", "") + "اخرى", cfg) == "كلمة اخرى"


def test_persian_letters_are_not_arabic(cfg):
    assert strip_noise("پدر گل", cfg) == "در ل"


def test_config_requires_paper_symbols():
    with pytest.raises(ConfigError):
        NormalizationConfig(strip_chars=frozenset("."))


@given(st.text())
def test_strip_noise_idempotent(text):
    cfg = NormalizationConfig(stopwords=frozenset())
    once = strip_noise(text, cfg)
    assert strip_noise(once, cfg) == once
    assert once == oracles.filter_chars(text)


def test_tokenize():
    assert tokenize("ذهب الولد") == ["ذهب", "الولد"]
    assert tokenize("") == []


def test_tokenize_200_words(rng):
    letters = sorted(ARABIC_LETTERS)
    words = ["".join(rng.choice(letters) for _ in range(rng.randint(1, 7))) for _ in range(200)]
    cleaned = " ".join(words)
    tokens = tokenize(cleaned)
    assert len(tokens) == oracles.count_runs(cleaned) == 200
    assert " ".join(tokens) == cleaned


def test_remove_stopwords():
    assert remove_stopwords(["ذهب", "في", "البيت"], {"في"}) == ["ذهب", "البيت"]
    assert remove_stopwords(["ا", "ب"], set()) == ["ا", "ب"]


def test_remove_stopwords_large(rng):
    letters = sorted(ARABIC_LETTERS)
    pool = ["".join(rng.choice(letters) for _ in range(3)) for _ in range(200)]
    stop = set(pool[:50])
    stream = [rng.choice(pool) for _ in range(1000)]
    out = remove_stopwords(stream, stop)
    assert all(t not in stop for t in out)
    assert out == [t for t in stream if t not in stop]


def test_fold_letters():
    on = NormalizationConfig(fold_alef=True, fold_teh_marbuta=True, fold_alef_maqsura=True)
    assert fold_letters("أحمد", NormalizationConfig(fold_alef=True)) == "احمد"
    assert fold_letters("إسلام آمن", on) == "اسلام امن"
    assert fold_letters("مدرسة", NormalizationConfig(fold_teh_marbuta=True)) == "مدرسه"
    assert fold_letters("مستشفى", on) == "مستشفي"
    assert fold_letters("أحمد مدرسة مستشفى", NormalizationConfig()) == "أحمد مدرسة مستشفى"


@given(st.text(alphabet=sorted(ARABIC_LETTERS), max_size=20), st.booleans(), st.booleans(), st.booleans())
def test_fold_idempotent(token, a, t, m):
    c = NormalizationConfig(stopwords=frozenset(), fold_alef=a, fold_teh_marbuta=t, fold_alef_maqsura=m)
    assert fold_letters(fold_letters(token, c), c) == fold_letters(token, c)


def test_stopwords_matched_after_folding():
    c = NormalizationConfig(stopwords=frozenset({"إلى"}), fold_alef=True)
    assert paginate("ذهب إلى البيت", config=c).surfaces == ["ذهب", "البيت"]


def test_definite_article_toggle():
    text = "الكتاب الى ال"
    off = NormalizationConfig(stopwords=frozenset())
    on = NormalizationConfig(stopwords=frozenset(), strip_definite_article=True)
    assert paginate(text, config=off).surfaces == ["الكتاب", "الى", "ال"]
    assert paginate(text, config=on).surfaces == ["كتاب", "الى", "ال"]


def test_synthetic_pagination(bare_cfg):
    doc = paginate(" ".join(["كلمة"] * 250), Pagination(words_per_page=100), bare_cfg)
    assert doc.page_count == 3
    assert doc.tokens[99].page == 1
    assert doc.tokens[100].page == 2
    assert doc.tokens[249].page == 3
    assert all(t.page == t.ordinal // 100 + 1 for t in doc.tokens)


def test_zero_words_per_page():
    with pytest.raises(ConfigError):
        Pagination(words_per_page=0)


def test_form_feed_page_count(bare_cfg):
    assert paginate("اول\fثاني\fثالث", config=bare_cfg).page_count == 3
    # a trailing break still opens a (blank) page
    assert paginate("اول\fثاني\f", config=bare_cfg).page_count == 3


def test_form_feed_pages_match_scan(cfg):
    text = "مقدمة الكتاب, في البداية.\fالفصل الأول\fعن الموضوع\f\fالخاتمة: نهاية abc الكتاب"
    doc = paginate(text, config=cfg)
    expected = oracles.form_feed_pages(
        text, lambda chunk: [w for w in oracles.filter_chars(chunk).split() if w not in cfg.stopwords]
    )
    assert [(t.surface, t.page) for t in doc.tokens] == expected
    assert expected == [("مقدمة", 1), ("الكتاب", 1), ("البداية", 1), ("الفصل", 2), ("الأول", 2),
                        ("الموضوع", 3), ("الخاتمة", 5), ("نهاية", 5), ("الكتاب", 5)]


def test_form_feeds_ignored_when_disabled(bare_cfg):
    doc = paginate("ا ب\fج", Pagination(words_per_page=2, honor_form_feeds=False), bare_cfg)
    assert [t.page for t in doc.tokens] == [1, 1, 2]


@settings(max_examples=60)
@given(st.text(alphabet=sorted(ARABIC_LETTERS) + [" ", "\f", ".", "a", "1", "َ"], max_size=300),
       st.integers(min_value=1, max_value=20))
def test_document_invariants(text, wpp):
    cfg = NormalizationConfig()
    doc = paginate(text, Pagination(words_per_page=wpp), cfg)
    assert doc == paginate(text, Pagination(words_per_page=wpp), cfg)
    pages = [t.page for t in doc.tokens]
    assert pages == sorted(pages)
    assert all(1 <= p <= doc.page_count for p in pages)
    assert [t.ordinal for t in doc.tokens] == list(range(len(doc.tokens)))
    assert all(set(t.surface) <= ARABIC_LETTERS for t in doc.tokens)
    assert not any(t.surface in cfg.stopwords for t in doc.tokens)
    if "\f" not in text:
        assert doc.page_count == max(pages, default=1)


def test_order_preserved(cfg):
    words = ["شمس", "قمر", "نجم", "سماء", "ارض"]
    noisy = " ,في ".join(words) + " 123"
    assert paginate(noisy, config=cfg).surfaces == words


def test_decode_error_reports_offset(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes("كتب".encode() + b"\xff\xfe" + "قلم".encode())
    with pytest.raises(DecodeError) as info:
        load_document(path)
    assert info.value.offset == 6
    assert "offset 6" in str(info.value)


def test_normalize_document_and_render(cfg):
    raw = RawDocument("d1", "الكتاب في البيت\fالقلم")
    doc = normalize_document(raw, cfg)
    assert doc.doc_id == "d1"
    assert render_normalized(doc) == "الكتاب البيت\fالقلم\n"


def test_raw_document_needs_id():
    with pytest.raises(ConfigError):
        RawDocument("", "x")

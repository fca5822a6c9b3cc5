import pytest

from arabidx.config import load_config
from arabidx.corpus import ingest_corpus, load_class_documents, parallel_map
from arabidx.errors import ConfigError, InputError
from arabidx.synthetic import class_alphabets, classified_corpus, write_corpus


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def test_default_config():
    cfg = load_config(None)
    assert cfg.pagination.words_per_page == 300
    assert cfg.profile.profile_size == 100 and cfg.profile.word_limit == 100
    assert (cfg.band.high_cut, cfg.band.low_min_freq) == (0.05, 1)
    assert not cfg.normalization.fold_alef


def test_full_config(tmp_path):
    write(tmp_path / "stop.txt", "في\nمن\n")
    write(tmp_path / "w.tsv", "ا\t5\n")
    write(tmp_path / "run.toml", """
[normalization]
stoplist = "stop.txt"
fold_alef = true
[pagination]
words_per_page = 50
[profile]
n = 4
word_limit = 200
[band]
high_cut = 0.1
low_min_freq = 2
[rooting]
weights = "w.tsv"
rank_rule = "positional"
rank_parameters = [2, 1]
[paths]
store = "profiles"
""")
    cfg = load_config(tmp_path / "run.toml")
    assert cfg.normalization.stopwords == {"في", "من"}
    assert cfg.normalization.fold_alef
    assert cfg.pagination.words_per_page == 50
    assert (cfg.profile.n, cfg.profile.word_limit) == (4, 200)
    assert cfg.band.low_min_freq == 2
    assert cfg.rooting.table.weights == {"ا": 5.0}
    assert cfg.rooting.rule.rank(0, 3) == 2
    assert cfg.store_path == tmp_path / "profiles"


@pytest.mark.parametrize("body,needle", [
    ("[profile]\nnn = 3\n", "profile.nn"),
    ("[extras]\nx = 1\n", "extras"),
    ("[normalization]\nstoplist = \"missing.txt\"\n", "missing.txt"),
    ("[pagination]\nwords_per_page = 0\n", "words_per_page"),
    ("[profile]\nn = 9\n", "n must"),
    ("not toml ===", "run.toml"),
])
def test_strict_config(tmp_path, body, needle):
    write(tmp_path / "run.toml", body)
    with pytest.raises(ConfigError, match=needle):
        load_config(tmp_path / "run.toml")


def test_ingest_two_classes(tmp_path):
    for name in ("a", "b"):
        write(tmp_path / "sport" / f"{name}.txt", "كرة القدم")
    for name in ("a", "b", "c"):
        write(tmp_path / "food" / f"{name}.txt", "طعام")
    layout = ingest_corpus(tmp_path)
    assert layout.labels == ["food", "sport"]
    assert layout.document_count == 5
    docs = load_class_documents(layout)
    assert [d.doc_id for d in docs][:2] == ["food/a", "food/b"]
    assert docs[0].category == "food"


def test_ingest_empty_root(tmp_path):
    with pytest.raises(InputError):
        ingest_corpus(tmp_path)
    with pytest.raises(InputError):
        ingest_corpus(tmp_path / "nope")


def test_ingest_collects_bad_files_and_empty_classes(tmp_path):
    write(tmp_path / "ok" / "a.txt", "نص")
    (tmp_path / "ok" / "bad.txt").write_bytes(b"\xff")
    (tmp_path / "empty").mkdir()
    layout = ingest_corpus(tmp_path)
    assert layout.labels == ["empty", "ok"]
    assert layout.document_count == 1
    assert len(layout.errors) == 1 and "offset 0" in layout.errors[0]
    assert len(layout.warnings) == 1


def test_paper_scale_mirror(tmp_path):
    for c in range(10):
        for d in range(5):
            write(tmp_path / f"cat{c}" / f"doc{d}.txt", "نص")
    layout = ingest_corpus(tmp_path)
    assert len(layout.labels) == 10 and layout.document_count == 50


def _square(x):
    return x * x


def test_parallel_map_preserves_order():
    assert parallel_map(_square, list(range(20)), jobs=2) == [x * x for x in range(20)]
    assert parallel_map(_square, [3], jobs=4) == [9]


def test_synthetic_alphabets_disjoint():
    alphabets = class_alphabets(3)
    assert sum(map(len, alphabets)) == 28
    assert not set(alphabets[0]) & set(alphabets[1])
    a, b = classified_corpus(seed=5), classified_corpus(seed=5)
    assert [d.pages for d in a[0]] == [d.pages for d in b[0]]


def test_write_corpus_is_deterministic(tmp_path):
    write_corpus(tmp_path / "x", seed=2, train=2, test=2)
    write_corpus(tmp_path / "y", seed=2, train=2, test=2)
    files = sorted(p.relative_to(tmp_path / "x") for p in (tmp_path / "x").rglob("*") if p.is_file())
    assert len(files) == 3 * 2 * 2 + 3 * 2
    assert all((tmp_path / "x" / f).read_bytes() == (tmp_path / "y" / f).read_bytes() for f in files)

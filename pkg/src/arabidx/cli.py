"""``arabidx`` command line: one subcommand per module plus a batch pipeline.

Exit codes: 0 ok, 2 config, 3 input/decode, 4 empty result,
5 duplicate document, 6 store conflict.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from functools import partial
from pathlib import Path

from . import book_index as bi
from . import evaluation as ev
from .config import RunConfig, load_config
from .corpus import default_jobs, ingest_corpus, load_class_documents, parallel_map
from .errors import ArabidxError, ConfigError, DuplicateDocumentError, InputError
from .inverted_index import InvertedIndex, Variant
from .ngram import Metric, ProfileStore, build_profile, classify, profile_to_dict, train_class
from .normalize import RawDocument, load_document, load_stopwords, normalize_document, render_normalized
from .rooting import RankRule, extract_root, load_weight_table
from .synthetic import write_corpus

log = logging.getLogger("arabidx")


def _dump(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=1) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str, doc_id: str | None = None) -> RawDocument:
    try:
        return load_document(path, doc_id)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None


# -- config assembly -------------------------------------------------------

def run_config(args) -> RunConfig:
    cfg = load_config(getattr(args, "config", None))
    norm = {}
    if getattr(args, "stoplist", None):
        norm["stopwords"] = load_stopwords(args.stoplist)
    for flag in ("fold_alef", "fold_teh_marbuta", "fold_alef_maqsura", "strip_definite_article"):
        if getattr(args, flag, False):
            norm[flag] = True
    profile = {"n": getattr(args, "n", None), "profile_size": getattr(args, "size", None),
               "word_limit": getattr(args, "word_limit", None)}
    band = {"high_cut": getattr(args, "high_cut", None)}
    if getattr(args, "min_freq", None) is not None:
        if args.min_freq < 1:
            raise ConfigError("--min-freq must be >= 1")
        band["low_min_freq"] = args.min_freq - 1
    rooting = {}
    if getattr(args, "weights", None):
        rooting["table"] = load_weight_table(args.weights)
    if getattr(args, "rank_rule", None):
        rooting["rule"] = RankRule(args.rank_rule, tuple(args.rank_params or ()))
    if getattr(args, "root_len", None):
        rooting["root_len"] = args.root_len
    cfg = cfg.with_overrides(
        normalization=norm,
        pagination={"words_per_page": getattr(args, "words_per_page", None)},
        profile=profile,
        band=band,
        rooting=rooting,
    )
    if getattr(args, "whole_document", False):
        cfg = replace(cfg, profile=replace(cfg.profile, word_limit=None))
    return cfg


def _normalize(raw: RawDocument, cfg: RunConfig):
    return normalize_document(raw, cfg.normalization, cfg.pagination)


def _normalize_many(raws: list[RawDocument], cfg: RunConfig, jobs: int | None):
    return parallel_map(partial(_normalize, cfg=cfg), raws, jobs)


# -- commands ----------------------------------------------------------------

def cmd_normalize(args) -> int:
    cfg = run_config(args)
    doc = _normalize(_load(args.input), cfg)
    if args.format == "machine":
        text = _dump({"doc_id": doc.doc_id, "page_count": doc.page_count,
                      "tokens": [[t.surface, t.page] for t in doc.tokens]})
    else:
        text = render_normalized(doc)
    _emit(text, args.out)
    return 0


def cmd_profile(args) -> int:
    cfg = run_config(args)
    profile = build_profile(_normalize(_load(args.input), cfg), cfg.profile)
    if args.format == "machine":
        _emit(_dump(profile_to_dict(profile)), args.out)
    else:
        _emit("".join(f"{i}\t{g}\t{f}\n" for i, (g, f) in enumerate(profile.entries)), args.out)
    return 0


def _store(args, cfg: RunConfig) -> ProfileStore:
    path = args.store or cfg.store_path
    if path is None:
        raise ConfigError("no profile store given (--store or paths.store)")
    return ProfileStore(path)


def cmd_train(args) -> int:
    cfg = run_config(args)
    store = _store(args, cfg)
    if args.corpus:
        layout = ingest_corpus(args.corpus)
        groups = [(label, [load_document(p, f"{label}/{p.stem}", label) for p in paths])
                  for label, paths in layout.classes if paths]
    elif args.class_label and args.dir:
        paths = sorted(Path(args.dir).glob("*.txt"), key=lambda p: p.name)
        groups = [(args.class_label, [_load(str(p), f"{args.class_label}/{p.stem}") for p in paths])]
    else:
        raise ConfigError("train needs --corpus DIR or both --class LABEL and --dir DIR")
    for label, raws in groups:
        if not raws:
            raise InputError(f"class {label!r} has no documents")
        docs = _normalize_many(raws, cfg, args.jobs)
        model = train_class(docs, label, cfg.profile, store, overwrite=args.overwrite)
        print(f"{label}\t{model.trained_doc_count} docs\t{len(model.profile)} grams")
    return 0


def _format_result(result, fmt: str, doc_id: str) -> str:
    if fmt == "machine":
        return _dump({"doc_id": doc_id, "metric": result.metric.value, "chosen_class": result.chosen_class,
                      "scores": [[label, score] for label, score in result.scores]})
    return "".join(f"{label}\t{score:.6g}\n" for label, score in result.scores)


def cmd_classify(args) -> int:
    cfg = run_config(args)
    models = _store(args, cfg).snapshot()
    doc = _normalize(_load(args.input), cfg)
    result = classify(doc, models, args.metric, cfg.profile)
    _emit(_format_result(result, args.format, doc.doc_id), args.out)
    return 0


def cmd_root(args) -> int:
    cfg = run_config(args)
    r = cfg.rooting
    result = extract_root(args.word, r.table, r.rule, r.root_len)
    lines = [result.root + (" (word shorter than root length)" if result.short else "")]
    if args.trace:
        lines += [f"{letter}\t{w:g}\t{rank:g}\t{p:g}" for letter, w, rank, p in result.products]
    print("\n".join(lines))
    return 0


def _book_index(raw: RawDocument, cfg: RunConfig, group_roots: bool):
    doc = _normalize(raw, cfg)
    return bi.build_book_index(doc, cfg.band, group_roots, cfg.rooting)


def cmd_book_index(args) -> int:
    cfg = run_config(args)
    raw = _load(args.input)
    try:
        index = _book_index(raw, cfg, args.group_roots)
    except bi.EmptyIndexError:
        if not args.force:
            raise
        index = bi.BookIndex(raw.doc_id, (), args.group_roots, cfg.band)
    _emit(bi.render_index(raw, index, force=args.force), args.out)
    if args.export:
        _emit(bi.dumps_index(index), args.export)
    return 0


def _index_path(args, cfg: RunConfig) -> Path:
    path = args.index or cfg.index_path
    if path is None:
        raise ConfigError("no index path given (--index or paths.index)")
    return Path(path)


def cmd_invindex(args) -> int:
    cfg = run_config(args)
    path = _index_path(args, cfg)
    if args.action == "add":
        index = InvertedIndex.load(path) if path.exists() else InvertedIndex(Variant(args.variant))
        raws = [_load(p) for p in args.inputs]
        status = 0
        for doc in _normalize_many(raws, cfg, args.jobs):
            try:
                index.add_document(doc)
            except DuplicateDocumentError as exc:
                print(f"arabidx: skipped: {exc}", file=sys.stderr)
                status = exc.exit_code
        index.persist(path)
        return status
    if not path.exists():
        raise InputError(f"{path}: no such index")
    index = InvertedIndex.load(path)
    if args.action == "stats":
        _emit_table(index.stats(), args.format)
    elif args.action == "query":
        hits = index.query_term(args.term)
        if args.format == "machine":
            _emit(_dump([[p.doc_id, p.term_frequency, list(p.positions)] for p in hits]), None)
        else:
            sys.stdout.write("".join(f"{p.doc_id}\t{p.term_frequency}\t{' '.join(map(str, p.positions))}\n"
                                     for p in hits))
    elif args.action == "phrase":
        hits = index.query_phrase(args.terms.split())
        if args.format == "machine":
            _emit(_dump([[d, starts] for d, starts in hits]), None)
        else:
            sys.stdout.write("".join(f"{d}\t{' '.join(map(str, s))}\n" for d, s in hits))
    return 0


def _emit_table(data: dict, fmt: str) -> None:
    if fmt == "machine":
        _emit(_dump(data), None)
    else:
        sys.stdout.write("".join(f"{k}\t{v}\n" for k, v in data.items()))


def _eval_pairs(args) -> list[tuple[Path, Path]]:
    if args.auto_dir or args.gold_dir:
        if not (args.auto_dir and args.gold_dir):
            raise ConfigError("batch eval needs both --auto-dir and --gold-dir")
        gold_dir = Path(args.gold_dir)
        pairs = []
        for auto in sorted(Path(args.auto_dir).rglob("*.json")):
            gold = gold_dir / auto.relative_to(args.auto_dir)
            if gold.exists():
                pairs.append((auto, gold))
            else:
                log.warning("no gold index for %s", auto)
        return pairs
    if not (args.auto and args.gold):
        raise ConfigError("eval needs --auto and --gold (or --auto-dir and --gold-dir)")
    return [(Path(args.auto), Path(args.gold))]


def evaluate(pairs, mode: str, term_key=None) -> tuple[list[ev.EvalReport], ev.EvalSummary]:
    reports = []
    for auto_path, gold_path in pairs:
        if not auto_path.exists() or not gold_path.exists():
            raise InputError(f"missing index file {auto_path if not auto_path.exists() else gold_path}")
        reports.append(ev.compare_index(bi.load_index(auto_path), ev.load_gold(gold_path), mode, term_key))
    return reports, ev.aggregate(reports)


def eval_text(reports, summary) -> str:
    lines = ["doc_id\ttp\tfp\tfn\tprecision\trecall"]
    lines += [f"{r.doc_id}\t{r.tp}\t{r.fp}\t{r.fn}\t{ev.fmt(r.precision)}\t{ev.fmt(r.recall)}" for r in reports]
    lines.append(f"macro\t\t\t\t{ev.fmt(summary.macro_precision)}\t{ev.fmt(summary.macro_recall)}")
    lines.append(f"micro\t{summary.tp}\t{summary.fp}\t{summary.fn}\t"
                 f"{ev.fmt(summary.micro_precision)}\t{ev.fmt(summary.micro_recall)}")
    return "\n".join(lines) + "\n"


def eval_machine(reports, summary) -> str:
    return _dump({"reports": [ev.report_to_dict(r) for r in reports], "summary": ev.summary_to_dict(summary)})


def cmd_eval(args) -> int:
    cfg = run_config(args)
    key = cfg.rooting.root if args.match == "root" else None
    reports, summary = evaluate(_eval_pairs(args), args.mode, key)
    _emit(eval_machine(reports, summary) if args.format == "machine" else eval_text(reports, summary), None)
    if args.report:
        _emit(eval_machine(reports, summary), args.report)
    return 0


def cmd_pipeline(args) -> int:
    """train -> classify -> book-index -> inverted index -> eval over a
    ``train/``, ``test/`` (and optional ``gold/``) corpus directory."""
    cfg = run_config(args)
    corpus, out = Path(args.corpus), Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    store = ProfileStore(out / "profiles")

    train_layout = ingest_corpus(corpus / "train")
    for label, paths in train_layout.classes:
        if not paths:
            continue
        raws = [load_document(p, f"{label}/{p.stem}", label) for p in paths]
        train_class(_normalize_many(raws, cfg, args.jobs), label, cfg.profile, store, overwrite=True)
    models = store.snapshot()

    test_raws = load_class_documents(ingest_corpus(corpus / "test"))
    test_docs = _normalize_many(test_raws, cfg, args.jobs)

    rows, correct = [], 0
    for raw, doc in zip(test_raws, test_docs):
        for metric in Metric:
            result = classify(doc, models, metric, cfg.profile)
            correct += result.chosen_class == raw.category
            rows.append(f"{doc.doc_id}\t{raw.category}\t{metric.value}\t{result.chosen_class}\n")
    (out / "classification.tsv").write_text("".join(rows), encoding="utf-8")

    index = InvertedIndex(Variant.POSITIONAL)
    status = 0
    for raw, doc in zip(test_raws, test_docs):
        try:
            book = bi.build_book_index(doc, cfg.band, args.group_roots, cfg.rooting)
        except bi.EmptyIndexError as exc:
            log.warning("%s: %s", raw.doc_id, exc)
            status = exc.exit_code
            continue
        _emit(bi.render_index(raw, book), str(out / "books" / f"{raw.doc_id}.txt"))
        _emit(bi.dumps_index(book), str(out / "auto" / f"{raw.doc_id}.json"))
        try:
            index.add_document(doc)
        except DuplicateDocumentError as exc:
            log.warning("%s", exc)
    index.persist(out / "inverted_index.json")

    if (corpus / "gold").is_dir():
        pairs = [(p, corpus / "gold" / p.relative_to(out / "auto")) for p in sorted((out / "auto").rglob("*.json"))]
        pairs = [(a, g) for a, g in pairs if g.exists()]
        if pairs:
            reports, summary = evaluate(pairs, args.mode)
            _emit(eval_text(reports, summary), str(out / "eval.tsv"))
    total = len(test_docs) * len(Metric)
    print(f"classification accuracy {correct}/{total}")
    print(f"indexed {index.doc_count} documents, {len(index.postings)} terms")
    return status


def cmd_synth(args) -> int:
    write_corpus(args.out, args.seed, classes=args.classes, train=args.train, test=args.test)
    print(args.out)
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arabidx", description="Arabic document indexing and classification")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML run configuration")

    norm = argparse.ArgumentParser(add_help=False, parents=[common])
    norm.add_argument("--words-per-page", type=int)
    norm.add_argument("--stoplist")
    norm.add_argument("--fold-alef", action="store_true")
    norm.add_argument("--fold-teh-marbuta", action="store_true")
    norm.add_argument("--fold-alef-maqsura", action="store_true")
    norm.add_argument("--strip-definite-article", action="store_true")

    prof = argparse.ArgumentParser(add_help=False)
    prof.add_argument("--n", type=int)
    prof.add_argument("--size", type=int, help="profile size (top grams kept)")
    prof.add_argument("--word-limit", type=int, help="only the first N words are profiled")
    prof.add_argument("--whole-document", action="store_true", help="disable the word limit")

    rootp = argparse.ArgumentParser(add_help=False)
    rootp.add_argument("--weights", help="LETTER<TAB>WEIGHT table")
    rootp.add_argument("--rank-rule", choices=["positional", "custom"])
    rootp.add_argument("--rank-params", type=float, nargs="+")
    rootp.add_argument("--root-len", type=int)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "machine"], default="text")

    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=int, default=default_jobs())

    p = sub.add_parser("normalize", parents=[norm, fmt], help="clean and tokenize a document")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("profile", parents=[norm, prof, fmt], help="print a document's N-gram profile")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("train", parents=[norm, prof, jobs], help="train class profiles")
    p.add_argument("--class", dest="class_label")
    p.add_argument("--dir")
    p.add_argument("--corpus", help="class-per-subdirectory corpus root")
    p.add_argument("--store")
    p.add_argument("--overwrite", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", parents=[norm, prof, fmt], help="classify a document")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--metric", choices=[m.value for m in Metric], default="manhattan")
    p.add_argument("--store")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("root", parents=[common, rootp], help="extract the root of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("book-index", parents=[norm, rootp], help="append a back-of-book index")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--high-cut", type=float)
    p.add_argument("--min-freq", type=int, help="keep terms occurring at least this often")
    p.add_argument("--group-roots", action="store_true")
    p.add_argument("--export", help="write the machine-readable index here")
    p.add_argument("--force", action="store_true", help="emit even an empty index")
    p.set_defaults(func=cmd_book_index)

    p = sub.add_parser("invindex", help="corpus inverted index")
    inv = p.add_subparsers(dest="action", required=True)
    a = inv.add_parser("add", parents=[norm, jobs])
    a.add_argument("--index")
    a.add_argument("--in", dest="inputs", nargs="+", required=True)
    a.add_argument("--variant", choices=[v.value for v in Variant], default="positional")
    for name, extra in (("query", "--term"), ("phrase", "--terms"), ("stats", None)):
        q = inv.add_parser(name, parents=[common, fmt])
        q.add_argument("--index")
        if extra:
            q.add_argument(extra, required=True)
    p.set_defaults(func=cmd_invindex)

    p = sub.add_parser("eval", parents=[common, rootp, fmt], help="precision/recall against gold indexes")
    p.add_argument("--auto")
    p.add_argument("--gold")
    p.add_argument("--auto-dir")
    p.add_argument("--gold-dir")
    p.add_argument("--mode", choices=[m.value for m in ev.Mode], default="term")
    p.add_argument("--match", choices=["exact", "root"], default="exact")
    p.add_argument("--report", help="also write a machine-readable report here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("pipeline", parents=[norm, prof, rootp, jobs], help="run every stage over a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--high-cut", type=float)
    p.add_argument("--min-freq", type=int)
    p.add_argument("--group-roots", action="store_true")
    p.add_argument("--mode", choices=[m.value for m in ev.Mode], default="term")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("synth", help="write a deterministic synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--classes", type=int, default=3)
    p.add_argument("--train", type=int, default=10)
    p.add_argument("--test", type=int, default=10)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ArabidxError as exc:
        print(f"arabidx: {exc}", file=sys.stderr)
        return exc.exit_code
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"arabidx: {exc}", file=sys.stderr)
        return InputError.exit_code


if __name__ == "__main__":
    sys.exit(main())

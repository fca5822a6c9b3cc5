"""Class-per-directory corpus layout and parallel per-document helpers."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, TypeVar

from .errors import ArabidxError, InputError
from .normalize import RawDocument, load_document

log = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class CorpusLayout:
    root_dir: Path
    classes: tuple[tuple[str, tuple[Path, ...]], ...]
    warnings: tuple[str, ...] = ()
    errors: tuple[str, ...] = ()

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.classes]

    @property
    def document_count(self) -> int:
        return sum(len(paths) for _, paths in self.classes)

    def documents(self) -> Iterable[tuple[str, Path]]:
        for label, paths in self.classes:
            for path in paths:
                yield label, path


def ingest_corpus(root_dir: str | Path, suffix: str = ".txt") -> CorpusLayout:
    """Each immediate subdirectory is a class; its ``*.txt`` files are documents.

    Undecodable files are recorded in ``errors`` and skipped.
    """
    root = Path(root_dir)
    if not root.is_dir():
        raise InputError(f"corpus root {root} is not a directory")
    classes, warnings, errors = [], [], []
    for class_dir in sorted((p for p in root.iterdir() if p.is_dir()), key=lambda p: p.name):
        good = []
        for path in sorted(class_dir.glob(f"*{suffix}"), key=lambda p: p.name):
            try:
                load_document(path)
            except (ArabidxError, OSError) as exc:
                errors.append(str(exc))
                log.error("%s", exc)
                continue
            good.append(path)
        if not good:
            warnings.append(f"class directory {class_dir.name!r} has no documents")
            log.warning("class directory %r has no documents", class_dir.name)
        classes.append((class_dir.name, tuple(good)))
    if not classes:
        raise InputError(f"corpus root {root} contains no class directories")
    return CorpusLayout(root, tuple(classes), tuple(warnings), tuple(errors))


def load_class_documents(layout: CorpusLayout) -> list[RawDocument]:
    """Load every document; doc ids are ``label/stem`` to stay unique across classes."""
    return [load_document(path, f"{label}/{path.stem}", label) for label, path in layout.documents()]


def default_jobs() -> int:
    return os.cpu_count() or 1


def parallel_map(fn: Callable[[T], R], items: list[T], jobs: int | None = None) -> list[R]:
    """Order-preserving map; runs in worker processes when ``jobs > 1``."""
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))

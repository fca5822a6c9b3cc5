"""Exception hierarchy. Each class carries the CLI exit status it maps to."""

from __future__ import annotations


class ArabidxError(Exception):
    exit_code = 1


class ConfigError(ArabidxError, ValueError):
    exit_code = 2


class InputError(ArabidxError):
    exit_code = 3


class DecodeError(InputError):
    """Raised when a file is not valid UTF-8."""

    def __init__(self, source: str, offset: int, reason: str):
        self.source = source
        self.offset = offset
        super().__init__(f"{source}: invalid UTF-8 at byte offset {offset} ({reason})")


class NoModelError(InputError):
    pass


class IndexFormatError(InputError):
    """Corrupt or version-mismatched persisted file."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class IdentityError(InputError):
    pass


class EmptyIndexError(ArabidxError):
    exit_code = 4


class EmptyAggregateError(EmptyIndexError):
    pass


class UndefinedSimilarityError(ArabidxError, ValueError):
    exit_code = 4


class IncompatibleProfileError(ArabidxError, ValueError):
    exit_code = 2


class UnsupportedVariantError(ArabidxError):
    exit_code = 2


class DuplicateDocumentError(ArabidxError):
    exit_code = 5

    def __init__(self, doc_id: str, reason: str):
        self.doc_id = doc_id
        self.reason = reason
        super().__init__(f"document {doc_id!r} already indexed ({reason})")


class StoreConflictError(ArabidxError):
    exit_code = 6

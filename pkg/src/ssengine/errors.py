"""Exception hierarchy.

Two broad families, mirrored by CLI exit codes: validation/precondition
failures (exit 1) and I/O or file-format failures (exit 2).
"""


class SSEngineError(Exception):
    """Base class for all library errors."""


class ValidationError(SSEngineError):
    """Bad input values or violated operation preconditions (exit code 1)."""


class EmptyTermError(ValidationError):
    """Term text normalized to zero words."""


class TermSizeError(ValidationError):
    """Term exceeds the word-count cap for subset enumeration."""


class UniverseMismatchError(ValidationError):
    """Set operation attempted on event spaces over different universes."""


class UndefinedProbabilityError(ValidationError):
    """Probability requested over an empty universe."""


class PreconditionError(ValidationError):
    """An audit pair or chain violates the stated hypothesis."""


class EmptyAuditError(ValidationError):
    """An audit was invoked with no pairs to test."""


class SyntheticSpecError(ValidationError):
    """Malformed synthetic-corpus specification."""


class StorageError(SSEngineError):
    """File I/O and on-disk format failures (exit code 2)."""


class IndexFormatError(StorageError):
    """Wrong magic bytes, unsupported version, or malformed structure."""


class IndexCorruptionError(StorageError):
    """Index file ends or breaks mid-record.

    ``offset`` is the byte position at which the read failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset

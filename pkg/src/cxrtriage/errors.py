"""Exception types shared across the toolkit.

``ValidationError`` marks problems with user-supplied inputs (files, flags,
parameter values); the CLI maps it to exit code 2. Anything else escaping a
command is an internal error (exit code 1).
"""


class CxrTriageError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(CxrTriageError):
    """Invalid user input: bad file, bad value, bad combination of flags."""


class LexiconError(ValidationError):
    """Lexicon file violates the format or the lexicon invariants."""


class SchemaError(ValidationError):
    """A records file does not match the expected CSV schema."""

    def __init__(self, message: str, *, row: int | None = None, column: str | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.row = row
        self.column = column


class DuplicateIdError(ValidationError):
    """Duplicate study_id values in one dataset."""

    def __init__(self, ids):
        self.ids = sorted(ids)
        super().__init__(f"duplicate study_id values: {', '.join(self.ids)}")


class EmptyDatasetError(ValidationError):
    """An operation that needs records received none."""


class MissingLabelsError(ValidationError):
    """A record required to carry labels does not."""


class DegenerateClassError(ValidationError):
    """A binary evaluation has an empty positive or negative class."""

    def __init__(self, message: str, condition=None):
        super().__init__(message)
        self.condition = condition


class ZeroBaselineError(ValidationError):
    """Relative change against a zero baseline is undefined."""


class MismatchedConditionsError(ValidationError):
    """Two evaluation reports do not cover the same conditions or dataset."""


class DomainError(ValidationError):
    """A numeric argument lies outside the function's domain."""

"""Exception hierarchy shared across the package.

ValidationError covers bad parameter values and contract violations
(CLI exit code 1); FormatError and its subclasses cover unreadable
input files (CLI exit code 2, together with OSError).
"""


class VecsimError(Exception):
    pass


class ValidationError(VecsimError):
    pass


class EmptyInputError(ValidationError):
    """Raised when an operation needs at least one sand cell and got none."""


class FormatError(VecsimError):
    """Malformed input file. ``offset`` is the byte position when known."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class TruncationError(FormatError):
    """Input file ended before the declared payload was complete."""

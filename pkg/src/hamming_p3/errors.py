"""Exception types shared across the package."""


class P3Error(Exception):
    """Base class for all errors raised by hamming_p3."""


class InputError(P3Error, ValueError):
    """Malformed or out-of-range input.

    ``line`` and ``column`` are filled in (1-based) when the error comes from
    parsing text.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class PreconditionError(P3Error, ValueError):
    """An operation was called on input that violates its precondition."""


class ContractViolation(P3Error, ValueError):
    """Input that a caller promised to satisfy (e.g. convexity) does not."""


class GuardExceeded(P3Error, MemoryError):
    """The vertex universe is larger than the configured memory guard."""


class Unsupported(P3Error, ValueError):
    """The request is well-formed but outside what the operation supports."""

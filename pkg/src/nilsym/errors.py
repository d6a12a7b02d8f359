"""Exception types shared across the package."""


class NilsymError(Exception):
    """Base class for all errors raised by nilsym."""


class MalformedInputError(NilsymError, ValueError):
    """Indices out of range, wrong lengths, unparsable text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


class InvalidAlgebraError(NilsymError, ValueError):
    """Structure constants violate the Jacobi identity."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotNilpotentError(NilsymError, ValueError):
    pass


class SizeLimitError(NilsymError, ValueError):
    """Refusal to run a computation beyond the supported desk-scale size."""


class NoLimitError(NilsymError, ValueError):
    """A diagonal contraction whose scaled brackets diverge."""

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class StructureError(NilsymError, ValueError):
    """Input form/map fails a named precondition (degenerate, not closed, ...)."""

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)

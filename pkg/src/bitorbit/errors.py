"""Exception hierarchy. Everything raised on purpose derives from BitOrbitError."""


class BitOrbitError(Exception):
    pass


class OutOfRangeError(BitOrbitError, IndexError):
    pass


class InsufficientPrefixError(BitOrbitError, ValueError):
    """An operation needs more materialized bits than it was given."""


class ProductivityError(BitOrbitError):
    """A corecursive definition stopped producing bits."""

    def __init__(self, message, stuck=()):
        super().__init__(message)
        self.stuck = tuple(stuck)


class ResourceLimitError(BitOrbitError):
    pass


class ContradictionError(BitOrbitError):
    """A property that must hold for valid input did not."""


class ExprSyntaxError(BitOrbitError, ValueError):
    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        detail = "%s at line %d, column %d" % (message, line, column)
        if self.expected:
            detail += " (expected one of: %s)" % ", ".join(self.expected)
        super().__init__(detail)


class FormatError(BitOrbitError, ValueError):
    """Malformed text in one of the line-oriented file formats."""

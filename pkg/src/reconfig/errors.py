"""Exception types shared across the package."""


class ReconfigError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ReconfigError):
    """A value violates a structural invariant (range, duplicates, arity)."""


class FormatError(ReconfigError):
    """A text document could not be parsed.  Carries the 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class PreconditionError(ReconfigError):
    """An operation was called on an input outside its stated domain."""


class ResourceLimitError(ReconfigError):
    """A solver gave up because a configured resource limit was exceeded."""

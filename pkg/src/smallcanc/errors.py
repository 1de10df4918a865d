"""Exception types shared across the package."""


class SmallCancellationError(Exception):
    """Base class for errors raised by smallcanc."""


class WordSyntaxError(SmallCancellationError, ValueError):
    """A word could not be parsed, or uses a letter outside the alphabet."""


class DegeneratePairError(SmallCancellationError, ValueError):
    """Two words are powers of the same element of the free group."""


class SearchInconclusive(SmallCancellationError):
    """A bounded search stopped before it could answer yes or no."""


class LengthCapExceeded(SmallCancellationError):
    """Constructing the requested words would exceed the configured letter cap."""

    def __init__(self, needed, cap, what="words"):
        self.needed = needed
        self.cap = cap
        super().__init__(f"{what} need {needed} letters, over the cap of {cap}")


class InvariantViolation(SmallCancellationError, RuntimeError):
    """An internal guarantee failed; carries the offending object when known."""

    def __init__(self, message, detail=None):
        self.detail = detail
        super().__init__(message)

"""Exception types shared across the toolkit."""


class BoundExceeded(RuntimeError):
    """A configured search or enumeration bound was exceeded.

    Raised instead of silently returning a possibly-wrong answer.
    """


class IncompatibleParameters(ValueError):
    """Two table elements with different (n, k) data were combined."""


class SftValidationError(ValueError):
    """An adjacency matrix failed one of the SFT admissibility conditions.

    ``condition`` names the failed check so callers can report it.
    """

    condition = "Invalid"

    def __init__(self, message, factor_index=None):
        super().__init__(message)
        self.factor_index = factor_index


class NotSquare(SftValidationError):
    condition = "NotSquare"


class NegativeEntry(SftValidationError):
    condition = "NegativeEntry"


class Reducible(SftValidationError):
    condition = "Reducible"


class PermutationMatrix(SftValidationError):
    condition = "PermutationMatrix"


class ParseError(ValueError):
    """Malformed input document."""

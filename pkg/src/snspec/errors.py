"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Arguments outside an operation's domain (bad n, malformed partition, ...)."""


class SelectorParseError(InvalidInputError):
    """A connection-set selector string could not be parsed."""

    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class CapacityError(InvalidInputError):
    """Brute-force request larger than the oracle is willing to build."""


class StructuralMismatchError(Exception):
    """Two spectra being compared do not even have the same length."""


class InternalConsistencyError(RuntimeError):
    """An invariant that should be impossible to break was broken."""


class CacheFormatError(Exception):
    """A character-table cache file has the wrong header or a corrupt body."""

"""Exception types shared across the package."""


class KbonacciError(Exception):
    """Base class for all package errors."""


class BudgetExceededError(KbonacciError):
    """A word materialization or cache grew past the configured budget."""


class OutOfIndexError(KbonacciError, LookupError):
    """A language query asked for a length beyond the indexed depth."""


class UncertifiedConfigurationError(KbonacciError, ValueError):
    """The head of a configuration does not contain its break position."""


class InconclusiveWindowError(KbonacciError):
    """A scan window was too small to decide the property."""

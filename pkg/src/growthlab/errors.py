"""Exception hierarchy shared across the package.

Every error raised on bad parameters or bad data derives from GrowthlabError,
so callers (and the command line front end) can separate "your input is wrong"
from genuine bugs.
"""


class GrowthlabError(Exception):
    """Base class for all growthlab errors."""


class DomainError(GrowthlabError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class DataError(GrowthlabError, ValueError):
    """Input data is malformed or violates a format contract."""


class EstimationError(GrowthlabError, ValueError):
    """An estimator cannot produce a valid result from the given data."""

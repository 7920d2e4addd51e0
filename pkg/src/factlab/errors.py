"""Exception types shared across the package."""


class FactlabError(Exception):
    """Base class for all package errors."""


class InvalidArgument(FactlabError, ValueError):
    """An argument lies outside the documented precondition."""


class OutOfDomain(FactlabError, ValueError):
    """A special function was evaluated outside its implemented domain."""


class OutOfRegime(FactlabError, ValueError):
    """An asymptotic evaluator was asked for a point outside its validity regime."""


class ResourceError(FactlabError, MemoryError):
    """A requested allocation exceeds the configured memory budget."""

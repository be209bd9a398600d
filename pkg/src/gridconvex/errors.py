"""Exception types shared across the package."""


class GridConvexError(Exception):
    """Base class for all package-specific failures."""


class ParameterError(GridConvexError, ValueError):
    """An argument or input violates an operation's contract."""


class GridTooLargeError(GridConvexError):
    """The requested lattice exceeds the supported total size."""


class EpsilonSearchError(GridConvexError):
    """No neighborhood radius satisfying the selection predicate was found."""

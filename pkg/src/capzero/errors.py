"""Shared exception types.

The CLI maps these onto distinct exit codes, so keep the split meaningful:
``DomainError`` for inputs outside an operation's mathematical domain,
``ConvergenceError`` for iterative procedures that failed to converge, and
``ConditioningError`` for inputs a double-precision routine must refuse.
"""


class CapzeroError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CapzeroError, ValueError):
    """The input violates a documented precondition."""


class ConvergenceError(CapzeroError, RuntimeError):
    """An iterative numerical procedure did not reach its target accuracy."""


class ConditioningError(CapzeroError, ValueError):
    """The input is too ill-conditioned for double precision arithmetic."""


class GenericityError(CapzeroError, ValueError):
    """A required selection of pairwise non-proportional zeros does not exist."""

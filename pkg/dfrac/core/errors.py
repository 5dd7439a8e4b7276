"""
Exception hierarchy for dfrac.

All errors raised by the library derive from :class:`DfracError` so callers
can catch the whole family at once. Domain problems also derive from
``ValueError`` and numerical breakdowns from ``ArithmeticError`` which keeps
them catchable by generic handlers.

Non-convergence of the iterative solvers is deliberately not an exception;
see :class:`dfrac.bvp.solvers.NoConvergence`.
"""


class DfracError(Exception):
    """Base class for every error raised by dfrac."""


class DomainError(DfracError, ValueError):
    """An argument lies outside the domain where the formula is defined."""


class DegenerateError(DomainError):
    """The closed form degenerates at this order (alpha = 2)."""


class TrivialSolutionError(DomainError):
    """The candidate solution is identically zero up to 1e-8."""


class UncertifiedSolutionError(DomainError):
    """The candidate does not satisfy the fixed-point representation."""


class LengthError(DfracError, ValueError):
    """A grid function has too few samples for the requested operator."""


class SingularSystemError(DfracError, ArithmeticError):
    """Elimination hit a pivot below the configured threshold."""


class ZeroKernelError(DfracError, ArithmeticError):
    """The kernel matrix of the eigenvalue scan is identically zero."""


class ConfigError(DfracError):
    """An environment override could not be parsed."""


class InconsistentSignError(DfracError, ArithmeticError):
    """The direct solver and the kernel disagree by more than a global sign."""

"""
Error hierarchy shared by the numerical services and the CLI.

Every error carries the process exit code the CLI reports for it:
2 usage/parameter, 3 domain/math, 4 non-convergence.
"""

from typing import Any, Optional


class QDilogError(Exception):
    """Base class for library errors."""

    exit_code: int = 3


class InvalidPrecisionError(QDilogError):
    """Requested precision is below the supported minimum."""

    exit_code = 2


class ParameterError(QDilogError):
    """Malformed or out-of-range parameter (e.g. contour abscissa outside its strip)."""

    exit_code = 2


class DomainError(QDilogError):
    """Argument outside the domain of the operation."""

    exit_code = 3


class NonFiniteError(DomainError):
    """An infinity or NaN escaped an arithmetic operation."""


class PoleError(DomainError):
    """Evaluation at (or too close to) a pole."""

    def __init__(self, message: str, pole: Any = None):
        super().__init__(message)
        self.pole = pole


class HigherOrderPoleError(DomainError):
    """Residue estimate is not stable under radius halving."""


class UnusableDataError(QDilogError):
    """Slope fit inputs are degenerate or sit at the precision floor."""

    exit_code = 3


class NonConvergenceError(QDilogError):
    """Iteration cap reached before the tail bound met the tolerance."""

    exit_code = 4

    def __init__(
        self,
        message: str,
        partial_sum: Any = None,
        terms_used: int = 0,
        tail_bound: Optional[Any] = None
    ):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.terms_used = terms_used
        self.tail_bound = tail_bound


class DivergenceError(NonConvergenceError):
    """Quadrature samples do not decay along the contour."""

"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "CherednikKitError",
    "PoleError",
    "ConvergenceError",
    "QuadratureError",
    "DomainError",
    "ParameterError",
]


class CherednikKitError(Exception):
    """Base class for every error raised by this package."""


class PoleError(CherednikKitError, ValueError):
    """A Gamma factor (or a function built from one) was evaluated at a pole."""


class ConvergenceError(CherednikKitError, ArithmeticError):
    """A series did not converge within its term budget, or no transformation
    maps the argument into the convergent region."""


class DomainError(CherednikKitError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class ParameterError(CherednikKitError, ValueError):
    """Parameter combination is outside the supported range."""


class QuadratureError(CherednikKitError, ArithmeticError):
    """Requested quadrature tolerance was not met.

    Carries the best available estimate and the last observed error bound so
    callers can decide whether to accept the value anyway.
    """

    def __init__(self, message: str, best_estimate=None, error_bound=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound

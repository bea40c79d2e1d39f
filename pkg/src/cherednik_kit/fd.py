r"""Central finite-difference derivatives with optional Richardson refinement.

Used wherever an identity involves a true derivative of a numerically
defined function (differential-difference operators, spectral identities,
Rodrigues-type checks), so the differentiation scheme is part of the
contract: order 2 or 4 central stencils with a caller-chosen step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

__all__ = ["FiniteDifferenceScheme", "derivative", "derivative_richardson"]


@dataclass(frozen=True)
class FiniteDifferenceScheme:
    """Central-stencil order (2 or 4) and step size."""

    order: int = 4
    step: float = 1e-4

    def __post_init__(self) -> None:
        if self.order not in (2, 4):
            raise ParameterError("finite-difference order must be 2 or 4")
        if not (1e-6 <= self.step <= 1e-2):
            raise ParameterError("finite-difference step must lie in [1e-6, 1e-2]")


DEFAULT_SCHEME = FiniteDifferenceScheme()


def _stencil(f, x: float, h: float, order: int):
    if order == 2:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)


def derivative(f, x: float, scheme: FiniteDifferenceScheme = DEFAULT_SCHEME):
    """Central finite-difference approximation of f'(x)."""
    return _stencil(f, x, scheme.step, scheme.order)


def derivative_richardson(f, x: float, scheme: FiniteDifferenceScheme = DEFAULT_SCHEME):
    """One Richardson extrapolation step over :func:`derivative`.

    Combines the stencil at steps h and h/2, cancelling the leading error
    term (h^2 for order 2, h^4 for order 4).
    """
    d_h = _stencil(f, x, scheme.step, scheme.order)
    d_h2 = _stencil(f, x, 0.5 * scheme.step, scheme.order)
    k = 2 ** scheme.order
    return (k * d_h2 - d_h) / (k - 1.0)

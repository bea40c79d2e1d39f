r"""The rational (Dunkl) limit of the trigonometric theory.

As epsilon -> 0 the Opdam function G_{lambda/epsilon}^{(alpha,alpha)}
(epsilon x) tends to the one-dimensional Dunkl kernel

    E_alpha(i lambda, x) = j_alpha(lambda x)
                           + (i lambda x / (2(alpha+1))) j_{alpha+1}(lambda x),

and the rescaled product kernel epsilon^{2 alpha+2} K_{alpha,alpha}
(epsilon x, epsilon y, epsilon z) tends to the rational kernel k_alpha,
carrying the product formula

    E_alpha(i lambda, x) E_alpha(i lambda, y)
        = int_R E_alpha(i lambda, z) k_alpha(x,y,z) |z|^{2 alpha+1} dz

along with it.  This module provides E_alpha, k_alpha (in both displayed
forms), the product-formula residual, and ``LimitReport`` records of the
epsilon-convergence.

Both limits converge at rate O(epsilon): the G-limit error is dominated by
the real term ((2 alpha+1)/(4(alpha+1))) sinh(2 epsilon x)
phi^{(alpha+1,alpha+1)}, the kernel limit by the factor e^{epsilon(x+y-z)}.
The reports therefore record plain errors and leave monotonicity and
smallness assertions to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError
from .jacobi import Params, _m_equal
from .opdam import G, kernel_K
from .quadrature import QuadratureSpec, integrate
from .specfun import bessel_j_norm

__all__ = [
    "LimitReport",
    "dunkl_E",
    "sigma_rational",
    "dunkl_kernel_k",
    "product_check_dunkl",
    "rational_limit_G",
    "rational_limit_kernel",
    "rational_limit_product",
]

_DEFAULT_EPSILONS = (0.2, 0.1, 0.05, 0.02)
# lambda/epsilon arithmetic below this point loses too many digits; the
# rate of the limits is O(epsilon) anyway, so nothing is gained.
_MIN_EPSILON_G = 0.02


@dataclass(frozen=True)
class LimitReport:
    """Error record of an epsilon -> 0 limit along decreasing epsilons."""

    epsilons: tuple
    errors: tuple

    def __post_init__(self) -> None:
        eps = tuple(float(e) for e in self.epsilons)
        errs = tuple(float(e) for e in self.errors)
        if len(eps) != len(errs):
            raise ParameterError("epsilons and errors must have equal length")
        if not eps:
            raise ParameterError("need at least one epsilon")
        if any(e <= 0.0 for e in eps):
            raise ParameterError("epsilons must be positive")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ParameterError("epsilons must be strictly decreasing")
        if any(e < 0.0 for e in errs):
            raise ParameterError("errors must be nonnegative")
        object.__setattr__(self, "epsilons", eps)
        object.__setattr__(self, "errors", errs)

    @property
    def errors_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))

    @property
    def final_error(self) -> float:
        return self.errors[-1]


def _j_norm(alpha: float, u) -> complex:
    """Normalized Bessel j_alpha at a possibly complex argument."""
    u = complex(u)
    if u.imag == 0.0:
        return complex(bessel_j_norm(alpha, u.real))
    q = 0.25 * u * u
    total = 1.0 + 0j
    term = 1.0 + 0j
    for m in range(400):
        term *= -q / ((m + 1.0) * (alpha + 1.0 + m))
        total += term
        if abs(term) <= 1e-17 * (1.0 + abs(total)):
            return total
    raise ConvergenceError(f"normalized Bessel series did not settle at u={u}")


def dunkl_E(alpha: float, lam, x: float) -> complex:
    """Dunkl kernel E_alpha(i lambda, x) in dimension one.

    E_alpha(i lambda, x) = j_alpha(lambda x)
        + (i lambda x / (2(alpha+1))) j_{alpha+1}(lambda x).
    Equals 1 at lambda = 0 or x = 0.
    """
    if not alpha > -0.5:
        raise ParameterError("need alpha > -1/2")
    lam = complex(lam)
    u = lam * float(x)
    if u == 0.0:
        return 1.0 + 0.0j
    return _j_norm(alpha, u) \
        + 1j * u / (2.0 * (alpha + 1.0)) * _j_norm(alpha + 1.0, u)


def _E_grid(alpha: float, lam: complex, zs) -> np.ndarray:
    zs = np.asarray(zs, dtype=float)
    return np.array([dunkl_E(alpha, lam, float(t)) for t in zs.ravel()],
                    dtype=complex).reshape(zs.shape)


def sigma_rational(x: float, y: float, z: float) -> float:
    """varsigma_{x,y,z} = (x^2 + y^2 - z^2)/(2xy), and 0 when xy = 0."""
    if x * y == 0.0:
        return 0.0
    return (x * x + y * y - z * z) / (2.0 * x * y)


def dunkl_kernel_k(alpha: float, x: float, y: float, z: float,
                   form: str = "cubic") -> float:
    """Rational product kernel k_alpha(x,y,z); 0 outside ||x|-|y|| < |z| < |x|+|y|.

    Two algebraically equal forms are implemented:

    - ``"cubic"``:  2^{-2 alpha - 1} M_alpha
        [(x+y+z)(-x+y+z)(x-y+z)(x+y-z)]^{alpha - 1/2} / |xyz|^{2 alpha}
        * (x+y+z)(-x+y+z)(x-y+z) / (xyz),
    - ``"sigma"``:  2^{-2 alpha} M_alpha
        [1 - varsigma_{x,y,z} + varsigma_{z,y,x} + varsigma_{x,z,y}]
        * [...]^{alpha-1/2} / |xyz|^{2 alpha},

    M_alpha = Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2)); their equality is
    the rational analogue of the sinh-product identity:
    1 - varsigma_{x,y,z} + varsigma_{z,y,x} + varsigma_{x,z,y}
        = (x+y+z)(-x+y+z)(x-y+z)/(2xyz).
    """
    if not alpha > -0.5:
        raise ParameterError("need alpha > -1/2")
    if form not in ("cubic", "sigma"):
        raise ParameterError(f"unknown kernel form {form!r}")
    if x == 0.0 or y == 0.0 or z == 0.0:
        raise DomainError("k_alpha needs x, y, z != 0")
    ax, ay, az = abs(x), abs(y), abs(z)
    if not abs(ax - ay) < az < ax + ay:
        return 0.0
    quart = ((x + y) ** 2 - z * z) * (z * z - (x - y) ** 2)
    lead = 2.0 ** (-2.0 * alpha - 1.0) * _m_equal(alpha) \
        * quart ** (alpha - 0.5) * (ax * ay * az) ** (-2.0 * alpha)
    if form == "cubic":
        bracket = (x + y + z) * (-x + y + z) * (x - y + z) / (x * y * z)
    else:
        bracket = 2.0 * (1.0 - sigma_rational(x, y, z)
                         + sigma_rational(z, y, x) + sigma_rational(x, z, y))
    return lead * bracket


def _rational_integral(alpha: float, x: float, y: float,
                       f: Callable[[np.ndarray], np.ndarray],
                       max_nodes: int = 4096):
    """int f(z) k_alpha(x,y,z) |z|^{2 alpha+1} dz over both support components.

    The boundary factor ((|z|-d)(s-|z|))^{alpha-1/2} of k_alpha is absorbed
    into a Gauss-Jacobi rule; when the support touches z = 0 (|x| = |y|) the
    inner exponent is promoted to 2 alpha + 1, the vanishing order of
    k |z|^{2 alpha+1} there.
    """
    ax, ay = abs(x), abs(y)
    d, s = abs(ax - ay), ax + ay
    e_out = alpha - 0.5
    e_in = 2.0 * alpha + 1.0 if d == 0.0 else e_out
    spec = QuadratureSpec(family="gauss-jacobi", max_nodes=max_nodes,
                          abs_tol=1e-9, rel_tol=1e-9,
                          endpoint_exponents=(e_in, e_out))
    lead = 2.0 ** (-2.0 * alpha - 1.0) * _m_equal(alpha)
    total = 0.0

    for sign in (1.0, -1.0):
        def smooth(w, _sign=sign):
            z = _sign * w
            reduced = lead * ((w + d) * (s + w)) ** (alpha - 0.5) \
                * (ax * ay * w) ** (-2.0 * alpha) \
                * (x + y + z) * (-x + y + z) * (x - y + z) / (x * y * z)
            vals = f(z) * reduced * w ** (2.0 * alpha + 1.0)
            if e_in != e_out:
                vals = vals * (w - d) ** (e_out - e_in)
            return vals

        total = total + integrate(smooth, d, s, spec)
    return total


def product_check_dunkl(alpha: float, lam, x: float, y: float,
                        max_nodes: int = 4096) -> float:
    """Residual |E(i lam, x) E(i lam, y) - int E(i lam, z) k_alpha |z|^{2a+1} dz|.

    At lambda = 0 this reduces to |1 - mass| of the rational kernel measure.
    """
    if not alpha > -0.5:
        raise ParameterError("need alpha > -1/2")
    if x == 0.0 or y == 0.0:
        raise DomainError("product check needs x, y != 0")
    lam = complex(lam)
    lhs = dunkl_E(alpha, lam, x) * dunkl_E(alpha, lam, y)
    rhs = _rational_integral(alpha, x, y,
                             lambda z: _E_grid(alpha, lam, z), max_nodes)
    return abs(lhs - rhs)


def _checked_epsilons(epsilons: Sequence[float], floor: float = 0.0) -> tuple:
    eps = tuple(float(e) for e in epsilons)
    if floor and any(e < floor for e in eps):
        raise ParameterError(
            f"epsilon below {floor} is not attempted: lambda/epsilon "
            "arithmetic loses too many digits at double precision")
    return eps


def rational_limit_G(alpha: float, lam, x: float,
                     epsilons: Sequence[float] = _DEFAULT_EPSILONS) -> LimitReport:
    """Errors |G_{lambda/eps}^{(alpha,alpha)}(eps x) - E_alpha(i lambda, x)|.

    The convergence rate is O(epsilon), with linear coefficient
    (2 alpha + 1) x j_{alpha+1}(lambda x) / (2 (alpha + 1)) coming from the
    real part of the odd term of G.
    """
    p = Params(float(alpha), float(alpha))
    lam = complex(lam)
    eps = _checked_epsilons(epsilons, floor=_MIN_EPSILON_G)
    target = dunkl_E(p.alpha, lam, x)
    errors = tuple(abs(G(p, lam / e, e * x) - target) for e in eps)
    return LimitReport(eps, errors)


def rational_limit_kernel(alpha: float, x: float, y: float, z: float,
                          epsilons: Sequence[float] = _DEFAULT_EPSILONS
                          ) -> LimitReport:
    """Errors |epsilon^{2 alpha+2} K_{alpha,alpha}(eps x, eps y, eps z) - k_alpha|.

    Outside the open triangle both kernels vanish and every error is 0.
    The relative error inside is (x+y-z) epsilon + O(epsilon^2) from the
    factor e^{epsilon(x+y-z)} of the trigonometric kernel, so it need not be
    monotone where the two terms compete.
    """
    a = float(alpha)
    p = Params(a, a)
    eps = _checked_epsilons(epsilons)
    target = dunkl_kernel_k(a, x, y, z)
    errors = tuple(
        abs(e ** (2.0 * a + 2.0) * kernel_K(p, e * x, e * y, e * z) - target)
        for e in eps)
    return LimitReport(eps, errors)


def rational_limit_product(alpha: float, lam, x: float, y: float,
                           epsilons: Sequence[float] = (0.2, 0.1, 0.05),
                           max_nodes: int = 4096) -> LimitReport:
    """Errors |G_{lam/eps}(eps x) G_{lam/eps}(eps y) - int E k |z|^{2a+1} dz|.

    The rescaled left-hand side of the trigonometric product formula
    converges to both sides of the rational one.
    """
    p = Params(float(alpha), float(alpha))
    lam = complex(lam)
    eps = _checked_epsilons(epsilons, floor=_MIN_EPSILON_G)
    rhs = _rational_integral(alpha, x, y,
                             lambda z: _E_grid(alpha, lam, z), max_nodes)
    errors = tuple(abs(G(p, lam / e, e * x) * G(p, lam / e, e * y) - rhs)
                   for e in eps)
    return LimitReport(eps, errors)

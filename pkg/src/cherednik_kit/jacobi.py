r"""Jacobi functions, the c-function, the weight A, and the product kernel W.

This module covers the symmetric (even) half of the theory: the Jacobi
function

    phi_lambda^{(alpha,beta)}(x)
        = 2F1((rho+i lambda)/2, (rho-i lambda)/2; alpha+1; -sinh^2 x),
    rho = alpha + beta + 1,

its second-kind companion Phi_lambda, the Harish-Chandra c-function, the
weight A_{alpha,beta}(z) = (sinh z)^{2 alpha+1} (cosh z)^{2 beta+1}, the
explicit product-formula kernel W_{alpha,beta}(x, y, z) supported on the
triangle ||x|-|y|| < |z| < |x|+|y|, and the ingredients of the addition
formula (modified Jacobi functions, the biorthogonal polynomials
chi_{k,l}, and their normalization constants Pi_{k,l}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError
from .quadrature import QuadratureSpec, gauss_jacobi_nodes, integrate
from .specfun import (
    DEFAULT_CONTROL,
    SeriesControl,
    gamma_quotient,
    gauss_2f1,
    gauss_2f1_grid,
    jacobi_poly,
    pochhammer,
)
from .specfun import _terminating_index

__all__ = [
    "Params",
    "TriangleTriple",
    "AdditionIndex",
    "phi",
    "phi_grid",
    "phi_second_kind",
    "c_func",
    "c_func_alt",
    "phi_asymptotic_residual",
    "phi_zero_decay_constant",
    "quadratic_transform_check",
    "weight_A",
    "b_argument",
    "triangle_sinh_product",
    "kernel_W",
    "kernel_W_chi",
    "kernel_W_equal",
    "kernel_W_half",
    "product_check_phi",
    "addition_components",
    "addition_series_check",
]

# Crossover between the two hypergeometric representations of phi.
_SMALL_X = 0.25
# Beyond |Re lambda| * tanh|x| ~ 22 the power series lose ~10 digits to
# oscillatory cancellation; switch to the exact two-term c-function
# connection, which is stable there for real lambda.
_OSCILLATORY = 22.0


@dataclass(frozen=True)
class Params:
    """Parameter pair (alpha, beta) with alpha >= beta >= -1/2, alpha > -1/2."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        a = float(self.alpha)
        b = float(self.beta)
        if not (a >= b >= -0.5 and a > -0.5):
            raise ParameterError(
                f"need alpha >= beta >= -1/2 with alpha > -1/2, got ({a}, {b})")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def rho(self) -> float:
        return self.alpha + self.beta + 1.0

    def shifted(self, da: float = 0.0, db: float = 0.0) -> "Params":
        """Parameter shift (alpha+da, beta+db), validated on construction."""
        return Params(self.alpha + da, self.beta + db)


@dataclass(frozen=True)
class TriangleTriple:
    """A triple (x, y, z) with its open-triangle membership flag."""

    x: float
    y: float
    z: float

    @property
    def inside(self) -> bool:
        d = abs(abs(self.x) - abs(self.y))
        s = abs(self.x) + abs(self.y)
        return d < abs(self.z) < s


@dataclass(frozen=True)
class AdditionIndex:
    """Index pair (k, l) of the addition series, 0 <= l <= k."""

    k: int
    l: int

    def __post_init__(self) -> None:
        if not (isinstance(self.k, int) and isinstance(self.l, int)):
            raise ParameterError("addition indices must be integers")
        if not 0 <= self.l <= self.k:
            raise ParameterError(f"need 0 <= l <= k, got (k, l)=({self.k}, {self.l})")


# ---------------------------------------------------------------------------
# Jacobi functions of the first and second kind
# ---------------------------------------------------------------------------


def phi(p: Params, lam: complex, x: float,
        control: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Jacobi function phi_lambda^{(alpha,beta)}(x); even in x and in lambda.

    Dispatch: terminating parameter -> sinh-argument series everywhere;
    |x| <= 0.25 -> sinh-argument series; otherwise the tanh-argument
    representation; large real |lambda| * tanh|x| -> 2 Re(c(lambda)
    Phi_lambda(x)), which is exact for real lambda and cancellation-free.
    """
    lam = complex(lam)
    x = abs(float(x))
    a1 = 0.5 * (p.rho + 1j * lam)
    a2 = 0.5 * (p.rho - 1j * lam)
    c = p.alpha + 1.0
    if x == 0.0:
        return 1.0 + 0.0j
    if _terminating_index(a1) is not None or _terminating_index(a2) is not None:
        return gauss_2f1(a1, a2, c, -math.sinh(x) ** 2, control)
    if (abs(lam.imag) <= 1e-10 * (1.0 + abs(lam.real))
            and abs(lam.real) * math.tanh(x) > _OSCILLATORY):
        lam_r = lam.real
        val = c_func(p, lam_r) * phi_second_kind(p, lam_r, x, control)
        return complex(2.0 * val.real, 0.0)
    if x <= _SMALL_X:
        return gauss_2f1(a1, a2, c, -math.sinh(x) ** 2, control)
    b2 = 0.5 * (p.alpha - p.beta + 1.0 + 1j * lam)
    pref = cmath.exp(-(p.rho + 1j * lam) * math.log(math.cosh(x)))
    return pref * gauss_2f1(a1, b2, c, math.tanh(x) ** 2, control)


def phi_grid(p: Params, lam: complex, xs,
             control: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """Vectorized :func:`phi` over an array of abscissas (fixed lambda)."""
    xs = np.abs(np.asarray(xs, dtype=float))
    lam = complex(lam)
    a1 = 0.5 * (p.rho + 1j * lam)
    a2 = 0.5 * (p.rho - 1j * lam)
    c = p.alpha + 1.0
    out = np.empty(xs.shape, dtype=complex)
    if _terminating_index(a1) is not None or _terminating_index(a2) is not None:
        flat = gauss_2f1_grid(a1, a2, c, -np.sinh(xs.ravel()) ** 2, control)
        return flat.reshape(xs.shape)
    flat_x = xs.ravel()
    flat = np.empty(flat_x.shape, dtype=complex)
    osc = (abs(lam.imag) <= 1e-10 * (1.0 + abs(lam.real))) \
        & (abs(lam.real) * np.tanh(flat_x) > _OSCILLATORY)
    zero = flat_x == 0.0
    small = (flat_x <= _SMALL_X) & ~osc & ~zero
    large = ~small & ~osc & ~zero
    flat[zero] = 1.0
    if small.any():
        flat[small] = gauss_2f1_grid(a1, a2, c, -np.sinh(flat_x[small]) ** 2, control)
    if large.any():
        b2 = 0.5 * (p.alpha - p.beta + 1.0 + 1j * lam)
        xl = flat_x[large]
        pref = np.exp(-(p.rho + 1j * lam) * np.log(np.cosh(xl)))
        flat[large] = pref * gauss_2f1_grid(a1, b2, c, np.tanh(xl) ** 2, control)
    for i in np.nonzero(osc)[0]:
        flat[i] = phi(p, lam, flat_x[i], control)
    return flat.reshape(xs.shape)


def phi_second_kind(p: Params, lam: complex, x: float,
                    control: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Second-kind Jacobi function Phi_lambda(x) ~ e^{(i lambda - rho) x}.

    Phi_lambda(x) = (2 cosh x)^{i lambda - rho}
                    * 2F1((rho - i lambda)/2, (alpha - beta + 1 - i lambda)/2;
                          1 - i lambda; cosh^{-2} x),  x != 0.
    """
    lam = complex(lam)
    x = abs(float(x))
    if x == 0.0:
        raise DomainError("Phi_lambda is singular at x = 0")
    c2 = 1.0 - 1j * lam
    if abs(c2.imag) < 1e-12 and abs(c2.real - round(c2.real)) < 1e-12 \
            and round(c2.real) <= 0:
        raise DomainError(f"Phi_lambda undefined at lambda={lam} (lower parameter pole)")
    a = 0.5 * (p.rho - 1j * lam)
    b = 0.5 * (p.alpha - p.beta + 1.0 - 1j * lam)
    pref = cmath.exp((1j * lam - p.rho) * math.log(2.0 * math.cosh(x)))
    return pref * gauss_2f1(a, b, c2, math.cosh(x) ** (-2.0), control)


def c_func(p: Params, lam: complex) -> complex:
    """Harish-Chandra c-function c_{alpha,beta}(lambda).

    c(lambda) = 2^{rho - i lambda} Gamma(alpha+1) Gamma(i lambda)
                / [Gamma((rho + i lambda)/2) Gamma((alpha-beta+1+i lambda)/2)].

    Raises ``PoleError`` at poles of the numerator (notably lambda = 0);
    returns 0 at zeros coming from denominator poles.
    """
    lam = complex(lam)
    il = 1j * lam
    quot = gamma_quotient(
        (il,),
        (0.5 * (p.rho + il), 0.5 * (p.alpha - p.beta + 1.0 + il)),
    )
    return cmath.exp((p.rho - il) * math.log(2.0)) * math.gamma(p.alpha + 1.0) * quot


def c_func_alt(p: Params, lam: complex) -> complex:
    """Alternate Gamma-quotient form of the c-function.

    c(lambda) = Gamma(2 alpha + 1)/Gamma(alpha + 1/2)
                * Gamma(i lambda)/Gamma(alpha - beta + i lambda)
                * Gamma((alpha - beta + i lambda)/2)/Gamma((rho + i lambda)/2).

    Equality with :func:`c_func` is the Legendre-duplication identity.
    """
    lam = complex(lam)
    il = 1j * lam
    quot = gamma_quotient(
        (il, 0.5 * (p.alpha - p.beta + il)),
        (p.alpha - p.beta + il, 0.5 * (p.rho + il)),
    )
    lead = math.gamma(2.0 * p.alpha + 1.0) / math.gamma(p.alpha + 0.5)
    return lead * quot


def phi_asymptotic_residual(p: Params, lam: complex, x: float,
                            control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Residual of phi_lambda = c(lambda) Phi_lambda + c(-lambda) Phi_{-lambda}.

    Defined for lambda outside i*Z and x != 0.
    """
    lam = complex(lam)
    if abs(lam.real) < 1e-9 and abs(lam.imag - round(lam.imag)) < 1e-9:
        raise DomainError(f"two-term asymptotic connection undefined for lambda={lam} in iZ")
    if x == 0.0:
        raise DomainError("asymptotic connection needs x != 0")
    lhs = phi(p, lam, x, control)
    rhs = c_func(p, lam) * phi_second_kind(p, lam, x, control) \
        + c_func(p, -lam) * phi_second_kind(p, -lam, x, control)
    return abs(lhs - rhs)


def phi_zero_decay_constant(p: Params) -> float:
    """Constant kappa in phi_0(x) ~ kappa * x * e^{-rho x} as x -> +infinity."""
    return 2.0 ** (p.rho + 1.0) * math.gamma(p.alpha + 1.0) / (
        math.gamma(0.5 * p.rho) * math.gamma(0.5 * (p.alpha - p.beta + 1.0)))


def quadratic_transform_check(alpha: float, lam: complex, x: float) -> float:
    """|phi_lambda^{(alpha,-1/2)}(x) - phi_{2 lambda}^{(alpha,alpha)}(x/2)|."""
    if not alpha > -0.5:
        raise ParameterError("need alpha > -1/2")
    lhs = phi(Params(alpha, -0.5), lam, x)
    rhs = phi(Params(alpha, alpha), 2.0 * complex(lam), 0.5 * x)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Weight and triangle geometry
# ---------------------------------------------------------------------------


def weight_A(p: Params, z):
    """Weight A_{alpha,beta}(z) = (sinh z)^{2 alpha+1} (cosh z)^{2 beta+1}, z >= 0."""
    z = np.asarray(z, dtype=float)
    out = np.sinh(z) ** (2.0 * p.alpha + 1.0) * np.cosh(z) ** (2.0 * p.beta + 1.0)
    return out if out.shape else float(out)


def b_argument(x: float, y: float, z: float) -> float:
    """B = (cosh^2 x + cosh^2 y + cosh^2 z - 1) / (2 cosh x cosh y cosh z).

    B lies in (0, 1) strictly inside the triangle, equals 1 on its boundary,
    and exceeds 1 outside.
    """
    chx, chy, chz = math.cosh(x), math.cosh(y), math.cosh(z)
    return (chx * chx + chy * chy + chz * chz - 1.0) / (2.0 * chx * chy * chz)


def triangle_sinh_product(x, y, z):
    """sinh(x+y+z) sinh(-x+y+z) sinh(x-y+z) sinh(x+y-z); elementwise on arrays.

    Equals 4 cosh^2 x cosh^2 y cosh^2 z (1 - B^2); positive exactly inside
    the triangle.
    """
    return (np.sinh(x + y + z) * np.sinh(-x + y + z)
            * np.sinh(x - y + z) * np.sinh(x + y - z))


def _sinhc(w):
    """sinh(w)/w, stable for small w; elementwise."""
    w = np.asarray(w, dtype=float)
    small = np.abs(w) < 1e-4
    safe = np.where(small, 1.0, w)
    out = np.where(small, 1.0 + (w * w) / 6.0 * (1.0 + (w * w) / 20.0),
                   np.sinh(safe) / safe)
    return out if out.shape else float(out)


def _triangle_reduced(x: float, y: float, z):
    """triangle_sinh_product / ((z-d)(s-z)) with the boundary zeros divided out."""
    d = abs(x - y)
    s = x + y
    return np.sinh(z + s) * np.sinh(z + d) * _sinhc(z - d) * _sinhc(s - z)


# ---------------------------------------------------------------------------
# Product kernel W
# ---------------------------------------------------------------------------


def _m_equal(alpha: float) -> float:
    # Normalizing constant of the closed-form kernel.
    return math.gamma(alpha + 1.0) / (math.sqrt(math.pi) * math.gamma(alpha + 0.5))


def _m_strict(alpha: float, beta: float) -> float:
    # Normalizing constant of the chi-integral representation (alpha > beta).
    return math.gamma(alpha + 1.0) / (
        math.sqrt(math.pi) * math.gamma(alpha - beta) * math.gamma(beta + 0.5))


def _kernel_w_reduced(p: Params, x: float, y: float, z,
                      control: SeriesControl = DEFAULT_CONTROL):
    """W(x,y,z) / ((z-d)(s-z))^{alpha-1/2} on interior z (vectorized in z).

    Splitting off the boundary factor keeps the Gauss-Jacobi quadratures of
    the product formula cancellation-free near z = d and z = s.
    """
    a, b = p.alpha, p.beta
    z = np.asarray(z, dtype=float)
    chx, chy = math.cosh(x), math.cosh(y)
    chz = np.cosh(z)
    ch_prod = chx * chy * chz
    big_b = (chx * chx + chy * chy + chz * chz - 1.0) / (2.0 * ch_prod)
    hyp = np.real(gauss_2f1_grid(a + b, a - b, a + 0.5, 0.5 * (1.0 - big_b), control))
    reduced = _triangle_reduced(x, y, z) / (4.0 * ch_prod ** 2)
    sh_prod = math.sinh(x) * math.sinh(y) * np.sinh(z)
    return (_m_equal(a) * ch_prod ** (a - b - 1.0) * sh_prod ** (-2.0 * a)
            * reduced ** (a - 0.5) * hyp)


def kernel_W(p: Params, x: float, y: float, z: float,
             control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Closed-form product kernel W_{alpha,beta}(x, y, z).

    W = M_alpha (cosh x cosh y cosh z)^{alpha-beta-1}
        (sinh x sinh y sinh z)^{-2 alpha} (1 - B^2)^{alpha-1/2}
        * 2F1(alpha+beta, alpha-beta; alpha+1/2; (1-B)/2),
    M_alpha = Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2)),

    inside the open triangle ||x|-|y|| < |z| < |x|+|y| and 0 outside (the
    boundary value is taken as 0; it is the limit whenever alpha-beta >= 1).
    The hypergeometric argument (1-B)/2 stays in [0, 1/2), so the series
    always converges; at alpha = beta the series terminates and W reduces to
    the equal-parameter kernel.
    """
    x, y, z = abs(x), abs(y), abs(z)
    if not TriangleTriple(x, y, z).inside:
        return 0.0
    d, s = abs(x - y), x + y
    val = _kernel_w_reduced(p, x, y, np.asarray([z]), control)[0]
    return float(((z - d) * (s - z)) ** (p.alpha - 0.5) * val)


def kernel_W_chi(p: Params, x: float, y: float, z: float, n_nodes: int = 160) -> float:
    """W via its chi-integral representation (independent route, alpha > beta).

    W = 2 M_{alpha,beta} (sinh x sinh y sinh z)^{-2 alpha}
        * int_0^pi g(x,y,z,chi)_+^{alpha-beta-1} (sin chi)^{2 beta} dchi,
    g(x,y,z,chi) = 1 - cosh^2 x - cosh^2 y - cosh^2 z
                   + 2 cosh x cosh y cosh z cos chi.

    The substitution u = cos chi turns the positive part into the interval
    [B, 1] with endpoint weights (u-B)^{alpha-beta-1} (1-u)^{beta-1/2}, which
    a Gauss-Jacobi rule integrates exactly up to the smooth remaining factor
    (1+u)^{beta-1/2}.
    """
    if not p.alpha > p.beta > -0.5:
        raise ParameterError("chi-integral form needs alpha > beta > -1/2")
    x, y, z = abs(x), abs(y), abs(z)
    if not TriangleTriple(x, y, z).inside:
        return 0.0
    a, b = p.alpha, p.beta
    big_b = b_argument(x, y, z)
    ch_prod = math.cosh(x) * math.cosh(y) * math.cosh(z)
    u, w = gauss_jacobi_nodes(n_nodes, big_b, 1.0, (a - b - 1.0, b - 0.5))
    vals = (2.0 * ch_prod) ** (a - b - 1.0) * (1.0 + u) ** (b - 0.5)
    integral = float(np.dot(w, vals))
    sh_prod = math.sinh(x) * math.sinh(y) * math.sinh(z)
    return 2.0 * _m_strict(a, b) * sh_prod ** (-2.0 * a) * integral


def kernel_W_equal(alpha: float, x: float, y: float, z: float) -> float:
    """Equal-parameter kernel W_{alpha,alpha}(x, y, z).

    W_{alpha,alpha} = 2^{4 alpha+1} M_alpha
        [sinh 2x sinh 2y sinh 2z]^{-2 alpha}
        [sinh(x+y+z) sinh(-x+y+z) sinh(x-y+z) sinh(x+y-z)]^{alpha-1/2}
    inside the triangle, 0 outside.
    """
    if not alpha > -0.5:
        raise ParameterError("need alpha > -1/2")
    x, y, z = abs(x), abs(y), abs(z)
    if not TriangleTriple(x, y, z).inside:
        return 0.0
    quart = float(triangle_sinh_product(x, y, z))
    s2 = math.sinh(2.0 * x) * math.sinh(2.0 * y) * math.sinh(2.0 * z)
    return 2.0 ** (4.0 * alpha + 1.0) * _m_equal(alpha) * s2 ** (-2.0 * alpha) \
        * quart ** (alpha - 0.5)


def kernel_W_half(alpha: float, x: float, y: float, z: float) -> float:
    """Kernel at beta = -1/2 via the quadratic transformation.

    W_{alpha,-1/2}(x, y, z) = 2^{-2 alpha - 2} W_{alpha,alpha}(x/2, y/2, z/2).

    The coefficient is forced by the change of variables in the product
    formula: the half-angle substitution contributes 2^{-2 alpha - 1} from
    A_{alpha,alpha}(z/2) = 2^{-2 alpha - 1} A_{alpha,-1/2}(z) and another 1/2
    from dz, and mass normalization int W A dz = 1 pins it uniquely.
    """
    return 2.0 ** (-2.0 * alpha - 2.0) * kernel_W_equal(alpha, 0.5 * x, 0.5 * y, 0.5 * z)


def _product_quad_spec(p: Params, max_nodes: int = 4096) -> QuadratureSpec:
    e = p.alpha - 0.5
    return QuadratureSpec(family="gauss-jacobi", max_nodes=max_nodes,
                          abs_tol=1e-11, rel_tol=1e-11,
                          endpoint_exponents=(e, e))


def product_check_phi(p: Params, lam: complex, x: float, y: float,
                      control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Residual |phi(x) phi(y) - int_d^s phi(z) W(x,y,z) A(z) dz|, x, y > 0.

    Uses the closed-form kernel for alpha > beta and the equal-parameter
    kernel for alpha = beta, with the boundary factor ((z-d)(s-z))^{alpha-1/2}
    absorbed into a Gauss-Jacobi rule.
    """
    x, y = abs(x), abs(y)
    if x == 0.0 or y == 0.0:
        raise DomainError("product formula needs x, y != 0")
    lam = complex(lam)
    d, s = abs(x - y), x + y
    lhs = phi(p, lam, x, control) * phi(p, lam, y, control)
    a = p.alpha

    if p.alpha == p.beta:
        lead = 2.0 ** (4.0 * a + 1.0) * _m_equal(a) \
            * (math.sinh(2.0 * x) * math.sinh(2.0 * y)) ** (-2.0 * a)

        def w_red(z):
            red = _triangle_reduced(x, y, z) ** (a - 0.5)
            return lead * np.sinh(2.0 * z) ** (-2.0 * a) * red
    else:
        def w_red(z):
            return _kernel_w_reduced(p, x, y, z, control)

    def f(z):
        return phi_grid(p, lam, z, control) * w_red(z) * weight_A(p, z)

    val = integrate(f, d, s, _product_quad_spec(p))
    return abs(lhs - val)


# ---------------------------------------------------------------------------
# Addition formula
# ---------------------------------------------------------------------------


def _chi_eval(p: Params, k: int, l: int, r: float, t: float) -> float:
    """Biorthogonal polynomial chi_{k,l}(r, psi) with t = cos psi."""
    a, b = p.alpha, p.beta
    kl = k - l
    rad = (math.factorial(l) / pochhammer(a - b, l)) \
        * float(jacobi_poly(l, a - b - 1.0, b + kl, 2.0 * r * r - 1.0))
    ang = (math.factorial(kl) / pochhammer(b + 0.5, kl)) \
        * float(jacobi_poly(kl, b - 0.5, b - 0.5, t))
    return r ** kl * rad * ang


@lru_cache(maxsize=512)
def _chi_norm_integral(alpha: float, beta: float, k: int, l: int) -> float:
    """1 / int_0^1 int_0^pi chi_{k,l}^2 dm_{alpha,beta}.

    dm = 2 M_{alpha,beta} (1-r^2)^{alpha-beta-1} (r sin psi)^{2 beta} r dr dpsi
    is a probability measure; the double integral is evaluated exactly by
    Gauss-Jacobi rules in s = 2r^2 - 1 and t = cos psi.  At (k,l)=(0,0) this
    equals Pi_{0,0} = 1; for higher indices it is only the chi-normalization,
    not the series weight Pi_{k,l}.
    """
    a, b = alpha, beta
    kl = k - l
    n = k + 4
    s_nodes, s_w = gauss_jacobi_nodes(n, -1.0, 1.0, (b, a - b - 1.0))
    t_nodes, t_w = gauss_jacobi_nodes(n, -1.0, 1.0, (b - 0.5, b - 0.5))
    r = np.sqrt(0.5 * (1.0 + s_nodes))
    rad = (math.factorial(l) / pochhammer(a - b, l)) \
        * jacobi_poly(l, a - b - 1.0, b + kl, s_nodes) * r ** kl
    ang = (math.factorial(kl) / pochhammer(b + 0.5, kl)) \
        * jacobi_poly(kl, b - 0.5, b - 0.5, t_nodes)
    r_int = 2.0 ** (-a - 1.0) * float(np.dot(s_w, rad ** 2))
    t_int = float(np.dot(t_w, ang ** 2))
    total = 2.0 * _m_strict(a, b) * r_int * t_int
    return 1.0 / total


def _pi_weight(p: Params, k: int, l: int) -> float:
    """Series weight Pi_{k,l} of the addition expansion.

    Pi_{k,l} = 2 (alpha+k+l)(beta+k-l) / ((alpha+k)(2 beta+k-l))
               * (alpha+1)_k (alpha-beta)_l (2 beta+1)_{k-l}
               / ((beta+1)_k  l! (k-l)!).

    Pi_{0,0} = 1, matching the defining orthogonality integral for
    chi_{0,0} = 1 against the probability measure dm.
    """
    a, b = p.alpha, p.beta
    m = k - l
    lead = 2.0 * (a + k + l) * (b + m) / ((a + k) * (2.0 * b + m))
    return lead * pochhammer(a + 1.0, k) * pochhammer(a - b, l) \
        * pochhammer(2.0 * b + 1.0, m) \
        / (pochhammer(b + 1.0, k) * math.factorial(l) * math.factorial(m))


def addition_components(p: Params, idx: AdditionIndex, lam: complex, x: float,
                        r: float, psi: float,
                        control: SeriesControl = DEFAULT_CONTROL):
    """One term's ingredients of the addition series.

    Returns (phi_mod, chi, pi_norm) where

    phi_mod = 2^{-2k} Gamma(alpha+1)/Gamma(alpha+k+l+1)
              ((rho - i lambda)/2)_k ((alpha-beta+1-i lambda)/2)_l
              (2 sinh x)^{k+l} (2 cosh x)^{k-l}
              phi_lambda^{(alpha+k+l, beta+k-l)}(x),

    chi = chi_{k,l}(r, psi) and pi_norm = Pi_{k,l}.  Requires alpha > beta.
    """
    if not p.alpha > p.beta:
        raise ParameterError("addition components need alpha > beta")
    k, l = idx.k, idx.l
    lam = complex(lam)
    shifted = Params(p.alpha + k + l, p.beta + k - l)
    ratio = 2.0 ** (-2 * k) \
        * (math.gamma(p.alpha + 1.0) / math.gamma(p.alpha + k + l + 1.0)) \
        * pochhammer(0.5 * (p.rho - 1j * lam), k) \
        * pochhammer(0.5 * (p.alpha - p.beta + 1.0 - 1j * lam), l)
    phi_mod = ratio * (2.0 * math.sinh(x)) ** (k + l) \
        * (2.0 * math.cosh(x)) ** (k - l) * phi(shifted, lam, x, control)
    chi = _chi_eval(p, k, l, r, math.cos(psi))
    pi_norm = _pi_weight(p, k, l)
    return phi_mod, chi, pi_norm


def addition_series_check(p: Params, lam: complex, x: float, y: float,
                          r: float, psi: float, k_max: int = 12,
                          control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Residual of the truncated addition formula.

    |phi_lambda(arccosh|gamma|) - sum_{0<=l<=k<=k_max} phi_{lambda,k,l}(x)
     phi_{-lambda,k,l}(-y) chi_{k,l}(r,psi) Pi_{k,l}|,
    gamma = cosh x cosh y + sinh x sinh y r e^{i psi}.
    """
    lam = complex(lam)
    gamma = math.cosh(x) * math.cosh(y) \
        + math.sinh(x) * math.sinh(y) * r * cmath.exp(1j * psi)
    z = math.acosh(max(1.0, abs(gamma)))
    lhs = phi(p, lam, z, control)
    acc = 0.0 + 0.0j
    for k in range(k_max + 1):
        for l in range(k + 1):
            idx = AdditionIndex(k, l)
            pm_x, chi, pi_n = addition_components(p, idx, lam, x, r, psi, control)
            pm_y, _, _ = addition_components(p, idx, -lam, -y, r, psi, control)
            acc += pm_x * pm_y * chi * pi_n
    return abs(lhs - acc)

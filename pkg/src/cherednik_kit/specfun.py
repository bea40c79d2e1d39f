r"""Scalar special-function kernels everything else builds on.

Log-Gamma, Pochhammer symbols, the Gauss hypergeometric function, and the
classical polynomial families (Jacobi, Wilson, Laguerre) plus the normalized
Bessel function ``j_alpha``.

The ``2F1`` evaluator is written in-house because the rest of the package
needs tight control that a generic routine does not give:

* terminating parameter choices must come out as exact finite sums (the
  same summation order every time, so results are reproducible bit for bit);
* arguments range over ``(-inf, 1)``, reached through the Pfaff and
  ``z -> 1-z`` connection transformations, including the logarithmic
  connection cases when ``c - a - b`` is an integer;
* upper parameters are complex (spectral parameter ``i*lambda``) while the
  argument stays real.

All Gamma ratios go through ``exp(sum +- ln_gamma)`` so that moderately
large parameters do not overflow intermediate factors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma, loggamma, rgamma

from .errors import ConvergenceError, ParameterError, PoleError

__all__ = [
    "SeriesControl",
    "DEFAULT_CONTROL",
    "ln_gamma",
    "gamma_quotient",
    "pochhammer",
    "gauss_2f1",
    "gauss_2f1_grid",
    "jacobi_poly",
    "wilson_poly",
    "wilson_poly_coefficients",
    "bessel_j_norm",
    "laguerre_poly",
]

_EPS = float(np.finfo(float).eps)

# Radius inside which the defining series is summed directly.  Chosen above
# 0.5 so the direct and transformed branches overlap for consistency tests.
_SERIES_RADIUS = 0.55

# |c-a-b - m| below which the integer-gap (logarithmic) connection formula
# is used.  The exceptional cases this library actually hits are exact
# integers; nearby non-integer gaps would suffer cancellation either way.
_INTEGER_GAP_TOL = 1e-9


@dataclass(frozen=True)
class SeriesControl:
    """Termination policy for the infinite-series evaluations."""

    max_terms: int = 2000
    abs_tol: float = 1e-15
    rel_tol: float = 1e-13

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ParameterError("max_terms must be a positive integer")
        floor = 8.0 * 0.5 * _EPS  # eight times the unit roundoff
        if self.abs_tol < floor or self.rel_tol < floor:
            raise ParameterError("series tolerances below 8x unit roundoff are not honoured")


DEFAULT_CONTROL = SeriesControl()


def _nonpositive_integer(z: complex) -> bool:
    """True iff z is exactly one of 0, -1, -2, ... (a Gamma pole)."""
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real)


def _terminating_index(a: complex) -> int | None:
    """n >= 0 such that a = -n, or None if the parameter does not terminate."""
    a = complex(a)
    if abs(a.imag) >= 1e-14:
        return None
    r = round(a.real)
    if r > 0 or a.real != r:
        return None
    return -int(r)


def ln_gamma(z) -> complex:
    """Principal branch of log Gamma; raises at the poles."""
    if _nonpositive_integer(z):
        raise PoleError(f"log-Gamma evaluated at pole z={z}")
    return complex(loggamma(complex(z)))


def gamma_quotient(numerators, denominators) -> complex:
    """exp(sum ln_gamma(numerators) - sum ln_gamma(denominators)).

    A pole in a numerator raises ``PoleError``; a pole in a denominator makes
    the quotient vanish (1/Gamma is entire).  Simultaneous poles are not
    resolved: the numerator check fires first.
    """
    for z in numerators:
        if _nonpositive_integer(z):
            raise PoleError(f"Gamma pole in numerator factor at {z}")
    if any(_nonpositive_integer(z) for z in denominators):
        return 0j
    acc = 0j
    for z in numerators:
        acc += complex(loggamma(complex(z)))
    for z in denominators:
        acc -= complex(loggamma(complex(z)))
    return cmath.exp(acc)


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n != int(n) or n < 0:
        raise ParameterError("pochhammer order must be a nonnegative integer")
    out = 1.0
    for k in range(int(n)):
        out = out * (a + k)
    return out


# ---------------------------------------------------------------------------
# Gauss hypergeometric function
# ---------------------------------------------------------------------------


def _finite_sum(a: complex, b: complex, c: complex, z, n: int):
    """Terminating series: sum_{k=0}^{n} (a)_k (b)_k / ((c)_k k!) z^k.

    Works elementwise when ``z`` is an ndarray.
    """
    if isinstance(z, np.ndarray):
        total = np.ones(z.shape, dtype=complex)
        term = np.ones(z.shape, dtype=complex)
    else:
        total = 1.0 + 0j
        term = 1.0 + 0j
    for k in range(n):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
    return total


def _series(a: complex, b: complex, c: complex, z: complex,
            control: SeriesControl) -> complex:
    total = 1.0 + 0j
    term = 1.0 + 0j
    quiet = 0
    for k in range(control.max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) <= control.abs_tol + control.rel_tol * abs(total):
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise ConvergenceError(
        f"2F1 series did not settle within {control.max_terms} terms (|z|={abs(z):.3g})"
    )


def _series_grid(a: complex, b: complex, c: complex, z: np.ndarray,
                 control: SeriesControl) -> np.ndarray:
    total = np.ones(z.shape, dtype=complex)
    term = np.ones(z.shape, dtype=complex)
    quiet = np.zeros(z.shape, dtype=np.int8)
    for k in range(control.max_terms):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
        settled = np.abs(term) <= control.abs_tol + control.rel_tol * np.abs(total)
        quiet = np.where(settled, quiet + 1, 0)
        if np.all(quiet >= 2):
            return total
    raise ConvergenceError(
        f"vector 2F1 series did not settle within {control.max_terms} terms"
    )


def _psi(z) -> complex:
    return complex(digamma(complex(z)))


def _log_connection(a: complex, b: complex, c: complex, z, m: int,
                    control: SeriesControl):
    """Connection through 1-z when c-a-b is the nonnegative integer m.

    Classical logarithmic variant of the two-series connection formula.
    ``z`` may be an ndarray (all entries must satisfy |1-z| <= series radius);
    a and b must not be nonpositive integers (handled by the caller).
    """
    grid = isinstance(z, np.ndarray)
    u = 1.0 - (z if grid else complex(z))
    lnu = np.log(u.astype(complex)) if grid else cmath.log(u)

    def ones():
        return np.ones(u.shape, dtype=complex) if grid else 1.0 + 0j

    def zeros():
        return np.zeros(u.shape, dtype=complex) if grid else 0j

    if m == 0:
        coef = cmath.exp(ln_gamma(c)) * complex(rgamma(complex(a))) * complex(rgamma(complex(b)))
        psi_n1 = _psi(1.0)
        psi_an = _psi(a)
        psi_bn = _psi(b)
        term = ones()
        total = zeros()
        quiet = np.zeros(u.shape, dtype=np.int8) if grid else 0
        for n in range(control.max_terms):
            piece = term * (2.0 * psi_n1 - psi_an - psi_bn - lnu)
            total = total + piece
            small = np.abs(piece) <= control.abs_tol + control.rel_tol * np.abs(total) \
                if grid else abs(piece) <= control.abs_tol + control.rel_tol * abs(total)
            if grid:
                quiet = np.where(small, quiet + 1, 0)
                if np.all(quiet >= 2):
                    return coef * total
            else:
                quiet = quiet + 1 if small else 0
                if quiet >= 2:
                    return coef * total
            psi_n1 += 1.0 / (n + 1.0)
            psi_an += 1.0 / (a + n)
            psi_bn += 1.0 / (b + n)
            term = term * ((a + n) * (b + n) / ((n + 1.0) ** 2)) * u
        raise ConvergenceError("logarithmic 2F1 connection series did not settle")

    # m >= 1: finite polynomial part plus a logarithmic series.
    pref_fin = cmath.exp(ln_gamma(float(m)) + ln_gamma(c) - ln_gamma(a + m) - ln_gamma(b + m))
    fin = zeros()
    term = ones()
    for n in range(m):
        fin = fin + term
        if n < m - 1:
            term = term * ((a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n))) * u

    pref_log = -((-1.0) ** m) * cmath.exp(ln_gamma(c)) \
        * complex(rgamma(complex(a))) * complex(rgamma(complex(b)))
    psi_n1 = _psi(1.0)
    psi_nm = _psi(m + 1.0)
    psi_anm = _psi(a + m)
    psi_bnm = _psi(b + m)
    term = ones() / math.factorial(m)
    um = u ** m
    total = zeros()
    quiet = np.zeros(u.shape, dtype=np.int8) if grid else 0
    for n in range(control.max_terms):
        piece = term * (lnu - psi_n1 - psi_nm + psi_anm + psi_bnm)
        total = total + piece
        small = np.abs(piece) <= control.abs_tol + control.rel_tol * (np.abs(total) + 1e-300) \
            if grid else abs(piece) <= control.abs_tol + control.rel_tol * abs(total)
        if grid:
            quiet = np.where(small, quiet + 1, 0)
            if np.all(quiet >= 2):
                break
        else:
            quiet = quiet + 1 if small else 0
            if quiet >= 2:
                break
        psi_n1 += 1.0 / (n + 1.0)
        psi_nm += 1.0 / (m + n + 1.0)
        psi_anm += 1.0 / (a + m + n)
        psi_bnm += 1.0 / (b + m + n)
        term = term * ((a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0))) * u
    else:
        raise ConvergenceError("logarithmic 2F1 connection series did not settle")
    return pref_fin * fin + pref_log * um * total


def _connection(a: complex, b: complex, c: complex, z, control: SeriesControl,
                _dispatch):
    """2F1 through the argument 1-z (requires |1-z| <= series radius)."""
    s = c - a - b
    m = int(round(s.real))
    if abs(s - m) > _INTEGER_GAP_TOL:
        u = (1.0 - z) if isinstance(z, np.ndarray) else complex(1.0 - z)
        coef1 = cmath.exp(ln_gamma(c) + ln_gamma(s)) \
            * complex(rgamma(complex(c - a))) * complex(rgamma(complex(c - b)))
        coef2 = cmath.exp(ln_gamma(c) + ln_gamma(-s)) \
            * complex(rgamma(complex(a))) * complex(rgamma(complex(b)))
        if isinstance(z, np.ndarray):
            f1 = _series_grid(a, b, 1.0 - s, u, control)
            f2 = _series_grid(c - a, c - b, 1.0 + s, u, control)
        else:
            f1 = _series(a, b, 1.0 - s, u, control)
            f2 = _series(c - a, c - b, 1.0 + s, u, control)
        return coef1 * f1 + coef2 * u ** s * f2
    if m < 0:
        # Map to a nonnegative gap with the Euler transformation; the
        # transformed parameters may terminate, so go through the dispatcher.
        u = (1.0 - z) if isinstance(z, np.ndarray) else complex(1.0 - z)
        return u ** s * _dispatch(c - a, c - b, c, z, control)
    return _log_connection(a, b, c, z, m, control)


def gauss_2f1(a, b, c, z, control: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z).

    Terminating cases (a or b a nonpositive integer) are exact finite sums.
    Otherwise the argument is mapped into |w| <= 0.55 by the Pfaff and 1-z
    transformations; real z >= 1 is outside the implemented region.

    Parameters
    ----------
    a, b, c : complex
        Hypergeometric parameters; ``c`` must not be a nonpositive integer
        unless the series terminates first.
    z : complex
        Argument.
    control : SeriesControl
        Term budget and tolerances for the infinite series.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    na, nb = _terminating_index(a), _terminating_index(b)
    nc = _terminating_index(c)
    if na is not None or nb is not None:
        n = min(k for k in (na, nb) if k is not None)
        if nc is not None and nc < n:
            raise PoleError("2F1 lower-parameter pole occurs before the series terminates")
        return _finite_sum(a, b, c, z, n)
    if nc is not None:
        raise PoleError("2F1 lower parameter is a nonpositive integer")
    if z == 0:
        return 1.0 + 0j
    if z.imag == 0.0 and z.real >= 1.0:
        raise ConvergenceError(f"2F1 argument z={z.real} >= 1 is outside the implemented region")
    if abs(z) <= _SERIES_RADIUS:
        return _series(a, b, c, z, control)
    w = z / (z - 1.0)
    if abs(w) <= _SERIES_RADIUS:
        return (1.0 - z) ** (-a) * _series(a, c - b, c, w, control)
    if abs(1.0 - z) <= _SERIES_RADIUS:
        return _connection(a, b, c, z, control, gauss_2f1)
    if abs(1.0 - w) <= _SERIES_RADIUS:
        return (1.0 - z) ** (-a) * _connection(a, c - b, c, w, control, gauss_2f1)
    raise ConvergenceError(f"no implemented transformation reaches z={z}")


def _dispatch_grid(a, b, c, z: np.ndarray, control: SeriesControl) -> np.ndarray:
    """Branch selection for an argument array (terminating cases excluded)."""
    out = np.empty(z.shape, dtype=complex)
    az = np.abs(z)
    w = z / (z - 1.0)
    direct = az <= _SERIES_RADIUS
    pfaff = ~direct & (np.abs(w) <= _SERIES_RADIUS)
    conn = ~direct & ~pfaff & (np.abs(1.0 - z) <= _SERIES_RADIUS)
    pfaff_conn = ~direct & ~pfaff & ~conn & (np.abs(1.0 - w) <= _SERIES_RADIUS)
    rest = ~(direct | pfaff | conn | pfaff_conn)
    if np.any(rest):
        raise ConvergenceError("2F1 grid contains arguments outside every transformation region")
    if np.any(direct):
        out[direct] = _series_grid(a, b, c, z[direct], control)
    if np.any(pfaff):
        zz = z[pfaff]
        out[pfaff] = (1.0 - zz) ** (-a) * _series_grid(a, c - b, c, zz / (zz - 1.0), control)
    if np.any(conn):
        out[conn] = _connection(a, b, c, z[conn], control, _dispatch_mixed)
    if np.any(pfaff_conn):
        zz = z[pfaff_conn]
        out[pfaff_conn] = (1.0 - zz) ** (-a) \
            * _connection(a, c - b, c, zz / (zz - 1.0), control, _dispatch_mixed)
    return out


def _dispatch_mixed(a, b, c, z, control):
    """Euler-recursion helper that accepts scalars or arrays."""
    if isinstance(z, np.ndarray):
        na, nb = _terminating_index(a), _terminating_index(b)
        if na is not None or nb is not None:
            n = min(k for k in (na, nb) if k is not None)
            return _finite_sum(a, b, c, z, n)
        return _dispatch_grid(a, b, c, z, control)
    return gauss_2f1(a, b, c, z, control)


def gauss_2f1_grid(a, b, c, z, control: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """2F1 with fixed parameters over an array of arguments.

    Same transformation strategy and summation order as :func:`gauss_2f1`,
    vectorized per region, so scalar and grid evaluations agree to rounding.
    """
    a, b, c = complex(a), complex(b), complex(c)
    z = np.asarray(z, dtype=complex)
    na, nb = _terminating_index(a), _terminating_index(b)
    nc = _terminating_index(c)
    if na is not None or nb is not None:
        n = min(k for k in (na, nb) if k is not None)
        if nc is not None and nc < n:
            raise PoleError("2F1 lower-parameter pole occurs before the series terminates")
        return _finite_sum(a, b, c, z, n)
    if nc is not None:
        raise PoleError("2F1 lower parameter is a nonpositive integer")
    if np.any((z.imag == 0.0) & (z.real >= 1.0)):
        raise ConvergenceError("2F1 grid contains arguments z >= 1")
    return _dispatch_grid(a, b, c, z, control)


# ---------------------------------------------------------------------------
# Polynomial families and the normalized Bessel function
# ---------------------------------------------------------------------------


def jacobi_poly(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^{(a,b)}(x) via its terminating hypergeometric sum.

    Vectorized over ``x``; exact finite summation (n+1 terms), no recurrence
    degeneracies for any real (a, b).
    """
    if n != int(n) or n < 0:
        raise ParameterError("Jacobi polynomial degree must be a nonnegative integer")
    n = int(n)
    v = 0.5 * (1.0 - np.asarray(x, dtype=float))
    scalar = v.ndim == 0
    v = np.atleast_1d(v)
    lead = pochhammer(a + 1.0, n) / math.factorial(n)
    term = np.full(v.shape, lead, dtype=float)
    total = term.copy()
    for k in range(n):
        term = term * ((k - n) * (n + a + b + 1.0 + k) / ((a + 1.0 + k) * (k + 1.0))) * v
        total = total + term
    return float(total[0]) if scalar else total


def wilson_poly(n: int, t2, a, b, c, d) -> complex:
    """Wilson polynomial P_n(t^2; a, b, c, d) evaluated at t^2 = ``t2``.

    The shifted-factorial pair (a+t)_m (a-t)_m is expanded as the product of
    ((a+j)^2 - t^2), so no square root of ``t2`` is ever taken.  Raises when
    one of (a+b)_m, (a+c)_m, (a+d)_m vanishes for m <= n, where the standard
    normalization is undefined.
    """
    if n != int(n) or n < 0:
        raise ParameterError("Wilson polynomial degree must be a nonnegative integer")
    n = int(n)
    t2 = complex(t2)
    for base in (a + b, a + c, a + d):
        for m in range(1, n + 1):
            if pochhammer(base, m) == 0:
                raise PoleError(
                    f"Wilson normalization undefined: ({base})_{m} vanishes for m <= n"
                )
    total = 0j
    s_abcd = a + b + c + d - 1.0
    for m in range(n + 1):
        coef = pochhammer(-n, m) * pochhammer(n + s_abcd, m) / math.factorial(m)
        quad = 1.0 + 0j
        for j in range(m):
            quad *= (a + j) ** 2 - t2
        tail = pochhammer(a + b + m, n - m) * pochhammer(a + c + m, n - m) \
            * pochhammer(a + d + m, n - m)
        total += coef * quad * tail
    return total


def wilson_poly_coefficients(n: int, a, b, c, d) -> np.ndarray:
    """Coefficients q_k with P_n(t^2; a,b,c,d) = sum_k q_k (t^2)^k.

    Used to apply Wilson polynomials of an operator: index k runs 0..n.
    """
    if n != int(n) or n < 0:
        raise ParameterError("Wilson polynomial degree must be a nonnegative integer")
    n = int(n)
    coeffs = np.zeros(n + 1, dtype=complex)
    s_abcd = a + b + c + d - 1.0
    for m in range(n + 1):
        coef = pochhammer(-n, m) * pochhammer(n + s_abcd, m) / math.factorial(m)
        tail = pochhammer(a + b + m, n - m) * pochhammer(a + c + m, n - m) \
            * pochhammer(a + d + m, n - m)
        # expand prod_{j<m} ((a+j)^2 - s) in powers of s
        poly = np.zeros(m + 1, dtype=complex)
        poly[0] = 1.0
        for j in range(m):
            shifted = np.zeros(m + 1, dtype=complex)
            shifted[1:] = poly[:-1]
            poly = poly * ((a + j) ** 2) - shifted
        coeffs[: m + 1] += coef * tail * poly[: m + 1]
    return coeffs


def bessel_j_norm(alpha: float, u: float) -> float:
    """Normalized Bessel function j_alpha(u) = Gamma(alpha+1) (u/2)^{-alpha} J_alpha(u).

    Even in ``u``; equals 1 at u = 0.  The defining alternating series is used
    for moderate arguments; large arguments fall back to the standard Bessel
    routine.
    """
    if alpha <= -1.0:
        raise ParameterError("normalized Bessel needs alpha > -1")
    u = float(u)
    q = 0.25 * u * u
    if abs(u) <= 8.0:
        total = 1.0
        term = 1.0
        for m in range(400):
            term *= -q / ((m + 1.0) * (alpha + 1.0 + m))
            total += term
            if abs(term) <= 1e-17 * (1.0 + abs(total)):
                return total
        raise ConvergenceError("normalized Bessel series did not settle")
    from scipy.special import jv

    au = abs(u)
    scale = math.exp(math.lgamma(alpha + 1.0) - alpha * math.log(0.5 * au))
    return float(scale * jv(alpha, au))


def laguerre_poly(n: int, a: float, x):
    """Laguerre polynomial L_n^a(x) as its terminating confluent sum."""
    if n != int(n) or n < 0:
        raise ParameterError("Laguerre polynomial degree must be a nonnegative integer")
    n = int(n)
    xv = np.asarray(x, dtype=float)
    scalar = xv.ndim == 0
    xv = np.atleast_1d(xv)
    lead = pochhammer(a + 1.0, n) / math.factorial(n)
    term = np.full(xv.shape, lead, dtype=float)
    total = term.copy()
    for k in range(n):
        term = term * ((k - n) / ((a + 1.0 + k) * (k + 1.0))) * xv
        total = total + term
    return float(total[0]) if scalar else total

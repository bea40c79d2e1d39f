"""Tests for the transform module: sampled functions, spectral density,
the Opdam-Cherednik and Jacobi transforms, inversion, and Plancherel."""

import cmath
import math

import numpy as np
import pytest

from cherednik_kit.errors import ParameterError
from cherednik_kit.jacobi import Params, c_func, phi_grid, weight_A
from cherednik_kit.specfun import ln_gamma
from cherednik_kit.transform import (
    SampledFunction,
    decompose_with_antiderivative,
    inverse_transform,
    jacobi_transform,
    opdam_transform,
    plancherel_check,
    spectral_density,
)

P = Params(1.5, 0.5)


def asym_bump(x):
    """Smooth bump supported on [-0.8, 2.0], not even and not odd."""
    x = np.asarray(x, dtype=float)
    u = (x - 0.6) / 1.4
    out = np.zeros_like(x)
    m = np.abs(u) < 1.0
    out[m] = np.exp(1.0 - 1.0 / (1.0 - u[m] ** 2))
    return out


class TestSampledFunction:
    def test_default_layout(self):
        s = SampledFunction.from_callable(np.cos, 2.0)
        assert s.grid.size == 2048
        assert np.all(np.diff(s.grid) > 0.0)
        assert np.max(np.abs(s.grid + s.grid[::-1])) <= 1e-12

    def test_integrate_polynomial(self):
        s = SampledFunction.from_callable(lambda x: x ** 3 - 2 * x ** 2 + 0.5,
                                          1.0, n_panels=4, nodes_per_panel=8)
        assert abs(s.integrate() - (-1.0 / 3.0)) <= 1e-14

    def test_integrate_gaussian(self):
        s = SampledFunction.from_callable(lambda x: np.exp(-x ** 2), 6.0)
        assert abs(s.integrate() - math.sqrt(math.pi)) <= 1e-13

    def test_reflection_and_parity_parts(self):
        s = SampledFunction.from_callable(np.exp, 2.0, n_panels=8,
                                          nodes_per_panel=16)
        assert np.max(np.abs(s.reflected().values - np.exp(-s.grid))) <= 1e-14
        assert np.max(np.abs(s.even_part().values - np.cosh(s.grid))) <= 1e-13
        assert np.max(np.abs(s.odd_part().values - np.sinh(s.grid))) <= 1e-13
        back = s.even_part().values + s.odd_part().values
        assert np.max(np.abs(back - s.values)) <= 1e-15

    def test_antiderivative(self):
        s = SampledFunction.from_callable(np.cos, 2.0, n_panels=8,
                                          nodes_per_panel=16)
        anti = s.antiderivative()
        expect = np.sin(s.grid) - math.sin(-2.0)
        assert np.max(np.abs(anti.values - expect)) <= 1e-13

    def test_antiderivative_of_odd_part_vanishes_at_the_edge(self):
        s = SampledFunction.from_callable(asym_bump, 3.0)
        jfo = s.odd_part().antiderivative()
        assert abs(jfo.values[-1]) <= 1e-14
        # and is even
        assert np.max(np.abs(jfo.values - jfo.values[::-1])) <= 1e-13

    def test_interpolate(self):
        s = SampledFunction.from_callable(lambda x: np.exp(-x ** 2), 6.0)
        assert abs(s.interpolate(1.234567) - math.exp(-1.234567 ** 2)) <= 1e-12
        assert s.interpolate(7.0) == 0.0
        node = float(s.grid[100])
        assert s.interpolate(node) == s.values[100]
        xs = np.array([-3.3, 0.12, 5.9])
        assert np.max(np.abs(s.interpolate(xs) - np.exp(-xs ** 2))) <= 1e-11

    def test_validation(self):
        grid, _ = np.linspace(-1, 1, 32), None
        with pytest.raises(ParameterError):
            SampledFunction(grid=grid, values=np.zeros(32), half_width=1.0,
                            n_panels=2, nodes_per_panel=16)
        s = SampledFunction.from_callable(np.cos, 1.0, n_panels=2,
                                          nodes_per_panel=4)
        with pytest.raises(ParameterError):
            SampledFunction(grid=s.grid, values=s.values[:-1], half_width=1.0,
                            n_panels=2, nodes_per_panel=4)
        with pytest.raises(ParameterError):
            SampledFunction(grid=s.grid, values=s.values * np.nan,
                            half_width=1.0, n_panels=2, nodes_per_panel=4)
        with pytest.raises(ParameterError):
            SampledFunction(grid=s.grid, values=s.values, half_width=-1.0,
                            n_panels=2, nodes_per_panel=4)


class TestSpectralDensity:
    def test_against_direct_c_function(self):
        dens = spectral_density(P, [1.3])
        direct = 4.0 ** P.rho / (8.0 * math.pi * abs(c_func(P, 1.3)) ** 2)
        assert abs(dens.weight[0] - direct) <= 1e-12 * direct

    def test_zero_is_regular(self):
        d = spectral_density(P, [0.0])
        assert d.weight[0] == 0.0
        assert d.inverse_weight[0] == 0.0

    def test_small_lambda_series_oracle(self):
        # |Gamma(i lam)|^2 = pi/(lam sinh pi lam) gives an independent
        # pole-free route to the density near lambda = 0
        for lam in (1e-4, 1e-6):
            num = abs(cmath.exp(
                ln_gamma(0.5 * (P.rho + 1j * lam))
                + ln_gamma(0.5 * (P.alpha - P.beta + 1.0 + 1j * lam)))) ** 2
            g2 = math.pi / (lam * math.sinh(math.pi * lam))
            ga1 = abs(cmath.exp(ln_gamma(P.alpha + 1.0))) ** 2
            series = 4.0 ** P.rho * num / (8.0 * math.pi * 4.0 ** P.rho * ga1 * g2)
            d = spectral_density(P, [lam]).weight[0]
            assert abs(d - series) <= 1e-9 * series

    def test_inverse_integrand_linear_near_zero(self):
        # the merged weight vanishes linearly, so the integrand at 1e-6
        # is 1e-2 of its value at 1e-4 to high accuracy
        d4 = spectral_density(P, [1e-4]).inverse_weight[0]
        d6 = spectral_density(P, [1e-6]).inverse_weight[0]
        assert abs(d6 - 1e-2 * d4) <= 1e-2 * abs(1e-2 * d4)

    def test_weight_growth(self):
        lams = np.linspace(5.0, 40.0, 8)
        w = spectral_density(P, lams).weight
        assert np.all(np.diff(w) > 0.0)


def _jcosh_closed(p, mu, lam):
    return cmath.exp(
        ln_gamma(p.alpha + 1.0)
        + ln_gamma(0.5 * (mu + 1j * lam)) + ln_gamma(0.5 * (mu - 1j * lam))
        - ln_gamma(0.5 * (p.alpha + p.beta + mu + 1.0))
        - ln_gamma(0.5 * (p.alpha - p.beta + mu + 1.0))) / 2.0


class TestJacobiTransform:
    def test_cosh_power_closed_form(self):
        mu, lam = 3.0, 1.0
        fs = SampledFunction.from_callable(
            lambda x: np.cosh(x) ** (-P.alpha - P.beta - mu - 1.0), 12.0)
        got = jacobi_transform(P, fs, lam)
        ref = _jcosh_closed(P, mu, lam)
        assert abs(got - ref) <= 1e-8 * abs(ref)

    def test_lambda_evenness(self):
        fs = SampledFunction.from_callable(
            lambda x: np.exp(-x ** 2), 6.0, n_panels=32, nodes_per_panel=16)
        for lam in (0.8, 2.0 + 0.3j):
            a = jacobi_transform(P, fs, lam)
            b = jacobi_transform(P, fs, -lam)
            assert abs(a - b) <= 1e-12 * (1.0 + abs(a))

    def test_bump_against_doubled_nodes(self):
        even_bump = lambda x: asym_bump(x) + asym_bump(-np.asarray(x))
        coarse = SampledFunction.from_callable(even_bump, 3.0, n_panels=64,
                                               nodes_per_panel=16)
        fine = SampledFunction.from_callable(even_bump, 3.0, n_panels=128,
                                             nodes_per_panel=16)
        a = jacobi_transform(P, coarse, 1.7)
        b = jacobi_transform(P, fine, 1.7)
        assert abs(a - b) <= 1e-9 * (1.0 + abs(b))


class TestOpdamTransform:
    def test_cosh_basis_ground_state_closed_form(self):
        # (cosh x)^{-a-b-delta-2} is even, so F(f) = 2 F_J(f) has the
        # Gamma evaluation with mu = delta + 1
        delta, lam = 2.0, 1.0
        fs = SampledFunction.from_callable(
            lambda x: np.cosh(x) ** (-P.alpha - P.beta - delta - 2.0), 12.0)
        got = opdam_transform(P, fs, lam)
        ref = 2.0 * _jcosh_closed(P, delta + 1.0, lam)
        assert abs(got - ref) <= 1e-6 * abs(ref)

    def test_even_function_reduces_to_jacobi_transform(self):
        fs = SampledFunction.from_callable(
            lambda x: np.exp(-x ** 2), 6.0, n_panels=32, nodes_per_panel=16)
        for lam in (1.3, 0.7j):
            a = opdam_transform(P, fs, lam)
            b = 2.0 * jacobi_transform(P, fs, lam)
            assert abs(a - b) <= 1e-9 * (1.0 + abs(a))

    def test_value_at_plus_i_rho_is_the_plain_integral(self):
        fb = SampledFunction.from_callable(asym_bump, 3.0)
        mass = complex(np.sum(
            fb.weights * fb.values * weight_A(P, np.abs(fb.grid))))
        plus = opdam_transform(P, fb, 1j * P.rho)
        assert abs(plus - mass) <= 1e-9 * (1.0 + abs(mass))
        # under these conventions the identity belongs to +i rho: the same
        # statement at -i rho fails by an O(1) amount for asymmetric f
        minus = opdam_transform(P, fb, -1j * P.rho)
        assert abs(minus - mass) > 1.0

    def test_linearity(self):
        f1 = SampledFunction.from_callable(asym_bump, 3.0, n_panels=16,
                                           nodes_per_panel=8)
        f2 = SampledFunction.from_callable(
            lambda x: np.exp(-2.0 * x ** 2), 3.0, n_panels=16, nodes_per_panel=8)
        combo = SampledFunction(grid=f1.grid,
                                values=2.0 * f1.values + 3.0j * f2.values,
                                half_width=3.0, n_panels=16, nodes_per_panel=8)
        rng = np.random.default_rng(2)
        for lam in rng.uniform(0.0, 5.0, 4):
            lhs = opdam_transform(P, combo, lam)
            rhs = 2.0 * opdam_transform(P, f1, lam) \
                + 3.0j * opdam_transform(P, f2, lam)
            assert abs(lhs - rhs) <= 1e-13 * (1.0 + abs(rhs))


class TestDecomposition:
    def test_even_function_has_zero_odd_data(self):
        fs = SampledFunction.from_callable(
            lambda x: np.exp(-x ** 2), 4.0, n_panels=16, nodes_per_panel=8)
        f_e, f_o, jf_o = decompose_with_antiderivative(fs)
        assert np.max(np.abs(f_o.values)) <= 1e-16
        assert np.max(np.abs(jf_o.values)) <= 1e-15
        assert np.max(np.abs(f_e.values - fs.values)) <= 1e-16

    def test_lemma_identity(self):
        fb = SampledFunction.from_callable(asym_bump, 3.0)
        f_e, _, jf_o = decompose_with_antiderivative(fb)
        for lam in (1.3, 0.4 + 0.2j):
            lhs = opdam_transform(P, fb, lam)
            rhs = 2.0 * jacobi_transform(P, f_e, lam) \
                + 2.0 * (P.rho + 1j * lam) * jacobi_transform(P, jf_o, lam)
            assert abs(lhs - rhs) <= 1e-7 * (1.0 + abs(lhs))

    def test_integration_by_parts_core(self):
        # int_0^inf f_o (d/dx phi) A dx = (rho^2 + lam^2) F_J(J f_o),
        # with the derivative taken through the parameter-shift identity
        fb = SampledFunction.from_callable(asym_bump, 3.0)
        _, f_o, jf_o = decompose_with_antiderivative(fb)
        lam = 1.3
        pos = fb.grid > 0.0
        xs = fb.grid[pos]
        shift = P.shifted(1.0, 1.0)
        dphi = -(P.rho ** 2 + lam ** 2) / (4.0 * (P.alpha + 1.0)) \
            * np.sinh(2.0 * xs) * phi_grid(shift, lam, xs)
        lhs = np.sum(fb.weights[pos] * f_o.values[pos] * dphi * weight_A(P, xs))
        rhs = (P.rho ** 2 + lam ** 2) * jacobi_transform(P, jf_o, lam)
        assert abs(lhs - rhs) <= 1e-7 * (1.0 + abs(rhs))


class TestJacobiOperatorSpectralIdentity:
    def test_phi_is_an_eigenfunction(self):
        # Delta phi + (rho^2 + lambda^2) phi = 0 by central differences
        h = 1e-4
        for lam in (1.0, 1j, 1.0 + 1.0j):
            lam2 = complex(lam) ** 2
            for x in np.linspace(0.4, 2.0, 5):
                fm, f0, fp = (complex(phi_grid(P, lam, np.array([t]))[0])
                              for t in (x - h, x, x + h))
                d2 = (fp - 2.0 * f0 + fm) / h ** 2
                d1 = (fp - fm) / (2.0 * h)
                coef = (2.0 * P.alpha + 1.0) / math.tanh(x) \
                    + (2.0 * P.beta + 1.0) * math.tanh(x)
                resid = d2 + coef * d1 + (P.rho ** 2 + lam2) * f0
                assert abs(resid) <= 1e-6 * (1.0 + abs(f0))


class TestInverseTransform:
    def test_zero_spectrum(self):
        res = inverse_transform(P, lambda l: 0.0, 0.5, lambda_max=10.0,
                                n_panels=8, nodes_per_panel=8)
        assert res.value == 0.0
        assert res.truncation_estimate == 0.0

    def test_round_trip(self):
        f = lambda x: np.cosh(x) ** (-P.rho - 2.0)
        fs = SampledFunction.from_callable(f, 12.0)
        cache = {}

        def g(lam):
            if lam not in cache:
                cache[lam] = 2.0 * jacobi_transform(P, fs, lam)
            return cache[lam]

        xs = np.linspace(-2.0, 2.0, 9)
        res = inverse_transform(P, g, xs, lambda_max=30.0, n_panels=24,
                                nodes_per_panel=16)
        assert np.max(np.abs(res.value - f(xs))) <= 1e-3
        assert np.max(np.abs(res.value.imag)) <= 1e-8
        assert np.max(res.truncation_estimate) <= 1e-4

    def test_doubling_lambda_changes_little(self):
        fs = SampledFunction.from_callable(
            lambda x: np.cosh(x) ** (-P.rho - 2.0), 12.0)
        g = lambda lam: 2.0 * jacobi_transform(P, fs, lam)
        a = inverse_transform(P, g, 0.5, lambda_max=20.0, n_panels=16,
                              nodes_per_panel=16)
        b = inverse_transform(P, g, 0.5, lambda_max=40.0, n_panels=32,
                              nodes_per_panel=16)
        assert abs(a.value - b.value) <= 1e-6

    def test_lambda_max_validation(self):
        with pytest.raises(ParameterError):
            inverse_transform(P, lambda l: 0.0, 0.5, lambda_max=0.0)


class TestPlancherel:
    def test_zero_function(self):
        zero = SampledFunction.from_callable(
            lambda x: 0.0 * np.asarray(x), 2.0, n_panels=4, nodes_per_panel=8)
        rep = plancherel_check(P, zero)
        assert rep.lhs == rep.rhs1 == rep.rhs2 == 0.0

    def test_even_cosh_function(self):
        fs = SampledFunction.from_callable(
            lambda x: np.cosh(x) ** (-P.rho - 2.0), 12.0)
        rep = plancherel_check(P, fs, lambda_max=30.0, n_panels=24,
                               nodes_per_panel=16)
        assert abs(rep.rhs1 - rep.lhs) <= 1e-3 * rep.lhs
        assert abs(rep.rhs2 - rep.lhs) <= 1e-3 * rep.lhs
        # for even real f the two forms coincide analytically
        assert abs(rep.rhs1 - rep.rhs2) <= 1e-10 * rep.lhs

    def test_asymmetric_bump(self):
        fb = SampledFunction.from_callable(asym_bump, 3.0, n_panels=32,
                                           nodes_per_panel=16)
        rep = plancherel_check(P, fb, lambda_max=30.0, n_panels=24,
                               nodes_per_panel=16)
        assert abs(rep.rhs1 - rep.lhs) <= 1e-3 * rep.lhs
        assert abs(rep.rhs2 - rep.lhs) <= 1e-3 * rep.lhs

    def test_odd_function(self):
        fo = SampledFunction.from_callable(
            lambda x: x * np.exp(-x ** 2), 6.0, n_panels=32, nodes_per_panel=16)
        rep = plancherel_check(P, fo, lambda_max=30.0, n_panels=24,
                               nodes_per_panel=16)
        assert abs(rep.rhs1 - rep.lhs) <= 1e-3 * rep.lhs
        assert abs(rep.rhs2 - rep.lhs) <= 1e-3 * rep.lhs

    def test_truncation_estimate_reported(self):
        fs = SampledFunction.from_callable(
            lambda x: np.cosh(x) ** (-P.rho - 2.0), 12.0)
        rep = plancherel_check(P, fs, lambda_max=30.0, n_panels=24,
                               nodes_per_panel=16)
        assert rep.truncation_estimate >= 0.0
        assert rep.truncation_estimate <= 1e-6 * rep.lhs

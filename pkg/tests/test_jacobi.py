"""Jacobi functions, the c-function, the weight A, the product kernel W,
and the addition formula."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cherednik_kit.errors import DomainError, ParameterError, PoleError
from cherednik_kit.jacobi import (
    AdditionIndex,
    Params,
    TriangleTriple,
    addition_components,
    addition_series_check,
    b_argument,
    c_func,
    c_func_alt,
    kernel_W,
    kernel_W_chi,
    kernel_W_equal,
    kernel_W_half,
    phi,
    phi_asymptotic_residual,
    phi_grid,
    phi_second_kind,
    phi_zero_decay_constant,
    product_check_phi,
    quadratic_transform_check,
    triangle_sinh_product,
    weight_A,
)
from cherednik_kit.quadrature import gauss_jacobi_nodes
from cherednik_kit.specfun import gauss_2f1, ln_gamma

P_STRICT = Params(1.5, 0.5)
P_EQUAL = Params(1.0, 1.0)


class TestParams:
    def test_rho(self):
        assert P_STRICT.rho == 3.0
        assert Params(0.75, 0.25).rho == 2.0

    def test_invalid(self):
        with pytest.raises(ParameterError):
            Params(0.3, 0.5)
        with pytest.raises(ParameterError):
            Params(-0.5, -0.5)
        with pytest.raises(ParameterError):
            Params(1.0, -0.6)

    def test_boundary_beta_allowed(self):
        assert Params(0.75, -0.5).rho == 1.25

    def test_shifted(self):
        q = P_STRICT.shifted(1.0, 1.0)
        assert (q.alpha, q.beta) == (2.5, 1.5)
        assert q.rho == P_STRICT.rho + 2.0


class TestTriangleTriple:
    def test_inside(self):
        assert TriangleTriple(0.8, 1.1, 1.5).inside
        assert TriangleTriple(-0.8, 1.1, -1.5).inside

    def test_outside_and_boundary(self):
        assert not TriangleTriple(0.8, 1.1, 2.5).inside
        assert not TriangleTriple(0.8, 1.1, 0.1).inside
        assert not TriangleTriple(0.5, 1.0, 1.5).inside  # z = x+y exactly
        assert not TriangleTriple(0.8, 0.8, 0.0).inside


class TestPhi:
    def test_at_zero(self):
        for lam in (0.0, 2.0, 1.0 + 1.0j, -3.5j):
            assert phi(P_STRICT, lam, 0.0) == 1.0

    def test_terminating_identity(self):
        # lambda = i rho makes the defining series terminate at its first term
        for x in (0.0, 0.3, 1.0, 2.7):
            assert phi(P_STRICT, 1j * P_STRICT.rho, x) == 1.0

    def test_both_hypergeometric_lines_agree(self):
        p, lam, x = Params(1.0, 0.5), 2.0, 0.7
        a1 = 0.5 * (p.rho + 1j * lam)
        a2 = 0.5 * (p.rho - 1j * lam)
        line1 = gauss_2f1(a1, a2, p.alpha + 1.0, -math.sinh(x) ** 2)
        b2 = 0.5 * (p.alpha - p.beta + 1.0 + 1j * lam)
        line2 = cmath.exp(-(p.rho + 1j * lam) * math.log(math.cosh(x))) \
            * gauss_2f1(a1, b2, p.alpha + 1.0, math.tanh(x) ** 2)
        assert abs(line1 - line2) < 1e-12 * abs(line1)
        assert abs(phi(p, lam, x) - line2) < 1e-12 * abs(line2)

    def test_parity_grid(self):
        lam = 1.7 + 0.4j
        xs = np.linspace(-2.5, 2.5, 50)
        for x in xs:
            v = phi(P_STRICT, lam, x)
            assert phi(P_STRICT, lam, -x) == v
            assert abs(phi(P_STRICT, -lam, x) - v) < 1e-12 * abs(v)

    def test_grid_matches_scalar(self):
        lam = 2.0
        xs = np.array([0.0, 0.1, 0.3, 0.9, 2.2])
        grid = phi_grid(P_STRICT, lam, xs)
        for x, g in zip(xs, grid):
            assert abs(g - phi(P_STRICT, lam, x)) <= 1e-14 * (1.0 + abs(g))

    def test_oscillatory_regime_against_mpmath(self):
        # |lambda| tanh x > 22 switches to the two-term c-function connection,
        # which stays accurate where the power series loses digits
        import mpmath as mp
        mp.mp.dps = 40

        def oracle(lam, x):
            rho = P_STRICT.rho
            return complex(mp.hyp2f1(0.5 * (rho + 1j * lam),
                                     0.5 * (rho - 1j * lam),
                                     P_STRICT.alpha + 1.0, -mp.sinh(x) ** 2))

        for lam, x in ((40.0, 1.0), (30.0, 1.5), (60.0, 2.0)):
            got = phi(P_STRICT, lam, x)
            want = oracle(lam, x)
            assert abs(got - want) < 1e-12 * abs(want)
        # just below the switch the series branch is still ~1e-8 accurate
        got = phi(P_STRICT, 30.0, 0.72)
        want = oracle(30.0, 0.72)
        assert abs(got - want) < 1e-7 * abs(want)


class TestPhiSecondKind:
    def test_singular_at_zero(self):
        with pytest.raises(DomainError):
            phi_second_kind(P_STRICT, 1.0, 0.0)

    def test_lower_parameter_pole(self):
        with pytest.raises(DomainError):
            phi_second_kind(P_STRICT, -1.0j, 1.0)

    def test_leading_asymptotic(self):
        # Phi_lambda(x) e^{(rho - i lambda)x} -> 1 as x -> infinity
        lam, x = 1.3, 12.0
        val = phi_second_kind(P_STRICT, lam, x)
        lead = cmath.exp((1j * lam - P_STRICT.rho) * x)
        assert abs(val / lead - 1.0) < 1e-4


class TestCFunc:
    def test_two_forms_agree(self):
        lam = 2.0
        v1 = c_func(P_STRICT, lam)
        v2 = c_func_alt(P_STRICT, lam)
        assert abs(v1 - v2) < 1e-12 * abs(v1)

    def test_pole_at_zero(self):
        with pytest.raises(PoleError):
            c_func(P_STRICT, 0.0)

    def test_log_gamma_oracle(self):
        p, lam = P_EQUAL, 1.0
        il = 1j * lam
        want = cmath.exp(
            (p.rho - il) * math.log(2.0) + ln_gamma(p.alpha + 1.0) + ln_gamma(il)
            - ln_gamma(0.5 * (p.rho + il))
            - ln_gamma(0.5 * (p.alpha - p.beta + 1.0 + il)))
        got = c_func(p, lam)
        assert abs(got - want) < 1e-12 * abs(want)

    def test_normalization_at_minus_i_rho(self):
        # c(-i rho) = 1: all Gamma factors pair off
        got = c_func(P_STRICT, -1j * P_STRICT.rho)
        assert abs(got - 1.0) < 1e-14


class TestAsymptotics:
    def test_two_term_connection(self):
        assert phi_asymptotic_residual(P_STRICT, 1.0, 3.0) < 1e-9

    def test_integer_imaginary_excluded(self):
        with pytest.raises(DomainError):
            phi_asymptotic_residual(P_STRICT, 1.0j, 2.0)

    def test_zero_lambda_decay_constant(self):
        # phi_0(x) ~ kappa x e^{-rho x}.  The O(1/x) correction carries a
        # parameter-dependent coefficient; at (1, 1) it is ~0.31, so x = 6
        # sits within 10%.  (At (1.5, 0.5) the coefficient is ~1.0 and the
        # deviation at x = 6 is still ~17%; checked via the 1/x trend.)
        kappa = phi_zero_decay_constant(P_EQUAL)
        val = phi(P_EQUAL, 0.0, 6.0).real * math.exp(P_EQUAL.rho * 6.0) / 6.0
        assert abs(val / kappa - 1.0) < 0.10

    def test_zero_lambda_decay_trend(self):
        kappa = phi_zero_decay_constant(P_STRICT)
        devs = []
        for x in (6.0, 9.0, 12.0):
            val = phi(P_STRICT, 0.0, x).real * math.exp(P_STRICT.rho * x) / x
            devs.append(abs(val / kappa - 1.0))
        assert devs[2] < devs[1] < devs[0]
        # deviation ~ 1.0/x for these parameters
        assert abs(devs[0] * 6.0 - 1.0) < 0.05
        assert abs(devs[2] * 12.0 - 1.0) < 0.05


class TestQuadraticTransform:
    def test_at_zero(self):
        assert quadratic_transform_check(0.8, 1.3, 0.0) == 0.0

    def test_generic_point(self):
        assert quadratic_transform_check(0.8, 1.3, 0.9) <= 1e-11

    def test_terminating_case(self):
        rho_half = 0.8 + (-0.5) + 1.0
        assert quadratic_transform_check(0.8, 1j * rho_half, 0.9) <= 1e-13


class TestWeightA:
    def test_at_zero(self):
        assert weight_A(P_STRICT, 0.0) == 0.0

    def test_direct_product(self):
        z = 1.0
        want = math.sinh(z) ** 4 * math.cosh(z) ** 2
        assert abs(weight_A(P_STRICT, z) - want) < 1e-14 * want

    def test_parameter_shift_identity(self):
        z = 0.8
        lhs = weight_A(P_STRICT.shifted(1.0, 1.0), z)
        rhs = math.sinh(2.0 * z) ** 2 / 4.0 * weight_A(P_STRICT, z)
        assert abs(lhs - rhs) < 1e-14 * lhs

    def test_array_input(self):
        zs = np.array([0.2, 0.8, 1.4])
        vals = weight_A(P_EQUAL, zs)
        assert vals.shape == (3,)
        assert vals[1] == weight_A(P_EQUAL, 0.8)


def _w_mass(p, x, y, w_eval, n=400):
    # int_d^s W(z) A(z) dz with the boundary factor absorbed into the rule
    d, s = abs(x - y), x + y
    e = p.alpha - 0.5
    z, w = gauss_jacobi_nodes(n, d, s, (e, e))
    vals = np.array([w_eval(float(t)) / (((t - d) * (s - t)) ** e) for t in z])
    return float(np.dot(w, vals * weight_A(p, z)))


class TestKernelW:
    def test_zero_outside(self):
        assert kernel_W(P_STRICT, 0.8, 1.1, 2.5) == 0.0
        assert kernel_W(P_STRICT, 0.8, 1.1, 0.1) == 0.0
        assert kernel_W_equal(1.0, 0.7, 1.0, 1.8) == 0.0

    def test_boundary_zero_when_exponent_positive(self):
        assert kernel_W_equal(1.0, 0.7, 1.0, 1.7) == 0.0

    def test_mass_one_strict(self):
        mass = _w_mass(P_STRICT, 0.8, 1.1,
                       lambda z: kernel_W(P_STRICT, 0.8, 1.1, z))
        assert abs(mass - 1.0) < 1e-8

    def test_mass_one_equal(self):
        p = P_EQUAL
        mass = _w_mass(p, 0.7, 1.0, lambda z: kernel_W_equal(1.0, 0.7, 1.0, z))
        assert abs(mass - 1.0) < 1e-8

    def test_chi_integral_agreement(self):
        lhs = kernel_W(P_STRICT, 0.8, 1.1, 1.5)
        rhs = kernel_W_chi(P_STRICT, 0.8, 1.1, 1.5)
        assert abs(lhs - rhs) < 1e-9 * abs(lhs)

    def test_chi_route_needs_strict_parameters(self):
        with pytest.raises(ParameterError):
            kernel_W_chi(P_EQUAL, 0.8, 1.1, 1.5)

    def test_equal_matches_closed_form_limit(self):
        # the general closed form at alpha = beta terminates and must equal
        # the dedicated equal-parameter expression
        lhs = kernel_W(P_EQUAL, 0.6, 0.9, 1.2)
        rhs = kernel_W_equal(1.0, 0.6, 0.9, 1.2)
        assert abs(lhs - rhs) < 1e-12 * abs(rhs)

    def test_half_beta_reduction(self):
        # W_{alpha,-1/2}(x,y,z) = 2^{-2 alpha - 2} W_{alpha,alpha}(x/2,y/2,z/2);
        # the coefficient is pinned by mass normalization, checked below
        a, x, y, z = 0.75, 0.9, 1.2, 1.6
        lhs = kernel_W_half(a, x, y, z)
        rhs = 2.0 ** (-2.0 * a - 2.0) * kernel_W_equal(a, x / 2, y / 2, z / 2)
        assert lhs == rhs
        p = Params(a, -0.5)
        mass = _w_mass(p, x, y, lambda t: kernel_W_half(a, x, y, t))
        assert abs(mass - 1.0) < 1e-8

    def test_permutation_symmetry(self):
        rng = np.random.default_rng(11)
        import itertools
        for _ in range(20):
            x, y = rng.uniform(0.3, 1.5, 2)
            d, s = abs(x - y), x + y
            z = rng.uniform(d + 0.05 * (s - d), s - 0.05 * (s - d))
            ref = kernel_W(P_STRICT, x, y, z)
            assert ref >= 0.0
            for perm in itertools.permutations((x, y, z)):
                val = kernel_W(P_STRICT, *perm)
                assert abs(val - ref) <= 1e-10 * abs(ref)

    def test_nonnegative_sampled(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            x, y = rng.uniform(0.2, 2.0, 2)
            z = rng.uniform(0.0, 2.5)
            assert kernel_W(P_STRICT, x, y, z) >= 0.0
            assert kernel_W_equal(0.75, x, y, z) >= 0.0


class TestTriangleGeometry:
    @given(st.floats(0.1, 2.0), st.floats(0.1, 2.0), st.floats(0.15, 1.9))
    def test_b_factorization(self, x, y, z):
        # sinh(x+y+z) sinh(-x+y+z) sinh(x-y+z) sinh(x+y-z)
        #   = 4 cosh^2 x cosh^2 y cosh^2 z (1 - B^2)
        lhs = float(triangle_sinh_product(x, y, z))
        big_b = b_argument(x, y, z)
        rhs = 4.0 * (math.cosh(x) * math.cosh(y) * math.cosh(z)) ** 2 \
            * (1.0 - big_b ** 2)
        assert abs(lhs - rhs) <= 1e-12 * (abs(lhs) + abs(rhs) + 1.0)

    @given(st.floats(0.1, 2.0), st.floats(0.1, 2.0),
           st.floats(0.0, 1.0), st.floats(0.0, math.pi))
    @settings(max_examples=200)
    def test_change_of_variables_lands_in_triangle(self, x, y, r, psi):
        gamma = math.cosh(x) * math.cosh(y) \
            + math.sinh(x) * math.sinh(y) * r * cmath.exp(1j * psi)
        z = math.acosh(max(1.0, abs(gamma)))
        assert abs(x - y) - 1e-12 <= z <= x + y + 1e-12

    def test_b_inside_unit_interval(self):
        assert 0.0 < b_argument(0.8, 1.1, 1.5) < 1.0
        assert b_argument(0.8, 1.1, 1.9) > 1.0 - 1e-12


class TestProductFormulaPhi:
    def test_mass_identity_at_terminating_lambda(self):
        res = product_check_phi(P_STRICT, 1j * P_STRICT.rho, 0.8, 1.1)
        assert res <= 1e-8

    def test_strict_parameters(self):
        assert product_check_phi(P_STRICT, 2.0, 0.8, 1.1) <= 1e-7

    def test_equal_parameters(self):
        assert product_check_phi(P_EQUAL, 1.5, 0.6, 0.9) <= 1e-7

    def test_needs_nonzero_arguments(self):
        with pytest.raises(DomainError):
            product_check_phi(P_STRICT, 1.0, 0.0, 0.8)


class TestAdditionFormula:
    def test_index_validation(self):
        with pytest.raises(ParameterError):
            AdditionIndex(1, 2)
        with pytest.raises(ParameterError):
            AdditionIndex(-1, 0)

    def test_chi_00_is_one(self):
        for r, psi in ((0.0, 0.5), (0.3, 1.0), (1.0, math.pi)):
            _, chi, _ = addition_components(P_STRICT, AdditionIndex(0, 0),
                                            1.0, 0.5, r, psi)
            assert chi == 1.0

    def test_pi_00_equals_defining_integral(self):
        # Pi_{0,0} must be 1: dm is a probability measure and chi_{0,0} = 1.
        # two exact Gauss-Jacobi rules (s = 2r^2-1, t = cos psi) reproduce
        # int dm; the closed form used by the series must match it.
        a, b = P_STRICT.alpha, P_STRICT.beta
        _, _, pi00 = addition_components(P_STRICT, AdditionIndex(0, 0),
                                         1.0, 0.5, 0.3, 1.0)
        s_nodes, s_w = gauss_jacobi_nodes(8, 0.0, 1.0, (b, a - b - 1.0))
        t_nodes, t_w = gauss_jacobi_nodes(8, -1.0, 1.0, (b - 0.5, b - 0.5))
        m_ab = math.gamma(a + 1.0) / (
            math.sqrt(math.pi) * math.gamma(a - b) * math.gamma(b + 0.5))
        total = 2.0 * m_ab * 0.5 * float(np.sum(s_w)) * float(np.sum(t_w))
        assert abs(total - 1.0) < 1e-13
        assert abs(pi00 - 1.0) < 1e-13

    def test_chi_orthogonality(self):
        # int int chi_{1,0} chi_{0,0} dm = 0
        a, b = P_STRICT.alpha, P_STRICT.beta
        s_nodes, s_w = gauss_jacobi_nodes(10, 0.0, 1.0, (b, a - b - 1.0))
        t_nodes, t_w = gauss_jacobi_nodes(10, -1.0, 1.0, (b - 0.5, b - 0.5))
        m_ab = math.gamma(a + 1.0) / (
            math.sqrt(math.pi) * math.gamma(a - b) * math.gamma(b + 0.5))
        acc = 0.0
        for sn, sw in zip(s_nodes, s_w):
            r = math.sqrt(sn)
            for tn, tw in zip(t_nodes, t_w):
                _, chi10, _ = addition_components(
                    P_STRICT, AdditionIndex(1, 0), 1.0, 0.5, r, math.acos(tn))
                acc += sw * tw * chi10
        acc *= 2.0 * m_ab * 0.5
        assert abs(acc) < 1e-9

    def test_needs_strictly_larger_alpha(self):
        with pytest.raises(ParameterError):
            addition_components(P_EQUAL, AdditionIndex(0, 0), 1.0, 0.5, 0.3, 1.0)

    def test_series_at_x_zero(self):
        assert addition_series_check(P_STRICT, 1.0, 0.0, 0.7, 0.6, 1.0,
                                     k_max=8) <= 1e-6

    def test_series_generic_point(self):
        assert addition_series_check(P_STRICT, 1.0, 0.5, 0.7, 0.6, 1.0,
                                     k_max=10) <= 1e-5

    def test_series_truncation_monotone(self):
        r6 = addition_series_check(P_STRICT, 1.0, 0.5, 0.7, 0.6, 1.0, k_max=6)
        r12 = addition_series_check(P_STRICT, 1.0, 0.5, 0.7, 0.6, 1.0, k_max=12)
        assert r12 <= r6

"""Finite-difference derivative helpers used by the operator checks."""

import math

import numpy as np
import pytest

from cherednik_kit.errors import ParameterError
from cherednik_kit.fd import (
    DEFAULT_SCHEME,
    FiniteDifferenceScheme,
    derivative,
    derivative_richardson,
)


class TestSchemeValidation:
    def test_default(self):
        assert DEFAULT_SCHEME.order == 4
        assert DEFAULT_SCHEME.step == 1e-4

    def test_order_whitelist(self):
        with pytest.raises(ParameterError):
            FiniteDifferenceScheme(order=3, step=1e-4)

    def test_step_window(self):
        with pytest.raises(ParameterError):
            FiniteDifferenceScheme(order=2, step=1e-7)
        with pytest.raises(ParameterError):
            FiniteDifferenceScheme(order=2, step=0.1)


class TestDerivative:
    def test_exponential(self):
        got = derivative(math.exp, 0.7, DEFAULT_SCHEME)
        assert abs(got - math.exp(0.7)) < 1e-10

    def test_order_two_vs_four(self):
        scheme2 = FiniteDifferenceScheme(order=2, step=1e-3)
        scheme4 = FiniteDifferenceScheme(order=4, step=1e-3)
        err2 = abs(derivative(math.sin, 1.1, scheme2) - math.cos(1.1))
        err4 = abs(derivative(math.sin, 1.1, scheme4) - math.cos(1.1))
        assert err4 < err2
        assert err2 < 1e-6
        assert err4 < 1e-11

    def test_complex_valued(self):
        scheme = FiniteDifferenceScheme(order=4, step=1e-3)
        f = lambda t: np.exp(1j * t)
        got = derivative(f, 0.4, scheme)
        assert abs(got - 1j * np.exp(0.4j)) < 1e-12

    def test_richardson_improves_plain(self):
        scheme = FiniteDifferenceScheme(order=2, step=1e-3)
        plain = abs(derivative(math.tanh, 0.9, scheme) - 1.0 / math.cosh(0.9) ** 2)
        rich = abs(derivative_richardson(math.tanh, 0.9, scheme)
                   - 1.0 / math.cosh(0.9) ** 2)
        assert rich < plain

    def test_richardson_complex(self):
        f = lambda t: np.exp(1j * t)
        got = derivative_richardson(f, 0.25, DEFAULT_SCHEME)
        assert abs(got - 1j * np.exp(0.25j)) < 1e-11

"""Tests for dfrac.calculus.gamma: orders, lattice values and falling factorials."""

import math
from unittest import TestCase

import numpy as np
import pytest
from dfrac.calculus.gamma import (
    POLE,
    GridValue,
    Order,
    falling_factorial,
    falling_factorial_array,
    is_real_pole,
    signed_log_gamma,
)
from dfrac.core.errors import DegenerateError, DomainError
from hypothesis import given, settings
from hypothesis import strategies as st


class TestOrder(TestCase):
    """Test the order value."""

    def test_rejects_nonpositive_and_nonfinite(self) -> None:
        """Test that zero, negative and non-finite orders are rejected."""
        for alpha in (0.0, -1.5, math.inf, math.nan):
            with pytest.raises(DomainError):
                Order(alpha)

    def test_bvp_range(self) -> None:
        """Test the admissible range (1, 2] of the boundary value problem."""
        Order(1.5).require_bvp()
        Order(2.0).require_bvp(allow_degenerate=True)
        with pytest.raises(DomainError, match=r"\(1, 2\]"):
            Order(1.0).require_bvp()
        with pytest.raises(DomainError):
            Order(2.5).require_bvp()

    def test_alpha_two_is_degenerate(self) -> None:
        """Test that alpha = 2 is flagged as degenerate."""
        order = Order(2.0)
        assert order.is_degenerate
        assert order.is_integral
        with pytest.raises(DegenerateError, match="degenerate"):
            order.require_bvp()


class TestGridValue(TestCase):
    """Test symbolic abscissae."""

    def test_arithmetic(self) -> None:
        """Test integer shifts, termwise sums and negation."""
        t = GridValue(1, -2)
        assert t + 3 == GridValue(1, 1)
        assert 3 + t == GridValue(1, 1)
        assert t - GridValue(1, -1) == GridValue(0, -1)
        assert -t == GridValue(-1, 2)

    def test_realize(self) -> None:
        """Test the numeric value with and without an order."""
        assert GridValue(1, -2).realize(1.5) == pytest.approx(-0.5)
        assert GridValue(0, 4).realize() == 4.0
        with pytest.raises(DomainError):
            GridValue(1, 0).realize()

    def test_pole_classification_is_exact(self) -> None:
        """Test pole detection without a tolerance."""
        assert GridValue(0, 0).is_pole()
        assert GridValue(0, -3).is_pole()
        assert not GridValue(0, 1).is_pole()
        # alpha - 1 is never a pole for 1 < alpha < 2
        assert not GridValue(1, -1).is_pole(1.5)
        assert GridValue(1, -2).is_pole(2.0)
        assert not GridValue(1, -2).is_pole(1.5)

    def test_str(self) -> None:
        """Test the readable form."""
        assert str(GridValue(1, -2)) == "alpha-2"
        assert str(GridValue(0, 3)) == "3"


class TestSignedLogGamma(TestCase):
    """Test the sign and log-magnitude split of Gamma."""

    def test_positive_argument(self) -> None:
        """Test log Gamma(1/2) = log sqrt(pi)."""
        value = signed_log_gamma(0.5)
        assert value.sign == 1
        assert value.log_abs == pytest.approx(0.5723649429, rel=1e-10)

    def test_negative_argument_carries_sign(self) -> None:
        """Test Gamma(-1/2) = -2 sqrt(pi)."""
        value = signed_log_gamma(-0.5)
        assert value.sign == -1
        assert value.value == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-12)

    def test_poles(self) -> None:
        """Test the pole value and the tolerance pole test."""
        assert signed_log_gamma(0.0) == POLE
        assert signed_log_gamma(-2.0) == POLE
        assert signed_log_gamma(GridValue(0, -1)).is_pole
        assert is_real_pole(-3.0 + 1e-13)
        assert not is_real_pole(-3.0 + 1e-6)

    def test_matches_math_gamma(self) -> None:
        """Test exp(log_abs) against math.gamma to 1e-13 on [0.1, 50]."""
        for x in np.linspace(0.1, 50.0, 500):
            value = signed_log_gamma(float(x))
            assert value.sign == 1
            assert value.value == pytest.approx(math.gamma(float(x)), rel=1e-13), x


class TestFallingFactorial(TestCase):
    """Test falling-factorial powers."""

    def test_integer_power(self) -> None:
        """Test integer exponents against products."""
        assert falling_factorial(GridValue(0, 5), GridValue(0, 1), 1.5) == pytest.approx(5.0)
        assert falling_factorial(5.0, 2.0) == pytest.approx(20.0)

    def test_zero_convention(self) -> None:
        """Test that a pole of Gamma(t+1-nu) alone gives exactly zero."""
        # (alpha-2)^(alpha-1): Gamma(alpha-1) / Gamma(0)
        assert falling_factorial(GridValue(1, -2), GridValue(1, -1), 1.5) == 0.0
        assert falling_factorial(-0.5, 0.5) == 0.0

    def test_fractional_value(self) -> None:
        """Test (alpha+1)^(alpha-1) = Gamma(alpha+2) / Gamma(3) at alpha = 1.5."""
        value = falling_factorial(GridValue(1, 1), GridValue(1, -1), 1.5)
        assert value == pytest.approx(1.6616754852, rel=1e-10)

    def test_exponent_zero_is_one(self) -> None:
        """Test that t^(0) = 1."""
        assert falling_factorial(GridValue(1, 3), GridValue(0, 0), 1.25) == 1.0

    def test_numerator_pole_raises(self) -> None:
        """Test that a pole of Gamma(t+1) raises."""
        with pytest.raises(DomainError, match="Gamma\\(t\\+1\\)"):
            falling_factorial(GridValue(0, -1), GridValue(0, 1))
        with pytest.raises(DomainError):
            falling_factorial(-2.0, 0.5)

    def test_array_matches_scalar(self) -> None:
        """Test that the array form matches the scalar form."""
        t = np.array([0.5, 1.5, 2.5, 7.25])
        expected = [falling_factorial(float(x), 0.75) for x in t]
        np.testing.assert_allclose(falling_factorial_array(t, 0.75), expected, rtol=1e-14)

    def test_array_zero_convention(self) -> None:
        """Test the zero convention in the array form."""
        values = falling_factorial_array(np.array([-0.5, 0.5]), 0.5)
        assert values[0] == 0.0
        assert values[1] == pytest.approx(math.gamma(1.5))

    @settings(max_examples=50, deadline=None)
    @given(
        t=st.floats(min_value=3.0, max_value=40.0),
        nu=st.floats(min_value=-2.0, max_value=2.0),
    )
    def test_power_rule(self, t: float, nu: float) -> None:
        """Test Delta t^(nu) = nu t^(nu-1) on random reals."""
        step = falling_factorial(t + 1, nu) - falling_factorial(t, nu)
        expected = nu * falling_factorial(t, nu - 1)
        assert step == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_nonnegative_above_the_exponent(self) -> None:
        """Test that t^(nu) >= 0 for t = nu, nu + 0.25, ..., nu + 10."""
        for nu in (0.0, 0.5, 1.0, 1.5):
            for t in nu + 0.25 * np.arange(41):
                value = falling_factorial(float(t), nu)
                assert value >= 0, (t, nu)
                assert math.isfinite(value), (t, nu)

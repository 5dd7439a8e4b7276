"""Tests for dfrac.calculus.lattice."""

from unittest import TestCase

import numpy as np
import pytest
from dfrac.calculus.gamma import GridValue
from dfrac.calculus.lattice import GridFunction, power_function
from dfrac.core.errors import DomainError, LengthError


class TestGridFunction(TestCase):
    """Test grid functions."""

    def test_values_are_copied_and_frozen(self) -> None:
        """Test that samples are copied and read-only."""
        source = np.array([1.0, 2.0, 3.0])
        f = GridFunction(base=GridValue(0, 0), values=source)
        source[0] = 99.0
        assert f.values[0] == 1.0
        with pytest.raises(ValueError):
            f.values[0] = 5.0

    def test_empty_is_rejected(self) -> None:
        """Test that an empty function is rejected."""
        with pytest.raises(LengthError):
            GridFunction(base=GridValue(0, 0), values=np.array([]))

    def test_symbolic_base_needs_order(self) -> None:
        """Test that a base involving alpha needs an order."""
        with pytest.raises(DomainError, match="no order"):
            GridFunction(base=GridValue(1, -2), values=np.ones(3))

    def test_abscissae(self) -> None:
        """Test the realized abscissae."""
        f = GridFunction(base=GridValue(1, -2), values=np.zeros(4), alpha=1.5)
        np.testing.assert_allclose(f.abscissae(), [-0.5, 0.5, 1.5, 2.5])
        assert f.abscissa(2) == GridValue(1, 0)
        assert len(f) == 4

    def test_index_of(self) -> None:
        """Test lookup of lattice points."""
        f = GridFunction(base=GridValue(1, -2), values=np.zeros(4), alpha=1.5)
        assert f.index_of(GridValue(1, 1)) == 3
        with pytest.raises(DomainError):
            f.index_of(GridValue(0, 1))
        with pytest.raises(DomainError):
            f.index_of(GridValue(1, 2))

    def test_with_order_conflict(self) -> None:
        """Test that a realized base cannot change its order."""
        f = GridFunction(base=GridValue(1, 0), values=np.zeros(2), alpha=1.5)
        with pytest.raises(DomainError):
            f.with_order(1.25)
        assert GridFunction(base=GridValue(0, 0), values=np.zeros(2)).with_order(1.25).alpha == 1.25

    def test_impulse_and_sup_norm(self) -> None:
        """Test the unit impulse and the sup-norm."""
        f = GridFunction.impulse(GridValue(0, 0), 5, 3)
        np.testing.assert_array_equal(f.values, [0, 0, 0, 1, 0])
        assert f.with_values(-3 * f.values).sup_norm() == 3.0


class TestPowerFunction(TestCase):
    """Test sampled falling-factorial powers."""

    def test_vanishes_at_the_clamped_point(self) -> None:
        """Test that (alpha-2)^(alpha-1) is exactly zero."""
        f = power_function(GridValue(1, -2), 4, GridValue(1, -1), 1.5)
        assert f.values[0] == 0.0
        assert np.all(f.values[1:] > 0)

    def test_integer_power(self) -> None:
        """Test t^(2) = t(t-1)."""
        f = power_function(GridValue(0, 0), 5, GridValue(0, 2))
        np.testing.assert_allclose(f.values, [0.0, 0.0, 2.0, 6.0, 12.0])

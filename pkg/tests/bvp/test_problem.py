"""Tests for dfrac.bvp.problem."""

import math
from unittest import TestCase

import numpy as np
import pytest
from dfrac.bvp.nonlinearity import LinearNonlinearity
from dfrac.bvp.problem import SOLUTION_BASE, BvpProblem
from dfrac.calculus.gamma import GridValue
from pydantic import ValidationError


class TestBvpProblem(TestCase):
    """Test the validated problem model."""

    def test_defaults(self) -> None:
        """Test the default lambda and f, and the derived accessors."""
        problem = BvpProblem(alpha=1.5, b=2, h=(1.0, 2.0, 3.0))
        assert problem.lam == 1.0
        assert isinstance(problem.f, LinearNonlinearity)
        assert problem.size == 5
        np.testing.assert_array_equal(problem.weights(), [1.0, 2.0, 3.0])
        assert problem.order.alpha == 1.5
        assert SOLUTION_BASE == GridValue(1, -2)

    def test_lambda_alias(self) -> None:
        """Test that lambda is accepted under its own name."""
        assert BvpProblem(alpha=1.5, b=1, h=(1.0, 1.0), **{"lambda": 3.0}).lam == 3.0

    def test_validation(self) -> None:
        """Test the rejected field combinations."""
        with pytest.raises(ValidationError, match="b \\+ 1"):
            BvpProblem(alpha=1.5, b=2, h=(1.0, 1.0))
        with pytest.raises(ValidationError):
            BvpProblem(alpha=1.0, b=1, h=(1.0, 1.0))
        with pytest.raises(ValidationError):
            BvpProblem(alpha=1.5, b=0, h=(1.0,))
        with pytest.raises(ValidationError):
            BvpProblem(alpha=1.5, b=1, h=(1.0, 1.0), lam=0.0)

    def test_signed_weights_are_accepted(self) -> None:
        """Test that negative weights are kept as given."""
        problem = BvpProblem(alpha=1.5, b=1, h=(1.0, -1.0))

        np.testing.assert_array_equal(problem.weights(), [1.0, -1.0])

    def test_non_finite_weights_are_rejected(self) -> None:
        """Test that inf and nan weights are rejected."""
        for bad in (math.inf, -math.inf, math.nan):
            with pytest.raises(ValidationError, match="finite"):
                BvpProblem(alpha=1.5, b=1, h=(1.0, bad))

    def test_frozen(self) -> None:
        """Test that a problem cannot be mutated."""
        problem = BvpProblem(alpha=1.5, b=1, h=(1.0, 1.0))
        with pytest.raises(ValidationError):
            problem.b = 3  # type: ignore[misc]

"""Tests for dfrac.lyapunov.perron."""

from unittest import TestCase

import numpy as np
import pytest
from dfrac.bvp.problem import BvpProblem
from dfrac.bvp.solvers import NoConvergence, fixed_point_residual
from dfrac.core.errors import DegenerateError, DomainError, ZeroKernelError
from dfrac.lyapunov.perron import (
    EigenResult,
    lambda_by_determinant,
    perron_matrix,
    perron_smallest_lambda,
)


def perron(alpha: float, b: int, h: np.ndarray) -> EigenResult:
    """Perron pair that must have converged."""
    result = perron_smallest_lambda(alpha, b, h)
    assert isinstance(result, EigenResult)
    return result


class TestPerron(TestCase):
    """Test the smallest eigenvalue scan."""

    def test_eigen_pair(self) -> None:
        """Test that lambda* K y = y on the interior points."""
        result = perron(1.5, 3, np.ones(4))
        matrix = perron_matrix(1.5, 3, np.ones(4))
        interior = result.y_star.values[1:5]
        assert result.lambda_star == pytest.approx(1 / result.rho)
        assert result.residual <= 1e-10
        np.testing.assert_allclose(matrix @ interior, result.rho * interior, atol=1e-10)

    def test_eigenvector_is_normalized_and_nonnegative(self) -> None:
        """Test the normalization and sign of the eigenvector."""
        y = perron(1.25, 5, np.ones(6)).y_star
        assert y.values[0] == 0.0
        assert np.all(y.values >= 0)
        assert y.sup_norm() == pytest.approx(1.0)

    def test_extended_vector_solves_the_representation(self) -> None:
        """Test that the full eigenvector is a fixed point of the linear problem."""
        h = np.array([0.3, 1.0, 0.6])
        result = perron(1.9, 2, h)
        problem = BvpProblem(alpha=1.9, b=2, h=tuple(h), lam=result.lambda_star)
        assert fixed_point_residual(problem, result.y_star) <= 1e-9

    def test_doubling_h_halves_lambda(self) -> None:
        """Test that lambda* scales inversely with h."""
        h = np.array([0.2, 0.9, 0.4, 0.7, 1.0])
        single = perron(1.75, 4, h).lambda_star
        double = perron(1.75, 4, 2 * h).lambda_star
        assert double == pytest.approx(single / 2, rel=1e-12)

    def test_determinant_oracle(self) -> None:
        """Test power iteration against determinant bisection."""
        for alpha in (1.1, 1.5, 1.9):
            for b in (1, 3, 7):
                h = np.ones(b + 1)
                power = perron(alpha, b, h).lambda_star
                assert lambda_by_determinant(alpha, b, h) == pytest.approx(power, rel=1e-10)

    def test_iteration_cap(self) -> None:
        """Test that hitting the cap returns a NoConvergence record."""
        result = perron_smallest_lambda(1.5, 3, np.ones(4), max_iter=1)
        assert isinstance(result, NoConvergence)
        assert result.method == "power"

    def test_errors(self) -> None:
        """Test the zero kernel and rejected weights."""
        with pytest.raises(ZeroKernelError):
            perron_smallest_lambda(1.5, 3, np.zeros(4))
        with pytest.raises(DomainError):
            perron_smallest_lambda(1.5, 3, np.array([1.0, -1.0, 1.0, 1.0]))
        with pytest.raises(DomainError):
            perron_smallest_lambda(1.5, 3, np.ones(3))
        with pytest.raises(DegenerateError):
            perron_smallest_lambda(2.0, 3, np.ones(4))

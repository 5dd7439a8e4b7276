"""Tests for dfrac.bvp.solvers."""

import math
from unittest import TestCase

import numpy as np
import pytest
from dfrac.bvp import solvers
from dfrac.bvp.green import green_kernel
from dfrac.bvp.nonlinearity import ExpNonlinearity, LinearNonlinearity, PowerNonlinearity
from dfrac.bvp.problem import BvpProblem
from dfrac.bvp.solvers import (
    NoConvergence,
    direct_system,
    fixed_point_residual,
    measure_sign,
    resolve_sign,
    solve_linear_bvp_direct,
    solve_linear_bvp_green,
    solve_nonlinear_fixed_point,
)
from dfrac.calculus.lattice import GridFunction
from dfrac.core.errors import DegenerateError, DomainError, SingularSystemError
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from pytest_mock import MockerFixture


class TestDirectSolver(TestCase):
    """Test the direct linear solver."""

    def test_boundary_conditions(self) -> None:
        """Test y(alpha-2) = 0 and the focal condition on the solution."""
        y = solve_linear_bvp_direct(1.5, 4, np.linspace(0.5, 1.0, 5)).values
        assert y[0] == pytest.approx(0.0, abs=1e-14)
        assert y[1] - y[0] == pytest.approx(y[-1] - y[-2], abs=1e-12)

    def test_system_rows(self) -> None:
        """Test the shape and the boundary rows of the system matrix."""
        matrix = direct_system(1.25, 3)
        assert matrix.shape == (6, 6)
        np.testing.assert_array_equal(matrix[4], [1, 0, 0, 0, 0, 0])
        np.testing.assert_array_equal(matrix[5], [-1, 1, 0, 0, 1, -1])

    def test_alpha_two_is_singular(self) -> None:
        """Test that alpha = 2 gives a singular system."""
        with pytest.raises(SingularSystemError, match="singular"):
            solve_linear_bvp_direct(2.0, 3, np.ones(4))

    def test_alpha_two_system_is_the_classical_one(self) -> None:
        """Test that alpha = 2 rows are second differences."""
        matrix = direct_system(2.0, 2)
        np.testing.assert_array_equal(matrix[0], [-1, 2, -1, 0, 0])
        # y_k = k solves the homogeneous problem
        assert np.all(matrix @ np.arange(5.0) == 0)

    def test_rejects_bad_weights(self) -> None:
        """Test that a wrong weight count is rejected."""
        with pytest.raises(DomainError, match="b \\+ 1"):
            solve_linear_bvp_direct(1.5, 3, np.ones(3))
        with pytest.raises(DomainError):
            solve_linear_bvp_direct(1.5, 0, np.ones(1))


class TestKernelSolver(TestCase):
    """Test the kernel representation of the linear solution."""

    def test_sign_is_negative(self) -> None:
        """Test the measured global sign."""
        assert resolve_sign() == -1
        assert measure_sign(1.1, 6) == -1

    def test_matches_the_direct_solver(self) -> None:
        """Test the kernel solution against the direct one for random weights."""
        rng = np.random.default_rng(3)
        for alpha in (1.1, 1.5, 1.9):
            for b in (1, 4, 8):
                h = rng.uniform(0, 1, b + 1)
                direct = solve_linear_bvp_direct(alpha, b, h).values
                kernel = solve_linear_bvp_green(alpha, b, h).values
                np.testing.assert_allclose(kernel, direct, rtol=1e-9, atol=1e-12)

    def test_solution_is_nonpositive_for_nonnegative_data(self) -> None:
        """Test that nonnegative weights give a nonpositive solution."""
        y = solve_linear_bvp_green(1.75, 5, np.ones(6)).values
        assert y[0] == 0.0
        assert np.all(y[1:] < 0)

    def test_degenerate(self) -> None:
        """Test that alpha = 2 is rejected."""
        with pytest.raises(DegenerateError):
            solve_linear_bvp_green(2.0, 3, np.ones(4))

    @settings(max_examples=25, deadline=None)
    @given(
        alpha=st.floats(min_value=1.05, max_value=1.95),
        h=arrays(np.float64, 5, elements=st.floats(min_value=0.0, max_value=10.0)),
    )
    def test_kernel_equals_direct_for_any_data(self, alpha: float, h: np.ndarray) -> None:
        """Test the two linear solvers on random weights and orders."""
        direct = solve_linear_bvp_direct(alpha, 4, h).values
        kernel = solve_linear_bvp_green(alpha, 4, h).values
        scale = max(1.0, float(np.max(np.abs(direct))))
        assert np.max(np.abs(kernel - direct)) <= 1e-9 * scale


class TestSignResolution:
    """Test the write-once sign resolution."""

    def test_measured_once(self, mocker: MockerFixture) -> None:
        """Test that repeated resolution measures the sign only once."""
        mocker.patch.object(solvers, "_sign_sigma", None)
        spy = mocker.spy(solvers, "measure_sign")
        assert resolve_sign() == -1
        assert resolve_sign() == -1
        assert spy.call_count == 1


class TestFixedPoint(TestCase):
    """Test the damped Picard iteration."""

    def test_constant_nonlinearity_is_one_kernel_product(self) -> None:
        """Test that f = 1 converges to one kernel product."""
        h = np.array([0.5, 1.0, 0.25, 0.75])
        problem = BvpProblem(alpha=1.5, b=3, h=tuple(h), lam=2.0, f=PowerNonlinearity(p=0))
        y = solve_nonlinear_fixed_point(problem)
        assert isinstance(y, GridFunction)
        expected = 2.0 / math.gamma(1.5) * green_kernel(1.5, 3).matrix @ h
        np.testing.assert_allclose(y.values, expected, rtol=1e-9)

    def test_zero_solves_every_homogeneous_problem(self) -> None:
        """Test that the zero function has zero residual."""
        problem = BvpProblem(alpha=1.5, b=3, h=(1.0,) * 4, lam=1.0)
        assert fixed_point_residual(problem, np.zeros(6)) == 0.0
        assert fixed_point_residual(problem, np.ones(6)) > 0

    def test_exp_converges_and_is_certified(self) -> None:
        """Test that exp converges to a certified solution."""
        problem = BvpProblem(alpha=1.25, b=3, h=(1.0,) * 4, lam=0.02, f=ExpNonlinearity())
        y = solve_nonlinear_fixed_point(problem, tol=1e-11)
        assert isinstance(y, GridFunction)
        assert fixed_point_residual(problem, y) < 1e-10
        assert np.all(y.values[1:] > 0)

    def test_sublinear_power_from_a_positive_start(self) -> None:
        """Test that pow:0.5 from ones reaches a positive solution."""
        problem = BvpProblem(alpha=1.5, b=4, h=(1.0,) * 5, lam=1.0, f=PowerNonlinearity(p=0.5))
        y = solve_nonlinear_fixed_point(problem, initial=np.ones(7))
        assert isinstance(y, GridFunction)
        assert y.sup_norm() > 1e-3

    def test_superlinear_power_from_zero_is_trivial(self) -> None:
        """Test that pow:2 from zero stays at zero."""
        problem = BvpProblem(alpha=1.5, b=3, h=(1.0,) * 4, lam=1.0, f=PowerNonlinearity(p=2))
        y = solve_nonlinear_fixed_point(problem)
        assert isinstance(y, GridFunction)
        assert y.sup_norm() == 0.0

    def test_iteration_cap_returns_no_convergence(self) -> None:
        """Test that hitting max_iter returns a NoConvergence record."""
        problem = BvpProblem(alpha=1.5, b=3, h=(1.0,) * 4, lam=0.02, f=ExpNonlinearity())
        result = solve_nonlinear_fixed_point(problem, max_iter=2)
        assert isinstance(result, NoConvergence)
        assert result.iterations == 2
        assert result.method == "picard"

    def test_blow_up_returns_no_convergence(self) -> None:
        """Test that a diverging iteration returns a NoConvergence record."""
        problem = BvpProblem(alpha=1.5, b=3, h=(1.0,) * 4, lam=100.0, f=ExpNonlinearity())
        result = solve_nonlinear_fixed_point(problem, damping=1.0)
        assert isinstance(result, NoConvergence)
        assert "finite" in result.detail

    def test_argument_checks(self) -> None:
        """Test the rejected damping and starting iterate."""
        problem = BvpProblem(alpha=1.5, b=3, h=(1.0,) * 4, f=LinearNonlinearity())
        with pytest.raises(DomainError, match="damping"):
            solve_nonlinear_fixed_point(problem, damping=0.0)
        with pytest.raises(DomainError, match="initial"):
            solve_nonlinear_fixed_point(problem, initial=np.ones(3))
        with pytest.raises(DomainError):
            fixed_point_residual(problem, np.ones(5))

    def test_degenerate(self) -> None:
        """Test that alpha = 2 is rejected."""
        problem = BvpProblem(alpha=2.0, b=3, h=(1.0,) * 4)
        with pytest.raises(DegenerateError):
            solve_nonlinear_fixed_point(problem)

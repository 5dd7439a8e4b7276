"""Tests for dfrac.verification.suite."""

import pytest
from dfrac.verification.suite import (
    CHECKS,
    PLANS,
    check_degeneracy,
    check_lyapunov_inequality,
    run_suite,
)


class TestRunSuite:
    """Test the verification suite."""

    def test_quick_suite_passes(self) -> None:
        """Test that all ten quick checks pass."""
        results = run_suite("quick")
        assert len(results) == len(CHECKS) == 10
        assert len({result.name for result in results}) == 10
        failed = [result.name for result in results if not result.passed]
        assert failed == []

    def test_lyapunov_inequality_reports_closed_form_violations(self) -> None:
        """Test the measured closed-form violations of the quick grid."""
        result = check_lyapunov_inequality(PLANS["quick"])
        assert result.passed
        assert result.measured["closed_form_violations"] == ["(1.5, 1)", "(1.75, 1)"]
        assert result.measured["kernel_bound_violations"] == []
        assert result.measured["worst_determinant_error"] <= 1e-10

    def test_degeneracy_check(self) -> None:
        """Test the degeneracy check."""
        result = check_degeneracy(PLANS["quick"])
        assert result.passed, result.measured
        assert result.measured["classical_second_difference"] is True

    @pytest.mark.parametrize("mode", ["quick", "full"])
    def test_plans(self, mode: str) -> None:
        """Test that both plans start at b = 1."""
        plan = PLANS[mode]  # type: ignore[index]
        assert plan.alphas
        assert plan.bs[0] == 1

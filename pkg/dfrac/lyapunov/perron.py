"""
Smallest eigenvalue of the linear problem.

With ``f(y) = y`` the sign-absorbed representation restricted to the points
``k = 1 ... b + 1`` (abscissae ``s + alpha - 1``) is ``v = lambda K v`` for
the nonnegative matrix ``K[i, s] = G(i + alpha - 1, s) h[s] / Gamma(alpha)``.
The smallest ``lambda`` admitting a nontrivial solution is ``1 / rho(K)``.
It is found by power iteration and confirmed independently by bisecting on
the sign of ``det(I - lambda K)``.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict

from dfrac.bvp.green import green_kernel
from dfrac.bvp.problem import SOLUTION_BASE
from dfrac.bvp.solvers import NoConvergence
from dfrac.calculus.gamma import signed_log_gamma
from dfrac.calculus.lattice import GridFunction
from dfrac.core.config import config
from dfrac.core.errors import DfracError, DomainError, ZeroKernelError
from dfrac.utils.logging import logger

_SCAN_POINTS = 256
_BISECTION_RTOL = 1e-13


class EigenResult(BaseModel):
    """
    Perron pair of the linear problem.

    Attributes:
        lambda_star: Smallest positive lambda with a nontrivial solution
        rho: Perron eigenvalue of ``K``, equal to ``1 / lambda_star``
        y_star: Eigenvector extended to ``alpha - 2 ... alpha + b``, sup-norm 1
        iterations: Power-iteration steps
        residual: ``|K v - rho v|`` on the interior points
        drift: Last Rayleigh-quotient change
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_star: float
    rho: float
    y_star: GridFunction
    iterations: int
    residual: float
    drift: float


def _full_kernel(alpha: float, b: int, h: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """``G h / Gamma(alpha)`` on all rows, and the validated weights."""
    weights = np.asarray(h, dtype=np.float64)
    if weights.shape != (b + 1,):
        raise DomainError(f"h needs b + 1 = {b + 1} samples, got shape {weights.shape}")
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise DomainError("h must be finite and nonnegative")
    full = green_kernel(alpha, b).matrix * weights / signed_log_gamma(alpha).value
    return full, weights


def perron_matrix(alpha: float, b: int, h: ArrayLike) -> NDArray[np.float64]:
    """
    The ``(b + 1) x (b + 1)`` matrix ``K`` on the interior points.

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If h is negative or has the wrong length
        ZeroKernelError: If ``K`` vanishes
    """
    full, _ = _full_kernel(alpha, b, h)
    matrix = full[1 : b + 2, :]
    if not np.any(matrix):
        raise ZeroKernelError("kernel matrix is identically zero; is h zero?")
    return matrix


def perron_smallest_lambda(
    alpha: float,
    b: int,
    h: ArrayLike,
    *,
    drift_tol: float | None = None,
    residual_tol: float | None = None,
    max_iter: int | None = None,
) -> EigenResult | NoConvergence:
    """
    Power iteration for the Perron pair of ``K``.

    Starts from all ones and normalizes by the sup-norm each step. Stops once
    the Rayleigh-quotient drift is below ``drift_tol`` and the eigen-residual
    is below ``residual_tol``.

    Args:
        alpha: Order in ``(1, 2)``
        b: Right end, at least 1
        h: Nonnegative weights, not all zero
        drift_tol: ``config.perron_drift_tol`` by default
        residual_tol: ``config.perron_residual_tol`` by default
        max_iter: ``config.perron_max_iter`` by default

    Returns:
        The eigen pair, or :class:`~dfrac.bvp.solvers.NoConvergence`

    Raises:
        DegenerateError: If alpha is 2
        ZeroKernelError: If ``K`` vanishes
    """
    drift_tol = config.perron_drift_tol if drift_tol is None else drift_tol
    residual_tol = config.perron_residual_tol if residual_tol is None else residual_tol
    max_iter = config.perron_max_iter if max_iter is None else max_iter

    matrix = perron_matrix(alpha, b, h)
    full, weights = _full_kernel(alpha, b, h)

    vector = np.ones(b + 1)
    quotient = 0.0
    drift = float("inf")
    residual = float("inf")
    for iteration in range(1, max_iter + 1):
        image = matrix @ vector
        updated_quotient = float(vector @ image / (vector @ vector))
        drift = abs(updated_quotient - quotient)
        quotient = updated_quotient
        vector = image / np.max(np.abs(image))
        if drift < drift_tol * max(1.0, quotient):
            residual = float(np.max(np.abs(matrix @ vector - quotient * vector)))
            if residual <= residual_tol:
                break
    else:
        logger.warning(
            "Power iteration hit the cap", alpha=alpha, b=b, drift=drift, residual=residual
        )
        return NoConvergence(
            method="power",
            iterations=max_iter,
            residual=residual if np.isfinite(residual) else drift,
            detail=f"Rayleigh drift {drift:.3e} after {max_iter} iterations",
        )

    lambda_star = 1.0 / quotient
    extended = lambda_star * (full @ vector)
    extended[1 : b + 2] = vector
    extended = extended / np.max(np.abs(extended))
    interior = extended[1 : b + 2]
    residual = float(np.max(np.abs(matrix @ interior - quotient * interior)))

    logger.debug("Power iteration converged", alpha=alpha, b=b, iterations=iteration)
    return EigenResult(
        lambda_star=lambda_star,
        rho=quotient,
        y_star=GridFunction(base=SOLUTION_BASE, values=extended, alpha=alpha),
        iterations=iteration,
        residual=residual,
        drift=drift,
    )


def lambda_by_determinant(alpha: float, b: int, h: ArrayLike) -> float:
    """
    First root of ``det(I - lambda K)`` by scan and bisection.

    The root lies in ``[1 / max row sum, 1 / min row sum]`` because the Perron
    eigenvalue is bracketed by the row sums of a nonnegative matrix.

    Raises:
        DegenerateError: If alpha is 2
        ZeroKernelError: If ``K`` vanishes
        DfracError: If no sign change is found in the bracket
    """
    matrix = perron_matrix(alpha, b, h)
    identity = np.eye(b + 1)
    row_sums = matrix.sum(axis=1)
    low, high = 1.0 / np.max(row_sums), 1.0 / np.min(row_sums)

    def characteristic(lam: float) -> float:
        """``det(I - lam K)``."""
        return float(np.linalg.det(identity - lam * matrix))

    if characteristic(low) <= 0 or np.isclose(low, high, rtol=1e-15, atol=0.0):
        return float(low)

    grid = np.linspace(low, high, _SCAN_POINTS)
    values = [characteristic(lam) for lam in grid]
    change = next((i for i, value in enumerate(values) if value <= 0), None)
    if change is None:
        raise DfracError(f"det(I - lambda K) keeps its sign on [{low:.6e}, {high:.6e}]")
    if values[change] == 0:
        return float(grid[change])

    lower, upper = float(grid[change - 1]), float(grid[change])
    while upper - lower > _BISECTION_RTOL * upper:
        middle = 0.5 * (lower + upper)
        if characteristic(middle) > 0:
            lower = middle
        else:
            upper = middle
    return 0.5 * (lower + upper)

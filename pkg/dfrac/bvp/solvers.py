"""
Solvers for the right-focal problem.

- :func:`solve_linear_bvp_direct` assembles the dense ``(b+3) x (b+3)`` system
  from the operator definitions alone and is the oracle for the kernel.
- :func:`solve_linear_bvp_green` evaluates ``y = sigma / Gamma(alpha) * G h``.
- :func:`solve_nonlinear_fixed_point` runs a damped Picard iteration on
  ``y = lambda / Gamma(alpha) * G (h * f(y))``.

The sign ``sigma`` relating the two linear solvers is measured once per
process by :func:`resolve_sign` and reused afterwards. Nonlinear problems are
posed in the sign-absorbed form above so that nonnegative data keep the
iterate in the nonnegative cone.
"""

import threading
import warnings

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict
from scipy import linalg

from dfrac.bvp.green import green_kernel
from dfrac.bvp.problem import SOLUTION_BASE, BvpProblem
from dfrac.calculus.gamma import Order, signed_log_gamma
from dfrac.calculus.lattice import GridFunction
from dfrac.calculus.operators import fractional_difference
from dfrac.constants import CERTIFY_FACTOR, SIGN_REFERENCE_ALPHA, SIGN_REFERENCE_B
from dfrac.core.config import config
from dfrac.core.errors import (
    DomainError,
    InconsistentSignError,
    SingularSystemError,
)
from dfrac.utils.logging import logger

_SIGN_AGREEMENT = 1e-9

_sign_lock = threading.Lock()
_sign_sigma: int | None = None


class NoConvergence(BaseModel):
    """
    Returned instead of a solution when an iteration hits its cap or blows up.

    Attributes:
        method: Name of the iteration
        iterations: Steps taken
        residual: Last measured residual or step size
        detail: Human-readable reason
    """

    model_config = ConfigDict(frozen=True)

    method: str
    iterations: int
    residual: float
    detail: str = ""


def _check_weights(alpha: float, b: int, h: ArrayLike) -> NDArray[np.float64]:
    """Validate ``b`` and the weight count, returning ``h`` as a float array."""
    if b < 1:
        raise DomainError(f"b must be at least 1, got {b}")
    weights = np.asarray(h, dtype=np.float64)
    if weights.shape != (b + 1,):
        raise DomainError(f"h needs b + 1 = {b + 1} samples, got shape {weights.shape}")
    return weights


def direct_system(alpha: float, b: int) -> NDArray[np.float64]:
    """
    Matrix of the linear problem in the unknowns ``y_0 ... y_{b+2}``.

    Rows ``0 ... b`` are ``-Delta^alpha`` applied to each unit vector, row
    ``b + 1`` is ``y_0 = 0`` and row ``b + 2`` is the right-focal condition
    ``(y_1 - y_0) - (y_{b+2} - y_{b+1}) = 0``.
    """
    size = b + 3
    matrix = np.zeros((size, size))
    for i in range(size):
        unit = GridFunction.impulse(SOLUTION_BASE, size, i, alpha)
        matrix[: b + 1, i] = -fractional_difference(unit, alpha).values
    matrix[b + 1, 0] = 1.0
    matrix[b + 2, [0, 1, b + 1, b + 2]] = [-1.0, 1.0, 1.0, -1.0]
    return matrix


def solve_linear_bvp_direct(alpha: float, b: int, h: ArrayLike) -> GridFunction:
    """
    Solve ``-Delta^alpha y = h`` with the two boundary conditions by LU.

    Args:
        alpha: Order in ``(1, 2]``
        b: Right end, at least 1
        h: ``b + 1`` samples ``h[s] = h(s + alpha - 1)``

    Returns:
        ``y`` on ``alpha - 2, ..., alpha + b``

    Raises:
        DomainError: If alpha, b or h is out of range
        SingularSystemError: If a pivot falls below ``pivot_tol`` times the
            largest entry; this happens at ``alpha = 2``, where ``y_k = k``
            solves the homogeneous problem
    """
    Order(alpha).require_bvp(allow_degenerate=True)
    weights = _check_weights(alpha, b, h)

    matrix = direct_system(alpha, b)
    scale = float(np.max(np.abs(matrix)))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, pivots = linalg.lu_factor(matrix, check_finite=True)

    smallest = float(np.min(np.abs(np.diag(lu))))
    if smallest < config.pivot_tol * scale:
        raise SingularSystemError(
            f"direct system is singular at alpha={alpha}, b={b}: pivot {smallest:.3e}"
        )

    rhs = np.concatenate([weights, [0.0, 0.0]])
    values = linalg.lu_solve((lu, pivots), rhs)
    return GridFunction(base=SOLUTION_BASE, values=values, alpha=alpha)


def measure_sign(alpha: float, b: int) -> int:
    """
    Compare the direct solver with ``G / Gamma(alpha)`` column by column.

    Returns:
        ``+1`` or ``-1``

    Raises:
        InconsistentSignError: If the ratio is not one global sign
    """
    kernel = green_kernel(alpha, b)
    gamma_alpha = signed_log_gamma(alpha).value
    ratios = []
    for s in range(b + 1):
        impulse = np.zeros(b + 1)
        impulse[s] = 1.0
        direct = solve_linear_bvp_direct(alpha, b, impulse).values
        column = kernel.matrix[:, s] / gamma_alpha
        # row 0 is zero on both sides
        ratios.extend(direct[1:] / column[1:])

    ratios_array = np.asarray(ratios)
    sign = 1 if ratios_array[0] > 0 else -1
    deviation = float(np.max(np.abs(ratios_array - sign)))
    if deviation > _SIGN_AGREEMENT:
        raise InconsistentSignError(
            f"direct and kernel solutions differ by more than a sign: {deviation:.3e}"
        )
    return sign


def resolve_sign() -> int:
    """
    The global sign ``sigma`` in ``y = sigma / Gamma(alpha) * G h``.

    Measured on the reference instance the first time it is needed and
    cached for the rest of the process.
    """
    global _sign_sigma
    with _sign_lock:
        if _sign_sigma is None:
            _sign_sigma = measure_sign(SIGN_REFERENCE_ALPHA, SIGN_REFERENCE_B)
            logger.info(
                "Resolved kernel sign",
                sign_sigma=_sign_sigma,
                alpha=SIGN_REFERENCE_ALPHA,
                b=SIGN_REFERENCE_B,
            )
        return _sign_sigma


def solve_linear_bvp_green(alpha: float, b: int, h: ArrayLike) -> GridFunction:
    """
    Solve the linear problem through the kernel.

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If alpha, b or h is out of range
    """
    Order(alpha).require_bvp()
    weights = _check_weights(alpha, b, h)
    kernel = green_kernel(alpha, b)
    values = resolve_sign() / signed_log_gamma(alpha).value * (kernel.matrix @ weights)
    return GridFunction(base=SOLUTION_BASE, values=values, alpha=alpha)


def _picard_map(
    problem: BvpProblem, kernel: NDArray[np.float64], y: NDArray[np.float64]
) -> NDArray[np.float64]:
    """One application of ``y -> lambda / Gamma(alpha) * G (h * f(y))``."""
    # f is sampled at k = 1 ... b + 1, i.e. at s + alpha - 1
    forcing = problem.weights() * problem.f(y[1 : problem.b + 2])
    return problem.lam / signed_log_gamma(problem.alpha).value * (kernel @ forcing)


def fixed_point_residual(problem: BvpProblem, y: GridFunction | ArrayLike) -> float:
    """
    Sup-norm of ``y - lambda / Gamma(alpha) * G (h * f(y))``.

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If y has the wrong length
    """
    values = y.values if isinstance(y, GridFunction) else np.asarray(y, dtype=np.float64)
    if values.shape != (problem.size,):
        raise DomainError(f"y needs b + 3 = {problem.size} samples, got {values.shape}")
    kernel = green_kernel(problem.alpha, problem.b).matrix
    return float(np.max(np.abs(values - _picard_map(problem, kernel, values))))


def solve_nonlinear_fixed_point(
    problem: BvpProblem,
    *,
    tol: float | None = None,
    max_iter: int | None = None,
    damping: float | None = None,
    initial: GridFunction | ArrayLike | None = None,
) -> GridFunction | NoConvergence:
    """
    Damped Picard iteration ``y <- (1 - w) y + w T(y)``.

    Stops when a step is below ``tol`` and the fixed-point residual is below
    ``10 * tol``. Starting from zero, ``pow:p`` with ``p > 0`` settles on the
    trivial solution; a positive ``initial`` is needed for the nontrivial one
    when ``p < 1``.

    Args:
        problem: The problem data
        tol: Step tolerance, ``config.tol`` by default
        max_iter: Iteration cap, ``config.max_iter`` by default
        damping: Relaxation weight in ``(0, 1]``, ``config.damping`` by default
        initial: Starting iterate, zero by default

    Returns:
        The certified solution, or :class:`NoConvergence`

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If damping or the initial iterate is invalid
    """
    tol = config.tol if tol is None else tol
    max_iter = config.max_iter if max_iter is None else max_iter
    damping = config.damping if damping is None else damping
    if not 0 < damping <= 1:
        raise DomainError(f"damping must lie in (0, 1], got {damping}")

    Order(problem.alpha).require_bvp()
    kernel = green_kernel(problem.alpha, problem.b).matrix

    if initial is None:
        y = np.zeros(problem.size)
    else:
        y = np.array(
            initial.values if isinstance(initial, GridFunction) else initial,
            dtype=np.float64,
        )
        if y.shape != (problem.size,):
            raise DomainError(f"initial iterate needs {problem.size} samples, got {y.shape}")

    step = float("inf")
    for iteration in range(1, max_iter + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            updated = (1 - damping) * y + damping * _picard_map(problem, kernel, y)
        if not np.all(np.isfinite(updated)):
            logger.warning("Picard iteration diverged", iteration=iteration, f=problem.f.tag())
            return NoConvergence(
                method="picard",
                iterations=iteration,
                residual=float("inf"),
                detail="iterate left the finite range",
            )

        step = float(np.max(np.abs(updated - y)))
        y = updated
        if step < tol:
            residual = fixed_point_residual(problem, y)
            if residual < CERTIFY_FACTOR * tol:
                logger.debug(
                    "Picard iteration converged", iterations=iteration, residual=residual
                )
                return GridFunction(base=SOLUTION_BASE, values=y, alpha=problem.alpha)

    logger.warning("Picard iteration hit the cap", max_iter=max_iter, step=step)
    return NoConvergence(
        method="picard",
        iterations=max_iter,
        residual=step,
        detail=f"step {step:.3e} still above tol {tol:.3e} after {max_iter} iterations",
    )

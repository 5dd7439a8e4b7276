"""
Lyapunov-type bound and inequality verdicts.

A nontrivial solution of the right-focal problem forces::

    sum_s |lambda h(s + alpha - 1)|  >=  C(alpha, b) * eta / f(eta)

with ``eta`` the maximum of ``y`` over ``alpha - 1 ... alpha + b``. Two
constants are evaluated: the closed form ``C(alpha, b)`` built on the
diagonal maximum of the kernel, and ``Gamma(alpha) / max G`` built on the
true maximum over the whole grid. Only the latter is a rigorous necessary
condition; reports carry a verdict for each.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import special

from dfrac.bvp.green import kernel_sup, log_bracket
from dfrac.bvp.problem import BvpProblem
from dfrac.bvp.solvers import fixed_point_residual, resolve_sign
from dfrac.calculus.gamma import signed_log_gamma
from dfrac.calculus.lattice import GridFunction
from dfrac.constants import CERTIFY_FACTOR, TRIVIAL_NORM, TRIVIAL_SOLUTION_ERROR
from dfrac.core.config import config
from dfrac.core.errors import DomainError, TrivialSolutionError, UncertifiedSolutionError
from dfrac.utils.logging import logger


def lyapunov_bound(alpha: float, b: int) -> float:
    """
    ``C(alpha, b) = Gamma(alpha) Gamma(b) [Gamma(alpha-1) Gamma(b+2) - Gamma(alpha+b)]
    / (Gamma(alpha-1) Gamma(b+2) Gamma(b+alpha-1))``, in log space.

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If alpha or b is out of range
    """
    log_bracket_value = log_bracket(alpha, b)
    return math.exp(
        special.gammaln(alpha)
        + special.gammaln(b)
        + log_bracket_value
        - special.gammaln(alpha - 1)
        - special.gammaln(b + 2)
        - special.gammaln(b + alpha - 1)
    )


def kernel_bound(alpha: float, b: int) -> float:
    """``Gamma(alpha) / max G`` with the maximum taken over every ``(k, s)``."""
    return signed_log_gamma(alpha).value / kernel_sup(alpha, b)


def _holds(margin: float, rhs: float) -> bool:
    """Verdict for ``margin``, allowing ``config.holds_slack`` relative to the right-hand side."""
    return margin >= -config.holds_slack * max(1.0, abs(rhs))


class LyapunovReport(BaseModel):
    """
    Verdict of the inequality for one certified solution.

    Attributes:
        alpha: Order of the problem
        b: Right end of the problem
        lam: Eigenvalue parameter folded into the weights
        bound_C: Closed-form constant ``C(alpha, b)``
        bound_kernel: Constant ``Gamma(alpha) / max G``
        h_sum: ``sum |lambda h|``, the left-hand side
        eta: Maximum of ``y`` over indices ``1 ... b + 2``
        f_eta: ``f(eta)``
        lhs: Same as ``h_sum``
        rhs: ``bound_C * eta / f_eta``
        rhs_kernel: ``bound_kernel * eta / f_eta``
        holds: Verdict against ``rhs``
        holds_kernel: Verdict against ``rhs_kernel``
        margin: ``lhs - rhs``
        margin_kernel: ``lhs - rhs_kernel``
        residual: Fixed-point residual of the candidate
        sign_sigma: Global kernel sign
    """

    model_config = ConfigDict(frozen=True)

    alpha: float
    b: int
    lam: float
    bound_C: float
    bound_kernel: float
    h_sum: float
    eta: float
    f_eta: float
    lhs: float
    rhs: float
    rhs_kernel: float
    holds: bool
    holds_kernel: bool
    margin: float
    margin_kernel: float
    residual: float
    sign_sigma: int


def check_inequality(
    problem: BvpProblem, y: GridFunction, *, tol: float | None = None
) -> LyapunovReport:
    """
    Evaluate both inequality verdicts for a candidate solution.

    ``y`` must solve the sign-absorbed representation
    ``y = lambda / Gamma(alpha) * G (h * f(y))`` to within ``10 * tol``
    relative to its size.

    Args:
        problem: Problem data, including ``lambda`` and ``f``
        y: Candidate on ``alpha - 2 ... alpha + b``
        tol: Certification tolerance, ``config.tol`` by default

    Returns:
        The report

    Raises:
        TrivialSolutionError: If ``y`` vanishes up to ``1e-8``
        UncertifiedSolutionError: If ``y`` does not solve the problem
        DomainError: If ``eta`` or ``f(eta)`` is not positive
    """
    tol = config.tol if tol is None else tol
    norm = y.sup_norm()
    if norm <= TRIVIAL_NORM:
        raise TrivialSolutionError(TRIVIAL_SOLUTION_ERROR)

    residual = fixed_point_residual(problem, y)
    if residual > CERTIFY_FACTOR * tol * max(1.0, norm):
        raise UncertifiedSolutionError(
            f"candidate is not a solution: fixed-point residual {residual:.3e}"
        )

    eta = float(np.max(y.values[1:]))
    f_eta = float(problem.f(np.array([eta]))[0])
    if not eta > 0 or not f_eta > 0:
        raise DomainError(f"eta = {eta:.6e}, f(eta) = {f_eta:.6e}: the ratio is undefined")

    bound_c = lyapunov_bound(problem.alpha, problem.b)
    weights = problem.weights()
    if np.any(weights < 0):
        logger.warning(
            "Signed weights enter the left-hand side as absolute values",
            negative=int(np.count_nonzero(weights < 0)),
        )
    bound_k = kernel_bound(problem.alpha, problem.b)
    h_sum = float(np.sum(np.abs(problem.lam * weights)))
    ratio = eta / f_eta
    rhs = bound_c * ratio
    rhs_kernel = bound_k * ratio

    return LyapunovReport(
        alpha=problem.alpha,
        b=problem.b,
        lam=problem.lam,
        bound_C=bound_c,
        bound_kernel=bound_k,
        h_sum=h_sum,
        eta=eta,
        f_eta=f_eta,
        lhs=h_sum,
        rhs=rhs,
        rhs_kernel=rhs_kernel,
        holds=_holds(h_sum - rhs, rhs),
        holds_kernel=_holds(h_sum - rhs_kernel, rhs_kernel),
        margin=h_sum - rhs,
        margin_kernel=h_sum - rhs_kernel,
        residual=residual,
        sign_sigma=resolve_sign(),
    )

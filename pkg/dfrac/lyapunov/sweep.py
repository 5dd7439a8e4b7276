"""Reproduction table of the bound over an (alpha, b) grid."""

from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from dfrac.bvp.green import green_max_closed_form
from dfrac.bvp.problem import BvpProblem
from dfrac.bvp.solvers import NoConvergence
from dfrac.calculus.gamma import signed_log_gamma
from dfrac.core.config import config
from dfrac.core.errors import DegenerateError, DfracError
from dfrac.lyapunov.bound import check_inequality
from dfrac.lyapunov.perron import perron_smallest_lambda
from dfrac.utils.logging import logger

SweepStatus = Literal["ok", "degenerate", "error"]


class SweepRow(BaseModel):
    """
    One ``(alpha, b)`` cell with ``h = 1`` and ``f(y) = y``.

    Numeric fields are None unless ``status`` is ``"ok"``.

    Attributes:
        alpha: Order
        b: Right end
        status: ``ok``, ``degenerate`` (alpha = 2) or ``error``
        bound_C: Closed-form constant
        green_max: Closed-form diagonal maximum
        lambda_star: Perron threshold
        lambda_h_sum: ``lambda_star * (b + 1)``
        margin: ``lambda_h_sum - bound_C``
        bound_kernel: ``Gamma(alpha) / max G``
        margin_kernel: ``lambda_h_sum - bound_kernel``
        holds: Verdict against ``bound_C``
        holds_kernel: Verdict against ``bound_kernel``
        duality_error: ``|bound_C * green_max / Gamma(alpha) - 1|``
        error: Message of a failed cell
    """

    model_config = ConfigDict(frozen=True)

    alpha: float
    b: int
    status: SweepStatus
    bound_C: float | None = None
    green_max: float | None = None
    lambda_star: float | None = None
    lambda_h_sum: float | None = None
    margin: float | None = None
    bound_kernel: float | None = None
    margin_kernel: float | None = None
    holds: bool | None = None
    holds_kernel: bool | None = None
    duality_error: float | None = None
    error: str | None = None


def sweep_cell(alpha: float, b: int) -> SweepRow:
    """Evaluate one cell, recording failures in the row instead of raising."""
    try:
        eigen = perron_smallest_lambda(alpha, b, np.ones(b + 1))
        if isinstance(eigen, NoConvergence):
            logger.warning("Sweep cell did not converge", alpha=alpha, b=b, detail=eigen.detail)
            return SweepRow(alpha=alpha, b=b, status="error", error=eigen.detail)

        problem = BvpProblem(alpha=alpha, b=b, h=(1.0,) * (b + 1), lam=eigen.lambda_star)
        report = check_inequality(problem, eigen.y_star)
        green_max = green_max_closed_form(alpha, b)
    except DegenerateError as e:
        return SweepRow(alpha=alpha, b=b, status="degenerate", error=str(e))
    except (DfracError, ValueError) as e:
        logger.warning("Sweep cell failed", alpha=alpha, b=b, error=str(e))
        return SweepRow(alpha=alpha, b=b, status="error", error=str(e))

    return SweepRow(
        alpha=alpha,
        b=b,
        status="ok",
        bound_C=report.bound_C,
        green_max=green_max,
        lambda_star=eigen.lambda_star,
        lambda_h_sum=report.lhs,
        margin=report.margin,
        bound_kernel=report.bound_kernel,
        margin_kernel=report.margin_kernel,
        holds=report.holds,
        holds_kernel=report.holds_kernel,
        duality_error=abs(report.bound_C * green_max / signed_log_gamma(alpha).value - 1.0),
    )


def bound_sweep(
    alphas: Iterable[float], bs: Iterable[int], *, workers: int | None = None
) -> list[SweepRow]:
    """
    Evaluate every ``(alpha, b)`` cell, alpha-major.

    Cells run on a thread pool of ``workers`` threads (``config.sweep_workers``
    by default); rows come back in grid order whatever the scheduling.
    """
    workers = config.sweep_workers if workers is None else workers
    cells = list(product(alphas, bs))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(lambda cell: sweep_cell(*cell), cells))

    violations = sum(1 for row in rows if row.holds is False)
    logger.info("Sweep finished", cells=len(rows), closed_form_violations=violations)
    return rows

"""Lyapunov-type bound, inequality verdicts, eigenvalue scan and sweep."""

from .bound import LyapunovReport, check_inequality, kernel_bound, lyapunov_bound
from .perron import EigenResult, lambda_by_determinant, perron_matrix, perron_smallest_lambda
from .sweep import SweepRow, bound_sweep, sweep_cell

__all__ = [
    "EigenResult",
    "LyapunovReport",
    "SweepRow",
    "bound_sweep",
    "check_inequality",
    "kernel_bound",
    "lambda_by_determinant",
    "lyapunov_bound",
    "perron_matrix",
    "perron_smallest_lambda",
    "sweep_cell",
]

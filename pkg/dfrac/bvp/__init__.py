"""The right-focal boundary value problem: kernel, solvers and nonlinearities."""

from .green import (
    GreenKernel,
    diag_increment,
    diag_increment_factor,
    green_column_argmax,
    green_diag_max_exhaustive,
    green_kernel,
    green_max_closed_form,
    green_value,
    kernel_sup,
)
from .nonlinearity import (
    BaseNonlinearity,
    ExpNonlinearity,
    LinearNonlinearity,
    Nonlinearity,
    PowerNonlinearity,
    TableNonlinearity,
    parse_nonlinearity,
)
from .problem import SOLUTION_BASE, BvpProblem
from .solvers import (
    NoConvergence,
    fixed_point_residual,
    measure_sign,
    resolve_sign,
    solve_linear_bvp_direct,
    solve_linear_bvp_green,
    solve_nonlinear_fixed_point,
)

__all__ = [
    "SOLUTION_BASE",
    "BaseNonlinearity",
    "BvpProblem",
    "ExpNonlinearity",
    "GreenKernel",
    "LinearNonlinearity",
    "NoConvergence",
    "Nonlinearity",
    "PowerNonlinearity",
    "TableNonlinearity",
    "diag_increment",
    "diag_increment_factor",
    "fixed_point_residual",
    "green_column_argmax",
    "green_diag_max_exhaustive",
    "green_kernel",
    "green_max_closed_form",
    "green_value",
    "kernel_sup",
    "measure_sign",
    "parse_nonlinearity",
    "resolve_sign",
    "solve_linear_bvp_direct",
    "solve_linear_bvp_green",
    "solve_nonlinear_fixed_point",
]

"""
Discrete fractional calculus on shifted integer lattices.

dfrac evaluates falling-factorial powers, fractional sums and differences,
the Green's kernel of the right-focal boundary value problem and the
Lyapunov-type bound that a nontrivial solution of that problem must satisfy.
Every closed form is cross-checked against a dense direct solver.
"""

from .bvp import (
    BvpProblem,
    NoConvergence,
    green_kernel,
    green_max_closed_form,
    green_value,
    resolve_sign,
    solve_linear_bvp_direct,
    solve_linear_bvp_green,
    solve_nonlinear_fixed_point,
)
from .calculus import (
    GridFunction,
    GridValue,
    falling_factorial,
    fractional_difference,
    fractional_sum,
)
from .lyapunov import (
    bound_sweep,
    check_inequality,
    lyapunov_bound,
    perron_smallest_lambda,
)

__version__ = "0.1.0"

__all__ = [
    "BvpProblem",
    "GridFunction",
    "GridValue",
    "NoConvergence",
    "bound_sweep",
    "check_inequality",
    "falling_factorial",
    "fractional_difference",
    "fractional_sum",
    "green_kernel",
    "green_max_closed_form",
    "green_value",
    "lyapunov_bound",
    "perron_smallest_lambda",
    "resolve_sign",
    "solve_linear_bvp_direct",
    "solve_linear_bvp_green",
    "solve_nonlinear_fixed_point",
]

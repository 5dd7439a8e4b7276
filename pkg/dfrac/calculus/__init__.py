"""Gamma core, grid functions and the discrete fractional operators."""

from .gamma import (
    GridValue,
    Order,
    SignedLogGamma,
    falling_factorial,
    falling_factorial_array,
    signed_log_gamma,
)
from .lattice import GridFunction, power_function
from .operators import (
    CompositionResidual,
    composition_residual,
    forward_difference,
    fractional_difference,
    fractional_sum,
)

__all__ = [
    "CompositionResidual",
    "GridFunction",
    "GridValue",
    "Order",
    "SignedLogGamma",
    "composition_residual",
    "falling_factorial",
    "falling_factorial_array",
    "forward_difference",
    "fractional_difference",
    "fractional_sum",
    "power_function",
    "signed_log_gamma",
]

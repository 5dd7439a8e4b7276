"""
Dfrac constants.

This module collects the literals shared across the package: numerical
tolerances that are part of the public contract, the output format
version, CLI exit codes and the parameter grid of the reproduction sweep.
Keeping them here avoids magic numbers drifting apart between the solvers,
the verification suite and the command line.
"""

from enum import IntEnum
from typing import Literal

SCHEMA_VERSION: Literal["1"] = "1"

FLOAT_FORMAT = "%.12e"
"""Canonical float format for CSV cells and JSON rounding."""

POLE_TOLERANCE = 1e-12
"""Integrality tolerance of the real-valued (best-effort) pole path."""

TRIVIAL_NORM = 1e-8
"""Sup-norm at or below which a solution counts as trivial."""

CERTIFY_FACTOR = 10.0
"""A fixed point is certified when its residual is below this multiple of tol."""

SWEEP_ALPHAS: tuple[float, ...] = (1.1, 1.25, 1.5, 1.75, 1.9)
SWEEP_BS: tuple[int, ...] = tuple(range(1, 11))

QUICK_ALPHAS: tuple[float, ...] = (1.25, 1.5, 1.75)
QUICK_BS: tuple[int, ...] = (1, 2, 3, 4, 5)

SIGN_REFERENCE_ALPHA = 1.5
SIGN_REFERENCE_B = 3


class ExitCode(IntEnum):
    """Process exit codes of the command line front end."""

    OK = 0
    VERIFICATION_FAILED = 1
    USAGE = 2
    NO_CONVERGENCE = 3


DEGENERATE_ALPHA_ERROR = (
    "alpha = 2 is degenerate: Gamma(alpha-1)Gamma(b+2) - Gamma(alpha+b) vanishes,"
    " so the closed-form kernel and bound are undefined."
)

TRIVIAL_SOLUTION_ERROR = "trivial solution: sup-norm is at or below 1e-8"

"""
Type definitions for dfrac command payloads.

These TypedDicts describe the ``results`` member of the output envelope for
the commands whose payload is a plain mapping.
"""

from typing import Literal

from typing_extensions import NotRequired, TypedDict


class SolutionPayload(TypedDict):
    """A solution sampled on ``alpha - 2 ... alpha + b``."""

    representation: Literal["signed", "sign_absorbed"]
    t: list[str]
    y: list[float]
    residual: NotRequired[float]


class BoundPayload(TypedDict):
    """Both Lyapunov constants with the maxima they are built on."""

    bound_C: float
    bound_kernel: float
    green_max: float
    kernel_sup: float


class GreenMaxPayload(TypedDict):
    """Diagonal maximum of the kernel, closed form against exhaustive search."""

    closed_form: float
    exhaustive: float
    s_star: int
    relative_error: float
    kernel_sup: float
    column_argmax: list[int]


class EigenPayload(TypedDict):
    """Perron pair of the linear problem."""

    lambda_star: float
    rho: float
    iterations: int
    residual: float
    drift: float
    t: list[str]
    y_star: list[float]
    lambda_determinant: NotRequired[float]
    relative_difference: NotRequired[float]

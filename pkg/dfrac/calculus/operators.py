"""
Discrete fractional operators on grid functions.

- :func:`forward_difference`: the classical ``Delta^n``.
- :func:`fractional_sum`: ``Delta_a^{-nu} f(t) = 1/Gamma(nu) * sum_{s=a}^{t-nu} (t-s-1)^(nu-1) f(s)``
  for ``t`` on the shifted lattice ``N_{a+nu}``.
- :func:`fractional_difference`: ``Delta^alpha = Delta^2 Delta^{-(2-alpha)}`` for
  ``1 < alpha <= 2``, with ``Delta^{-0}`` taken as the identity.
- :func:`composition_residual`: measures how far ``Delta^{-alpha} Delta^alpha y``
  is from ``y`` modulo ``span{t^(alpha-1), t^(alpha-2)}``.

Kernels are dense ``O(N^2)`` lower-triangular Toeplitz products; the lattices
in this problem are short.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from dfrac.calculus.gamma import (
    GridValue,
    falling_factorial_array,
    signed_log_gamma,
)
from dfrac.calculus.lattice import GridFunction, power_function
from dfrac.constants import POLE_TOLERANCE
from dfrac.core.errors import DomainError, LengthError

_MULTIPLICITIES = (1, -1, 2, -2)


@dataclass(frozen=True)
class CompositionResidual:
    """
    Result of :func:`composition_residual`.

    Attributes:
        c1: Coefficient of ``t^(alpha-1)``
        c2: Coefficient of ``t^(alpha-2)``
        residual_norm: Sup-norm of what the two-term fit leaves over
        residual: The raw difference ``Delta^{-alpha} Delta^alpha y - y`` on ``N_alpha``
    """

    c1: float
    c2: float
    residual_norm: float
    residual: GridFunction


def _shifted_base(f: GridFunction, order: float) -> tuple[GridValue, float | None]:
    """
    Base of ``f`` shifted by ``order``, kept symbolic where possible.

    A shift that is an integer combination of ``f``'s order keeps that order,
    preferring the representation with the smallest alpha multiplicity. An
    integer base takes ``order`` as its new reference. Anything else is
    re-referenced to the fractional part of the realized base; that lattice
    is then only exact up to float rounding.
    """
    if float(order).is_integer():
        return f.base + int(order), f.alpha

    if f.alpha is not None:
        candidates = [
            GridValue(m, round(order - m * f.alpha))
            for m in _MULTIPLICITIES
            if abs(order - (m * f.alpha + round(order - m * f.alpha))) <= POLE_TOLERANCE
        ]
        if candidates:
            shift = min(candidates, key=lambda c: abs(f.base.m + c.m))
            return f.base + shift, f.alpha

    if f.base.m == 0:
        return GridValue(1, f.base.n), order

    value = f.base.realize(f.alpha) + order
    whole = math.floor(value)
    fraction = value - whole
    if fraction <= POLE_TOLERANCE or 1.0 - fraction <= POLE_TOLERANCE:
        return GridValue(0, round(value)), None
    return GridValue(1, whole), fraction


def forward_difference(f: GridFunction, n: int = 1) -> GridFunction:
    """
    Apply the forward difference ``(Delta f)(t) = f(t+1) - f(t)`` ``n`` times.

    Args:
        f: Input samples
        n: Order of the difference, a positive integer

    Returns:
        A function on the same base with ``n`` fewer samples

    Raises:
        DomainError: If ``n < 1``
        LengthError: If ``f`` has fewer than ``n + 1`` samples
    """
    if n < 1:
        raise DomainError(f"difference order must be a positive integer, got {n}")
    if len(f) < n + 1:
        raise LengthError(f"Delta^{n} needs at least {n + 1} samples, got {len(f)}")
    return f.with_values(np.diff(f.values, n=n))


def fractional_sum(f: GridFunction, order: float) -> GridFunction:
    """
    Fractional sum of order ``order`` based at ``f.base``.

    The output has as many samples as the input: output ``k`` sits at
    ``a + order + k`` and uses the input samples ``0 ... k``.

    Args:
        f: Input samples on ``N_a``
        order: Positive summation order

    Returns:
        The sum on ``N_{a+order}``

    Raises:
        DomainError: If ``order <= 0``
    """
    if not order > 0:
        raise DomainError(f"fractional sum order must be > 0, got {order}")

    base, alpha = _shifted_base(f, order)
    lags = np.arange(len(f), dtype=np.float64)
    # (t-s-1)^(order-1) with t-s-1 = order-1+lag
    kernel = falling_factorial_array(lags + order - 1.0, order - 1.0)
    kernel = kernel / signed_log_gamma(order).value
    weights = linalg.toeplitz(kernel, np.zeros(len(f)))
    return GridFunction(base=base, values=weights @ f.values, alpha=alpha)


def fractional_difference(f: GridFunction, alpha: float) -> GridFunction:
    """
    Fractional difference ``Delta^alpha f = Delta^2 Delta^{-(2-alpha)} f``.

    For ``alpha = 2`` the inner sum is the identity and the result is the
    classical second difference. The output sits on ``N_{a+2-alpha}`` and has
    two samples fewer than the input.

    Args:
        f: Input samples on ``N_a``
        alpha: Order in ``(1, 2]``

    Returns:
        The fractional difference

    Raises:
        DomainError: If alpha lies outside ``(1, 2]``
        LengthError: If ``f`` has fewer than 3 samples
    """
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"fractional difference needs 1 < alpha <= 2, got {alpha}")
    if len(f) < 3:
        raise LengthError(f"Delta^alpha needs at least 3 samples, got {len(f)}")

    if alpha == 2.0:
        return forward_difference(f, 2)

    if f.alpha is None:
        f = f.with_order(alpha)
    return forward_difference(fractional_sum(f, 2.0 - alpha), 2)


def composition_residual(y: GridFunction, alpha: float) -> CompositionResidual:
    """
    Fit ``Delta^{-alpha} Delta^alpha y - y`` to ``span{t^(alpha-1), t^(alpha-2)}``.

    ``y`` must live on ``N_{alpha-2}``. The composition lands on ``N_alpha``,
    where it is compared with the matching samples of ``y``; the difference
    is projected by normal equations on the two-column design matrix.

    Args:
        y: Samples on ``N_{alpha-2}``, at least 5 of them
        alpha: Order in ``(1, 2)``

    Returns:
        The fitted coefficients and the post-fit sup-norm

    Raises:
        DomainError: If alpha lies outside ``(1, 2)`` or y is on another lattice
        LengthError: If y has fewer than 5 samples
    """
    if not 1.0 < alpha < 2.0:
        raise DomainError(f"composition residual needs 1 < alpha < 2, got {alpha}")
    if len(y) < 5:
        raise LengthError(f"composition residual needs at least 5 samples, got {len(y)}")
    if y.alpha is None:
        y = y.with_order(alpha)
    if y.base != GridValue(1, -2) or y.alpha != alpha:
        raise DomainError(f"y must be sampled on N_(alpha-2), got base {y.base}")

    recovered = fractional_sum(fractional_difference(y, alpha), alpha)
    start = y.index_of(recovered.base)
    residual = recovered.values - y.values[start : start + len(recovered)]

    design = np.column_stack(
        [
            power_function(recovered.base, len(recovered), GridValue(1, -1), alpha).values,
            power_function(recovered.base, len(recovered), GridValue(1, -2), alpha).values,
        ]
    )
    c1, c2 = np.linalg.solve(design.T @ design, design.T @ residual)
    leftover = residual - design @ np.array([c1, c2])

    return CompositionResidual(
        c1=float(c1),
        c2=float(c2),
        residual_norm=float(np.max(np.abs(leftover))),
        residual=recovered.with_values(residual),
    )

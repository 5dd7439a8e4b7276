"""
Signed gamma evaluation and falling-factorial powers.

Every abscissa and exponent that appears in the right-focal problem has the
form ``m*alpha + n`` with small integers ``m`` and ``n``. :class:`GridValue`
stores that pair so that gamma poles are classified by integer arithmetic
rather than by comparing floats. Plain floats are accepted everywhere as a
best-effort path with a ``1e-12`` integrality tolerance.

Gamma values overflow long before the lattices used here get large, so all
ratios are formed in log space with the sign carried separately
(:class:`SignedLogGamma`) and exponentiated last.

Falling-factorial convention: ``t^(nu) = Gamma(t+1) / Gamma(t+1-nu)``, which
is ``0`` when ``t+1-nu`` is a pole and ``t+1`` is not. A pole in the
numerator is rejected with :class:`~dfrac.core.errors.DomainError`.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from dfrac.constants import DEGENERATE_ALPHA_ERROR, POLE_TOLERANCE
from dfrac.core.errors import DegenerateError, DomainError

Abscissa = Union["GridValue", float]


@dataclass(frozen=True)
class Order:
    """
    A fractional order alpha.

    Operator-level APIs accept any ``alpha > 0``; the boundary value problem
    needs ``1 < alpha <= 2`` and its closed forms exclude ``alpha = 2``.

    Attributes:
        alpha: The order, strictly positive
    """

    alpha: float

    def __post_init__(self) -> None:
        """Reject non-finite and nonpositive orders."""
        if not math.isfinite(self.alpha) or self.alpha <= 0:
            raise DomainError(f"order must be a finite alpha > 0, got {self.alpha!r}")

    @property
    def is_integral(self) -> bool:
        """Whether alpha is a whole number."""
        return float(self.alpha).is_integer()

    @property
    def is_degenerate(self) -> bool:
        """Whether alpha is 2, where the kernel denominator vanishes."""
        return self.alpha == 2.0

    def require_bvp(self, *, allow_degenerate: bool = False) -> None:
        """
        Check that the order is admissible for the boundary value problem.

        Args:
            allow_degenerate: Accept ``alpha = 2`` (direct solver only)

        Raises:
            DomainError: If alpha lies outside ``(1, 2]``
            DegenerateError: If alpha is 2 and ``allow_degenerate`` is False
        """
        if not 1.0 < self.alpha <= 2.0:
            raise DomainError(f"alpha must lie in (1, 2], got {self.alpha!r}")
        if self.is_degenerate and not allow_degenerate:
            raise DegenerateError(DEGENERATE_ALPHA_ERROR)


@dataclass(frozen=True)
class GridValue:
    """
    Exact symbolic abscissa ``m*alpha + n``.

    Attributes:
        m: Multiplicity of alpha (0 or 1 on the lattices of the problem)
        n: Integer offset
    """

    m: int
    n: int

    def __add__(self, other: "GridValue | int") -> "GridValue":
        """Shift by an integer or add another abscissa termwise."""
        if isinstance(other, GridValue):
            return GridValue(self.m + other.m, self.n + other.n)
        return GridValue(self.m, self.n + other)

    __radd__ = __add__

    def __sub__(self, other: "GridValue | int") -> "GridValue":
        """Shift back by an integer or subtract another abscissa."""
        return self + (-other)

    def __neg__(self) -> "GridValue":
        """Negate both coefficients."""
        return GridValue(-self.m, -self.n)

    def realize(self, alpha: float | None = None) -> float:
        """
        Numeric value of the abscissa.

        Args:
            alpha: The order; only needed when ``m != 0``

        Returns:
            ``m*alpha + n`` as a float
        """
        if self.m == 0:
            return float(self.n)
        if alpha is None:
            raise DomainError(f"{self} carries alpha but no order was given")
        return self.m * alpha + self.n

    def is_pole(self, alpha: float | None = None) -> bool:
        """
        Whether Gamma has a pole at this abscissa.

        For ``m = 0`` the answer is ``n <= 0``. For ``|m| = 1`` and a
        non-integral alpha the value is never an integer, so never a pole.
        Only the remaining cases fall back to the tolerance test.
        """
        if self.m == 0:
            return self.n <= 0
        if alpha is None:
            raise DomainError(f"{self} carries alpha but no order was given")
        if float(alpha).is_integer():
            return self.m * int(alpha) + self.n <= 0
        if abs(self.m) == 1:
            return False
        return is_real_pole(self.realize(alpha))

    def __str__(self) -> str:
        """Readable form such as ``alpha-2`` or ``3``."""
        if self.m == 0:
            return str(self.n)
        head = {1: "alpha", -1: "-alpha"}.get(self.m, f"{self.m}*alpha")
        if self.n == 0:
            return head
        return f"{head}{self.n:+d}"


@dataclass(frozen=True)
class SignedLogGamma:
    """
    Gamma value split into sign and natural log of its magnitude.

    Attributes:
        sign: -1 or +1, or 0 at a pole (1/Gamma treated as zero)
        log_abs: ``log|Gamma(x)|``, ``inf`` at a pole
    """

    sign: int
    log_abs: float

    @property
    def is_pole(self) -> bool:
        """Whether this value encodes a pole."""
        return self.sign == 0

    @property
    def value(self) -> float:
        """``Gamma(x)`` itself, ``inf`` at a pole."""
        if self.is_pole:
            return math.inf
        return self.sign * math.exp(self.log_abs)


POLE = SignedLogGamma(sign=0, log_abs=math.inf)


def is_real_pole(x: float) -> bool:
    """Best-effort pole test for a plain float (integrality within 1e-12)."""
    nearest = round(x)
    return nearest <= 0 and abs(x - nearest) <= POLE_TOLERANCE


def _realize(x: Abscissa, alpha: float | None) -> float:
    """Float value of an abscissa of either kind."""
    return x.realize(alpha) if isinstance(x, GridValue) else float(x)


def signed_log_gamma(x: Abscissa, alpha: float | None = None) -> SignedLogGamma:
    """
    Sign and log-magnitude of Gamma(x).

    Poles are encoded with ``sign = 0`` instead of raising. Negative
    non-integer arguments are handled by scipy's reflection-aware
    ``gammaln``/``gammasgn`` pair.

    Args:
        x: Symbolic abscissa or plain float
        alpha: The order realizing a symbolic abscissa with ``m != 0``

    Returns:
        The signed log-gamma value
    """
    if isinstance(x, GridValue):
        if x.is_pole(alpha):
            return POLE
        value = x.realize(alpha)
    else:
        value = float(x)
        if is_real_pole(value):
            return POLE

    return SignedLogGamma(
        sign=int(special.gammasgn(value)), log_abs=float(special.gammaln(value))
    )


def falling_factorial(t: Abscissa, nu: Abscissa, alpha: float | None = None) -> float:
    """
    Falling-factorial power ``t^(nu) = Gamma(t+1) / Gamma(t+1-nu)``.

    When both arguments are symbolic the pole classification is exact;
    otherwise both are realized and the tolerance path is used.

    Args:
        t: Base of the power
        nu: Exponent
        alpha: The order realizing symbolic arguments

    Returns:
        The power, exactly ``0.0`` when only the denominator is a pole

    Raises:
        DomainError: If ``t+1`` is a pole
    """
    if isinstance(t, GridValue) and isinstance(nu, GridValue):
        upper: Abscissa = t + 1
        lower: Abscissa = t + 1 - nu
    else:
        upper = _realize(t, alpha) + 1.0
        lower = upper - _realize(nu, alpha)

    numerator = signed_log_gamma(upper, alpha)
    denominator = signed_log_gamma(lower, alpha)

    if numerator.is_pole:
        detail = " (so is Gamma(t+1-nu))" if denominator.is_pole else ""
        raise DomainError(
            f"falling factorial undefined: Gamma(t+1) has a pole at t={t}{detail}"
        )
    if denominator.is_pole:
        return 0.0
    if upper == lower:
        return 1.0
    return (
        numerator.sign
        * denominator.sign
        * math.exp(numerator.log_abs - denominator.log_abs)
    )


def falling_factorial_array(t: ArrayLike, nu: float) -> NDArray[np.float64]:
    """
    Vectorized real-path falling factorial ``t^(nu)`` over an array of bases.

    Args:
        t: Bases of the power
        nu: Common exponent

    Returns:
        Array of powers with the pole convention applied elementwise

    Raises:
        DomainError: If any ``t+1`` is a pole
    """
    upper = np.asarray(t, dtype=np.float64) + 1.0
    lower = upper - nu

    def poles(x: NDArray[np.float64]) -> NDArray[np.bool_]:
        """Mask of the entries within 1e-12 of a nonpositive integer."""
        nearest = np.round(x)
        return (nearest <= 0) & (np.abs(x - nearest) <= POLE_TOLERANCE)

    if np.any(poles(upper)):
        raise DomainError("falling factorial undefined: Gamma(t+1) has a pole")

    zero = poles(lower)
    safe_lower = np.where(zero, 1.0, lower)
    sign = special.gammasgn(upper) * special.gammasgn(safe_lower)
    log_ratio = special.gammaln(upper) - special.gammaln(safe_lower)
    values = np.where(zero, 0.0, sign * np.exp(log_ratio))
    if nu == 0:
        values = np.where(zero, 0.0, 1.0)
    return values.astype(np.float64)

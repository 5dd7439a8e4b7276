"""
Green's kernel of the right-focal problem and its closed-form maximum.

Rows are indexed by ``k`` (``t = alpha - 2 + k``, ``k = 0 ... b + 2``) and
columns by ``s = 0 ... b``::

    G(t, s) = t^(alpha-1) (alpha+b-s-2)^(alpha-2) / D  +  (t-s-1)^(alpha-1)   if s <= k - 2
    G(t, s) = t^(alpha-1) (alpha+b-s-2)^(alpha-2) / D                         otherwise

with ``D = Gamma(alpha-1) - (alpha+b-1)^(alpha-2)``. The second branch starts
at ``k = s + 2``; that is where the kernel reproduces the direct solver.
The solution of the linear problem is ``y = sigma / Gamma(alpha) * G h`` with
the global sign ``sigma`` resolved in :mod:`dfrac.bvp.solvers`.

Every quantity here needs ``1 < alpha < 2``: at ``alpha = 2`` the bracket
``Gamma(alpha-1) Gamma(b+2) - Gamma(alpha+b)`` vanishes and
:class:`~dfrac.core.errors.DegenerateError` is raised.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy import special

from dfrac.calculus.gamma import GridValue, Order, falling_factorial, signed_log_gamma
from dfrac.core.errors import DomainError

ALPHA_MINUS_1 = GridValue(1, -1)
ALPHA_MINUS_2 = GridValue(1, -2)


def _require(alpha: float, b: int) -> None:
    """Reject ``alpha`` outside ``(1, 2)`` and ``b < 1``."""
    Order(alpha).require_bvp()
    if b < 1:
        raise DomainError(f"b must be at least 1, got {b}")


def log_bracket(alpha: float, b: int) -> float:
    """
    ``log(Gamma(alpha-1) Gamma(b+2) - Gamma(alpha+b))``, positive for ``1 < alpha < 2``.

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If alpha or b is out of range
    """
    _require(alpha, b)
    ratio = math.exp(special.gammaln(alpha + b) - special.gammaln(b + 2))
    difference = special.gamma(alpha - 1) - ratio
    if not difference > 0:
        raise DomainError(f"kernel bracket is not positive at alpha={alpha}, b={b}")
    return float(special.gammaln(b + 2)) + math.log(difference)


def kernel_denominator(alpha: float, b: int) -> float:
    """``D = Gamma(alpha-1) - (alpha+b-1)^(alpha-2)``."""
    _require(alpha, b)
    return signed_log_gamma(ALPHA_MINUS_1, alpha).value - falling_factorial(
        GridValue(1, b - 1), ALPHA_MINUS_2, alpha
    )


def _green_entry(alpha: float, b: int, k: int, s: int, denominator: float) -> float:
    """``G(alpha - 2 + k, s)`` for a precomputed denominator."""
    t = GridValue(1, k - 2)
    value = (
        falling_factorial(t, ALPHA_MINUS_1, alpha)
        * falling_factorial(GridValue(1, b - s - 2), ALPHA_MINUS_2, alpha)
        / denominator
    )
    if s <= k - 2:
        value += falling_factorial(t - s - 1, ALPHA_MINUS_1, alpha)
    return value


def green_value(alpha: float, b: int, k: int, s: int) -> float:
    """
    One entry ``G(alpha - 2 + k, s)`` of the kernel.

    Args:
        alpha: Order in ``(1, 2)``
        b: Right end, at least 1
        k: Row index in ``0 ... b + 2``
        s: Column index in ``0 ... b``

    Returns:
        The kernel value

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If an index or parameter is out of range
    """
    _require(alpha, b)
    if not 0 <= k <= b + 2 or not 0 <= s <= b:
        raise DomainError(f"(k, s) = ({k}, {s}) is outside [0, {b + 2}] x [0, {b}]")
    return _green_entry(alpha, b, k, s, kernel_denominator(alpha, b))


@dataclass(frozen=True, eq=False)
class GreenKernel:
    """
    The full ``(b + 3) x (b + 1)`` kernel matrix.

    Attributes:
        alpha: Order
        b: Right end
        denominator: ``D`` shared by every entry
        matrix: ``matrix[k, s] = G(alpha - 2 + k, s)``
    """

    alpha: float
    b: int
    denominator: float
    matrix: NDArray[np.float64] = field(repr=False)

    def row_labels(self) -> list[str]:
        """Symbolic abscissa of every row, ``alpha-2`` through ``alpha+b``."""
        return [str(GridValue(1, k - 2)) for k in range(self.b + 3)]

    def diagonal(self) -> NDArray[np.float64]:
        """``G(s + alpha - 2, s)`` for ``s = 0 ... b``."""
        return self.matrix[np.arange(self.b + 1), np.arange(self.b + 1)]

    def interior(self) -> NDArray[np.float64]:
        """Rows ``k = 1 ... b + 1``, the points where the equation samples ``y``."""
        return self.matrix[1 : self.b + 2, :]


def green_kernel(alpha: float, b: int) -> GreenKernel:
    """
    Tabulate the kernel for all ``k`` and ``s``.

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If alpha or b is out of range
    """
    _require(alpha, b)
    denominator = kernel_denominator(alpha, b)
    matrix = np.array(
        [
            [_green_entry(alpha, b, k, s, denominator) for s in range(b + 1)]
            for k in range(b + 3)
        ]
    )
    matrix.setflags(write=False)
    return GreenKernel(alpha=alpha, b=b, denominator=denominator, matrix=matrix)


def green_diag_max_exhaustive(alpha: float, b: int) -> tuple[int, float]:
    """
    Maximize the diagonal ``G(s + alpha - 2, s)`` over ``s = 0 ... b``.

    Ties go to the larger ``s``.

    Returns:
        ``(s_star, value)``

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If alpha or b is out of range
    """
    diagonal = green_kernel(alpha, b).diagonal()
    s_star = int(len(diagonal) - 1 - np.argmax(diagonal[::-1]))
    return s_star, float(diagonal[s_star])


def green_max_closed_form(alpha: float, b: int) -> float:
    """
    Closed form of the diagonal maximum, attained at ``s = b``::

        Gamma(b+alpha-1) Gamma(alpha-1) Gamma(b+2)
        ----------------------------------------------------------
        Gamma(b) (Gamma(alpha-1) Gamma(b+2) - Gamma(alpha+b))

    Evaluated in log space.

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If alpha or b is out of range
    """
    log_bracket_value = log_bracket(alpha, b)
    return math.exp(
        special.gammaln(b + alpha - 1)
        + special.gammaln(alpha - 1)
        + special.gammaln(b + 2)
        - special.gammaln(b)
        - log_bracket_value
    )


def diag_increment_factor(alpha: float, b: int, s: int) -> float:
    """``q(s) = b (alpha - 1) + s (3 - 2 alpha)``, positive on ``0 <= s <= b``."""
    return b * (alpha - 1) + s * (3 - 2 * alpha)


def diag_increment(alpha: float, b: int, s: int) -> float:
    """
    Closed form of the forward step of the diagonal,
    ``G(s + alpha - 1, s + 1) - G(s + alpha - 2, s)`` for ``0 <= s <= b - 1``::

        q(s) Gamma(b+2) Gamma(s+alpha-1) Gamma(alpha+b-s-2)
        -----------------------------------------------------------------
        (Gamma(alpha-1) Gamma(b+2) - Gamma(alpha+b)) Gamma(s+1) Gamma(b-s+1)

    Raises:
        DegenerateError: If alpha is 2
        DomainError: If s is outside ``0 ... b - 1``
    """
    log_bracket_value = log_bracket(alpha, b)
    if not 0 <= s <= b - 1:
        raise DomainError(f"increment index s={s} is outside [0, {b - 1}]")
    return diag_increment_factor(alpha, b, s) * math.exp(
        special.gammaln(b + 2)
        + special.gammaln(s + alpha - 1)
        + special.gammaln(alpha + b - s - 2)
        - log_bracket_value
        - special.gammaln(s + 1)
        - special.gammaln(b - s + 1)
    )


def green_column_argmax(alpha: float, b: int) -> list[int]:
    """
    Row of the largest entry in each column, ties toward larger ``k``.

    Every column peaks at the right end ``k = b + 2`` rather than on the
    diagonal.
    """
    matrix = green_kernel(alpha, b).matrix
    flipped = matrix[::-1, :]
    return [int(b + 2 - np.argmax(flipped[:, s])) for s in range(b + 1)]


def kernel_sup(alpha: float, b: int) -> float:
    """Largest kernel entry over the whole grid."""
    return float(np.max(green_kernel(alpha, b).matrix))

"""
Grid functions on shifted integer lattices.

A :class:`GridFunction` holds real samples on ``{a, a+1, ..., a+N}``. The base
``a`` is a symbolic :class:`~dfrac.calculus.gamma.GridValue`; the order that
realizes it travels with the function so operators can keep the lattice
bookkeeping exact.
"""

from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dfrac.calculus.gamma import Abscissa, GridValue, falling_factorial
from dfrac.core.errors import DomainError, LengthError


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    Real samples on a contiguous lattice starting at ``base``.

    The values array is copied and frozen on construction.

    Attributes:
        base: Symbolic abscissa of the first sample
        values: Samples ``v_0 ... v_N`` at ``base, base+1, ..., base+N``
        alpha: Order realizing ``base`` (None for purely integer bases)
    """

    base: GridValue
    values: NDArray[np.float64] = field(repr=False)
    alpha: float | None = None

    def __post_init__(self) -> None:
        """Freeze a private copy of the samples."""
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 1 or values.size == 0:
            raise LengthError("a grid function needs a non-empty 1-D array of samples")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.base.m != 0 and self.alpha is None:
            raise DomainError(f"base {self.base} carries alpha but no order was given")

    def __len__(self) -> int:
        """Number of samples."""
        return int(self.values.size)

    def abscissa(self, index: int) -> GridValue:
        """Symbolic abscissa of sample ``index``."""
        return self.base + index

    def abscissae(self) -> NDArray[np.float64]:
        """Realized abscissae of all samples."""
        return self.base.realize(self.alpha) + np.arange(len(self), dtype=np.float64)

    def index_of(self, t: GridValue) -> int:
        """
        Position of abscissa ``t`` in this function's lattice.

        Raises:
            DomainError: If ``t`` is not a lattice point of this function
        """
        offset = t - self.base
        if offset.m != 0 or not 0 <= offset.n < len(self):
            raise DomainError(f"{t} is not on the lattice {self.base} + [0, {len(self) - 1}]")
        return offset.n

    def with_values(self, values: ArrayLike) -> "GridFunction":
        """Same lattice, new samples."""
        return replace(self, values=np.asarray(values, dtype=np.float64))

    def with_order(self, alpha: float) -> "GridFunction":
        """Attach an order to a function whose base does not depend on one."""
        if self.alpha is not None and self.alpha != alpha and self.base.m != 0:
            raise DomainError(
                f"base {self.base} is realized with alpha={self.alpha}, not {alpha}"
            )
        return replace(self, alpha=alpha)

    def sup_norm(self) -> float:
        """Largest absolute sample."""
        return float(np.max(np.abs(self.values)))

    @classmethod
    def impulse(
        cls, base: GridValue, count: int, index: int, alpha: float | None = None
    ) -> "GridFunction":
        """Unit impulse at position ``index`` on a lattice of ``count`` points."""
        values = np.zeros(count)
        values[index] = 1.0
        return cls(base=base, values=values, alpha=alpha)


def power_function(
    base: GridValue, count: int, nu: Abscissa, alpha: float | None = None
) -> GridFunction:
    """
    Sample the falling-factorial power ``t^(nu)`` on a lattice.

    Each sample goes through the exact pole path, so for instance
    ``t^(alpha-1)`` vanishes at ``t = alpha - 2``.

    Args:
        base: First abscissa
        count: Number of samples
        nu: Exponent
        alpha: Order realizing symbolic arguments

    Returns:
        The sampled power
    """
    values = [falling_factorial(base + k, nu, alpha) for k in range(count)]
    return GridFunction(base=base, values=np.asarray(values), alpha=alpha)

"""
The right-focal boundary value problem

    -Delta^alpha y(t) = lambda * h(t + alpha - 1) * f(y(t + alpha - 1)),  t in [0, b]
    y(alpha - 2) = 0,  Delta y(alpha - 2) = Delta y(alpha + b - 1)

with unknowns ``y_k = y(alpha - 2 + k)`` for ``k = 0 ... b + 2``.
"""

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dfrac.bvp.nonlinearity import LinearNonlinearity, Nonlinearity
from dfrac.calculus.gamma import GridValue, Order

SOLUTION_BASE = GridValue(1, -2)
"""Abscissa ``alpha - 2`` of the first unknown."""


class BvpProblem(BaseModel):
    """
    Data of one right-focal problem.

    Attributes:
        alpha: Order in ``(1, 2]``
        b: Right end of the equation range, at least 1
        h: Finite weights ``h[s] = h(s + alpha - 1)`` for ``s = 0 ... b``; the eigen
            scan needs them nonnegative, the inequality check reads ``|lambda h|``
        lam: Eigenvalue parameter lambda (accepted as ``lambda`` too)
        f: Nonlinearity, linear unless stated otherwise
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    alpha: float = Field(gt=1, le=2)
    b: int = Field(ge=1)
    h: tuple[float, ...]
    lam: float = Field(default=1.0, gt=0, alias="lambda")
    f: Nonlinearity = Field(default_factory=LinearNonlinearity)

    @model_validator(mode="after")
    def _check_weights(self) -> "BvpProblem":
        """Reject a wrong sample count or a non-finite weight."""
        if len(self.h) != self.b + 1:
            raise ValueError(f"h needs b + 1 = {self.b + 1} samples, got {len(self.h)}")
        if not all(np.isfinite(w) for w in self.h):
            raise ValueError("h must be finite")
        return self

    @property
    def order(self) -> Order:
        """``alpha`` as an :class:`~dfrac.calculus.gamma.Order`."""
        return Order(self.alpha)

    @property
    def size(self) -> int:
        """Number of unknowns, ``b + 3``."""
        return self.b + 3

    def weights(self) -> NDArray[np.float64]:
        """``h`` as a float array."""
        return np.asarray(self.h, dtype=np.float64)

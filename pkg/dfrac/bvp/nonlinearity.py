"""
Nonlinearity tags for the right-focal problem.

The right-hand side ``lambda * h * f(y)`` takes a nondecreasing
``f: [0, inf) -> [0, inf)``. Four tags are supported, modeled as a pydantic
discriminated union on the ``kind`` field:

- ``linear``: ``f(y) = y``
- ``pow:p``: ``f(y) = y**p`` for ``p >= 0`` (``pow:0`` is the constant 1)
- ``exp``: ``f(y) = exp(y)``
- ``@table.csv``: piecewise-linear interpolation of a nondecreasing table,
  constant beyond its ends

Every concrete tag must declare ``kind`` as a ``Literal``; this is checked
when the subclass is defined.
"""

import abc
import csv
from pathlib import Path
from typing import Annotated, Any, Literal, get_origin, get_type_hints

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Unpack

from dfrac.core.errors import DomainError


class BaseNonlinearity(BaseModel, abc.ABC):
    """
    Base class for nonlinearity tags.

    Attributes:
        kind: Discriminator naming the tag
    """

    model_config = ConfigDict(frozen=True)

    kind: Any

    def __init_subclass__(cls, **kwargs: Unpack[ConfigDict]):
        """
        Validates that subclasses define ``kind`` with a Literal type.

        Raises:
            TypeError: If the kind field is missing or not a Literal
        """
        super().__init_subclass__(**kwargs)

        if abc.ABC in cls.__bases__:
            return

        try:
            kind_field = get_type_hints(cls)["kind"]
        except (KeyError, AttributeError) as e:
            raise TypeError(f"Class {cls.__name__!r} must define a 'kind' field") from e

        if get_origin(kind_field) is not Literal:  # type: ignore[comparison-overlap,unused-ignore]
            raise TypeError(
                f"Class {cls.__name__!r} requires the field 'kind' to be a `Literal` type"
            )

    @abc.abstractmethod
    def __call__(self, y: ArrayLike) -> NDArray[np.float64]:
        """Evaluate the nonlinearity elementwise."""

    @abc.abstractmethod
    def tag(self) -> str:
        """Command-line spelling of this nonlinearity."""


class LinearNonlinearity(BaseNonlinearity):
    """The identity ``f(y) = y``."""

    kind: Literal["linear"] = "linear"

    def __call__(self, y: ArrayLike) -> NDArray[np.float64]:
        """Return ``y`` unchanged as a float array."""
        return np.asarray(y, dtype=np.float64)

    def tag(self) -> str:
        """CLI spelling of this nonlinearity."""
        return "linear"


class PowerNonlinearity(BaseNonlinearity):
    """
    ``f(y) = y**p`` on ``[0, inf)``, extended by ``f(0)`` to negative inputs.

    Attributes:
        p: Nonnegative exponent
    """

    kind: Literal["pow"] = "pow"
    p: float = Field(ge=0)

    def __call__(self, y: ArrayLike) -> NDArray[np.float64]:
        """Evaluate ``max(y, 0)**p``."""
        clipped = np.clip(np.asarray(y, dtype=np.float64), 0.0, None)
        return np.power(clipped, self.p)

    def tag(self) -> str:
        """CLI spelling, ``pow:p``."""
        return f"pow:{self.p:g}"


class ExpNonlinearity(BaseNonlinearity):
    """``f(y) = exp(y)``."""

    kind: Literal["exp"] = "exp"

    def __call__(self, y: ArrayLike) -> NDArray[np.float64]:
        """Evaluate ``exp(y)``."""
        return np.exp(np.asarray(y, dtype=np.float64))

    def tag(self) -> str:
        """CLI spelling, ``exp``."""
        return "exp"


class TableNonlinearity(BaseNonlinearity):
    """
    Piecewise-linear nonlinearity from a table of samples.

    Attributes:
        xs: Strictly increasing abscissae
        ys: Nonnegative, nondecreasing values
        source: Where the table was read from, if anywhere
    """

    kind: Literal["table"] = "table"
    xs: tuple[float, ...]
    ys: tuple[float, ...]
    source: str | None = None

    @model_validator(mode="after")
    def _check_monotone(self) -> "TableNonlinearity":
        """Require a nonnegative, nondecreasing table of at least two rows."""
        if len(self.xs) < 2 or len(self.xs) != len(self.ys):
            raise ValueError("a table needs at least two (x, y) rows of equal length")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:], strict=False)):
            raise ValueError("table abscissae must be strictly increasing")
        if any(b < a for a, b in zip(self.ys, self.ys[1:], strict=False)):
            raise ValueError("table values must be nondecreasing")
        if min(self.ys) < 0:
            raise ValueError("table values must be nonnegative")
        return self

    def __call__(self, y: ArrayLike) -> NDArray[np.float64]:
        """Interpolate linearly, constant beyond the first and last abscissa."""
        return np.interp(np.asarray(y, dtype=np.float64), self.xs, self.ys)

    def tag(self) -> str:
        """``@path`` for a table read from a file, ``table`` otherwise."""
        return f"@{self.source}" if self.source else "table"

    @classmethod
    def from_csv(cls, path: str | Path) -> "TableNonlinearity":
        """
        Read a two-column ``x,y`` table; a non-numeric first row is a header.

        Raises:
            FileNotFoundError: If the file does not exist
            DomainError: If a row is malformed
        """
        table_path = Path(path)
        if not table_path.exists():
            raise FileNotFoundError(f"Nonlinearity table not found: {path}")

        xs: list[float] = []
        ys: list[float] = []
        with table_path.open(newline="", encoding="utf-8") as handle:
            for line, row in enumerate(csv.reader(handle)):
                if not row:
                    continue
                try:
                    x, y = (float(cell) for cell in row[:2])
                except ValueError as e:
                    if line == 0:
                        continue
                    raise DomainError(f"{path}:{line + 1}: expected two numbers") from e
                xs.append(x)
                ys.append(y)
        return cls(xs=tuple(xs), ys=tuple(ys), source=str(path))


Nonlinearity = Annotated[
    LinearNonlinearity | PowerNonlinearity | ExpNonlinearity | TableNonlinearity,
    Field(discriminator="kind"),
]


def parse_nonlinearity(text: str) -> BaseNonlinearity:
    """
    Parse a command-line nonlinearity tag.

    Args:
        text: ``linear``, ``pow:p``, ``exp`` or ``@path.csv``

    Returns:
        The matching nonlinearity

    Raises:
        DomainError: If the tag is not recognized
    """
    spec = text.strip()
    if spec == "linear":
        return LinearNonlinearity()
    if spec == "exp":
        return ExpNonlinearity()
    if spec.startswith("pow:"):
        try:
            return PowerNonlinearity(p=float(spec.removeprefix("pow:")))
        except ValueError as e:
            raise DomainError(f"invalid power nonlinearity {text!r}: {e}") from e
    if spec.startswith("@"):
        try:
            return TableNonlinearity.from_csv(spec.removeprefix("@"))
        except ValueError as e:
            raise DomainError(f"invalid nonlinearity table {text!r}: {e}") from e
    raise DomainError(f"unknown nonlinearity {text!r}; use linear, pow:p, exp or @table.csv")

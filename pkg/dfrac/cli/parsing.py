"""
Click parameter types for the dfrac command line.

Abscissae are written ``m,n`` for ``m*alpha + n`` so the exact pole path stays
reachable; a plain real is accepted too and goes through the tolerance path.
"""

import csv
from pathlib import Path
from typing import Any

import click
import numpy as np
from numpy.typing import NDArray

from dfrac.bvp.nonlinearity import BaseNonlinearity, parse_nonlinearity
from dfrac.calculus.gamma import GridValue
from dfrac.core.errors import DomainError


def read_numbers(path: str | Path) -> list[float]:
    """
    Every number in a CSV file, row by row; a non-numeric first row is a header.

    Raises:
        FileNotFoundError: If the file does not exist
        DomainError: If a later cell is not a number
    """
    numbers: list[float] = []
    with Path(path).open(newline="", encoding="utf-8") as handle:
        for line, row in enumerate(csv.reader(handle)):
            cells = [cell.strip() for cell in row if cell.strip()]
            try:
                numbers.extend(float(cell) for cell in cells)
            except ValueError as e:
                if line == 0:
                    continue
                raise DomainError(f"{path}:{line + 1}: non-numeric cell") from e
    return numbers


def parse_numbers(text: str) -> list[float]:
    """A comma list or ``@file.csv``."""
    if text.startswith("@"):
        return read_numbers(text.removeprefix("@"))
    try:
        return [float(cell) for cell in text.split(",") if cell.strip()]
    except ValueError as e:
        raise DomainError(f"expected a comma-separated list of numbers, got {text!r}") from e


def resolve_weights(spec: str, b: int) -> NDArray[np.float64]:
    """
    Expand a ``--h`` value to ``b + 1`` weights.

    Args:
        spec: ``ones``, a comma list or ``@file.csv``
        b: Right end of the problem

    Raises:
        DomainError: If the count does not match ``b + 1``
    """
    if spec.strip() == "ones":
        return np.ones(b + 1)
    weights = parse_numbers(spec)
    if len(weights) != b + 1:
        raise DomainError(f"--h needs b + 1 = {b + 1} values, got {len(weights)}")
    return np.asarray(weights)


class AbscissaType(click.ParamType):
    """``m,n`` for ``m*alpha + n`` or a plain real."""

    name = "abscissa"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> GridValue | float:
        """Parse ``m,n`` into a GridValue and anything else into a float."""
        if isinstance(value, GridValue | float):
            return value
        text = str(value).strip()
        if "," in text:
            try:
                m, n = (int(part) for part in text.split(","))
            except ValueError:
                self.fail(f"{text!r} is not of the form 'm,n' with integers m and n", param, ctx)
            return GridValue(m, n)
        try:
            return float(text)
        except ValueError:
            self.fail(f"{text!r} is neither 'm,n' nor a real number", param, ctx)


class NonlinearityType(click.ParamType):
    """``linear``, ``pow:p``, ``exp`` or ``@table.csv``."""

    name = "nonlinearity"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> BaseNonlinearity:
        """Parse a nonlinearity tag."""
        if isinstance(value, BaseNonlinearity):
            return value
        try:
            return parse_nonlinearity(str(value))
        except (DomainError, FileNotFoundError) as e:
            self.fail(str(e), param, ctx)


class FloatListType(click.ParamType):
    """Comma-separated reals."""

    name = "floats"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> tuple[float, ...]:
        """Parse a comma list of reals."""
        if isinstance(value, tuple):
            return value
        try:
            return tuple(parse_numbers(str(value)))
        except (DomainError, FileNotFoundError) as e:
            self.fail(str(e), param, ctx)


class IntListType(click.ParamType):
    """Comma-separated integers and inclusive ranges such as ``1-10``."""

    name = "ints"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> tuple[int, ...]:
        """Parse integers and ranges, keeping their order."""
        if isinstance(value, tuple):
            return value
        items: list[int] = []
        for part in str(value).split(","):
            part = part.strip()
            try:
                if "-" in part[1:]:
                    start, stop = part.split("-", 1)
                    items.extend(range(int(start), int(stop) + 1))
                elif part:
                    items.append(int(part))
            except ValueError:
                self.fail(f"{part!r} is not an integer or a range like 1-10", param, ctx)
        return tuple(items)


ABSCISSA = AbscissaType()
NONLINEARITY = NonlinearityType()
FLOAT_LIST = FloatListType()
INT_LIST = IntListType()

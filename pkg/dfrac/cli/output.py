"""
Output envelope and its JSON/CSV renderings.

JSON floats are rounded through ``%.12e`` and non-finite values become
``null``; CSV cells use ``%.12e`` verbatim with RFC 4180 quoting and CRLF
line ends. Both renderings are deterministic for identical inputs.
"""

import csv
import io
import json
import math
from collections.abc import Sequence
from importlib import resources
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from dfrac.constants import FLOAT_FORMAT, SCHEMA_VERSION

OutputFormat = Literal["json", "csv"]
Cell = str | int | float | bool | None
Table = tuple[list[str], list[list[Cell]]]

SCHEMA_RESOURCE = "output_envelope.schema.json"


class OutputEnvelope(BaseModel):
    """
    Everything a command prints in JSON mode.

    Attributes:
        schema_version: Version of this layout
        command: Subcommand name
        params: Resolved parameters, defaults included
        sign_sigma: Global kernel sign, None when it could not be resolved
        results: Command-specific payload
        warnings: Non-fatal notes
        errors: Messages of a failed command
    """

    model_config = ConfigDict(frozen=True)

    schema_version: Literal["1"] = SCHEMA_VERSION
    command: str
    params: dict[str, Any]
    sign_sigma: int | None
    results: Any = None
    warnings: list[str] = Field(default_factory=list)
    errors: list[str] = Field(default_factory=list)


def canonical(value: Any) -> Any:
    """Recursively convert to JSON-ready values with rounded floats."""
    if value is None or isinstance(value, bool | str | int):
        return value
    if isinstance(value, np.ndarray):
        return canonical(value.tolist())
    if isinstance(value, np.generic):
        return canonical(value.item())
    if isinstance(value, float):
        return float(FLOAT_FORMAT % value) if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(key): canonical(item) for key, item in value.items()}
    if isinstance(value, Sequence):
        return [canonical(item) for item in value]
    if isinstance(value, BaseModel):
        return canonical(value.model_dump())
    return str(value)


def render_json(envelope: OutputEnvelope) -> str:
    """Pretty-printed JSON of ``envelope`` with canonical floats."""
    return json.dumps(canonical(envelope.model_dump()), indent=2, allow_nan=False)


def format_cell(value: Cell) -> str:
    """
    Render one CSV cell.

    ``None`` becomes the empty string, booleans are lowercase and floats use
    the fixed ``%.12e`` format.
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Cell]]) -> str:
    """Write ``header`` and ``rows`` as RFC 4180 CSV with CRLF line ends."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows([format_cell(cell) for cell in row] for row in rows)
    return buffer.getvalue()


def parse_cell(text: str) -> Cell:
    """Inverse of :func:`format_cell`."""
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_csv(text: str) -> Table:
    """Read a table written by :func:`render_csv`."""
    reader = csv.reader(io.StringIO(text, newline=""))
    header, *rows = list(reader)
    return header, [[parse_cell(cell) for cell in row] for row in rows]


def load_schema() -> dict[str, Any]:
    """The shipped JSON schema of :class:`OutputEnvelope`."""
    text = resources.files("dfrac.schemas").joinpath(SCHEMA_RESOURCE).read_text("utf-8")
    schema: dict[str, Any] = json.loads(text)
    return schema

"""Tests for dfrac.cli.output."""

import json
import math

import jsonschema
import numpy as np
import pytest
from dfrac.cli.output import (
    OutputEnvelope,
    canonical,
    format_cell,
    load_schema,
    parse_csv,
    render_csv,
    render_json,
)
from dfrac.lyapunov.sweep import SweepRow
from jsonschema import Draft202012Validator
from pydantic import ValidationError


class TestCanonical:
    """Test the JSON canonicalization of results."""

    def test_floats_are_rounded(self) -> None:
        """Test that floats pass through the fixed %.12e format."""
        assert canonical(0.1 + 0.2) == 0.3
        assert canonical(1 / 3) == float("3.333333333333e-01")

    def test_non_finite_become_null(self) -> None:
        """Test that infinities and NaN become None."""
        assert canonical([math.inf, -math.inf, math.nan]) == [None, None, None]

    def test_numpy_values(self) -> None:
        """Test that arrays and numpy scalars become plain Python values."""
        value = canonical({"m": np.eye(2), "n": np.int64(3), "ok": np.bool_(True)})

        assert value == {"m": [[1.0, 0.0], [0.0, 1.0]], "n": 3, "ok": True}
        assert isinstance(value["n"], int)

    def test_models_are_dumped(self) -> None:
        """Test that pydantic models are dumped to dicts."""
        row = SweepRow(alpha=2.0, b=1, status="degenerate")

        assert canonical(row)["status"] == "degenerate"


class TestEnvelope:
    """Test the output envelope and its schema."""

    def test_field_order_is_stable(self) -> None:
        """Test that keys are written in declaration order."""
        envelope = OutputEnvelope(command="bound", params={"alpha": 1.5}, sign_sigma=-1)

        assert list(json.loads(render_json(envelope))) == [
            "schema_version",
            "command",
            "params",
            "sign_sigma",
            "results",
            "warnings",
            "errors",
        ]

    def test_schema_version_is_fixed(self) -> None:
        """Test that only schema version 1 can be built."""
        with pytest.raises(ValidationError):
            OutputEnvelope(schema_version="2", command="bound", params={}, sign_sigma=1)  # type: ignore[arg-type]

    def test_schema_is_valid_draft_2020_12(self) -> None:
        """Test that the shipped schema is itself a valid 2020-12 schema."""
        Draft202012Validator.check_schema(load_schema())

    def test_rendered_envelopes_validate(self) -> None:
        """Test that rendered envelopes, including a null sign, pass the schema."""
        validator = Draft202012Validator(load_schema())
        envelopes = [
            OutputEnvelope(command="bound", params={"alpha": 1.5, "b": 3}, sign_sigma=-1),
            OutputEnvelope(
                command="solve",
                params={},
                sign_sigma=None,
                results={"y": [0.0, math.inf]},
                warnings=["sign_sigma unresolved: disagreement"],
            ),
            OutputEnvelope(command="green", params={}, sign_sigma=1, errors=["degenerate"]),
        ]

        for envelope in envelopes:
            validator.validate(json.loads(render_json(envelope)))

    def test_malformed_envelopes_are_rejected(self) -> None:
        """Test that the schema rejects wrong types, extra keys and unknown commands."""
        validator = Draft202012Validator(load_schema())
        good = json.loads(
            render_json(OutputEnvelope(command="bound", params={}, sign_sigma=-1))
        )
        broken = [
            {**good, "params": []},
            {**good, "warnings": [3]},
            {**good, "errors": "oops"},
            {**good, "sign_sigma": 0},
            {**good, "command": "plot"},
            {**good, "schema_version": "2"},
            {**good, "extra": True},
            {key: value for key, value in good.items() if key != "results"},
        ]

        for payload in broken:
            with pytest.raises(jsonschema.ValidationError):
                validator.validate(payload)


class TestCsv:
    """Test the CSV rendering."""

    def test_cells(self) -> None:
        """Test the rendering of each cell type."""
        assert format_cell(None) == ""
        assert format_cell(True) == "true"
        assert format_cell(3) == "3"
        assert format_cell(0.5) == "5.000000000000e-01"
        assert format_cell("alpha+1") == "alpha+1"

    def test_crlf_and_quoting(self) -> None:
        """Test CRLF line ends and RFC 4180 quoting."""
        text = render_csv(["name", "detail"], [["a", "x, y"], ["b", None]])

        assert text == 'name,detail\r\na,"x, y"\r\nb,\r\n'

    def test_parse_restores_types(self) -> None:
        """Test that parse_csv restores what render_csv wrote."""
        text = render_csv(["k", "v", "ok", "t"], [[1, -0.25, False, "alpha-2"]])

        header, rows = parse_csv(text)

        assert header == ["k", "v", "ok", "t"]
        assert rows == [[1, -0.25, False, "alpha-2"]]
        assert render_csv(header, rows) == text

"""
Tests for the enumerate command.
"""

import json

import pytest
from typer.testing import CliRunner

from twistoid_cli.main import app


def _records(output: str) -> list[dict]:
    return [json.loads(line) for line in output.splitlines() if line.strip()]


class TestEnumerateCommand:
    """Test suite for grid enumeration"""

    @pytest.fixture
    def runner(self):
        return CliRunner()

    def test_tetracosm_grid(self, runner):
        result = runner.invoke(app, ["enumerate", "tetracosm", "--max-pq", "2"])
        assert result.exit_code == 0
        encodings = [tuple(r["params"]["encoding"].values()) for r in _records(result.stdout)]
        assert encodings == [(1, 1, 0), (1, 1, 1), (1, 2, 0), (1, 2, 1), (1, 2, 2)]

    def test_families_only(self, runner):
        result = runner.invoke(app, ["enumerate", "tetracosm", "--families-only"])
        assert result.exit_code == 0
        *records, summary = _records(result.stdout)
        assert summary == {"families": 4, "manifold": "tetracosm"}
        assert {r["family"] for r in records} == {"alpha+chi", "alpha", "chi", "none"}

    def test_with_cover(self, runner):
        result = runner.invoke(app, ["enumerate", "tricosm", "--max-m", "1", "--max-ab", "2", "--with-cover"])
        assert result.exit_code == 0
        records = _records(result.stdout)
        assert records
        assert all("cover" in r for r in records)
        assert all(r["manifold"] == "tricosm" for r in records)

    def test_csv_format(self, runner):
        result = runner.invoke(app, ["enumerate", "tetracosm", "--max-pq", "2", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].startswith("manifold,params,")
        assert len(lines) == 6
        assert lines[1].startswith("tetracosm,c=1 p=1/2 q=0,")

    def test_records_are_valid_classify_input(self, runner):
        result = runner.invoke(app, ["enumerate", "dicosm-axial", "--max-p2", "3", "--max-q3", "2"])
        assert result.exit_code == 0
        for record in _records(result.stdout):
            shown = record["params"]["display"]
            args = ["classify", "dicosm-axial"]
            for name in ("c", "p1", "p2", "p3", "q3"):
                args += [f"--{name}", shown[name]]
            again = runner.invoke(app, args)
            assert again.exit_code == 0
            assert json.loads(again.stdout) == record

    def test_hexacosm(self, runner):
        result = runner.invoke(app, ["enumerate", "hexacosm"])
        assert result.exit_code == 2
        assert "no 6-fold twists" in result.output

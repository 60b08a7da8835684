import json

import numpy as np
import pytest

from henon_qh_plots.io import SchemaError, read_csv, read_json, require_columns


def test_read_csv_columns(growth_csv):
    cols = read_csv(growth_csv, "growth")
    assert set(cols) == {"r", "m", "M"}
    assert cols["r"].shape == (5,)
    assert np.all(cols["M"] == 2 * cols["r"])


def test_read_csv_missing_schema_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("r,m,M\n1,2,3\n")
    with pytest.raises(SchemaError, match="schema"):
        read_csv(path, "growth")


def test_read_csv_wrong_kind(growth_csv):
    with pytest.raises(SchemaError, match="henon-qh/1:strata"):
        read_csv(growth_csv, "strata")


def test_read_csv_ragged_row(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("# schema=henon-qh/1:growth\nr,m,M\n1,2\n")
    with pytest.raises(SchemaError, match="row 3"):
        read_csv(path, "growth")


def test_read_json_schema_field(growth_json, tmp_path):
    doc = read_json(growth_json, "growth-summary")
    assert doc["kappa"] == pytest.approx(3.48)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kappa": 1.0}))
    with pytest.raises(SchemaError, match="'schema'"):
        read_json(bad, "growth-summary")


def test_require_columns_names_missing(growth_csv):
    cols = read_csv(growth_csv, "growth")
    with pytest.raises(SchemaError, match="'angle'"):
        require_columns(cols, ["r", "angle"], growth_csv)

import json

import pytest

from henon_qh_plots import FIGURE_KINDS, SchemaError
from henon_qh_plots.cli import main
from henon_qh_plots.figures import (
    render_angles,
    render_disks,
    render_growth,
    render_strata,
)


def test_growth_renders_with_kappa_line(growth_csv, growth_json, tmp_path):
    out = tmp_path / "growth.png"
    render_growth({"growth_csv": growth_csv, "growth_json": growth_json}, out)
    assert out.stat().st_size > 0


def test_angles_histogram(intersections_csv, tmp_path):
    out = tmp_path / "angles.png"
    render_angles({"intersections_csv": intersections_csv}, out)
    assert out.exists()


def test_angles_empty_input_annotates(empty_intersections_csv,
                                      intersections_csv, tmp_path):
    empty = tmp_path / "empty.png"
    full = tmp_path / "full.png"
    render_angles({"intersections_csv": empty_intersections_csv}, empty)
    render_angles({"intersections_csv": intersections_csv}, full)
    assert empty.exists()
    assert empty.read_bytes() != full.read_bytes()


def test_strata_table(strata_csv, tmp_path):
    out = tmp_path / "strata.png"
    render_strata({"strata_csv": strata_csv}, out)
    assert out.exists()


def test_disks_scatter_color_by(disk_samples_csv, tmp_path):
    default = tmp_path / "d1.png"
    styled = tmp_path / "d2.png"
    render_disks({"disk_samples_csv": disk_samples_csv}, default)
    render_disks({"disk_samples_csv": disk_samples_csv}, styled,
                 style={"color_by": "gplus"})
    assert default.read_bytes() != styled.read_bytes()


def test_figures_are_byte_deterministic(growth_csv, tmp_path):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    render_growth({"growth_csv": growth_csv}, a)
    render_growth({"growth_csv": growth_csv}, b)
    assert a.read_bytes() == b.read_bytes()


def test_schema_mismatch_names_field(strata_csv, tmp_path):
    with pytest.raises(SchemaError, match="henon-qh/1:growth"):
        render_growth({"growth_csv": strata_csv}, tmp_path / "x.png")


def _spec(tmp_path, doc):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(doc))
    return path


def test_cli_render(growth_csv, tmp_path):
    out = tmp_path / "fig.png"
    spec = _spec(tmp_path, {"kind": "growth",
                            "inputs": {"growth_csv": str(growth_csv)},
                            "output": str(out)})
    assert main(["render", "--spec", str(spec)]) == 0
    assert out.exists()


def test_cli_unknown_kind_exits_2(tmp_path, capsys):
    spec = _spec(tmp_path, {"kind": "spaghetti", "inputs": {},
                            "output": "x.png"})
    assert main(["render", "--spec", str(spec)]) == 2
    assert "'kind'" in capsys.readouterr().err


def test_cli_missing_required_input_exits_2(tmp_path, capsys):
    spec = _spec(tmp_path, {"kind": "growth", "inputs": {},
                            "output": "x.png"})
    assert main(["render", "--spec", str(spec)]) == 2
    assert "inputs.growth_csv" in capsys.readouterr().err


def test_cli_schema_mismatch_exits_2(strata_csv, tmp_path, capsys):
    spec = _spec(tmp_path, {"kind": "growth",
                            "inputs": {"growth_csv": str(strata_csv)},
                            "output": str(tmp_path / "x.png")})
    assert main(["render", "--spec", str(spec)]) == 2
    assert "schema" in capsys.readouterr().err


def test_cli_missing_file_exits_3(tmp_path):
    spec = _spec(tmp_path, {"kind": "growth",
                            "inputs": {"growth_csv": "/nope/growth.csv"},
                            "output": str(tmp_path / "x.png")})
    assert main(["render", "--spec", str(spec)]) == 3


def test_cli_render_all(growth_csv, strata_csv, intersections_csv,
                        disk_samples_csv, growth_json, tmp_path):
    results = tmp_path / "results"
    results.mkdir()
    for src in (growth_csv, strata_csv, disk_samples_csv, growth_json):
        (results / src.name).write_bytes(src.read_bytes())
    (results / "intersections.csv").write_bytes(
        intersections_csv.read_bytes())
    figs = tmp_path / "figs"
    assert main(["render-all", "--results", str(results),
                 "--out", str(figs)]) == 0
    for kind in FIGURE_KINDS:
        assert (figs / f"{kind}.png").exists()

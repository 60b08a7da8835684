"""Acceptance gate for the plotting package.

Renders every figure kind from a results directory produced by the
analysis CLI and checks the images are pixel-stable across two runs.
"""

import json
import subprocess
import sys
import time

import pytest

from henon_qh_plots import FIGURE_KINDS
from henon_qh_plots.cli import main


def _report(num, desc, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {num}: {desc}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def results_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("qh")
    cfg = root / "cfg.json"
    cfg.write_text(json.dumps({"map": {"a": 0.5, "c": -6.0},
                               "growth": {"r_count": 5},
                               "disks": {"rays": 64}}))
    out = root / "results"
    proc = subprocess.run(
        [sys.executable, "-m", "henon_qh.cli", "qh-report",
         "--config", str(cfg), "--out", str(out), "--seed", "0"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return out


def test_criterion_11_figures(results_dir, tmp_path):
    t0 = time.perf_counter()
    runs = []
    for name in ("figs1", "figs2"):
        figs = tmp_path / name
        rc = main(["render-all", "--results", str(results_dir),
                   "--out", str(figs)])
        assert rc == 0
        runs.append({kind: (figs / f"{kind}.png").read_bytes()
                     for kind in FIGURE_KINDS})
    all_render = all(len(v) > 0 for v in runs[0].values())
    stable = runs[0] == runs[1]
    _report(11, "every figure kind renders from the analysis report "
            "directory and is pixel-stable across two runs",
            all_render and stable,
            f"kinds={sorted(FIGURE_KINDS)} stable={stable} "
            f"elapsed={time.perf_counter() - t0:.1f}s")

import json
import math

import numpy as np
import pandas as pd
import pytest

import riccati_disks
from riccati_disks import (EXIT_BLOWUP, EXIT_CONTAINMENT, EXIT_DEGENERATE, EXIT_ENGINE, main,
                           parse_range)
from src.oracle.containment import ContainmentReport, SeedResult


def test_parse_range():
    assert np.allclose(parse_range("0:1:0.25"), [0.0, 0.25, 0.5, 0.75, 1.0])
    assert parse_range("0.1,0.4").tolist() == [0.1, 0.4]
    assert len(parse_range("0:1:0.1")) == 11


def test_flow_writes_circle_table(tmp_path):
    out = tmp_path / "flow.csv"
    assert main(["flow", "--zeta", "2,-1", "--m0", "0,0", "--R0", "1", "--xs", "0:1:0.1",
                 "-o", str(out)]) == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["x", "re_m", "im_m", "R", "degenerate"]
    assert len(frame) == 11
    assert frame["R"].iloc[0] == pytest.approx(1.0)
    # circles contract towards the stable fixed point
    assert frame["R"].iloc[-1] < frame["R"].iloc[0]
    assert not frame["degenerate"].any()
    sidecar = json.loads((tmp_path / "flow.csv.config.json").read_text())
    assert sidecar["command"] == "flow" and sidecar["zeta"] == [2.0, -1.0]


def test_flow_stationary_circle(tmp_path):
    out = tmp_path / "stationary.csv"
    m0 = f"0,{math.sqrt(2.0)!r}"
    assert main(["flow", "--zeta", "0,1", "--m0", m0, "--R0", "1", "--xs", "0:2:0.5",
                 "-o", str(out)]) == 0
    frame = pd.read_csv(out)
    assert np.allclose(frame["R"], 1.0, atol=1e-8)
    assert np.allclose(frame["im_m"], math.sqrt(2.0), atol=1e-8)


def test_flow_degenerate_exit_code(tmp_path, capsys):
    xs = f"0,{math.atanh(0.5)!r},1"
    code = main(["flow", "--zeta", "1,0", "--m0=-2,0", "--R0", "0.5", "--xs", xs,
                 "-o", str(tmp_path / "deg.csv")])
    assert code == EXIT_DEGENERATE
    assert "degenerates to a line" in capsys.readouterr().err


def test_list_scenarios(capsys):
    assert main(["list-scenarios"]) == 0
    out = capsys.readouterr().out
    for name in ("turning_point", "axis_crossing", "negative_increasing", "wkb_positive"):
        assert name in out


def test_estimate_negative_increasing(tmp_path):
    out = tmp_path / "ni.csv"
    code = main(["estimate", "--scenario", "negative_increasing", "--c", "1.5", "--grid", "257",
                 "--seeds", "4", "-o", str(out)])
    assert code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == riccati_disks.TRAJECTORY_COLUMNS
    assert np.allclose(frame["beta"] + frame["R"], 1.5)
    assert set(frame["case"]) == {"B"}
    report = json.loads((tmp_path / "ni.report.json").read_text())
    assert report["pass"] and report["seeds"] == 4
    sidecar = json.loads((tmp_path / "ni.csv.config.json").read_text())
    assert sidecar["config"]["grid_size"] == 257
    assert sidecar["scenario"]["params"] == {"c": 1.5}


def test_estimate_json_with_checks(tmp_path):
    out = tmp_path / "ni.json"
    code = main(["estimate", "--scenario", "negative_increasing", "--grid", "257", "--seeds", "4",
                 "--format", "json", "--checks", "-o", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data["trajectories"]["main"]) == 257
    names = [c["name"] for c in data["report"]["checks"]]
    assert "containment" not in names and "constant_top" in names
    assert all(c["pass"] for c in data["report"]["checks"])


def test_estimate_lens_writes_lower_disks(tmp_path):
    out = tmp_path / "lens.csv"
    assert main(["estimate", "--scenario", "wkb_positive", "--grid", "513", "--seeds", "4",
                 "-o", str(out)]) == 0
    upper, lower = pd.read_csv(out), pd.read_csv(tmp_path / "lens.lower.csv")
    assert len(upper) == len(lower) == 513
    assert np.allclose(upper["beta"], -lower["beta"])
    assert set(upper["case"]) == set(lower["case"]) == {"LENS"}


def test_estimate_reports_containment_failure(tmp_path, monkeypatch, capsys):
    failing = ContainmentReport(seeds=(SeedResult(1j, -0.5, 0.25, 0.25, "riccati"),), tol=1e-4)
    monkeypatch.setattr(riccati_disks, "containment_report", lambda *a, **k: failing)
    code = main(["estimate", "--scenario", "negative_increasing", "--grid", "257",
                 "-o", str(tmp_path / "ni.csv")])
    assert code == EXIT_CONTAINMENT
    assert "Containment fails (x=0.25)" in capsys.readouterr().err


def test_engine_errors_exit_with_one(capsys):
    assert main(["estimate", "--scenario", "negative_increasing", "--c", "1.0"]) == EXIT_ENGINE
    assert "ConstraintViolated" in capsys.readouterr().err
    assert main(["estimate", "--scenario", "harmonic"]) == EXIT_ENGINE


def test_oracle_command(tmp_path):
    out = tmp_path / "oracle.csv"
    assert main(["oracle", "--scenario", "negative_increasing", "--y0", "0,1", "--grid", "101",
                 "-o", str(out)]) == 0
    frame = pd.read_csv(out)
    assert len(frame) == 101
    assert (frame["im_y"] > 0).all()


def test_oracle_blow_up_exit_code(capsys):
    code = main(["oracle", "--scenario", "negative_increasing", "--y0=-5,0", "--grid", "101"])
    assert code == EXIT_BLOWUP
    assert "blow-up" in capsys.readouterr().err


def test_missing_command_prints_help(capsys):
    assert main([]) == EXIT_ENGINE
    assert "usage" in capsys.readouterr().out

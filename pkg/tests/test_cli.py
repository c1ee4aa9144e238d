import csv
import json
import math

import numpy as np
import pytest

from twophase.catalog import Coefficients, Scenario, preset_scenarios
from twophase.cli import (COLUMNS, DIAGNOSTICS, RunManifest, load_manifest, main, run,
                          run_counterexample_sweep, write_sweep_csv)
from twophase.free_boundary import decompose, extract_gamma
from twophase.grid import Field, GridSpec, HalfDisk, build_mask
from twophase.svg import FILLS, plot_field, plot_traces


def write_manifest(path, **fields):
    path.write_text(json.dumps(fields))
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# --------------------------------------------------------------------------
# configuration errors


def test_empty_diagnostics_is_config_error(tmp_path, capsys):
    m = write_manifest(tmp_path / "m.json", scenario="zero", diagnostics=[], out=str(tmp_path / "o"))
    assert main(["run", "--manifest", str(m)]) == 2
    assert "diagnostics" in capsys.readouterr().err


@pytest.mark.parametrize("fields, where", [
    ({"diagnostics": ["solve"]}, "scenario"),
    ({"scenario": "zero", "diagnostics": ["smile"]}, "diagnostics[0]"),
    ({"scenario": "zero", "h": -1.0}, "h"),
    ({"scenario": "zero", "colour": "red"}, "colour"),
    ({"scenario": "no_such_preset"}, "scenario"),
])
def test_manifest_field_diagnostics(tmp_path, capsys, fields, where):
    m = write_manifest(tmp_path / "m.json", out=str(tmp_path / "o"), **fields)
    assert main(["run", "--manifest", str(m)]) == 2
    assert where in capsys.readouterr().err


def test_manifest_json_syntax_error(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text('{\n  "scenario": "zero",\n  "h": ,\n}\n')
    assert main(["run", "--manifest", str(p)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_weiss_needs_zero_pi_data(tmp_path):
    res = run(RunManifest("counterexample", 1 / 32, ["weiss"], str(tmp_path)))
    assert res.status == 2


def test_half_disk_diagnostics_reject_rectangles(tmp_path):
    res = run(RunManifest("typical_a", 1 / 32, ["density"], str(tmp_path)))
    assert res.status == 2


def test_manifest_scenario_path_is_relative_to_manifest(tmp_path):
    sc = preset_scenarios()["parabola_plus"]
    sub = tmp_path / "cfg"
    sub.mkdir()
    (sub / "sc.json").write_text(json.dumps(sc.to_dict()))
    m = load_manifest(write_manifest(sub / "m.json", scenario="sc.json", out=str(tmp_path / "o")))
    assert m.scenario == str(sub / "sc.json")


# --------------------------------------------------------------------------
# exit codes


def test_non_converged_solve_is_flagged(tmp_path):
    res = run(RunManifest("perturbed_parabola", 1 / 32, ["solve"], str(tmp_path), max_sweeps=3))
    assert res.status == 3
    assert any("did not converge" in f for f in res.summary["flags"])
    assert (tmp_path / "field.csv").exists() and (tmp_path / "regions.svg").exists()
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["exit_status"] == 3


def test_verify_exit_zero(tmp_path, capsys):
    assert main(["verify", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "verify.csv")
    assert rows[0] == ["name", "passed", "value", "bound"]
    assert all(r[1] == "1" for r in rows[1:])


def test_list(capsys):
    assert main(["list"]) == 0
    assert "homogeneous" in capsys.readouterr().out


# --------------------------------------------------------------------------
# artifacts


def test_weiss_on_homogeneous(tmp_path):
    res = run(RunManifest("homogeneous", 1 / 64, ["weiss"], str(tmp_path)))
    assert res.status == 0
    rows = read_csv(tmp_path / "weiss.csv")
    vals = np.array([float(r[1]) for r in rows[1:]])
    assert len(vals) == 7
    assert np.all(np.abs(vals - math.pi / 16) <= 0.02 * math.pi / 16)


@pytest.fixture(scope="module")
def full_runs(tmp_path_factory):
    diags = ["solve", "weiss", "acf", "density", "tangency", "blowup"]
    outs = []
    for k in range(2):
        out = tmp_path_factory.mktemp(f"run{k}")
        res = run(RunManifest("perturbed_parabola", 1 / 64, diags, str(out), seed=7))
        outs.append((out, res))
    return outs


def test_run_is_deterministic(full_runs):
    (a, ra), (b, rb) = full_runs
    assert ra.status == rb.status == 0
    assert ra.artifacts == rb.artifacts
    for name in ra.artifacts:
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


def test_every_csv_column_documented(full_runs):
    out, res = full_runs[0]
    summary = json.loads((out / "summary.json").read_text())
    csvs = [n for n in res.artifacts if n.endswith(".csv")]
    assert {"field.csv", "energy.csv", "gamma.csv", "weiss.csv", "acf.csv", "density.csv",
            "tangency.csv", "blowup.csv"} <= set(csvs)
    for name in csvs:
        header = read_csv(out / name)[0]
        assert set(header) == set(summary["columns"][name]), name
        assert set(header) == set(COLUMNS[name]), name


def test_csv_format(full_runs):
    out, res = full_runs[0]
    for name in (n for n in res.artifacts if n.endswith(".csv")):
        raw = (out / name).read_bytes()
        assert b"\r" not in raw and raw.endswith(b"\n")
    # full double precision survives the text roundtrip
    rows = read_csv(out / "weiss.csv")
    assert all(len(r[1]) > 10 for r in rows[1:])


def test_summary_records_thresholds(full_runs):
    out, _ = full_runs[0]
    s = json.loads((out / "summary.json").read_text())
    for key in ("solver_tol", "max_sweeps", "tau_u", "tau_g", "gamma_tau_u"):
        assert key in s["thresholds"]
    assert s["measured"]["solve"]["converged"] is True
    assert s["measured"]["solve"]["energy_monotone"] is True
    assert all(lbl.startswith("PositiveParabolic") for lbl in s["measured"]["blowup"]["labels"])


def test_svg_outputs_written(full_runs):
    out, res = full_runs[0]
    for name in ("regions.svg", "traces.svg", "density.svg", "blowup_limit.svg"):
        assert name in res.artifacts
        text = (out / name).read_text()
        assert text.startswith('<svg xmlns="http://www.w3.org/2000/svg" version="1.1"')


def test_subcommands_write_artifacts(tmp_path, capsys):
    assert main(["solve", "--scenario", "parabola_plus", "--h", "0.03125", "--out", str(tmp_path)]) == 0
    printed = capsys.readouterr().out.split()
    assert str(tmp_path / "field.csv") in printed
    assert main(["trace", "--scenario", "parabola_plus", "--h", "0.03125", "--out", str(tmp_path),
                 "--functional", "weiss"]) == 0
    assert (tmp_path / "weiss.csv").exists()


# --------------------------------------------------------------------------
# plot_field


@pytest.fixture(scope="module")
def coarse_mask():
    d = HalfDisk(1.0)
    return build_mask(d, GridSpec.covering(d, 1 / 32))


def test_plot_zero_field(coarse_mask):
    u = Field.sample(coarse_mask, lambda a, b: 0 * a)
    svg = plot_field(u, decompose(u), extract_gamma(u))
    assert svg.count('<g fill="') == 1
    assert f'<g fill="{FILLS["lambda"]}"' in svg
    assert "<polyline" not in svg
    assert 'width="800" height="800"' in svg


def test_plot_offset_parabola(coarse_mask):
    u = Field.sample(coarse_mask, lambda a, b: 0.5 * np.maximum(a - 0.4, 0.0) ** 2 + 0 * b)
    gamma = extract_gamma(u, 0.0, Coefficients())
    svg = plot_field(u, decompose(u), gamma)
    assert 'stroke-dasharray="8,5"' in svg and "<polyline" in svg
    assert f'<g fill="{FILLS["plus"]}"' in svg and f'<g fill="{FILLS["minus"]}"' not in svg
    # the dashed line sits near x1 = 0.4
    assert np.all(np.abs(gamma.points[:, 0] - 0.4) <= 1 / 32)
    assert plot_field(u, decompose(u), gamma) == svg


def test_plot_traces_deterministic():
    series = {"a": ([0.1, 0.2, 0.3], [1.0, 2.0, float("nan")])}
    a = plot_traces(series, "t")
    assert a == plot_traces(series, "t")
    assert a.count("<circle") == 2


# --------------------------------------------------------------------------
# counterexample sweep


def test_sweep_validation():
    with pytest.raises(ValueError):
        run_counterexample_sweep([(0.01, 0.1), (0.02, 0.1)], h=1 / 32)
    with pytest.raises(ValueError):
        run_counterexample_sweep([], h=1 / 32)


def test_sweep_ordering_and_data_bound(tmp_path):
    pairs = [(0.08, 0.2), (0.005, 0.16)]
    rows = run_counterexample_sweep(pairs, h=1 / 64)
    assert [r["delta"] for r in rows] == [0.08, 0.005]
    assert rows[0]["c0"] > rows[1]["c0"]
    assert rows[0]["cone_flag"]
    assert all(r["converged"] for r in rows)
    assert max(r["data_sup"] for r in rows) < 1.0
    write_sweep_csv(rows, tmp_path / "sweep.csv")
    assert read_csv(tmp_path / "sweep.csv")[0] == list(COLUMNS["sweep.csv"])


def test_sweep_at_zero_parameters():
    # the offset parabola leaves x1^2/2 behind when delta = eps = 0, so c0 is 1/2
    rows = run_counterexample_sweep([(0.0, 0.0)], h=1 / 64)
    assert rows[0]["c0"] == pytest.approx(0.5, rel=1e-2)


def test_sweep_command(tmp_path, capsys):
    status = main(["sweep", "--pairs", "0.08,0.2;0.005,0.16", "--h", "0.015625", "--out", str(tmp_path)])
    assert status == 0
    assert (tmp_path / "sweep.csv").exists() and (tmp_path / "sweep.svg").exists()
    s = json.loads((tmp_path / "summary.json").read_text())
    assert len(s["rows"]) == 2 and "sweep.csv" in s["columns"]
    assert main(["sweep", "--pairs", "0.08;x", "--out", str(tmp_path)]) == 2


def test_diagnostic_names():
    assert set(DIAGNOSTICS) == {"solve", "weiss", "acf", "density", "tangency", "blowup", "ode",
                                "catalog-verify"}

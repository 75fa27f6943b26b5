import json

import numpy as np
import pytest
from click.testing import CliRunner

from tachylab.cli import main
from tachylab.modes import ModeSet


@pytest.fixture
def runner():
    return CliRunner()


def test_massless_propagator_row(runner, tmp_path):
    result = runner.invoke(main, [
        "propagator", "--kind", "massless", "--t-steps", "1",
        "--r-min", "1", "--r-max", "1", "--r-steps", "1",
        "--out", str(tmp_path)])
    assert result.exit_code == 0
    rows = (tmp_path / "propagator_massless.csv").read_text().splitlines()
    assert rows[0] == "t,r,re,im,est_error"
    re_val = float(rows[1].split(",")[2])
    assert re_val == pytest.approx(0.0253303, rel=1e-5)
    manifest = json.loads(
        (tmp_path / "propagator_massless_manifest.json").read_text())
    assert manifest["parameters"]["kind"] == "massless"
    assert "version" in manifest


def test_equal_time_commutator_grid(runner, tmp_path):
    result = runner.invoke(main, [
        "propagator", "--kind", "commutator", "--evaluator", "box",
        "--t-min", "0", "--t-max", "0", "--t-steps", "1",
        "--r-min", "0.5", "--r-max", "2.5", "--r-steps", "5",
        "--out", str(tmp_path)])
    assert result.exit_code == 0
    for line in (tmp_path / "propagator_commutator.csv")\
            .read_text().splitlines()[1:]:
        _, _, re_v, im_v, _ = (float(c) for c in line.split(","))
        assert abs(re_v) < 1e-10 and abs(im_v) < 1e-10


def test_propagator_deterministic(runner, tmp_path):
    args = ["propagator", "--kind", "wightman", "--evaluator", "box",
            "--t-min", "0.2", "--t-max", "0.6", "--t-steps", "2",
            "--r-min", "1", "--r-max", "2", "--r-steps", "2"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert runner.invoke(main, args + ["--out", str(a)]).exit_code == 0
    assert runner.invoke(main, args + ["--out", str(b)]).exit_code == 0
    assert (a / "propagator_wightman.csv").read_bytes() == \
        (b / "propagator_wightman.csv").read_bytes()


def test_workers_do_not_change_output(runner, tmp_path):
    base = ["propagator", "--kind", "wightman", "--evaluator", "radial",
            "--t-min", "0", "--t-max", "0", "--t-steps", "1",
            "--r-min", "1", "--r-max", "2", "--r-steps", "4"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert runner.invoke(main, base + ["--out", str(a)]).exit_code == 0
    assert runner.invoke(
        main, base + ["--workers", "3", "--out", str(b)]).exit_code == 0
    assert (a / "propagator_wightman.csv").read_bytes() == \
        (b / "propagator_wightman.csv").read_bytes()


def test_check_suite_pct(runner, tmp_path):
    result = runner.invoke(main, ["check", "--suite", "pct",
                                  "--out", str(tmp_path)])
    assert result.exit_code == 0
    report = json.loads((tmp_path / "check_pct.json").read_text())
    assert report["passed"]
    assert report["checks"][0]["name"] == "pct"


def test_check_detects_corrupted_dispersion(runner, tmp_path, monkeypatch):
    """Mutation check of the harness: shifting every frequency by 0.1 must
    fail the equal-time suite.

    The smeared commutator identities themselves are insensitive to the
    dispersion (the 1/2 omega normalization cancels the i omega from the
    time derivative, even for a wrong omega), so the suite's teeth against
    this mutation are in its field-equation residual check.
    """
    true_omega = ModeSet.omega.fget
    monkeypatch.setattr(ModeSet, "omega",
                        property(lambda self: true_omega(self) + 0.1))
    result = runner.invoke(main, ["check", "--suite", "etcr",
                                  "--out", str(tmp_path)])
    assert result.exit_code == 1
    report = json.loads((tmp_path / "check_etcr.json").read_text())
    assert not report["passed"]
    assert any(not c["passed"] for c in report["checks"])


def test_unknown_suite_is_usage_error(runner):
    assert runner.invoke(main, ["check", "--suite", "nope"]).exit_code == 2


def test_spectrum_report(runner, tmp_path):
    result = runner.invoke(main, [
        "spectrum", "--beta", "0.5", "--samples", "40", "--seed", "9",
        "--out", str(tmp_path)])
    assert result.exit_code == 0
    report = json.loads((tmp_path / "spectrum.json").read_text())
    assert report["halving_consistent"]
    assert 0 < report["n_allowed"] < 40  # both halves get sampled


def test_fock_report(runner, tmp_path):
    result = runner.invoke(main, ["fock-report", "--out", str(tmp_path)])
    assert result.exit_code == 0
    report = json.loads((tmp_path / "fock_report.json").read_text())
    assert report["ccr_residual_interior"] < 1e-12
    assert report["ccr_residual_boundary_shell"] > 0.5
    assert report["grid_assembly_residual"] < 1e-10
    assert report["energy_spectrum"][0] == 0.0


def test_causality_verdicts(runner, tmp_path):
    result = runner.invoke(main, [
        "causality", "--samples", "60", "--beta", "0.9", "--seed", "4",
        "--out", str(tmp_path)])
    assert result.exit_code == 0
    report = json.loads((tmp_path / "causality.json").read_text())
    assert not report["any_violation"]
    assert len(report["verdicts"]) == 60
    assert all(v["total_time"] > 0 for v in report["verdicts"])


def test_causality_chain_file(runner, tmp_path):
    chain = {"origin": [0, 0, 0, 0],
             "legs": [{"kvec": [0.0, 0.0, 2.0], "duration": 1.0}]}
    path = tmp_path / "chains.json"
    path.write_text(json.dumps([chain]))
    result = runner.invoke(main, ["causality", "--chains", str(path),
                                  "--out", str(tmp_path)])
    assert result.exit_code == 0
    report = json.loads((tmp_path / "causality.json").read_text())
    assert report["verdicts"][0]["interval"] == "spacelike"


def test_config_file_with_flag_override(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mass": 2.0, "out": str(tmp_path / "cfgout"),
                               "seed": 11}))
    result = runner.invoke(main, [
        "--config", str(cfg), "spectrum", "--beta", "0.3", "--samples", "10"])
    assert result.exit_code == 0
    report = json.loads(
        (tmp_path / "cfgout" / "spectrum.json").read_text())
    assert report["mass"] == 2.0 and report["seed"] == 11
    # explicit flag wins over the config value
    result = runner.invoke(main, [
        "--config", str(cfg), "spectrum", "--beta", "0.3", "--samples", "10",
        "--mass", "3.0"])
    assert result.exit_code == 0
    report = json.loads(
        (tmp_path / "cfgout" / "spectrum.json").read_text())
    assert report["mass"] == 3.0

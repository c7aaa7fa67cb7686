import json
import logging

import numpy as np
import pandas as pd
import pytest

import sepvol
from sepvol.experiments import (
    ReportBuilder,
    main,
    run_theorem1,
    run_theorem2,
    run_theorem3,
    run_theorem4,
)
from sepvol.nets import load_net
from sepvol.sampling import SeededStream
from sepvol.utils import CheckRecord
from sepvol.widths import WidthEstimate


@pytest.fixture(autouse=True)
def restore_settings():
    verbosity, workers = sepvol.settings.verbosity, sepvol.settings.n_workers
    yield
    sepvol.settings.verbosity = verbosity
    sepvol.settings.n_workers = workers


def _width(mean, se, exactness="exact"):
    return WidthEstimate(mean, se, 100, 0, "K", False, exactness, dim=3)


def _reject_constant(name):
    raise ValueError(f"{name} is not valid JSON")


def test_report_builder_comparisons():
    builder = ReportBuilder(1, {"D": 2}, seed=0)
    assert builder.at_most("inside", _width(1.0, 0.1), 1.1)
    # 1.2 − 3σ = 0.9 is still credible
    assert builder.at_most("credible", _width(1.2, 0.1), 1.0)
    assert not builder.at_most("violated", _width(1.5, 0.1), 1.0)
    assert builder.at_least("lower", (0.4, 0.6), 0.5)
    assert builder.close_to("close", 1.0, 1.0 + 1e-13, tol=1e-12)
    report = builder.build()
    assert not report.passed
    assert report.checks["credible"].passed
    with pytest.raises(ValueError):
        builder.at_most("inside", 0.0, 1.0)


def test_lower_bound_estimates_are_one_sided():
    builder = ReportBuilder(2, {}, seed=0)
    lower = _width(0.5, 0.01, exactness="lower_bound")
    assert builder.at_most("one_sided", lower, 1.0)
    with pytest.raises(TypeError):
        builder.close_to("two_sided", lower, 0.5)


def test_record_needs_a_verdict():
    builder = ReportBuilder(3, {}, seed=0)
    with pytest.raises(ValueError):
        builder.record("bare", CheckRecord(value=1.0))
    builder.record("ok", CheckRecord(value=1.0, passed=True))
    assert builder.checks["ok"].kind == "record"
    with pytest.raises(ValueError):
        builder.record("ok", CheckRecord(passed=True))


def test_monte_carlo_retry():
    calls = []

    def estimate(samples, stream):
        calls.append((samples, stream.stream_index))
        return _width(2.0 if samples == 10 else 0.5, 0.01)

    builder = ReportBuilder(1, {}, seed=0)
    stream = SeededStream(0)
    value = builder.monte_carlo("width", "at_most", estimate, 1.0, 10, stream)
    assert value.mean == 0.5
    assert [c[0] for c in calls] == [10, 40]
    assert builder.retries == ["width"]
    report = builder.build()
    assert report.passed and report.checks["width"].retried
    assert report.estimates["width"] is value


def test_report_serialization():
    builder = ReportBuilder(4, {"D": 2, "N": 2}, seed=5)
    builder.estimate("w", _width(1.0, 0.1))
    builder.bound("b", 2.0)
    builder.at_most("w_below_b", _width(1.0, 0.1), 2.0)
    report = builder.build()
    out = report.to_dict()
    assert out["pass"] is True and out["seed"] == 5
    assert out["estimates"]["w"]["mean"] == 1.0
    json.dumps(out)
    frame = report.to_frame()
    assert list(frame.columns) == [
        "theorem", "D", "N", "check", "kind", "lhs", "rhs", "slack", "retried", "passed"
    ]
    assert frame.loc[0, "passed"]


def test_theorem1_qubits():
    report = run_theorem1(2, 2, samples=500, seed=0)
    assert report.theorem == 1
    assert report.checks["lower_chain_form"].passed
    assert report.checks["lower_below_upper"].passed
    assert "separable_fraction_above_lower" in report.checks
    assert report.bounds["states_lower"] <= report.bounds["states_upper"]
    assert report.passed


def test_theorem1_grid_validation():
    with pytest.raises(ValueError):
        run_theorem1(2, 1, samples=10)
    with pytest.raises(ValueError):
        run_theorem1(2, 2, samples=1)


def test_theorem2_qutrits():
    report = run_theorem2(3, 2, samples=300, seed=1)
    assert report.checks["determinant_identity"].passed
    assert report.checks["lowner_bound_sharper"].passed
    assert report.bounds["alpha_D"] == pytest.approx(sepvol.ellipsoids.alpha_D(3))
    assert "separable_fraction_above_lower" not in report.checks
    assert report.passed


def test_theorem3_small():
    report = run_theorem3(2, samples=300, seed=2)
    json.dumps(report.to_dict(), allow_nan=False)
    assert report.checks["analytic_below_closed_form"].passed
    assert report.checks["inradius_below_analytic"].passed
    assert report.passed
    with pytest.raises(ValueError):
        run_theorem3(7, samples=10)


@pytest.mark.slow
@pytest.mark.parametrize("N", [3, 4])
def test_theorem3_more_qubits(N):
    report = run_theorem3(N, samples=300, seed=N)
    assert report.passed


@pytest.mark.slow
def test_theorem3_six_qubits():
    report = run_theorem3(6, samples=200, seed=3)
    assert report.checks["analytic_below_closed_form"].passed


def test_theorem4_qubits():
    report = run_theorem4(2, samples=2000, seed=4)
    assert report.checks["isotropic_ppt_boundary"].passed
    assert report.checks["maximally_mixed_is_ppt"].passed
    assert report.checks["c0_lower_bound"].passed
    assert report.bounds["fraction_root"] >= report.bounds["c0"]
    assert report.bounds["ratio"] <= 8
    with pytest.raises(ValueError):
        run_theorem4(4, samples=10)


def test_cli_vol_exact(capsys):
    assert main(["vol-exact", "--d", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["pass"] is True
    assert out["bounds"]["vrad_lower"] <= out["bounds"]["vrad_D"] <= out["bounds"]["vrad_upper"]


def test_cli_violation_exit_code(capsys, monkeypatch):
    monkeypatch.setattr("sepvol.experiments._cli.vrad_D", lambda d: 10.0)
    assert main(["vol-exact", "--d", "4"]) == 2
    assert json.loads(capsys.readouterr().out)["pass"] is False


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["width"],
        ["theorem", "5"],
        ["width", "--body", "Omega", "--D", "2"],
        ["theorem", "3", "--N", "9", "--samples", "10"],
        ["vol-exact", "--d", "1"],
    ],
)
def test_cli_usage_errors(argv, capsys):
    assert main(argv) == 1


@pytest.mark.parametrize("body,N", [("D", 1), ("Delta", 2), ("Sigma", 2), ("Gamma", 1)])
def test_cli_width(body, N, capsys):
    argv = ["width", "--body", body, "--D", "2", "--N", str(N), "--samples", "300", "--seed", "1"]
    assert main(argv) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["inputs"]["body"] == body
    assert out["estimates"]["width"]["gaussian"] is False


def test_cli_net_build(tmp_path, capsys):
    path = tmp_path / "circle.net"
    assert main(["net-build", "--dim", "2", "--delta", "0.5", "--out", str(path), "--seed", "0"]) == 0
    out = json.loads(capsys.readouterr().out)
    net = load_net(path, 0.5)
    assert len(net) == out["estimates"]["size"]


def test_cli_ppt_fraction_with_workers(capsys):
    argv = ["--workers", "2", "--verbose", "ppt-fraction", "--D", "2", "--samples", "500", "--seed", "1"]
    assert main(argv) == 0
    assert sepvol.settings.n_workers == 2
    assert sepvol.settings.verbosity == logging.INFO
    out = json.loads(capsys.readouterr().out)
    assert out["estimates"]["fraction"]["samples"] == 500
    assert out["estimates"]["fraction_root"] >= out["bounds"]["c0"]
    assert out["estimates"]["fraction_root"] <= out["bounds"]["fraction_root_ci_high"]


def test_cli_theorem_csv(tmp_path, capsys):
    path = tmp_path / "checks.csv"
    argv = ["theorem", "3", "--N", "2", "--samples", "200", "--seed", "0", "--csv", str(path)]
    assert main(argv) == 0
    out = json.loads(capsys.readouterr().out, parse_constant=_reject_constant)
    frame = pd.read_csv(path)
    assert len(frame) == len(out["checks"])
    assert np.all(frame["theorem"] == 3)


def test_cli_alpha(capsys):
    assert main(["alpha", "--D", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bounds"]["alpha_D"] == pytest.approx(0.0943, abs=1e-4)

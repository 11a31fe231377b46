import json
import math

import pandas as pd
import pytest
from scipy.special import gammaln
from typer.testing import CliRunner

from wiman_lab.cli.main import EXIT_DOMAIN, EXIT_USAGE, app

runner = CliRunner()


def _summary(out):
    return json.loads((out / "summary.json").read_text())


def test_analyze_writes_summary_and_manifest(tmp_path):
    out = tmp_path / "analyze"
    result = runner.invoke(app, ["analyze", "--family", "exp_sum", "--p", "2", "--N", "80", "--r", "e2,e2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    summary = _summary(out)
    assert summary["command"] == "analyze"
    assert summary["central_index"] == [7, 7]
    assert summary["mu_log"] == pytest.approx(2.0 * (14.0 - gammaln(8.0)))
    assert summary["sum_modulus_log"] == pytest.approx(2.0 * math.e ** 2)
    assert summary["max_modulus_log"] == pytest.approx(summary["sum_modulus_log"], abs=1e-9)
    assert (out / "manifest.json").exists()
    assert pd.read_csv(out / "analyze.csv")["partial_log_derivative"].tolist() == pytest.approx([math.e ** 2] * 2)


def test_scan_replays_byte_for_byte(tmp_path):
    out = tmp_path / "scan"
    args = [
        "scan", "--predicate", "eq1", "--exponent", "0.15", "--family", "exp_sum", "--p", "1", "--N", "200",
        "--lo", "e2", "--hi", "e3", "--cells", "4", "--kind", "steinhaus", "--seed", "3", "--trials", "2",
        "--out", str(out),
    ]
    assert runner.invoke(app, args).exit_code == 0
    first = [(out / f"scan_t000{k}.csv").read_bytes() for k in range(2)]
    assert _summary(out)["trials"][1]["trial"] == 1

    result = runner.invoke(app, ["run", "--manifest", str(out / "manifest.json")])
    assert result.exit_code == 0, result.output
    assert [(out / f"scan_t000{k}.csv").read_bytes() for k in range(2)] == first


def test_inadequate_truncation_exits_with_domain_code(tmp_path):
    result = runner.invoke(
        app,
        ["scan", "--predicate", "eq1", "--family", "exp_sum", "--N", "20", "--lo", "e2", "--hi", "e4", "--out", str(tmp_path)],
    )
    assert result.exit_code == EXIT_DOMAIN


def test_unknown_predicate_exits_with_domain_code(tmp_path):
    result = runner.invoke(
        app,
        ["scan", "--predicate", "eq42", "--family", "exp_sum", "--N", "200", "--lo", "e2", "--hi", "e3", "--out", str(tmp_path)],
    )
    assert result.exit_code == EXIT_DOMAIN


def test_bad_manifests_exit_with_usage_code(tmp_path):
    assert runner.invoke(app, ["run", "--manifest", str(tmp_path / "missing.json")]).exit_code == EXIT_USAGE

    bad_command = tmp_path / "bad_command.json"
    bad_command.write_text(json.dumps({"command": "nope"}))
    assert runner.invoke(app, ["run", "--manifest", str(bad_command)]).exit_code == EXIT_USAGE

    unknown_key = tmp_path / "unknown_key.json"
    unknown_key.write_text(json.dumps({"command": "analyze", "colour": "blue"}))
    assert runner.invoke(app, ["run", "--manifest", str(unknown_key)]).exit_code == EXIT_USAGE

    not_json = tmp_path / "not_json.json"
    not_json.write_text("{command: analyze")
    assert runner.invoke(app, ["run", "--manifest", str(not_json)]).exit_code == EXIT_USAGE


def test_missing_series_is_a_usage_error(tmp_path):
    result = runner.invoke(app, ["analyze", "--r", "e2", "--out", str(tmp_path)])
    assert result.exit_code == EXIT_USAGE


@pytest.mark.parametrize("predicate", ["eq9_tail", "lemma23"])
def test_scan_refuses_series_that_would_write_non_finite_rows(tmp_path, predicate):
    # two monomials: nothing of degree 10 is stored and z_2 never appears
    series = tmp_path / "sparse.txt"
    series.write_text("2 10\n0 0 0.0 0.0\n4 0 0.0 0.0\n")
    out = tmp_path / "out"
    result = runner.invoke(
        app,
        [
            "scan", "--predicate", predicate, "--series-file", str(series), "--p", "2",
            "--lo", "e2", "--hi", "e3", "--cells", "2", "--out", str(out),
        ],
    )
    assert result.exit_code == EXIT_DOMAIN
    assert not (out / "scan.csv").exists()


def test_mc_tail_identity_control(tmp_path):
    result = runner.invoke(app, ["mc-tail", "--N", "16", "--trials", "50", "--kind", "identity", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert _summary(tmp_path)["quantile_ratio"] == pytest.approx(math.sqrt(17.0) / math.sqrt(math.log(16.0)))
    assert len(pd.read_csv(tmp_path / "mc_tail.csv")) == 50


def test_fit_command_recovers_the_exponential_slope(tmp_path):
    result = runner.invoke(
        app, ["fit", "--family", "exp_sum", "--p", "1", "--N", "1200", "--lo", "e2", "--hi", "e6", "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    assert _summary(tmp_path)["median_slope"] == pytest.approx(0.466, abs=0.02)
    assert len(pd.read_csv(tmp_path / "fit_samples.csv")) == 40


def test_levy_ratio_with_identity_control(tmp_path):
    result = runner.invoke(
        app,
        ["levy", "--mode", "erdos_renyi", "--N", "300", "--r-values", "e2,e3", "--trials", "1", "--kind", "identity", "--out", str(tmp_path)],
    )
    assert result.exit_code == 0, result.output
    rows = pd.read_csv(tmp_path / "levy_ratio.csv")
    assert rows["median_ratio"].iloc[1] > rows["median_ratio"].iloc[0]


def test_levy_rejects_unknown_mode(tmp_path):
    result = runner.invoke(app, ["levy", "--mode", "upper_bound", "--N", "300", "--out", str(tmp_path)])
    assert result.exit_code == EXIT_USAGE

#!/usr/bin/env python3
"""Tests for report rows, rendering, the run ledger, the experiment registry and the CLI."""

import csv
import io
import json
from fractions import Fraction

import pytest
import yaml

from experiments import (
    LIMITS, ExperimentReport, ReportRow, experiment_defaults, experiment_params, freeze_golden,
    load_golden, run_experiment,
)
from experiments.registry import DEFAULT_CONFIG
from field import DomainError, FormatError
from functions import DENSE_CAP, materialize
from gowers import gowers_norm_exact
from main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, ExperimentOrchestrator, cli_main
from render import ReportRenderer, atomic_write
from store import Database


def small_report():
    report = ExperimentReport("demo", {"N": [4, 5]}, seed=3)
    report.add(ReportRow.measure(4, "max_corr", Fraction(7, 8), "<", Fraction(1)))
    report.add(ReportRow.measure(5, "raw", 0.1234567890123, ">=", 0.01, err=0.0012))
    report.add(ReportRow.check(5, "identity", True))
    return report


def write_config(tmp_path, experiments, store=None):
    path = tmp_path / "config.yaml"
    with open(path, "w") as f:
        yaml.safe_dump({"experiments": experiments, "report": {"timezone": "UTC"},
                        "store": store or {"enabled": False}}, f)
    return str(path)


# ---------------------------------------------------------------- rows

@pytest.mark.parametrize("value,relation,bound,expected", [
    (Fraction(7, 8), "<", Fraction(1), True),
    (Fraction(7, 8), "<=", Fraction(7, 8), True),
    (Fraction(7, 8), "<", Fraction(7, 8), False),
    (0.3, ">=", 0.5, False),
    (2, "==", 2, True),
])
def test_row_pass_flag_follows_numbers(value, relation, bound, expected):
    assert ReportRow.measure(4, "m", value, relation, bound).passed is expected


def test_row_slack_and_exact_field():
    row = ReportRow.measure(8, "mc", 0.105, "==", 0.1, err=0.002, slack=0.006)
    assert row.passed
    assert not ReportRow.measure(8, "mc", 0.11, "==", 0.1, slack=0.006).passed
    exact = ReportRow.measure(4, "raw", Fraction(3, 16), ">=", 0.1).to_dict()
    assert exact["exact"] == "3/16" and exact["value"] == 0.1875


def test_row_rejects_unknown_relation():
    with pytest.raises(DomainError):
        ReportRow(4, "m", 1.0, 1.0, "~")


def test_report_schema_and_failures():
    report = small_report()
    report.add(ReportRow.measure(6, "bad", 2, "<=", 1))
    data = report.to_dict()
    assert set(data) == {"experiment", "params", "seed", "rows"}
    assert set(data["rows"][0]) >= {"N", "metric", "value", "err", "bound", "pass"}
    assert [r.metric for r in report.failures] == ["bad"]
    assert not report.passed
    assert report.row("raw").N == 5


# ---------------------------------------------------------------- rendering

def test_csv_and_json_carry_identical_numbers():
    renderer = ReportRenderer({"report": {"timezone": "UTC"}})
    report = small_report()
    rows = json.loads(renderer.render(report, "json"))["rows"]
    table = list(csv.DictReader(io.StringIO(renderer.render(report, "csv"))))
    assert list(table[0]) == ["N", "metric", "value", "err", "bound", "pass"]
    for j, c in zip(rows, table):
        assert float(c["value"]) == j["value"]
        assert float(c["err"]) == j["err"]
        assert float(c["bound"]) == j["bound"]
        assert (c["pass"] == "true") == j["pass"]


def test_timestamps_are_optional():
    renderer = ReportRenderer({"report": {"timezone": "Europe/Berlin"}})
    report = renderer.stamp(small_report(), with_timestamp=True)
    assert "timestamp" in json.loads(renderer.render(report, "json"))
    report = renderer.stamp(report, with_timestamp=False)
    assert "timestamp" not in json.loads(renderer.render(report, "json"))


def test_html_report(tmp_path):
    renderer = ReportRenderer({})
    out = tmp_path / "nested" / "report.html"
    html = renderer.write(small_report(), "html", out)
    assert out.read_text() == html
    assert "demo" in html and "max_corr" in html
    with pytest.raises(DomainError):
        renderer.render(small_report(), "xml")


def test_atomic_write_leaves_no_temporaries(tmp_path):
    path = atomic_write(tmp_path / "a.json", "{}\n")
    atomic_write(path, "[]\n")
    assert path.read_text() == "[]\n"
    assert [p.name for p in tmp_path.iterdir()] == ["a.json"]


# ---------------------------------------------------------------- ledger

def test_database_records_runs_and_metrics(tmp_path):
    db = Database(str(tmp_path / "ledger.db"))
    run_id = db.log_run("digits", {"primes": [2]}, 7, 0.5, rows=3, failures=0)
    db.log_metric("cube_values@N=6", 0.0, run_id=run_id, metadata={"pass": True})
    db.log_run("dixon", {}, 1, 0.0, 0, 0, error="guard")
    runs = db.recent_runs(days=1)
    assert [r["experiment"] for r in runs] == ["dixon", "digits"]
    assert runs[0]["error"] == "guard"
    assert json.loads(runs[1]["params"]) == {"primes": [2]}
    assert db.metrics_for(run_id)[0]["metric_name"] == "cube_values@N=6"


# ---------------------------------------------------------------- registry

def test_experiment_params_merge():
    params = experiment_params("identities", {"instances": {"vanishing": 5}}, {"shards": 8})
    assert params["instances"]["vanishing"] == 5
    assert params["instances"]["expansion"] == experiment_defaults()["identities"]["instances"]["expansion"]
    assert params["shards"] == 8
    with pytest.raises(DomainError):
        experiment_params("nope")


def test_experiment_params_come_from_config_yaml():
    with open(DEFAULT_CONFIG) as f:
        sections = yaml.safe_load(f)["experiments"]
    assert experiment_defaults() == sections
    for name, section in sections.items():
        params = experiment_params(name)
        assert all(params[key] == value for key, value in section.items())
    assert LIMITS["dense_cap"] == DENSE_CAP
    assert experiment_params("digits")["dense_cap"] == DENSE_CAP
    assert experiment_params("digits", limits={"dense_cap": 64})["dense_cap"] == 64


def test_digits_experiment():
    report = run_experiment("digits", {"cube_N": 6, "max_degree": 4})
    assert report.passed
    assert report.row("s9_p3_depends_on_digit_only").value == 1.0
    assert report.row("mismatches_s9_p3_weight_values").N == 26


def test_small_correlation_experiment():
    report = run_experiment("icgn-correlation",
                            {"exhaustive_N": [4], "profile_N": [8], "trials": 40})
    assert report.row("max_corr_exhaustive", 4).exact == Fraction(7, 8)
    assert report.passed


def test_small_identity_suites():
    params = {"instances": {"expansion": 4, "coefficient": 4, "h_vs_s": 10, "incomplete": 10,
                            "vanishing": 5}}
    assert run_experiment("identities", params, seed=1).passed
    assert run_experiment("dixon", {"instances": 10, "max_N": 6, "s4_N": 8,
                                    "s4_instances": 5}, seed=1).passed
    assert run_experiment("mixed-derivative", {"pairs": 10, "max_N": 3}, seed=1).passed


def test_committed_golden_matches_exact_norm():
    golden = load_golden(experiment_params("icgn-gowers")["golden_path"])
    assert set(golden) == {6, 8, 10}
    assert golden[6] == Fraction(1577, 8192)
    assert gowers_norm_exact(materialize("sym:4", 2, 6), 4).exact == golden[6]


def test_distribution_distance_shrinks_past_n8():
    report = run_experiment("distributions", {}, seed=0)
    assert report.row("l1_distance_vs_N8", 32).passed
    assert report.row("l1_distance_vs_smallest_N", 32).passed
    assert report.row("l1_distance_vs_smallest_N", 8).passed
    assert all(row.passed for row in report.rows if row.metric == "l1_distance" and row.N > 4)


def test_golden_round_trip(tmp_path):
    golden = tmp_path / "golden.json"
    assert load_golden(golden) is None
    freeze_golden(golden, "icgn-gowers", {6: Fraction(3, 64)})
    assert load_golden(golden) == {6: Fraction(3, 64)}
    golden.write_text('{"raw_power": {"6": "x"}}')
    with pytest.raises(FormatError):
        load_golden(golden)


def test_gowers_experiment_freezes_then_compares(tmp_path):
    params = {"exact_N": [4, 5], "mc_N": [6], "samples": 2000, "chain_samples": 0,
              "floor": 0.0, "golden_path": str(tmp_path / "g.json")}
    first = run_experiment("icgn-gowers", dict(params, freeze_golden=True), seed=5)
    assert (tmp_path / "g.json").exists()
    second = run_experiment("icgn-gowers", params, seed=5)
    assert second.row("u4_raw_vs_golden", 4).passed
    assert second.row("u4_raw_vs_golden", 5).passed
    assert first.row("u4_raw_mc_vs_trend").value == second.row("u4_raw_mc_vs_trend").value


# ---------------------------------------------------------------- CLI

def test_cli_gowers_exact(tmp_path):
    out = tmp_path / "g.json"
    code = cli_main(["gowers", "--p", "2", "--N", "4", "--function", "sym:4", "--order", "5",
                     "--mode", "exact", "--no-store", "--no-timestamp", "--out", str(out)])
    assert code == EXIT_OK
    rows = json.loads(out.read_text())["rows"]
    assert rows[0]["metric"] == "u5_norm" and rows[0]["value"] == 1.0


def test_cli_usage_errors_write_nothing(tmp_path):
    out = tmp_path / "c.json"
    code = cli_main(["correlate", "--p", "3", "--N", "4", "--degree", "3", "--function", "sym:4",
                     "--method", "exhaustive", "--no-store", "--out", str(out)])
    assert code == EXIT_USAGE
    assert not out.exists()
    assert cli_main(["experiment", "no-such-thing"]) == EXIT_USAGE
    assert cli_main(["gowers", "--function", "sym:4", "--order", "3", "--no-store"]) == EXIT_USAGE


def test_cli_output_is_deterministic(tmp_path):
    config = write_config(tmp_path, {"digits": {"cube_N": 5, "max_degree": 3}})
    outputs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        code = cli_main(["experiment", "digits", "--seed", "42", "--no-timestamp", "--no-store",
                         "--config", config, "--out", str(out)])
        assert code == EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_cli_commands_are_recorded_in_the_ledger(tmp_path, monkeypatch):
    monkeypatch.delenv("DATABASE_PATH", raising=False)
    ledger = tmp_path / "ledger.db"
    config = write_config(tmp_path, {}, store={"enabled": True, "path": str(ledger)})
    code = cli_main(["gowers", "--p", "2", "--N", "4", "--function", "sym:4", "--order", "5",
                     "--mode", "exact", "--no-timestamp", "--config", config,
                     "--out", str(tmp_path / "g.json")])
    assert code == EXIT_OK
    code = cli_main(["correlate", "--p", "3", "--N", "4", "--degree", "3", "--function", "sym:4",
                     "--method", "exhaustive", "--config", config, "--out", str(tmp_path / "c.json")])
    assert code == EXIT_USAGE
    runs = {r["experiment"]: r for r in Database(str(ledger)).recent_runs(days=1)}
    assert runs["gowers"]["error"] is None
    assert json.loads(runs["gowers"]["params"])["order"] == 5
    assert runs["correlate"]["error"]


def test_failing_row_forces_exit_one(tmp_path):
    orchestrator = ExperimentOrchestrator(write_config(tmp_path, {}), use_store=False)
    report = small_report()
    assert orchestrator.emit(report, "csv", str(tmp_path / "ok.csv")) == EXIT_OK
    report.add(ReportRow.measure(6, "bad", 2, "<=", 1))
    assert orchestrator.emit(report, "json", str(tmp_path / "bad.json")) == EXIT_FAILED

from __future__ import annotations

import json
import logging

import pytest

from lyness_mirror import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(("d", "steps", "period"), [(2, 7, 5), (3, 11, 8)])
def test_lyness_periods(capsys, d, steps, period):
    code, out, _ = run(capsys, "lyness", "--d", str(d), "--steps", str(steps))
    data = json.loads(out)
    assert code == 0
    assert data["period"] == period and data["laurent_failure_index"] is None


def test_lyness_failure_is_reported_not_an_error(capsys):
    code, out, _ = run(capsys, "lyness", "--d", "4", "--steps", "40")
    assert code == 0
    assert json.loads(out)["laurent_failure_index"] == 9


def test_period_json_and_csv(capsys):
    code, out, _ = run(capsys, "period", "--potential", "dp5", "--depth", "7")
    assert code == 0
    assert json.loads(out)["coeffs"] == [1, 0, 10, 30, 270, 1560, 11350, 77700]
    code, out, _ = run(capsys, "period", "--potential", "dp5", "--depth", "3", "--shift", "3", "--csv")
    assert out.splitlines() == ["n,alpha", "0,1", "1,3", "2,19", "3,147"]


def test_period_sparse_matches_dense(capsys):
    _, dense, _ = run(capsys, "period", "--potential", "wP", "--depth", "6")
    _, sparse, _ = run(capsys, "period", "--potential", "wP", "--depth", "6", "--method", "sparse")
    assert json.loads(dense)["coeffs"] == json.loads(sparse)["coeffs"]


def test_scatter_consistent_and_mutated(capsys):
    code, out, _ = run(capsys, "scatter", "--diagram", "dp5")
    assert code == 0 and json.loads(out)["consistent"]
    code, out, _ = run(capsys, "scatter", "--diagram", "dp5", "--replace", "f1=1 + 2*z1")
    assert code == 2 and not json.loads(out)["consistent"]


def test_scatter_numeric_parameters(capsys):
    code, out, _ = run(capsys, "scatter", "--lam", "2", "--mu", "3")
    data = json.loads(out)
    assert code == 0 and data["consistent"] and (data["lam"], data["mu"]) == (2, 3)


def test_trop_polar_and_classify(capsys):
    code, out, _ = run(capsys, "trop", "polar", "--space", "dp5", "v1", "v2", "v3", "v4", "v5", "--vertices")
    data = json.loads(out)
    assert code == 0 and data["reflexive"] and len(data["vertices"]) == 5
    code, out, _ = run(capsys, "trop", "classify")
    data = json.loads(out)
    assert data["count"] == 23 and len(data["self_dual"]) == 3


def test_trop_theta(capsys):
    code, out, _ = run(capsys, "trop", "theta", "--space", "dp5", "v4")
    assert code == 0 and json.loads(out)["theta"] == "z1*z2 + z1"


@pytest.mark.parametrize(
    "argv",
    [
        ["period", "--potential", "nonsense"],
        ["scatter", "--lam", "x"],
        ["trop", "classify", "--radius", "3"],
        ["trop", "theta", "--space", "dp5"],
        ["trop", "hull", "--space", "dp5", "v1"],
        ["verify", "--only", "nothing"],
        ["survey", "--fixture", "/nonexistent/fixture.json"],
    ],
)
def test_configuration_errors_exit_3(capsys, argv, tmp_path, monkeypatch):
    monkeypatch.setenv("LYM_CACHE_DIR", str(tmp_path))
    code, out, err = run(capsys, *argv)
    assert code == 3 and out == "" and err.startswith("lym: ")


@pytest.mark.parametrize("argv", [["nosuchcommand"], ["period", "--lam", "2"], ["lyness", "--d", "two"]])
def test_usage_errors_exit_3(argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 3


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("LYM_THREADS", "many")
    code, _, err = run(capsys, "lyness")
    assert code == 3 and "LYM_THREADS" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["lyness", "--d", "3", "--steps", "11", "--mode", "lambda-mu"],
        ["period", "--potential", "wQ", "--depth", "6"],
        ["scatter", "--show-walls"],
        ["trop", "space", "--space", "v12"],
    ],
)
def test_output_is_byte_identical(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and first.endswith("\n")


def test_output_file(capsys, tmp_path):
    target = tmp_path / "sub" / "p.json"
    code, out, _ = run(capsys, "period", "--potential", "wP2", "--depth", "2", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["coeffs"] == [1, 0, 8]


def test_survey_cache(capsys, tmp_path, monkeypatch, caplog):
    monkeypatch.setenv("LYM_CACHE_DIR", str(tmp_path))
    code, first, _ = run(capsys, "survey", "--depth", "5")
    data = json.loads(first)
    assert code == 0 and data["fano_count"] == 705 and data["distinct_periods"] == 46
    assert len(list(tmp_path.glob("survey-d5-*.json"))) == 1
    with caplog.at_level(logging.INFO, logger="lyness_mirror"):
        code, second, _ = run(capsys, "survey", "--depth", "5")
    assert second == first
    assert any("cache hit" in r.getMessage() for r in caplog.records)


def test_survey_fixture_changes_cache_key(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LYM_CACHE_DIR", str(tmp_path / "cache"))
    fixture = tmp_path / "f.json"
    fixture.write_text(json.dumps([{"name": "dP5-like", "coeffs": [1, 0, 10, 30]}]))
    run(capsys, "survey", "--depth", "4", "--no-fixture")
    code, out, _ = run(capsys, "survey", "--depth", "4", "--fixture", str(fixture))
    assert code == 0
    assert len(list((tmp_path / "cache").iterdir())) == 2
    assert json.loads(out)["fixture"] == ["dP5-like"]


def test_verify_only_scattering(capsys):
    code, out, _ = run(capsys, "verify", "--only", "scattering")
    data = json.loads(out)
    assert code == 0 and data["groups"] == ["scattering"]
    assert {i["group"] for i in data["identities"]} == {"scattering"}


def test_verify_default_suite(capsys):
    code, out, _ = run(capsys, "verify")
    data = json.loads(out)
    assert code == 0 and data["failed"] == 0
    names = {i["identity_name"] for i in data["identities"]}
    assert len(names) >= 25

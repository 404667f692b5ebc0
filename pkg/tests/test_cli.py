import hashlib
import json

import pytest

from deformedjc import cli, scenarios
from deformedjc.scenarios import ConfigError, ScenarioConfig


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_critical_detuning_command(capsys):
    assert run(capsys, "critical-detuning", "--mean", "30", "--k", "1e-4")[1].strip() == "0.016061"
    assert run(capsys, "critical-detuning", "--mean", "30", "--k", "1e-3", "--lambda", "1e-3")[1].strip() == "0.061061"
    code, out, _ = run(capsys, "critical-detuning", "--model", "two", "--mean", "3", "--k", "2e-3")
    assert code == 0 and abs(float(out) - 0.0161) < 1e-4


def test_critical_detuning_k_zero_message(capsys):
    code, out, err = run(capsys, "critical-detuning", "--mean", "30", "--k", "0")
    assert code != 0 and out == ""
    assert "k = 0" in err and "minimum" in err


def test_timeseries_single_first_row(tmp_path, capsys):
    out = tmp_path / "a.csv"
    assert run(capsys, "timeseries", "--preset", "fig1a", "--tmax", "1", "--out", str(out))[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "lambda_t,W_S,L,coherence"
    assert lines[1] == "0,1,0,0"
    assert len(lines) == 102


def test_timeseries_two_columns_and_period(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code = run(capsys, "timeseries", "--model", "two", "--state", "pc", "--dt", "0.0031415926535897933",
               "--tmax", "3.1415926535897933", "--out", str(out))[0]
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "lambda_t,W_T,T_A_FF,T_AF1_F2,T_AF2_F1,E,coherence"
    last = [float(x) for x in lines[-1].split(",")]
    assert abs(last[1] - 1.0) < 1e-8


def test_byte_identical_output(tmp_path, capsys):
    digests = []
    for i in range(2):
        out = tmp_path / f"r{i}.csv"
        run(capsys, "timeseries", "--preset", "fig8f", "--tmax", "2", "--out", str(out))
        digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
    assert digests[0] == digests[1]


def test_fixed_precision_format(capsys):
    _, out, _ = run(capsys, "timeseries", "--preset", "fig3a", "--tmax", "0.05", "--dt", "0.01")
    for row in out.splitlines()[1:]:
        for field in row.split(","):
            assert field == f"{float(field):.12g}"


def test_config_file_and_flag_priority(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\npreset = fig6d\nk = 1e-3\ntmax = 2\nlambda=0.004\n")
    _, out, _ = run(capsys, "describe", "--config", str(cfg), "--k", "5e-3")
    values = dict(line.split("=", 1) for line in out.splitlines() if not line.startswith("#"))
    assert values["k"] == "0.005"          # flag beats file
    assert values["lam"] == "0.004"        # file beats preset
    assert values["state"] == "pair_coherent"  # preset fills the rest
    assert values["tmax"] == "2.0"


def test_describe_output_reloads(tmp_path, capsys):
    _, out, _ = run(capsys, "describe", "--preset", "fig1i")
    cfg = tmp_path / "x.cfg"
    cfg.write_text(out)
    _, again, _ = run(capsys, "describe", "--config", str(cfg))
    assert again == out


def test_invalid_config_reported(tmp_path, capsys):
    code, _, err = run(capsys, "timeseries", "--model", "single", "--state", "pc")
    assert code == 2 and "not available" in err
    code, _, err = run(capsys, "timeseries", "--k", "2")
    assert code == 2
    code, _, err = run(capsys, "timeseries", "--preset", "fig1a", "--nmax", "20")
    assert code == 2 and "tail" in err
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "describe", "--config", str(bad))[0] == 2


def test_unwritable_path(capsys):
    code, _, err = run(capsys, "timeseries", "--preset", "fig1a", "--tmax", "0.1",
                       "--out", "/nonexistent/dir/x.csv")
    assert code == 2 and "cannot write" in err


def test_presets_complete_and_resolvable():
    expected = ([f"fig{f}{c}" for f in (1, 2, 4, 5) for c in "abcdefghi"] + ["fig3a", "fig3b"]
                + [f"fig{f}{c}" for f in (6, 7, 8, 9) for c in "abcdef"])
    assert sorted(scenarios.PRESETS) == sorted(expected)
    for name in ("fig1c", "fig1f", "fig2i", "fig7f"):
        res = scenarios.resolve(scenarios.PRESETS[name])
        assert isinstance(res.config.delta, float)
    assert scenarios.resolve(scenarios.PRESETS["fig1f"]).params.delta == pytest.approx(0.016061, abs=1e-9)
    assert scenarios.resolve(scenarios.PRESETS["fig1i"]).params.delta == pytest.approx(0.061061, abs=1e-9)


def test_critical_on_k_zero_scenario_rejected():
    with pytest.raises(ConfigError):
        scenarios.resolve(ScenarioConfig(k=0.0, delta="critical"))


def test_validate_reports_json(monkeypatch, capsys):
    from deformedjc import validation
    fake = [validation.CheckResult("a", 0.0, 1.0, True), validation.CheckResult("b", 2.0, 1.0, False)]
    monkeypatch.setattr(validation, "run_validate", lambda: fake)
    code, out, _ = run(capsys, "validate")
    assert code == 1
    assert "FAIL  b" in out
    block = out.split("--- begin json ---")[1].split("--- end json ---")[0]
    payload = json.loads(block)
    assert payload["passed"] is False and len(payload["checks"]) == 2

import json

import pytest

from qplane import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_hopf_passes(capsys):
    code, out, _ = run(capsys, "run", "--suite", "hopf")
    assert code == cli.EXIT_PASS
    assert out.strip().splitlines()[-1].startswith("PASS hopf:")


def test_impossible_tolerance_fails(capsys):
    code, out, _ = run(capsys, "run", "--suite", "hopf", "--tol-exact", "1e-300")
    assert code == cli.EXIT_FAIL
    assert "FAIL hopf" in out


@pytest.mark.parametrize("argv", [
    ("run", "--suite", "nope"),
    ("frobnicate",),
    ("functionals", "--k", "1"),
    ("eval", "uq", "E +* F"),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == cli.EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ("run", "--suite", "hopf", "--gamma", "0"),
    ("oracle", "--check", "shifts", "--N", "100"),
    ("eval", "symbol", "gauss(1,1) + 1"),
])
def test_domain_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_DOMAIN
    assert "domain error" in err


def test_eval_prints_value(capsys):
    code, out, _ = run(capsys, "eval", "symbol", "hk 0 0 gauss(1,1)")
    assert code == 0 and out.strip() == "622.679638643"


def test_json_to_stdout(capsys):
    code, out, err = run(capsys, "run", "--suite", "walgebra", "--seed", "3", "--json", "-")
    report = json.loads(out)
    assert code == 0 and report["passed"] and report["seed"] == 3
    assert "wall_time" not in report
    assert err.strip().startswith("PASS walgebra")


def test_json_to_file_with_timing(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "run", "--suite", "walgebra", "--timing", "--json", str(path))
    report = json.loads(path.read_text())
    assert code == 0 and report["wall_time"] >= 0


def test_config_then_flags(capsys, tmp_path):
    cfg = tmp_path / "ctx.cfg"
    cfg.write_text("# context\ngamma = 0.1\nalpha = 0.5\nseed = 4\n")
    args = cli.build_parser().parse_args(["run", "--config", str(cfg), "--alpha", "0.9"])
    values = cli.resolve_settings(args)
    assert values["gamma"] == 0.1 and values["alpha"] == 0.9 and values["seed"] == 4
    assert values["N"] == cli.DEFAULTS["N"]


@pytest.mark.parametrize("text", ["gamma = abc\n", "colour = red\n", "gamma 0.1\n"])
def test_bad_config(capsys, tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert run(capsys, "run", "--suite", "hopf", "--config", str(cfg))[0] == cli.EXIT_USAGE


@pytest.mark.parametrize("check", cli.FUNCTIONAL_CHECKS)
def test_functionals_subcommand(capsys, check):
    code, out, _ = run(capsys, "functionals", "--k=1,-1", "--balanced", "--check", check)
    assert code == 0, out


def test_oracle_subcommand(capsys):
    code, out, _ = run(capsys, "oracle", "--check", "shifts", "--N", "256", "--L", "8", "--json", "-")
    report = json.loads(out)
    assert code == 0 and report["grid"] == {"N": 256, "L": 8.0}

import json
import math

import pytest

from qplane import __version__
from qplane.suites import SUITES, Check, SuiteReport, run_suite, suite_rng


def test_hopf_suite_passes(ctx):
    report = run_suite("hopf", ctx, 1)
    assert report.passed and len(report.checks) >= 6
    assert report.grid is None


def test_unknown_suite(ctx):
    with pytest.raises(KeyError):
        run_suite("nope", ctx)


def test_report_schema(ctx):
    data = json.loads(run_suite("walgebra", ctx, 5).dumps())
    assert set(data) == {"suite", "version", "seed", "context", "grid", "passed", "checks"}
    assert data["version"] == __version__ and data["seed"] == 5
    assert data["context"]["gamma"] == ctx.gamma
    ids = [c["id"] for c in data["checks"]]
    assert ids == sorted(ids)
    for c in data["checks"]:
        assert set(c) == {"id", "anchor", "residual", "tol", "pass"}
        assert c["pass"] == (c["residual"] <= c["tol"])


def test_timing_is_opt_in(ctx):
    report = run_suite("walgebra", ctx)
    assert "wall_time" not in report.to_json()
    assert report.to_json(timing=True)["wall_time"] >= 0


@pytest.mark.parametrize("name", ["hopf", "oqplane", "bqaction"])
def test_small_suites_are_deterministic(ctx, name):
    assert run_suite(name, ctx, 9).dumps() == run_suite(name, ctx, 9).dumps()


def test_seed_changes_the_sample(ctx):
    a = json.loads(run_suite("hopf", ctx, 1).dumps())["checks"]
    b = json.loads(run_suite("hopf", ctx, 2).dumps())["checks"]
    assert [c["id"] for c in a] == [c["id"] for c in b]
    assert [c["residual"] for c in a] != [c["residual"] for c in b]


def test_suite_streams_are_independent():
    assert suite_rng(0, "hopf").random() != suite_rng(0, "symbols").random()
    assert suite_rng(3, "hopf").random() == suite_rng(3, "hopf").random()


def test_failures_and_strict_checks():
    ok = Check("a", "x", 0.5, math.nextafter(1.0, 0.0))
    bad = Check("b", "x", 1.0, math.nextafter(1.0, 0.0))
    report = SuiteReport("s", {}, 0, [bad, ok])
    assert not report.passed and report.failures() == [bad]
    assert [c["id"] for c in report.to_json()["checks"]] == ["a", "b"]


def test_suite_names():
    assert SUITES == ("hopf", "oqplane", "walgebra", "symbols", "bqaction", "functionals", "qplane4", "oracle")

"""The eight acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with the worst residual,
the tolerance and the runtime; the lines are repeated in the terminal summary.
"""

import time

from conftest import ACCEPTANCE_LINES
from qplane import oracle as Or
from qplane.params import make_context
from qplane.suites import TOL_BQ, run_suite

TOL = 1e-10
SEED = 0


def _ctx():
    return make_context(0.15, 0.7)


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def _record(n: int, label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n} ({label}): {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _judge(n, label, checks, tol, seconds, limit, expected=None):
    """Residuals strictly below ``tol`` (grid checks keep their looser own
    tolerance) and the runtime under ``limit``."""
    worst = max(c.residual for c in checks)
    bad = [c.id for c in checks if not (c.passed and c.residual < max(tol, c.tol))]
    count_ok = expected is None or len(checks) == expected
    ok = not bad and seconds < limit and count_ok
    detail = (f"{len(checks)} checks, worst residual {worst:.2e} < {tol:.0e}, "
              f"{seconds:.1f}s < {limit:.0f}s")
    if bad:
        detail += f"; failing: {', '.join(bad)}"
    if not count_ok:
        detail += f"; expected {expected} checks"
    _record(n, label, ok, detail)
    assert ok, detail


def test_criterion_1_hopf():
    report, t = _timed(lambda: run_suite("hopf", _ctx(), SEED))
    _judge(1, "Hopf suite", report.checks, TOL, t, 5)


def test_criterion_2_module_algebra():
    ctx = _ctx()
    checks, total = [], 0.0
    for name in ("oqplane", "walgebra", "bqaction"):
        report, t = _timed(lambda: run_suite(name, ctx, SEED))
        total += t
        checks += [c for c in report.checks if ".module_law." in c.id or ".star_law." in c.id]
    # per element: plane and W each give a Leibniz and a star law; symbols give three product kinds and a star law
    _judge(2, "module-algebra suite", checks, TOL, total, 30, expected=6 * (2 + 2 + 4))


def test_criterion_3_weyl_calculus():
    report, t = _timed(lambda: run_suite("symbols", _ctx(), SEED))
    shift_laws = [c for c in report.checks if c.id.startswith("symbols.shift_law.")]
    assert len(shift_laws) == 8
    _judge(3, "Weyl-calculus suite", report.checks, TOL, t, 120)


def test_criterion_4_covariance():
    report, t = _timed(lambda: run_suite("functionals", _ctx(), SEED))
    keep = ("functionals.covariance.", "functionals.translation.", "functionals.scalar_routes.", "functionals.positivity")
    checks = [c for c in report.checks if c.id.startswith(keep)]
    _judge(4, "covariance suite", checks, TOL, t, 30, expected=3 * 9 + 1)


def test_criterion_5_bq_relations():
    report, t = _timed(lambda: run_suite("bqaction", _ctx(), SEED))
    keep = ("bqaction.relation.", "bqaction.cross.", "bqaction.fourth_power.", "bqaction.phi_star.")
    checks = [c for c in report.checks if c.id.startswith(keep)]
    assert sum(c.id.startswith("bqaction.cross.") for c in checks) == 6
    assert sum(c.id.startswith("bqaction.fourth_power.") for c in checks) == 4
    _judge(5, "B_q suite", checks, TOL_BQ, t, 5)


def test_criterion_6_glued_plane():
    report, t = _timed(lambda: run_suite("qplane4", _ctx(), SEED))
    _judge(6, "quantum-plane suite", report.checks, TOL, t, 60)


def test_criterion_7_oracle_convergence():
    study, t = _timed(lambda: Or.convergence_study(_ctx()))
    assert list(study) == list(Or.CONVERGENCE_IDENTITIES) and len(study) == 10
    worse = [k for k, v in study.items() if not v["fine"] < v["coarse"]]
    ratio = max(v["fine"] / v["coarse"] for v in study.values())
    ok = not worse
    detail = f"10 identities, worst fine/coarse ratio {ratio:.2e} < 1, {t:.1f}s"
    if worse:
        detail += f"; not improved: {', '.join(worse)}"
    _record(7, "oracle convergence", ok, detail)
    assert ok, detail


def test_criterion_8_determinism():
    first, t1 = _timed(lambda: run_suite("all", _ctx(), SEED).dumps())
    second, t2 = _timed(lambda: run_suite("all", _ctx(), SEED).dumps())
    ok = first == second
    detail = f"two runs of all suites, {len(first)} bytes each, identical={ok}, {t1 + t2:.0f}s"
    _record(8, "determinism", ok, detail)
    assert ok

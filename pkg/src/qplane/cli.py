"""Command-line front end.

Subcommands::

    qplane run [--suite NAME]                  verification suites
    qplane eval ALGEBRA EXPR                   evaluate an expression
    qplane functionals --k 1,0 --check NAME    covariant functional checks
    qplane oracle --check NAME                 grid oracle checks

Exit codes: 0 all checks pass, 1 some check fails, 2 usage or parse error,
3 domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import functionals as Fn
from . import oracle as Or
from . import symbols as S
from . import uqgl2 as U
from .expr import ALGEBRAS, ExprError, eval_expr
from .params import DeformationContext, DomainError, make_context, read_config
from .suites import SUITES, Check, SuiteReport, run_suite, suite_rng

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
DEFAULTS = {"gamma": 0.15, "alpha": 0.7, "tol_exact": 1e-10, "tol_oracle": 1e-6, "precision": "double",
            "N": Or.DEFAULT_N, "L": Or.DEFAULT_L, "seed": 0}
_TYPES = {"gamma": float, "alpha": float, "tol_exact": float, "tol_oracle": float, "precision": str,
          "N": int, "L": float, "seed": int}
FUNCTIONAL_CHECKS = ("covariance", "scalar", "phi")
ORACLE_CHECKS = Or.CHECKS + ("convergence",)


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("context")
    g.add_argument("--config", type=Path, help="key = value file; flags override its entries")
    g.add_argument("--gamma", type=float)
    g.add_argument("--alpha", type=float)
    g.add_argument("--tol-exact", dest="tol_exact", type=float)
    g.add_argument("--tol-oracle", dest="tol_oracle", type=float)
    g.add_argument("--precision")
    g.add_argument("--N", dest="N", type=int, help="oracle grid size (power of two)")
    g.add_argument("--L", dest="L", type=float, help="oracle half-width")
    g.add_argument("--seed", type=int)
    g.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qplane", description="Quantum quarter plane and real quantum plane toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="run verification suites")
    run.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    run.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    ev = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    ev.add_argument("algebra", choices=ALGEBRAS)
    ev.add_argument("expr")
    ev.add_argument("--calculus", choices=("minus", "plus"), default="minus")
    fn = sub.add_parser("functionals", parents=[common], help="covariant functional checks")
    fn.add_argument("--k", default="0,0", help="index k1,k2")
    fn.add_argument("--check", choices=FUNCTIONAL_CHECKS, default="covariance")
    fn.add_argument("--balanced", action="store_true", help="use |alpha| = |beta| = sqrt(gamma)")
    orc = sub.add_parser("oracle", parents=[common], help="grid oracle checks")
    orc.add_argument("--check", choices=ORACLE_CHECKS, default="weyl")
    return parser


def resolve_settings(args: argparse.Namespace) -> dict:
    """Defaults, then the config file, then explicit flags."""
    values = dict(DEFAULTS)
    if args.config is not None:
        try:
            raw = read_config(args.config)
        except (OSError, ValueError) as e:
            raise UsageError(str(e)) from None
        for key, text in raw.items():
            try:
                values[key] = _TYPES[key](text)
            except ValueError:
                raise UsageError(f"{args.config}: bad value for {key}: {text!r}") from None
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    return values


def context_from(values: dict) -> DeformationContext:
    return make_context(values["gamma"], values["alpha"], tol_exact=values["tol_exact"],
                        tol_oracle=values["tol_oracle"], precision=values["precision"])


def _emit(report: SuiteReport, path: str | None, timing: bool = False) -> None:
    text = report.dumps(timing) + "\n"
    if path == "-":
        sys.stdout.write(text)
    elif path:
        Path(path).write_text(text, encoding="utf-8")
    out = sys.stderr if path == "-" else sys.stdout
    failed = report.failures()
    for c in failed:
        print(f"FAIL {c.id}: residual {c.residual:.3e} > tol {c.tol:.1e}", file=out)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} {report.suite}: {len(report.checks) - len(failed)}/{len(report.checks)} checks "
          f"in {report.wall_time:.1f}s", file=out)


def _functional_report(ctx: DeformationContext, k: tuple[int, int], check: str, seed: int) -> SuiteReport:
    rng = suite_rng(seed, f"functionals:{check}")
    idx = Fn.CovariantIndex(ctx, *k)
    tag = f"k{k[0]:+d}{k[1]:+d}"
    syms = [S.random_symbol(rng, 2, 1, width=(3, 6)) for _ in range(5)]
    tol = ctx.tol_exact
    checks: list[Check] = []
    if check == "covariance":
        for name, f in U.generators(ctx).items():
            r = max(Fn.covariance_residual(idx, f, a) for a in syms)
            checks.append(Check(f"covariance.{tag}.{name}", "h_k(f > a) = chi(f) h_k(a)", r, tol))
        tr = max(Fn.translation_residual(idx, a, s, t) for a in syms[:2] for s in Fn.TRANSLATIONS for t in Fn.TRANSLATIONS)
        checks.append(Check(f"translation.{tag}", "h_k under translations by (beta s, alpha t)", tr, tol))
    elif check == "scalar":
        routes, pos = 0.0, np.inf
        for a, b in zip(syms, syms[1:]):
            r = Fn.scalar_product_k(idx, a, b)
            d = max(abs(r - Fn.scalar_product_explicit(idx, a, b)), abs(r - Fn.scalar_product_transported(idx, a, b)))
            routes = max(routes, d / max(1.0, abs(r)))
        for a in syms:
            pos = min(pos, Fn.scalar_product_k(idx, a, a).real)
        checks.append(Check(f"scalar_routes.{tag}", "three routes to <a, b>_k agree", routes, tol))
        checks.append(Check(f"positivity.{tag}", "<a, a>_k > 0 (negated minimum)", -pos if pos <= 0 else 0.0, 0.0))
    else:
        a = syms[0]
        for g in Fn.GENERATORS:
            checks.append(Check(f"C_conjugation.{tag}.{g}", "C_k Phi(z) C_k^-1 = sign_k(z) Phi(z)",
                                Fn.C_conjugation_residual(idx, g, a), tol))
            r = max(S.l2_distance(Fn.Phi_apply(ctx, g, a), Fn.Phi_via_phi(ctx, g, a)),
                    S.l2_distance(Fn.Phi_apply(ctx, g, a), Fn.Phi_via_T(ctx, g, a))) / max(1.0, S.l2_norm(Fn.Phi_apply(ctx, g, a)))
            checks.append(Check(f"phi_routes.{g}", "closed form = rho0(phi(z)) = T-conjugated action", r, tol))
    return SuiteReport(f"functionals:{check}", ctx.echo(), seed, checks)


def _oracle_report(ctx: DeformationContext, check: str, values: dict) -> SuiteReport:
    N, L, seed = values["N"], values["L"], values["seed"]
    checks = []
    if check == "convergence":
        strict = math.nextafter(1.0, 0.0)
        for key, v in Or.convergence_study(ctx).items():
            ratio = v["fine"] / v["coarse"] if v["coarse"] > 0 else math.inf
            checks.append(Check(f"convergence.{key}", "fine-grid residual / coarse-grid residual < 1", ratio, strict))
        grid = {"coarse": {"N": 512, "L": 10.0}, "fine": {"N": 1024, "L": 14.0}}
    else:
        for key, val in Or.run_check(check, ctx, L, N, seed).items():
            checks.append(Check(f"{check}.{key}", "grid route against closed form", val, ctx.tol_oracle))
        grid = {"N": N, "L": L}
    return SuiteReport(f"oracle:{check}", ctx.echo(), seed, checks, grid)


def _parse_k(text: str) -> tuple[int, int]:
    try:
        k1, k2 = (int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--k expects two integers 'k1,k2', got {text!r}") from None
    return k1, k2


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_PASS

    try:
        values = resolve_settings(args)
        ctx = context_from(values)
        if args.command == "eval":
            print(eval_expr(args.algebra, args.expr, ctx, args.calculus))
            return EXIT_PASS
        start = time.perf_counter()
        timing = False
        if args.command == "run":
            if args.suite != "all" and args.suite not in SUITES:
                raise UsageError(f"unknown suite {args.suite!r}; expected one of {', '.join(SUITES)}, all")
            report = run_suite(args.suite, ctx, values["seed"], N=values["N"], L=values["L"])
            timing = args.timing
        elif args.command == "functionals":
            k = _parse_k(args.k)
            fctx = Or.convergence_context(ctx) if args.balanced else ctx
            report = _functional_report(fctx, k, args.check, values["seed"])
        else:
            report = _oracle_report(ctx, args.check, values)
        report.wall_time = time.perf_counter() - start
        _emit(report, args.json, timing)
        return EXIT_PASS if report.passed else EXIT_FAIL
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ExprError as e:
        print(e.render(), file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

import cmath
import json
import math

import numpy as np
import pytest

from qplane import oqplane as P
from qplane import qplane4 as Q4
from qplane import symbols as S
from qplane import uqgl2 as U
from qplane import walgebra as W
from qplane.expr import ALGEBRAS, ExprError, eval_expr, evaluate
from qplane.params import DomainError


def test_commutator_of_E_and_F(ctx):
    got = evaluate("uq", "E*F - F*E", ctx)
    want = (U.K1(ctx, 2) * U.K2(ctx, -2) - U.K1(ctx, -2) * U.K2(ctx, 2)).scale(1 / ctx.lam)
    assert got.is_close(want, 1e-12)


def test_uq_functions(ctx):
    assert evaluate("uq", "S(K)", ctx).is_close(U.antipode(U.K(ctx)), 1e-12)
    assert evaluate("uq", "eps(E + 2)", ctx) == pytest.approx(2)
    assert evaluate("uq", "K^-1", ctx).is_close(U.K(ctx, -1), 1e-12)


def test_weyl_product(ctx):
    got = evaluate("w", "W(1,0)*W(0,1)", ctx)
    assert got.is_close(W.W(ctx, 1, 1, cmath.exp(-1j * math.pi * ctx.gamma)), 1e-12)


def test_plane_reordering(ctx):
    assert evaluate("plane", "y*x", ctx).is_close(P.mono(ctx, 1, 1, 1 / ctx.q), 1e-12)
    assert evaluate("plane", "x^-1 * x", ctx).is_close(P.mono(ctx, 0, 0), 1e-12)


def test_plane_action_matches_module(ctx):
    got = evaluate("plane", "act(E, x*y)", ctx)
    assert got.is_close(P.act(U.E(ctx), P.mono(ctx, 1, 1)), 1e-12)


def test_functional_of_gaussian(ctx):
    got = evaluate("symbol", "hk 0 0 gauss(1,1)", ctx)
    want = math.pi * math.exp(math.pi**2 * (ctx.alpha**2 + ctx.beta**2))
    assert got == pytest.approx(want, rel=1e-12)
    assert eval_expr("symbol", "hk 0 0 gauss(1,1)", ctx) == "622.679638643"


def test_symbol_output_is_json(ctx):
    out = json.loads(eval_expr("symbol", "poly(1,0)*gauss(1,2)", ctx))
    assert out


def test_tuple4_product(ctx):
    a = S.gaussian(1, 1, 0, 0)
    got = evaluate("tuple4", "tuple4(gauss(1,1), 0, 0, 0) @ tuple4(gauss(1,1), 0, 0, 0)", ctx)
    want = Q4.circle_product(Q4.Tuple4.first(a), Q4.Tuple4.first(a), ctx)
    assert got.relative_distance(want) < 1e-12


@pytest.mark.parametrize("text, col", [("E +* F", 3), ("E + (F", None), ("foo(E)", 0)])
def test_parse_errors_are_positioned(ctx, text, col):
    with pytest.raises(ExprError) as info:
        evaluate("uq", text, ctx)
    rendered = info.value.render()
    assert text in rendered and "^" in rendered
    if col is not None:
        assert info.value.col == col


def test_domain_errors(ctx):
    with pytest.raises(DomainError):
        evaluate("symbol", "gauss(1,1) + 1", ctx)
    with pytest.raises(DomainError):
        evaluate("uq", "E^-1", ctx)


def test_unknown_algebra(ctx):
    assert "uq" in ALGEBRAS
    with pytest.raises(ExprError):
        evaluate("nope", "1", ctx)

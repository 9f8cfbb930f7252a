import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplane import qplane4 as Q4
from qplane import symbols as S
from qplane.bqaction import partials_symbol_rho

TOL = 1e-10
seeds = st.integers(0, 2**32 - 1)
GENS = ("x", "y", "E", "F", "K1", "K2", "K")


def triple(seed):
    rng = np.random.default_rng(seed)
    return Q4.random_tuple(rng), Q4.random_tuple(rng), Q4.random_tuple(rng)


@given(seeds)
def test_J_is_an_involution(seed):
    a, _, _ = triple(seed)
    assert Q4.apply_J(Q4.apply_J(a)).relative_distance(a) < TOL


def test_J_of_constant_tuple():
    a = S.random_symbol(np.random.default_rng(0))
    out = Q4.apply_J(Q4.Tuple4(a, a, a, a))
    assert out.relative_distance(Q4.Tuple4.first(a.scale(2))) < TOL


def test_tuple_requires_four_parts():
    with pytest.raises(ValueError):
        Q4.Tuple4.of([S.Symbol()] * 3)


@settings(max_examples=6)
@given(seeds)
def test_circle_product_is_associative(ctx, seed):
    a, b, c = triple(seed)
    P = lambda u, v: Q4.circle_product(u, v, ctx)
    assert P(P(a, b), c).relative_distance(P(a, P(b, c))) < TOL


@settings(max_examples=6)
@given(seeds)
def test_circle_product_matches_J_route(ctx, seed):
    a, b, _ = triple(seed)
    assert Q4.circle_product(a, b, ctx).relative_distance(Q4.circle_product_via_J(a, b, ctx)) < TOL


def test_printed_product_is_not_associative(ctx):
    a, b, c = triple(3)
    P = lambda u, v: Q4.circle_product_printed(u, v, ctx)
    assert P(P(a, b), c).relative_distance(P(a, P(b, c))) > 0.1


@settings(max_examples=6)
@given(seeds)
def test_star_is_an_antihomomorphic_involution(ctx, seed):
    a, b, _ = triple(seed)
    st4 = lambda u: Q4.star4(u, ctx)
    assert st4(st4(a)).relative_distance(a) < TOL
    lhs = st4(Q4.circle_product(a, b, ctx))
    assert lhs.relative_distance(Q4.circle_product(st4(b), st4(a), ctx)) < TOL


@settings(max_examples=6)
@given(seeds)
def test_inner_product_routes(ctx, seed):
    a, b, _ = triple(seed)
    ref = Q4.inner4_l2(a, b)
    assert abs(Q4.inner4(a, b, ctx) - ref) <= TOL * max(1, abs(ref))
    assert Q4.inner4_l2(a, a).real > 0


def test_functional_ignores_other_components(ctx):
    a = S.random_symbol(np.random.default_rng(1))
    assert Q4.h4(Q4.Tuple4(S.Symbol(), a, a, a), ctx) == 0


def test_K1_is_diagonal(ctx):
    a, _, _ = triple(2)
    out = Q4.block_apply(ctx, "K1", a)
    for src, dst in zip(a.parts, out.parts):
        assert S.l2_distance(dst, S.shift(src, -0.5j * ctx.beta, 0)) < TOL * max(1, S.l2_norm(dst))


def test_E_moves_last_component_to_first(ctx):
    a = S.random_symbol(np.random.default_rng(4))
    out = Q4.block_apply(ctx, "E", Q4.Tuple4(S.Symbol(), S.Symbol(), S.Symbol(), a))
    assert not out.a1.is_zero()
    assert out.a2.is_zero() and out.a3.is_zero() and out.a4.is_zero()


def test_unknown_block_operator(ctx):
    with pytest.raises(ValueError):
        Q4.block_operator(ctx, "G")


def test_block_relations(any_ctx):
    a, _, _ = triple(5)
    res = Q4.block_relation_residuals(any_ctx, a)
    assert set(res) == {"K1E", "K2E", "K1F", "K2F", "K1K2", "EF", "xy"}
    assert max(res.values()) < TOL


@pytest.mark.parametrize("gen", GENS)
def test_J_conjugation_gives_block_operators(ctx, gen):
    a, _, _ = triple(6)
    assert Q4.J_conjugated(ctx, gen, a).relative_distance(Q4.block_apply(ctx, gen, a)) < TOL


@pytest.mark.parametrize("op", ("E", "F", "K", "x", "y", "Dqx", "Dqy"))
def test_block_operators_are_symmetric(ctx, op):
    a, b, _ = triple(7)
    lhs = Q4.inner4_l2(Q4.block_apply(ctx, op, a), b)
    rhs = Q4.inner4_l2(a, Q4.block_apply(ctx, op, b))
    assert abs(lhs - rhs) <= TOL * max(1, abs(lhs))


def test_q_derivatives_compose(ctx):
    a, _, _ = triple(8)
    assert Q4.Dqx_composed(ctx).apply(a).relative_distance(Q4.block_apply(ctx, "Dqx", a)) < TOL
    assert Q4.Dqy_composed(ctx).apply(a).relative_distance(Q4.block_apply(ctx, "Dqy", a)) < TOL


def test_block_partials_move_components(ctx):
    a = Q4.Tuple4.first(S.random_symbol(np.random.default_rng(9)))
    bx, by = Q4.block_partials(a, ctx)
    px, py = partials_symbol_rho(a.a1, ctx)
    assert S.l2_distance(bx.a2, px) < TOL * max(1, S.l2_norm(px))
    assert S.l2_distance(by.a3, py) < TOL * max(1, S.l2_norm(py))
    assert bx.a1.is_zero() and by.a1.is_zero()

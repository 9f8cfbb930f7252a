import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplane import functionals as Fn
from qplane import oracle as Or
from qplane import symbols as S
from qplane import uqgl2 as U
from qplane.bqaction import act_symbol
from qplane.params import qpow

TOL = 1e-10
seeds = st.integers(0, 2**32 - 1)
pi = math.pi
KS = [(k1, k2) for k1 in (-1, 0, 1) for k2 in (-1, 0, 1)]


def rel(a, b):
    return S.l2_distance(a, b) / max(1.0, S.l2_norm(a))


@pytest.fixture(scope="module")
def bal():
    from qplane.params import make_context
    return Or.convergence_context(make_context(0.15, 0.7))


def wide(rng):
    return S.random_symbol(rng, 2, 1, width=(3, 6))


@pytest.mark.parametrize("eps", [1.0, 0.5, 2.0])
def test_h0_of_approximate_identity(ctx, eps):
    k = Fn.CovariantIndex(ctx)
    expected = math.exp(pi * (ctx.alpha**2 + ctx.beta**2) / eps) / eps
    assert Fn.h_k(k, S.approx_identity(eps)) == pytest.approx(expected, rel=1e-12)


def test_h0_matches_grid_quadrature(ctx):
    a = S.approx_identity(1.0)
    assert Or.h0_quadrature_residual(ctx, a, 10.0, 512) < 1e-9


def test_hk_of_zero_and_of_E_action(bal):
    a = wide(np.random.default_rng(4))
    for k in KS:
        idx = Fn.CovariantIndex(bal, *k)
        assert Fn.h_k(idx, S.Symbol()) == 0
        for f in (U.E(bal), U.F(bal)):
            scale = sum(abs(Fn.h_k(idx, S.Symbol.from_terms([t]))) for t in act_symbol(f, a).terms)
            assert abs(Fn.h_k(idx, act_symbol(f, a))) <= TOL * max(1.0, scale)


def test_shifted_parameters(ctx):
    k = Fn.CovariantIndex(ctx, 1, -1)
    assert k.alpha_k == pytest.approx(ctx.alpha + 2 / ctx.beta)
    assert k.beta_k == pytest.approx(ctx.beta - 2 / ctx.alpha)


@pytest.mark.parametrize("k", KS, ids=[f"k{a:+d}{b:+d}" for a, b in KS])
@settings(max_examples=5)
@given(seed=seeds)
def test_covariance_and_translation(bal, k, seed):
    rng = np.random.default_rng(seed)
    idx = Fn.CovariantIndex(bal, *k)
    a = wide(rng)
    for f in U.generators(bal).values():
        assert Fn.covariance_residual(idx, f, a) < TOL
    report = Fn.covariance_check(idx, U.K1(bal), a)
    assert report.passed


def test_covariance_for_trivial_elements(ctx):
    k = Fn.CovariantIndex(ctx)
    a = S.random_symbol(np.random.default_rng(0))
    assert Fn.covariance_residual(k, U.one(ctx), a) < TOL
    assert Fn.covariance_residual(k, U.K1(ctx), a) < TOL
    assert Fn.translation_residual(k, S.approx_identity(1.0), 0.5, 0.5) < TOL


@pytest.mark.parametrize("k", KS, ids=[f"k{a:+d}{b:+d}" for a, b in KS])
def test_scalar_product_routes_and_hermiticity(bal, k):
    rng = np.random.default_rng(hash(k) % 2**32)
    idx = Fn.CovariantIndex(bal, *k)
    a, b = wide(rng), wide(rng)
    r = Fn.scalar_product_k(idx, a, b)
    assert abs(r - Fn.scalar_product_explicit(idx, a, b)) <= TOL * max(1, abs(r))
    assert abs(r - Fn.scalar_product_transported(idx, a, b)) <= TOL * max(1, abs(r))
    assert abs(r - Fn.scalar_product_k(idx, b, a).conjugate()) <= TOL * max(1, abs(r))
    assert Fn.is_positive(idx, a)


def test_norm_of_f1_via_T(ctx):
    k = Fn.CovariantIndex(ctx)
    a = S.approx_identity(1.0)
    v = Fn.scalar_product_k(k, a, a)
    assert v.real > 0 and abs(v.imag) < TOL * abs(v)
    assert v.real == pytest.approx(S.l2_norm(Fn.apply_Tk(k, a)) ** 2, rel=1e-12)


def test_T_operator_factorisation(bal):
    a = wide(np.random.default_rng(9))
    k0 = Fn.CovariantIndex(bal)
    assert rel(Fn.T_operator(k0).apply(a), Fn.apply_Tk(k0, a)) == 0
    for k in ((1, -1), (1, 1), (0, -1)):
        idx = Fn.CovariantIndex(bal, *k)
        assert rel(Fn.apply_Tk(idx, a), Fn.apply_Tk_factored(idx, a)) < TOL
    idx = Fn.CovariantIndex(bal, 1, -1)
    b = wide(np.random.default_rng(10))
    assert rel(Fn.apply_Tk(idx, a + b), Fn.apply_Tk(idx, a) + Fn.apply_Tk(idx, b)) < TOL
    assert rel(Fn.apply_Tk_inverse(idx, Fn.apply_Tk(idx, a)), a) < TOL


@given(seeds)
def test_adjoint_and_coproduct_chain(ctx, seed):
    rng = np.random.default_rng(seed)
    a, b = S.random_symbol(rng), S.random_symbol(rng)
    k = Fn.CovariantIndex(ctx)
    for f in U.generators(ctx).values():
        assert Fn.adjoint_residual(k, f, a, b) < TOL
        assert Fn.coproduct_chain_residual(k, f, a, b) < TOL


def test_phi_examples(ctx):
    a = S.random_symbol(np.random.default_rng(1))
    k1 = Fn.Phi_apply(ctx, "K1", a).scale(qpow(ctx, -0.25))
    assert rel(k1, S.shift(a, -0.5j * ctx.beta, 0)) < TOL
    for k in KS:
        idx = Fn.CovariantIndex(ctx, *k)
        for g in ("x", "y"):
            assert rel(Fn.Psi_k_apply(idx, g, a), Fn.Phi_apply(ctx, g, a)) < TOL
    with pytest.raises(ValueError):
        Fn.Phi_operator(ctx, "G")


@pytest.mark.parametrize("gen", Fn.GENERATORS)
def test_phi_three_routes(ctx, gen):
    a = S.random_symbol(np.random.default_rng(5))
    ref = Fn.Phi_apply(ctx, gen, a)
    assert rel(ref, Fn.Phi_via_phi(ctx, gen, a)) < TOL
    assert rel(ref, Fn.Phi_via_T(ctx, gen, a)) < TOL


@pytest.mark.parametrize("k", [(1, 0), (0, 1), (1, 1), (-1, 1)])
@pytest.mark.parametrize("gen", Fn.GENERATORS)
def test_C_conjugation_signs(bal, k, gen):
    idx = Fn.CovariantIndex(bal, *k)
    a = wide(np.random.default_rng(6))
    assert Fn.C_conjugation_residual(idx, gen, a) < TOL
    assert rel(Fn.Psi_k_conjugated(idx, gen, a), Fn.Psi_k_apply(idx, gen, a)) < TOL


@pytest.mark.parametrize("g1, g2", [("K1", "Eprime"), ("K2", "Fprime"), ("Eprime", "Fprime"), ("x", "y"), ("K", "Eprime")])
def test_phi_relations(ctx, g1, g2):
    a = S.random_symbol(np.random.default_rng(7))
    assert Fn.phi_relation_residual(ctx, g1, g2, a) < TOL


def test_L_and_R_agree_on_symbols(ctx):
    a = S.random_symbol(np.random.default_rng(8))
    for j in (1, 2):
        assert rel(Fn.L_operator(ctx, j).apply(a), Fn.R_operator(ctx, j).apply(a)) < TOL


@given(seeds)
def test_transported_functional(ctx, seed):
    rng = np.random.default_rng(seed)
    a, b = S.random_symbol(rng), S.random_symbol(rng)
    ht = Fn.h_tilde(a, ctx)
    assert abs(ht - Fn.h_tilde_via_T(a, ctx)) <= TOL * max(1, abs(ht))
    ref = S.l2_inner(a, b)
    assert abs(Fn.transported_inner(a, b, ctx) - ref) <= TOL * max(1, abs(ref))
    assert Fn.h_tilde(S.Symbol(), ctx) == 0

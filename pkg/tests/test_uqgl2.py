import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qplane import uqgl2 as U
from qplane.params import qpow

seeds = st.integers(0, 2**32 - 1)
TOL = 1e-10


def close(f, g, tol=TOL):
    return f.distance(g) <= tol


def test_commutation_K1_E(ctx):
    E, K1 = U.E(ctx), U.K1(ctx)
    assert close(K1 * E, (E * K1).scale(qpow(ctx, 0.5)))


def test_EF_relation(ctx):
    E, F, K1, K2 = U.E(ctx), U.F(ctx), U.K1(ctx), U.K2(ctx)
    rhs = (K1**2 * U.K2(ctx, -2) - U.K1(ctx, -2) * K2**2).scale(1 / ctx.lam)
    assert close(E * F - F * E, rhs)


def test_normal_form_is_ordered_and_pruned(ctx):
    f = U.F(ctx) * U.K2(ctx) * U.E(ctx) * U.K1(ctx, -1)
    assert all(c != 0 for c in f.terms.values())
    assert (U.E(ctx) - U.E(ctx)).terms == {}
    # F K2 E K1^-1 reorders into E-first monomials plus K-only terms
    assert set(f.terms) <= {(1, -1, 1, 1), (0, 1, -1, 0), (0, -3, 3, 0)}


@given(seeds)
def test_unit_is_neutral(ctx, seed):
    f = U.random_element(ctx, np.random.default_rng(seed))
    assert close(U.one(ctx) * f, f) and close(f * U.one(ctx), f)


def test_coproduct_of_E(ctx):
    E, K = U.E(ctx), U.K(ctx)
    expected = U.tensor(E, K) + U.tensor(U.K(ctx, -1), E)
    assert (U.coproduct(E) - expected).max_abs() < TOL


def test_L_is_grouplike(ctx):
    L = U.K1(ctx) * U.K2(ctx)
    assert (U.coproduct(L) - U.tensor(L, L)).max_abs() < TOL


@given(seeds)
def test_coproduct_multiplicative(ctx, seed):
    rng = np.random.default_rng(seed)
    f, g = U.random_element(ctx, rng, 2), U.random_element(ctx, rng, 2)
    assert (U.coproduct(f * g) - U.coproduct(f) * U.coproduct(g)).max_abs() < TOL


@given(seeds)
def test_coassociativity(ctx, seed):
    d = U.coproduct(U.random_element(ctx, np.random.default_rng(seed)))
    assert (d.map_leg(0, U.coproduct) - d.map_leg(1, U.coproduct)).max_abs() < TOL


def test_antipode_examples(ctx):
    assert close(U.antipode(U.K1(ctx)), U.K1(ctx, -1))
    E, F = U.E(ctx), U.F(ctx)
    assert close(U.antipode(E * F), U.antipode(F) * U.antipode(E))
    assert U.counit(U.one(ctx)) == 1


@pytest.mark.parametrize("name", ["E", "F", "K1", "K2"])
def test_antipode_axiom_on_generators(ctx, name):
    f = U.generators(ctx)[name]
    d = U.coproduct(f)
    unit = U.one(ctx).scale(U.counit(f))
    assert close(d.map_leg(0, U.antipode).multiply_legs(), unit)
    assert close(d.map_leg(1, U.antipode).multiply_legs(), unit)


def test_involution_examples(ctx):
    E = U.E(ctx)
    assert close(U.star(E), E.scale(-ctx.q))
    assert close(U.star(E, "dagger"), E.scale(-1 / ctx.q))
    Ep = U.E_prime(ctx)
    assert close(U.star(Ep), Ep)


def test_adjoint_flavor_makes_primed_generators_hermitean(ctx):
    for f in (U.E_prime(ctx), U.F_prime(ctx), U.K1(ctx).scale(qpow(ctx, -0.25)), U.K2(ctx).scale(qpow(ctx, -0.25))):
        assert close(U.star(f, "adjoint"), f)


@pytest.mark.parametrize("flavor", ["star", "dagger", "adjoint"])
@given(seed=seeds)
def test_involutions_are_antimultiplicative(ctx, flavor, seed):
    rng = np.random.default_rng(seed)
    f, g = U.random_element(ctx, rng, 2), U.random_element(ctx, rng, 2)
    assert close(U.star(f * g, flavor), U.star(g, flavor) * U.star(f, flavor))
    assert close(U.star(U.star(f, flavor), flavor), f)


@given(seeds)
def test_hopf_star_compatibility(ctx, seed):
    f = U.random_element(ctx, np.random.default_rng(seed))
    assert (U.coproduct(U.star(f)) - U.coproduct(f).star_legs()).max_abs() < TOL
    assert close(U.star(U.antipode(U.star(U.antipode(f)))), f)


def test_character_examples(ctx):
    assert U.character_chi(U.K1(ctx) * U.K2(ctx)) == pytest.approx(ctx.q)
    assert U.character_chi(U.E(ctx) * U.K1(ctx)) == 0


@given(seeds)
def test_character_properties(ctx, seed):
    rng = np.random.default_rng(seed)
    f, g = U.random_element(ctx, rng), U.random_element(ctx, rng)
    chi = U.character_chi
    assert abs(chi(f * g) - chi(f) * chi(g)) < TOL * max(1, abs(chi(f) * chi(g)))
    assert abs(chi(f).conjugate() - chi(U.star(U.antipode(f)))) < TOL * max(1, abs(chi(f)))


def test_pbw_monomials_count():
    keys = list(U.pbw_monomials(1))
    assert (0, 0, 0, 0) in keys and (1, 0, 0, 0) in keys and (0, -1, 0, 0) in keys
    assert len(set(keys)) == len(keys)


def test_repr_shows_normal_form(ctx):
    assert repr(U.E(ctx) * U.K1(ctx, -2) * U.F(ctx)) == "1*E*K1^-2*F"
    assert repr(U.E(ctx) - U.E(ctx)) == "0"

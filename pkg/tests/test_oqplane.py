import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qplane import oqplane as O
from qplane import uqgl2 as U
from qplane.params import DomainError, qpow
from qplane.suites import module_generators, module_residual, plane_monomials, star_residual

TOL = 1e-10
seeds = st.integers(0, 2**32 - 1)


def close(a, b, tol=TOL):
    return a.distance(b) <= tol


def test_reordering_examples(ctx):
    x, y = O.x(ctx), O.y(ctx)
    assert close(y * x, (x * y).scale(1 / ctx.q))
    assert close(O.y(ctx, 2) * O.x(ctx, 3), O.mono(ctx, 3, 2, qpow(ctx, -6)))
    z = O.random_polynomial(ctx, np.random.default_rng(1))
    assert close(z * O.mono(ctx, 0, 0), z)


def test_involution_examples(ctx):
    x, y = O.x(ctx), O.y(ctx)
    assert close(O.involution(x * y), (x * y).scale(1 / ctx.q))
    assert close(O.involution(x.scale(2 + 3j)), x.scale(2 - 3j))


@given(seeds)
def test_involution_is_antimultiplicative_and_involutive(ctx, seed):
    rng = np.random.default_rng(seed)
    z, w = O.random_polynomial(ctx, rng), O.random_polynomial(ctx, rng)
    assert close(O.involution(O.involution(z)), z)
    assert close(O.involution(z * w), O.involution(w) * O.involution(z))


def test_action_examples(ctx):
    x, y = O.x(ctx), O.y(ctx)
    assert close(O.act(U.E(ctx), x), y)
    expected = (x * y).scale(qpow(ctx, 0.5) * (1 + qpow(ctx, -2)))
    assert close(O.act(U.F(ctx), y * y), expected)
    assert O.act(U.E(ctx), O.mono(ctx, 0, 0)).terms == {}


def test_action_rejects_localized_elements(ctx):
    with pytest.raises(DomainError):
        O.act(U.E(ctx), O.x(ctx, -1))


@pytest.mark.parametrize("name", ["E", "F", "K1", "K2", "EF", "K1F"])
def test_module_algebra_on_monomials(ctx, name):
    f = module_generators(ctx)[name]
    monos = plane_monomials(ctx, 3)
    dist = lambda a, b: a.distance(b)
    assert max(module_residual(O.act, f, z, w, dist) for z in monos for w in monos) < TOL
    assert max(star_residual(O.act, O.involution, f, z, dist) for z in monos) < TOL


def test_q_derivative_examples(ctx):
    x, y = O.x(ctx), O.y(ctx)
    assert close(O.qderiv_x(x), O.mono(ctx, 0, 0, qpow(ctx, 0.5) * ctx.lam))
    assert O.qderiv_x(O.y(ctx, 3)).terms == {}
    # the closed form gives q^{-1/2} lam x; the same value comes from K > (x^-1 (F' > xy))
    expected = x.scale(qpow(ctx, -0.5) * ctx.lam)
    assert close(O.qderiv_y(x * y), expected)
    via_action = O.act(U.K(ctx), O.monomial_inverse(x) * O.act(U.F_prime(ctx), x * y))
    assert close(via_action, expected)


@given(seeds)
def test_q_derivatives_match_action_route(ctx, seed):
    z = O.random_polynomial(ctx, np.random.default_rng(seed), 4)
    x, y = O.x(ctx), O.y(ctx)
    assert close(O.qderiv_x(z), O.act(U.K(ctx), O.monomial_inverse(y) * O.act(U.E_prime(ctx), z)))
    assert close(O.qderiv_y(z), O.act(U.K(ctx), O.monomial_inverse(x) * O.act(U.F_prime(ctx), z)))


def test_differential_of_coordinates(ctx):
    d = O.differential(O.x(ctx), "minus")
    assert close(d.cx, O.mono(ctx, 0, 0)) and d.cy.max_abs() < TOL
    q2 = qpow(ctx, 2)
    dy_free = O.commutator_form(O.y(ctx), O.omega(ctx, "minus"))
    assert (dy_free.t1 - O.mono(ctx, 2, -1, q2 - 1)).max_abs() < TOL
    assert dy_free.t2.max_abs() < TOL


def test_bimodule_rule_from_commutators(ctx):
    x, y = O.x(ctx), O.y(ctx)
    dx, dy = O.basis_forms(ctx, "minus")
    q = ctx.q
    lhs = dx.lmul(y)
    rhs = dx.rmul(y.scale(1 / q)) + dy.rmul(x.scale(q**-2 - 1))
    assert (lhs - rhs).max_abs() < TOL


@pytest.mark.parametrize("calc", ["minus", "plus"])
@given(seed=seeds)
def test_partials_routes_and_leibniz(ctx, calc, seed):
    rng = np.random.default_rng(seed)
    z, w = O.random_polynomial(ctx, rng), O.random_polynomial(ctx, rng)
    d = O.differential(z, calc)
    cx, cy = O.partials_closed(z, calc)
    assert close(d.cx, cx) and close(d.cy, cy)
    lhs = O.differential(z * w, calc).to_free()
    rhs = O.differential(w, calc).to_free().lmul(z) + O.differential(z, calc).to_free().rmul(w)
    assert (lhs - rhs).max_abs() < TOL


@given(seeds)
def test_partials_through_the_action(ctx, seed):
    z = O.random_polynomial(ctx, np.random.default_rng(seed))
    kk = U.K1(ctx, 3) * U.K2(ctx)
    dx, dy = O.partials_closed(z, "minus")
    assert close(dx, O.monomial_inverse(O.y(ctx)) * O.act(U.E(ctx) * kk, z).scale(qpow(ctx, 1.5)))
    assert close(dy, O.monomial_inverse(O.x(ctx)) * O.act(U.F(ctx) * kk, z).scale(qpow(ctx, 0.5)))


def test_qint_limits(ctx):
    assert O.qint(ctx, 0) == 0
    assert O.qint(ctx, 1) == pytest.approx(1)

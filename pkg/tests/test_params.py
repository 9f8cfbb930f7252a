import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qplane.params import DomainError, make_context, qpow, read_config

gammas = st.floats(0.01, 0.32) | st.floats(-0.32, -0.01)
alphas = st.floats(0.1, 5.0) | st.floats(-5.0, -0.1)


def test_beta_and_q_from_gamma_alpha():
    ctx = make_context(0.15, 0.5)
    assert ctx.beta == pytest.approx(0.3)
    assert ctx.q == pytest.approx(cmath.exp(0.3j * math.pi))


def test_quarter_gamma_gives_q_equal_i():
    assert make_context(0.25, 1.0).q == pytest.approx(1j)


@pytest.mark.parametrize("gamma, alpha", [(0.0, 1.0), (0.5, 1.0), (0.34, 1.0), (0.1, 0.0), (float("nan"), 1.0)])
def test_degenerate_parameters_rejected(gamma, alpha):
    with pytest.raises(DomainError):
        make_context(gamma, alpha)


def test_unknown_precision_rejected():
    with pytest.raises(DomainError):
        make_context(0.1, 1.0, precision="quad")


@pytest.mark.parametrize("gamma, r, expected", [
    (0.25, 2, -1),
    (0.13, 0, 1),
    (0.15, 0.5, cmath.exp(0.15j * math.pi)),
])
def test_qpow_examples(gamma, r, expected):
    assert qpow(make_context(gamma, 1.0), r) == pytest.approx(expected)


@given(gammas, alphas)
def test_context_invariants(gamma, alpha):
    ctx = make_context(gamma, alpha)
    assert ctx.alpha * ctx.beta == pytest.approx(gamma, rel=1e-14)
    assert abs(ctx.q) == pytest.approx(1.0, abs=1e-15)
    assert abs(ctx.lam.real) < 1e-15
    assert abs(ctx.lam) == pytest.approx(2 * abs(math.sin(2 * math.pi * gamma)), rel=1e-12)


@given(gammas, st.floats(-4, 4), st.floats(-4, 4))
def test_qpow_is_additive_branch(gamma, r, s):
    ctx = make_context(gamma, 1.0)
    assert abs(qpow(ctx, r) * qpow(ctx, s) - qpow(ctx, r + s)) < 1e-12


def test_with_tolerances_and_echo(ctx):
    c2 = ctx.with_tolerances(tol_exact=1e-8)
    assert c2.tol_exact == 1e-8 and c2.tol_oracle == ctx.tol_oracle
    echo = c2.echo()
    assert set(echo) == {"gamma", "alpha", "beta", "tol_exact", "tol_oracle", "precision"}


def test_read_config(tmp_path):
    p = tmp_path / "ctx.cfg"
    p.write_text("# deformation\ngamma = 0.2\ntol-exact = 1e-9  # tighter\n\n")
    assert read_config(p) == {"gamma": "0.2", "tol_exact": "1e-9"}
    p.write_text("colour = red\n")
    with pytest.raises(ValueError, match="unknown key"):
        read_config(p)
    p.write_text("gamma 0.2\n")
    with pytest.raises(ValueError, match="expected"):
        read_config(p)

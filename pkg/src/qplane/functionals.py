"""Covariant functionals on symbols, their scalar products, and the unitary
pictures of the symbol action.

For ``k = (k1, k2)`` the functional

    h_k(a) = int e^{2 pi (alpha_k x1 + beta_k x2)} a(x) dx,
    alpha_k = alpha + 2 k1 / beta,  beta_k = beta + 2 k2 / alpha,

is covariant for the action of U_q(gl_2) on symbols.  The form
``<a, b>_k = h_k(b^* # a)`` is positive definite, and

    T_k = e^{pi alpha_k Q1} e^{-pi beta_k P1 / 2} (x) e^{pi beta_k Q2} e^{pi alpha_k P2 / 2}

carries it to the plain L2 product.  Conjugating the action by ``T_k`` gives
``Psi_k``; for ``k = 0`` this is ``Phi = rho0 o phi``.

Operator conventions: ``e^{t P_j}`` shifts ``x_j`` by ``-t i / (2 pi)`` and
``e^{t Q_j}`` multiplies by ``e^{t x_j}``.  So the half-integer exponents in
``T_k`` become exact shifts by ``beta_k i / 4`` and ``-alpha_k i / 4``.  For
example, ``T a (x) = e^{pi(alpha x1 + beta x2)} a(x1 + beta i/4, x2 - alpha i/4)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from . import symbols as S
from .bqaction import SymbolOperator, act_symbol, phi, psi, rho0
from .oqplane import x as plane_x, y as plane_y
from .params import DeformationContext, qpow
from .symbols import Symbol
from .uqgl2 import E_prime, F_prime, K, K1, K2, UqElement, character_chi, coproduct
from .uqgl2 import star as uq_star

Generator = Literal["Eprime", "Fprime", "K1", "K2", "K", "x", "y"]
GENERATORS: tuple[str, ...] = ("Eprime", "Fprime", "K1", "K2", "K", "x", "y")


@dataclass(frozen=True)
class CovariantIndex:
    """The index ``k`` together with the shifted parameters ``alpha_k``, ``beta_k``."""

    ctx: DeformationContext
    k1: int = 0
    k2: int = 0
    alpha_k: float = field(init=False)
    beta_k: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha_k", self.ctx.alpha + 2 * self.k1 / self.ctx.beta)
        object.__setattr__(self, "beta_k", self.ctx.beta + 2 * self.k2 / self.ctx.alpha)


# -- functionals and scalar products ------------------------------------------------

def h_k(k: CovariantIndex, a: Symbol) -> complex:
    return S.weighted_integral(a, 2 * math.pi * k.alpha_k, 2 * math.pi * k.beta_k)


def scalar_product_k(k: CovariantIndex, a: Symbol, b: Symbol) -> complex:
    """``<a, b>_k = h_k(b^* # a)``, linear in ``a``."""
    return h_k(k, S.twisted_product(S.star(b), a))


def scalar_product_explicit(k: CovariantIndex, a: Symbol, b: Symbol) -> complex:
    """``int e^{2 pi (alpha_k x1 + beta_k x2)} a(x1 + i beta_k/4, x2 - i alpha_k/4) b-bar(x1 - i beta_k/4, x2 + i alpha_k/4)``."""
    s1, s2 = 0.25j * k.beta_k, -0.25j * k.alpha_k
    integrand = S.pointwise(S.shift(a, s1, s2), S.shift(S.conj(b), -s1, -s2))
    return S.weighted_integral(integrand, 2 * math.pi * k.alpha_k, 2 * math.pi * k.beta_k)


def scalar_product_transported(k: CovariantIndex, a: Symbol, b: Symbol) -> complex:
    """``(T_k a, T_k b)`` in L2."""
    return S.l2_inner(apply_Tk(k, a), apply_Tk(k, b))


def is_positive(k: CovariantIndex, a: Symbol, tol: float | None = None) -> bool:
    """``<a, a>_k`` is real and positive (up to rounding relative to its size)."""
    tol = k.ctx.tol_exact if tol is None else tol
    v = scalar_product_k(k, a, a)
    return v.real > 0 and abs(v.imag) <= tol * max(1.0, abs(v))


# -- the operators T_k, T, C_k ------------------------------------------------------

def T_operator(k: CovariantIndex) -> SymbolOperator:
    al, be = k.alpha_k, k.beta_k
    return (
        SymbolOperator.multiply_exp(math.pi * al, 0)
        @ SymbolOperator.shift(0.25j * be, 0)
        @ SymbolOperator.multiply_exp(0, math.pi * be)
        @ SymbolOperator.shift(0, -0.25j * al)
    )


def C_operator(k: CovariantIndex) -> SymbolOperator:
    """``e^{2 pi k1 Q1 / beta} e^{-pi k2 P1 / alpha} (x) e^{2 pi k2 Q2 / alpha} e^{pi k1 P2 / beta}``."""
    al, be = k.ctx.alpha, k.ctx.beta
    return (
        SymbolOperator.multiply_exp(2 * math.pi * k.k1 / be, 0)
        @ SymbolOperator.shift(0.5j * k.k2 / al, 0)
        @ SymbolOperator.multiply_exp(0, 2 * math.pi * k.k2 / al)
        @ SymbolOperator.shift(0, -0.5j * k.k1 / be)
    )


def apply_Tk(k: CovariantIndex, a: Symbol) -> Symbol:
    return T_operator(k).apply(a)


def apply_Tk_inverse(k: CovariantIndex, a: Symbol) -> Symbol:
    return T_operator(k).inverse().apply(a)


def apply_Ck(k: CovariantIndex, a: Symbol) -> Symbol:
    return C_operator(k).apply(a)


def apply_Tk_factored(k: CovariantIndex, a: Symbol) -> Symbol:
    """``i^{k1 - k2} C_k T a``."""
    t = T_operator(CovariantIndex(k.ctx))
    return C_operator(k).apply(t.apply(a)).scale(1j ** ((k.k1 - k.k2) % 4))


# -- covariance -----------------------------------------------------------------------

@dataclass(frozen=True)
class CovarianceReport:
    """Largest relative residuals of the covariance and translation laws."""

    covariance: float
    translation: float
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.covariance, self.translation)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def to_json(self) -> dict:
        return {"covariance": self.covariance, "translation": self.translation, "tol": self.tol, "passed": self.passed}


def _h_scale(k: CovariantIndex, a: Symbol) -> float:
    """Size of ``h_k`` on ``a`` measured termwise, so cancellations do not hide errors."""
    return max(1.0, sum(abs(h_k(k, Symbol.from_terms([t]))) for t in a.terms))


TRANSLATIONS: tuple[float, ...] = (-1.0, -0.5, 0.5, 1.0)


def covariance_residual(k: CovariantIndex, f: UqElement, a: Symbol) -> float:
    """``|h_k(f > a) - chi(f) h_k(a)|`` relative to the termwise size of ``f > a``."""
    fa = act_symbol(f, a)
    return abs(h_k(k, fa) - character_chi(f) * h_k(k, a)) / max(_h_scale(k, fa), _h_scale(k, a))


def translation_residual(k: CovariantIndex, a: Symbol, s: float, t: float) -> float:
    """``h_k(a(x1 + beta s, x2 + alpha t)) = e^{-2 pi gamma (s+t) - 4 pi (k1 s + k2 t)} h_k(a)``."""
    ctx = k.ctx
    lhs = h_k(k, S.shift(a, ctx.beta * s, ctx.alpha * t))
    factor = math.exp(-2 * math.pi * ctx.gamma * (s + t) - 4 * math.pi * (k.k1 * s + k.k2 * t))
    return abs(lhs - factor * h_k(k, a)) / max(abs(lhs), _h_scale(k, a))


def covariance_check(k: CovariantIndex, f: UqElement, a: Symbol, tol: float | None = None) -> CovarianceReport:
    tol = k.ctx.tol_exact if tol is None else tol
    cov = covariance_residual(k, f, a)
    tr = max(translation_residual(k, a, s, t) for s in TRANSLATIONS for t in TRANSLATIONS)
    return CovarianceReport(cov, tr, tol)


def adjoint_residual(k: CovariantIndex, f: UqElement, a: Symbol, b: Symbol) -> float:
    """``<f > b, a>_k`` against ``<b, f^+ > a>_k`` with ``+`` the adjoint involution."""
    lhs = scalar_product_k(k, act_symbol(f, b), a)
    rhs = scalar_product_k(k, b, act_symbol(uq_star(f, "adjoint"), a))
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def coproduct_chain_residual(k: CovariantIndex, f: UqElement, a: Symbol, b: Symbol) -> float:
    """``<f > b, a>_k = chi(f_(2)) <b, f_(1)^* > a>_k``."""
    ctx = k.ctx
    lhs = scalar_product_k(k, act_symbol(f, b), a)
    rhs = 0j
    for (k1, k2), c in coproduct(f).terms.items():
        chi = character_chi(UqElement.monomial(ctx, k2))
        if chi:
            f1 = UqElement.monomial(ctx, k1)
            rhs += c * chi * scalar_product_k(k, b, act_symbol(uq_star(f1), a))
    return abs(lhs - rhs) / max(1.0, abs(lhs))


# -- the representations Phi and Psi_k ---------------------------------------------------

def generator_element(ctx: DeformationContext, gen: str):
    """The algebra element behind a generator name."""
    table = {
        "Eprime": lambda: E_prime(ctx),
        "Fprime": lambda: F_prime(ctx),
        "K1": lambda: K1(ctx),
        "K2": lambda: K2(ctx),
        "K": lambda: K(ctx),
        "x": lambda: plane_x(ctx),
        "y": lambda: plane_y(ctx),
    }
    if gen not in table:
        raise ValueError(f"unknown generator {gen!r}; expected one of {GENERATORS}")
    return table[gen]()


def _one_variable(j: int, shift: complex | None = None, mul: complex | None = None) -> SymbolOperator:
    if shift is not None:
        return SymbolOperator.shift(shift, 0) if j == 1 else SymbolOperator.shift(0, shift)
    return SymbolOperator.multiply_exp(mul, 0) if j == 1 else SymbolOperator.multiply_exp(0, mul)


def _f_parameters(ctx: DeformationContext, j: int) -> tuple[float, float]:
    # (w, v) = (alpha, beta) on the first variable and (beta, alpha) on the second
    return (ctx.alpha, ctx.beta) if j == 1 else (ctx.beta, ctx.alpha)


def L_operator(ctx: DeformationContext, j: int) -> SymbolOperator:
    """``conj(f)(P_j) e^{-2 pi w Q_j}`` with ``f(P) = -q^{1/2} e^{2 pi v P} + q^{-1/2} e^{-2 pi v P}``."""
    w, v = _f_parameters(ctx, j)
    h = qpow(ctx, 0.5)
    # e^{2 pi v P} shifts by -v i
    fbar = _one_variable(j, shift=-1j * v).scale(-1 / h) + _one_variable(j, shift=1j * v).scale(h)
    return fbar @ _one_variable(j, mul=-2 * math.pi * w)


def R_operator(ctx: DeformationContext, j: int) -> SymbolOperator:
    """``e^{-2 pi w Q_j} f(P_j)``.  It agrees with ``L_operator`` on symbols; the two
    differ only as closed operators on their maximal domains."""
    w, v = _f_parameters(ctx, j)
    h = qpow(ctx, 0.5)
    f = _one_variable(j, shift=-1j * v).scale(-h) + _one_variable(j, shift=1j * v).scale(1 / h)
    return _one_variable(j, mul=-2 * math.pi * w) @ f


def Phi_operator(ctx: DeformationContext, gen: str) -> SymbolOperator:
    """Closed forms of ``Phi`` on generators, as products of one-variable operators."""
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    quarter = qpow(ctx, 0.25)
    if gen == "Eprime":
        return L_operator(ctx, 1) @ SymbolOperator.multiply_exp(0, 2 * pi * be)
    if gen == "Fprime":
        return SymbolOperator.multiply_exp(2 * pi * al, 0) @ L_operator(ctx, 2)
    if gen == "K1":
        return SymbolOperator.shift(-0.5j * be, 0).scale(quarter)
    if gen == "K2":
        return SymbolOperator.shift(0, -0.5j * al).scale(quarter)
    if gen == "K":
        return SymbolOperator.shift(-0.5j * be, 0.5j * al)
    if gen == "x":
        return SymbolOperator.multiply_exp(2 * pi * al, 0) @ SymbolOperator.shift(0, 0.5j * al)
    if gen == "y":
        return SymbolOperator.shift(-0.5j * be, 0) @ SymbolOperator.multiply_exp(0, 2 * pi * be)
    raise ValueError(f"unknown generator {gen!r}; expected one of {GENERATORS}")


def Phi_apply(ctx: DeformationContext, gen: str, a: Symbol) -> Symbol:
    return Phi_operator(ctx, gen).apply(a)


def Phi_via_phi(ctx: DeformationContext, gen: str, a: Symbol) -> Symbol:
    """``rho0(phi(z)) a`` for the generator ``z``."""
    return rho0(phi(generator_element(ctx, gen))).apply(a)


def Phi_via_T(ctx: DeformationContext, gen: str, a: Symbol) -> Symbol:
    """``T rho0(psi(z)) T^{-1} a``."""
    return Psi_k_conjugated(CovariantIndex(ctx), gen, a)


def Psi_k_conjugated(k: CovariantIndex, gen: str, a: Symbol) -> Symbol:
    """``Psi_k(z) = T_k (rho0 psi)(z) T_k^{-1}`` by direct conjugation."""
    t = T_operator(k)
    op = t @ rho0(psi(generator_element(k.ctx, gen))) @ t.inverse()
    return op.apply(a)


def psi_k_sign(k: CovariantIndex, gen: str) -> int:
    """Sign relating ``Psi_k`` and ``Phi`` on a generator."""
    if gen in ("Eprime", "Fprime", "K"):
        return (-1) ** ((k.k1 + k.k2) % 2)
    if gen == "K1":
        return (-1) ** (k.k1 % 2)
    if gen == "K2":
        return (-1) ** (k.k2 % 2)
    if gen in ("x", "y"):
        return 1
    raise ValueError(f"unknown generator {gen!r}; expected one of {GENERATORS}")


def Psi_k_apply(k: CovariantIndex, gen: str, a: Symbol) -> Symbol:
    """``Psi_k(z) a = sign_k(z) Phi(z) a``."""
    return Phi_apply(k.ctx, gen, a).scale(psi_k_sign(k, gen))


def C_conjugation_residual(k: CovariantIndex, gen: str, a: Symbol) -> float:
    """Relative distance between ``C_k Phi(z) C_k^{-1} a`` and ``sign_k(z) Phi(z) a``."""
    c = C_operator(k)
    lhs = (c @ Phi_operator(k.ctx, gen) @ c.inverse()).apply(a)
    rhs = Psi_k_apply(k, gen, a)
    return S.l2_distance(lhs, rhs) / max(1.0, S.l2_norm(rhs))


def phi_relation_residual(ctx: DeformationContext, g1: str, g2: str, a: Symbol) -> float:
    """``Phi(g1) Phi(g2) a`` from the closed forms against ``rho0(phi(g1 g2)) a``.

    The product ``g1 g2`` is reduced by the defining relations of its algebra
    first, so agreement checks those relations on the closed forms.
    """
    z1, z2 = generator_element(ctx, g1), generator_element(ctx, g2)
    if type(z1) is not type(z2):
        raise ValueError("generators must come from the same algebra")
    lhs = (Phi_operator(ctx, g1) @ Phi_operator(ctx, g2)).apply(a)
    rhs = rho0(phi(z1 * z2)).apply(a)
    return S.l2_distance(lhs, rhs) / max(1.0, S.l2_norm(lhs))


# -- transported structure ---------------------------------------------------------------

def h_tilde(a: Symbol, ctx: DeformationContext) -> complex:
    """``int e^{pi (alpha x1 + beta x2)} a``."""
    return S.weighted_integral(a, math.pi * ctx.alpha, math.pi * ctx.beta)


def h_tilde_via_T(a: Symbol, ctx: DeformationContext) -> complex:
    """``h_0(T^{-1} a)``."""
    k = CovariantIndex(ctx)
    return h_k(k, apply_Tk_inverse(k, a))


def transported_inner(a: Symbol, b: Symbol, ctx: DeformationContext) -> complex:
    """``h~(b^star nat a)``; equals the L2 product ``(a, b)``."""
    return h_tilde(S.natural_product(S.star_transformed(b, ctx), a, ctx), ctx)


__all__ = [
    "CovariantIndex",
    "h_k",
    "scalar_product_k",
    "scalar_product_explicit",
    "scalar_product_transported",
    "is_positive",
    "T_operator",
    "C_operator",
    "apply_Tk",
    "apply_Tk_inverse",
    "apply_Ck",
    "apply_Tk_factored",
    "CovarianceReport",
    "covariance_check",
    "covariance_residual",
    "translation_residual",
    "adjoint_residual",
    "coproduct_chain_residual",
    "GENERATORS",
    "generator_element",
    "L_operator",
    "R_operator",
    "Phi_operator",
    "Phi_apply",
    "Phi_via_phi",
    "Phi_via_T",
    "Psi_k_conjugated",
    "Psi_k_apply",
    "psi_k_sign",
    "C_conjugation_residual",
    "phi_relation_residual",
    "h_tilde",
    "h_tilde_via_T",
    "transported_inner",
]

"""The auxiliary algebra B_q, the homomorphisms psi and phi, and the
U_q(gl_2) action on symbols.

B_q is generated by invertible ``x1, y1, x2, y2`` with ``x_j y_j = q^{1/8} y_j x_j``
and all other pairs commuting.  Monomials are kept in the order
``x1^a1 y1^b1 x2^a2 y2^b2``.

``rho0`` represents B_q on symbols: ``x1 -> e^{pi alpha Q1}``,
``y1 -> e^{pi beta P1 / 2}``, ``x2 -> e^{pi beta Q2}``, ``y2 -> e^{pi alpha P2 / 2}``.
Composed with ``psi`` it gives the action of U_q(gl_2) on symbols and the
left multiplication by coordinates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Union

from . import symbols as S
from ._linear import LinearCombination
from .oqplane import PlaneElement
from .oqplane import act as act_plane
from .oqplane import involution as plane_involution
from .oqplane import monomial_inverse
from .oqplane import x as px, y as py
from .params import DeformationContext, DomainError, qpow
from .symbols import Symbol
from .uqgl2 import UqElement, act_by_factoring, coproduct
from .uqgl2 import E as U_E, F as U_F, K as U_K, K1 as U_K1, K2 as U_K2, E_prime, F_prime
from .uqgl2 import antipode, star as uq_star

BqKey = tuple[int, int, int, int]


class BqElement(LinearCombination):
    """Finite combination of normal-ordered monomials ``x1^a1 y1^b1 x2^a2 y2^b2``."""

    __slots__ = ()

    def _unit_key(self) -> BqKey:
        return (0, 0, 0, 0)

    def _mul_keys(self, k1: BqKey, k2: BqKey):
        a1, b1, a2, b2 = k1
        c1, d1, c2, d2 = k2
        # y^b x^c = q^{-bc/8} x^c y^b in each tensor factor
        yield (a1 + c1, b1 + d1, a2 + c2, b2 + d2), qpow(self.ctx, -(b1 * c1 + b2 * c2) / 8)

    def _format_key(self, key: BqKey) -> str:
        parts = []
        for name, e in zip(("x1", "y1", "x2", "y2"), key):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def bq_gen(ctx: DeformationContext, name: str, power: int = 1) -> BqElement:
    idx = ("x1", "y1", "x2", "y2").index(name)
    key = [0, 0, 0, 0]
    key[idx] = power
    return BqElement.monomial(ctx, tuple(key))


def bq_mono(ctx: DeformationContext, a1: int = 0, b1: int = 0, a2: int = 0, b2: int = 0, coeff: complex = 1) -> BqElement:
    return BqElement.monomial(ctx, (a1, b1, a2, b2), coeff)


def bq_multiply(u: BqElement, v: BqElement) -> BqElement:
    return u * v


def bq_star(u: BqElement) -> BqElement:
    """Antilinear anti-automorphism fixing the four generators."""
    ctx = u.ctx
    return BqElement(
        ctx,
        {k: c.conjugate() * qpow(ctx, -(k[0] * k[1] + k[2] * k[3]) / 8) for k, c in u.terms.items()},
    )


def bq_inverse(u: BqElement) -> BqElement:
    """Inverse of a single monomial."""
    if len(u.terms) != 1:
        raise DomainError("only monomials of B_q are inverted here")
    (key, c), = u.terms.items()
    a1, b1, a2, b2 = key
    # (x^a y^b)^{-1} = y^{-b} x^{-a} = q^{-ab/8} x^{-a} y^{-b}
    return BqElement(u.ctx, {(-a1, -b1, -a2, -b2): qpow(u.ctx, -(a1 * b1 + a2 * b2) / 8) / c})


def bq_power(u: BqElement, n: int) -> BqElement:
    return u**n if n >= 0 else bq_inverse(u) ** (-n)


# -- psi and phi ----------------------------------------------------------------

def psi_generators(ctx: DeformationContext) -> dict[str, BqElement]:
    """``psi`` on the generators of U_q(gl_2) and of the quantum plane."""
    lam_inv = 1 / ctx.lam
    return {
        "E": (bq_mono(ctx, -2, -4, 2, 0) - bq_mono(ctx, -2, 4, 2, 0)).scale(lam_inv),
        "F": (bq_mono(ctx, 2, 0, -2, -4) - bq_mono(ctx, 2, 0, -2, 4)).scale(lam_inv),
        "K1": bq_mono(ctx, b1=2),
        "K2": bq_mono(ctx, b2=2),
        "x": bq_mono(ctx, a1=2, b2=-2),
        "y": bq_mono(ctx, b1=2, a2=2),
    }


@lru_cache(maxsize=4096)
def _psi_pbw(ctx: DeformationContext, key) -> tuple:
    a, m, n, b = key
    g = psi_generators(ctx)
    out = g["E"] ** a * bq_power(g["K1"], m) * bq_power(g["K2"], n) * g["F"] ** b
    return tuple(out.terms.items())


@lru_cache(maxsize=4096)
def _psi_plane(ctx: DeformationContext, key) -> tuple:
    m, n = key
    g = psi_generators(ctx)
    return tuple((bq_power(g["x"], m) * bq_power(g["y"], n)).terms.items())


def psi(f: Union[UqElement, PlaneElement]) -> BqElement:
    """Algebra homomorphism into B_q.

    ``psi(E) = lam^{-1} x2^2 x1^{-2} (y1^{-4} - y1^4)``, ``psi(F)`` with the axes
    swapped, ``psi(K_j) = y_j^2``, ``psi(x) = x1^2 y2^{-2}``, ``psi(y) = x2^2 y1^2``.
    """
    ctx = f.ctx
    table = _psi_pbw if isinstance(f, UqElement) else _psi_plane
    acc: dict = {}
    for key, c in f.terms.items():
        for k, v in table(ctx, key):
            acc[k] = acc.get(k, 0) + c * v
    return BqElement(ctx, acc)


def twist_element(ctx: DeformationContext) -> BqElement:
    """``g = x1 x2 y1^{-1} y2``, the conjugating element relating psi and phi."""
    return bq_mono(ctx, 1, -1, 1, 1)


def phi(f: Union[UqElement, PlaneElement]) -> BqElement:
    """``phi(f) = g psi(f) g^{-1}``; a *-homomorphism for the twisted involution."""
    g = twist_element(f.ctx)
    return g * psi(f) * bq_inverse(g)


# -- operators on symbols ---------------------------------------------------------

@dataclass(frozen=True)
class SymbolOperator:
    """``a -> sum coeff * e^{e1 x1 + e2 x2} a(x1 + s1, x2 + s2)``.

    Each entry is ``(coeff, e1, e2, s1, s2)``.  Composition uses
    ``M_e S_s M_e' S_s' = e^{e'.s} M_{e+e'} S_{s+s'}``.
    """

    terms: tuple[tuple[complex, complex, complex, complex, complex], ...]

    @classmethod
    def identity(cls) -> "SymbolOperator":
        return cls(((1 + 0j, 0j, 0j, 0j, 0j),))

    @classmethod
    def multiply_exp(cls, e1: complex, e2: complex) -> "SymbolOperator":
        return cls(((1 + 0j, complex(e1), complex(e2), 0j, 0j),))

    @classmethod
    def shift(cls, s1: complex, s2: complex) -> "SymbolOperator":
        return cls(((1 + 0j, 0j, 0j, complex(s1), complex(s2)),))

    @staticmethod
    def _merge(entries) -> "SymbolOperator":
        acc: dict = {}
        for c, e1, e2, s1, s2 in entries:
            key = tuple(S._snap(v) for v in (e1, e2, s1, s2))
            if key in acc:
                acc[key][0] += c
            else:
                acc[key] = [c, e1, e2, s1, s2]
        return SymbolOperator(tuple(tuple(v) for k, v in sorted(acc.items()) if v[0] != 0))

    def __matmul__(self, other: "SymbolOperator") -> "SymbolOperator":
        """Composition ``self o other``."""
        out = []
        for c, e1, e2, s1, s2 in self.terms:
            for d, f1, f2, t1, t2 in other.terms:
                out.append((c * d * cmath.exp(f1 * s1 + f2 * s2), e1 + f1, e2 + f2, s1 + t1, s2 + t2))
        return SymbolOperator._merge(out)

    def __add__(self, other: "SymbolOperator") -> "SymbolOperator":
        return SymbolOperator._merge(self.terms + other.terms)

    def scale(self, c: complex) -> "SymbolOperator":
        return SymbolOperator(tuple((c * t[0],) + t[1:] for t in self.terms))

    def inverse(self) -> "SymbolOperator":
        """Inverse of a single primitive chain: ``(c M_e S_s)^{-1} = c^{-1} e^{e.s} M_{-e} S_{-s}``."""
        if len(self.terms) != 1:
            raise ValueError("only single-term operators are inverted")
        ((c, e1, e2, s1, s2),) = self.terms
        return SymbolOperator(((cmath.exp(e1 * s1 + e2 * s2) / c, -e1, -e2, -s1, -s2),))

    def apply(self, a: Symbol) -> Symbol:
        out = Symbol()
        for c, e1, e2, s1, s2 in self.terms:
            out = out + S.mul_exp(S.shift(a, s1, s2), e1, e2).scale(c)
        return out

    def __call__(self, a: Symbol) -> Symbol:
        return self.apply(a)


def rho0(u: BqElement) -> SymbolOperator:
    """The representation of B_q on symbols: ``x1 -> e^{pi alpha x1}``,
    ``y1 -> shift x1 by -beta i / 4``, ``x2 -> e^{pi beta x2}``, ``y2 -> shift x2 by -alpha i / 4``."""
    ctx = u.ctx
    al, be = ctx.alpha, ctx.beta
    entries = []
    for (a1, b1, a2, b2), c in u.terms.items():
        op = (
            SymbolOperator.multiply_exp(math.pi * al * a1, 0)
            @ SymbolOperator.shift(-0.25j * be * b1, 0)
            @ SymbolOperator.multiply_exp(0, math.pi * be * a2)
            @ SymbolOperator.shift(0, -0.25j * al * b2)
        )
        entries.extend(op.scale(c).terms)
    return SymbolOperator._merge(entries)


def act_symbol(f: UqElement, a: Symbol) -> Symbol:
    """``f > a = rho0(psi(f)) a``."""
    return rho0(psi(f)).apply(a)


def _closed_generator(ctx: DeformationContext, name: str, power: int, a: Symbol) -> Symbol:
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    if name == "K1":
        return S.shift(a, -0.5j * be * power, 0)
    if name == "K2":
        return S.shift(a, 0, -0.5j * al * power)
    for _ in range(power):
        if name == "E":
            diff = S.shift(a, 1j * be, 0) - S.shift(a, -1j * be, 0)
            a = S.mul_exp(diff, -2 * pi * al, 2 * pi * be).scale(1 / ctx.lam)
        else:
            diff = S.shift(a, 0, 1j * al) - S.shift(a, 0, -1j * al)
            a = S.mul_exp(diff, 2 * pi * al, -2 * pi * be).scale(1 / ctx.lam)
    return a


def act_symbol_closed(f: UqElement, a: Symbol) -> Symbol:
    """Generator formulas applied through PBW factoring:

    ``E > a = lam^{-1} e^{2 pi (beta x2 - alpha x1)} (a(x1 + beta i, x2) - a(x1 - beta i, x2))``,
    ``F > a = lam^{-1} e^{2 pi (alpha x1 - beta x2)} (a(x1, x2 + alpha i) - a(x1, x2 - alpha i))``,
    ``K1 > a = a(x1 - beta i / 2, x2)``, ``K2 > a = a(x1, x2 - alpha i / 2)``.
    """
    ctx = f.ctx
    return act_by_factoring(f, a, lambda n, p, w: _closed_generator(ctx, n, p, w), Symbol())


# -- mixed products with the quantum plane ---------------------------------------

def _right_image(ctx: DeformationContext, key) -> BqElement:
    """B_q element whose rho0-image is right multiplication by ``x^m y^n``."""
    m, n = key
    rx = bq_mono(ctx, a1=2, b2=2)
    ry = bq_mono(ctx, b1=-2, a2=2)
    return bq_power(ry, n) * bq_power(rx, m)


def left_operator(z: PlaneElement) -> SymbolOperator:
    return rho0(psi(z))


def right_operator(z: PlaneElement) -> SymbolOperator:
    ctx = z.ctx
    acc = BqElement.zero(ctx)
    for key, c in z.terms.items():
        acc = acc + _right_image(ctx, key).scale(c)
    return rho0(acc)


def mixed_product(z: PlaneElement, a: Symbol, side: Literal["left", "right"] = "left") -> Symbol:
    """``z a`` (``side='left'``) or ``a z`` (``side='right'``) for ``z`` in the quantum plane.

    On generators: ``x a = e^{2 pi alpha x1} a(x1, x2 + alpha i/2)``,
    ``a x = e^{2 pi alpha x1} a(x1, x2 - alpha i/2)``,
    ``y a = e^{2 pi beta x2} a(x1 - beta i/2, x2)``,
    ``a y = e^{2 pi beta x2} a(x1 + beta i/2, x2)``.
    """
    if not z.is_polynomial():
        raise DomainError("mixed products are defined for polynomial z")
    op = left_operator(z) if side == "left" else right_operator(z)
    return op.apply(a)


def mixed_product_closed(z: PlaneElement, a: Symbol, side: Literal["left", "right"] = "left") -> Symbol:
    """Same as :func:`mixed_product`, built from the four generator rules directly."""
    ctx = z.ctx
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    sgn = 1 if side == "left" else -1

    def by_x(b):
        return S.mul_exp(S.shift(b, 0, sgn * 0.5j * al), 2 * pi * al, 0)

    def by_y(b):
        return S.mul_exp(S.shift(b, -sgn * 0.5j * be, 0), 0, 2 * pi * be)

    out = Symbol()
    for (m, n), c in z.terms.items():
        b = a
        if side == "left":
            # x^m y^n a: y's act first
            for _ in range(n):
                b = by_y(b)
            for _ in range(m):
                b = by_x(b)
        else:
            for _ in range(m):
                b = by_x(b)
            for _ in range(n):
                b = by_y(b)
        out = out + b.scale(c)
    return out


@dataclass(frozen=True)
class QuarterElement:
    """Element ``z + a`` of the algebra generated by the quantum plane and the symbols."""

    plane: PlaneElement
    sym: Symbol

    @classmethod
    def of(cls, ctx: DeformationContext, plane: PlaneElement | None = None, sym: Symbol | None = None) -> "QuarterElement":
        return cls(plane if plane is not None else PlaneElement.zero(ctx), sym if sym is not None else Symbol())

    @property
    def ctx(self) -> DeformationContext:
        return self.plane.ctx

    def __add__(self, other: "QuarterElement") -> "QuarterElement":
        return QuarterElement(self.plane + other.plane, self.sym + other.sym)

    def __sub__(self, other: "QuarterElement") -> "QuarterElement":
        return QuarterElement(self.plane - other.plane, self.sym - other.sym)

    def scale(self, c: complex) -> "QuarterElement":
        return QuarterElement(self.plane.scale(c), self.sym.scale(c))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        sym = (
            mixed_product(self.plane, other.sym, "left")
            + mixed_product(other.plane, self.sym, "right")
            + S.twisted_product(self.sym, other.sym)
        )
        return QuarterElement(self.plane * other.plane, sym)

    def star(self) -> "QuarterElement":
        return QuarterElement(plane_involution(self.plane), S.star(self.sym))

    def distance(self, other: "QuarterElement") -> float:
        return max(self.plane.distance(other.plane), S.l2_distance(self.sym, other.sym))

    def relative_distance(self, other: "QuarterElement") -> float:
        """Distance scaled by the size of ``self``; symbol norms grow fast under imaginary shifts."""
        plane_scale = max(1.0, self.plane.max_abs())
        sym_scale = max(1.0, S.l2_norm(self.sym))
        return max(self.plane.distance(other.plane) / plane_scale, S.l2_distance(self.sym, other.sym) / sym_scale)


def act_quarter(f: UqElement, z: QuarterElement) -> QuarterElement:
    return QuarterElement(act_plane(f, z.plane), act_symbol(f, z.sym))


def module_law_residual(f: UqElement, z: QuarterElement, w: QuarterElement) -> float:
    """Relative distance between ``f > (zw)`` and ``(f_(1) > z)(f_(2) > w)``."""
    lhs = act_quarter(f, z * w)
    ctx = f.ctx
    rhs = QuarterElement.of(ctx)
    for (k1, k2), c in coproduct(f).terms.items():
        f1 = UqElement.monomial(ctx, k1)
        f2 = UqElement.monomial(ctx, k2)
        rhs = rhs + (act_quarter(f1, z) * act_quarter(f2, w)).scale(c)
    return lhs.relative_distance(rhs)


def star_law_residual(f: UqElement, z: QuarterElement) -> float:
    """Relative distance between ``(f > z)^*`` and ``S(f)^* > z^*``."""
    return act_quarter(f, z).star().relative_distance(act_quarter(uq_star(antipode(f)), z.star()))


# -- partial derivatives on symbols (calculus minus) -----------------------------

def partials_symbol_closed(a: Symbol, ctx: DeformationContext) -> tuple[Symbol, Symbol]:
    """``d_x a = (1-q^{-2})^{-1} e^{-2 pi alpha x1} (a(x1, x2 - alpha i/2) - a(x1 - 2 beta i, x2 - alpha i/2))``,
    ``d_y a = (1-q^{-2})^{-1} e^{-2 pi beta x2} (a(x1 - 3 beta i/2, x2) - a(x1 - 3 beta i/2, x2 - 2 alpha i))``."""
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    k = 1 / (1 - qpow(ctx, -2))
    dx = S.shift(a, 0, -0.5j * al) - S.shift(a, -2j * be, -0.5j * al)
    dy = S.shift(a, -1.5j * be, 0) - S.shift(a, -1.5j * be, -2j * al)
    return S.mul_exp(dx, -2 * pi * al, 0).scale(k), S.mul_exp(dy, 0, -2 * pi * be).scale(k)


def partials_symbol_rho(a: Symbol, ctx: DeformationContext) -> tuple[Symbol, Symbol]:
    """``(1-q^{-2})^{-1} rho0(x1^{-2} y2^2 (1 - y1^8)) a`` and ``(1-q^{-2})^{-1} rho0(x2^{-2} y1^6 (1 - y2^8)) a``."""
    k = 1 / (1 - qpow(ctx, -2))
    one = bq_mono(ctx)
    ux = bq_mono(ctx, a1=-2, b2=2) * (one - bq_mono(ctx, b1=8))
    uy = bq_mono(ctx, b1=6, a2=-2) * (one - bq_mono(ctx, b2=8))
    return rho0(ux.scale(k)).apply(a), rho0(uy.scale(k)).apply(a)


def partials_symbol_action(a: Symbol, ctx: DeformationContext) -> tuple[Symbol, Symbol]:
    """``q^{3/2} y^{-1} (E K1^3 K2 > a)`` and ``q^{1/2} x^{-1} (F K1^3 K2 > a)``."""
    kk = U_K1(ctx, 3) * U_K2(ctx)
    g = psi_generators(ctx)
    ex = act_symbol(U_E(ctx) * kk, a)
    fy = act_symbol(U_F(ctx) * kk, a)
    dx = rho0(bq_inverse(g["y"]).scale(qpow(ctx, 1.5))).apply(ex)
    dy = rho0(bq_inverse(g["x"]).scale(qpow(ctx, 0.5))).apply(fy)
    return dx, dy


def partials_symbol_omega(a: Symbol, ctx: DeformationContext) -> tuple[Symbol, Symbol]:
    """Right coefficients of ``da = omega a - a omega`` with ``omega = q^2 x^2 y^{-2} e1 + y^{-2} e2``.

    Multiplication by localised monomials is realised through ``rho0``; the
    basis change to ``{dx, dy}`` uses the free-bimodule expressions of ``dx``, ``dy``.
    """
    q2 = qpow(ctx, 2)

    def left(m: int, n: int, b: Symbol, c: complex = 1) -> Symbol:
        return rho0(psi(PlaneElement.monomial(ctx, (m, n), c))).apply(b)

    def right(m: int, n: int, b: Symbol, c: complex = 1) -> Symbol:
        return rho0(_right_image(ctx, (m, n)).scale(c)).apply(b)

    t1 = left(2, -2, a, q2) - right(2, -2, a, q2)
    t2 = left(0, -2, a) - right(0, -2, a)
    # dx = (q^2-1) q^2 x^3 y^-2 e1 + (q^2-1) x y^-2 e2,  dy = (q^2-1) x^2 y^-1 e1
    a11 = PlaneElement.monomial(ctx, (3, -2), (q2 - 1) * q2)
    a12 = PlaneElement.monomial(ctx, (1, -2), q2 - 1)
    a21 = PlaneElement.monomial(ctx, (2, -1), q2 - 1)
    u = rho0(psi(monomial_inverse(a12))).apply(t2)
    v = rho0(psi(monomial_inverse(a21))).apply(t1 - rho0(psi(a11)).apply(u))
    return u, v


# -- identity suites in B_q -----------------------------------------------------

def relation_residuals(ctx: DeformationContext) -> dict[str, float]:
    """U_q(gl_2) defining relations and ``xy = q yx`` for the images under ``psi``."""
    E, F, K1, K2, K = U_E(ctx), U_F(ctx), U_K1(ctx), U_K2(ctx), U_K(ctx)
    p = psi
    h = qpow(ctx, 0.5)
    return {
        "EK1": (p(E) * p(K1) - (p(K1) * p(E)).scale(1 / h)).max_abs(),
        "EK2": (p(E) * p(K2) - (p(K2) * p(E)).scale(h)).max_abs(),
        "FK1": (p(F) * p(K1) - (p(K1) * p(F)).scale(h)).max_abs(),
        "FK2": (p(F) * p(K2) - (p(K2) * p(F)).scale(1 / h)).max_abs(),
        "K1K2": (p(K1) * p(K2) - p(K2) * p(K1)).max_abs(),
        "EF": (p(E) * p(F) - p(F) * p(E) - (p(K) * p(K) - bq_inverse(p(K) * p(K))).scale(1 / ctx.lam)).max_abs(),
        "xy": (p(px(ctx) * py(ctx)) - p(py(ctx) * px(ctx)).scale(ctx.q)).max_abs(),
    }


def cross_relation_residuals(ctx: DeformationContext) -> dict[str, float]:
    """Commutation of ``psi(E), psi(F), psi(K)`` with ``psi(x), psi(y)``."""
    E, F, K = psi(U_E(ctx)), psi(U_F(ctx)), psi(U_K(ctx))
    x, y = psi(px(ctx)), psi(py(ctx))
    h = qpow(ctx, 0.5)
    return {
        "Ex": (E * x - (x * E).scale(h) - y * K).max_abs(),
        "Ey": (E * y - (y * E).scale(1 / h)).max_abs(),
        "Fx": (F * x - (x * F).scale(h)).max_abs(),
        "Fy": (F * y - (y * F).scale(1 / h) - x * K).max_abs(),
        "Kx": (K * x - (x * K).scale(1 / h)).max_abs(),
        "Ky": (K * y - (y * K).scale(h)).max_abs(),
    }


def power_identity_residuals(ctx: DeformationContext) -> dict[str, float]:
    """Generator powers recovered from images of ``psi``.

    With ``A = psi(EK^{-1}) psi(x) psi(y)^{-1}`` and ``B = psi(FK^{-1}) psi(y) psi(x)^{-1}``:
    ``y1^{-8} = q^{-2} + q^{-3/2} lam A``, ``y2^8 = q^2 - q^{3/2} lam B``,
    ``x1^8 = psi(x^4)(q^2 - q^{3/2} lam B)``, ``x2^8 = psi(y^4)(q^{-2} + q^{-3/2} lam A)``.
    """
    x, y = px(ctx), py(ctx)
    kinv = U_K(ctx, -1)
    A = psi(U_E(ctx) * kinv) * psi(x) * bq_inverse(psi(y))
    Bm = psi(U_F(ctx) * kinv) * psi(y) * bq_inverse(psi(x))
    one = bq_mono(ctx)
    low = one.scale(qpow(ctx, -2)) + A.scale(qpow(ctx, -1.5) * ctx.lam)
    high = one.scale(qpow(ctx, 2)) - Bm.scale(qpow(ctx, 1.5) * ctx.lam)
    return {
        "y1^-8": (bq_mono(ctx, b1=-8) - low).max_abs(),
        "y2^8": (bq_mono(ctx, b2=8) - high).max_abs(),
        "x1^8": (bq_mono(ctx, a1=8) - psi(x**4) * high).max_abs(),
        "x2^8": (bq_mono(ctx, a2=8) - psi(y**4) * low).max_abs(),
    }


def phi_involution_residuals(ctx: DeformationContext) -> dict[str, float]:
    """``phi(z^+) = phi(z)^*`` for the hermitian generators, ``+`` the adjoint involution."""
    h4 = qpow(ctx, -0.25)
    out = {}
    for name, z in (("E'", E_prime(ctx)), ("F'", F_prime(ctx)), ("q^-1/4 K1", U_K1(ctx).scale(h4)), ("q^-1/4 K2", U_K2(ctx).scale(h4))):
        out[name] = (phi(uq_star(z, "adjoint")) - bq_star(phi(z))).max_abs()
    for name, z in (("x", px(ctx)), ("y", py(ctx))):
        out[name] = (phi(plane_involution(z)) - bq_star(phi(z))).max_abs()
    return out

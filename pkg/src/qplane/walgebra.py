"""The *-algebra spanned by the Weyl elements ``W(s, t)`` with complex ``s, t``.

``W(s,t) = exp(2 pi i (s alpha Q + t beta P))`` formally; here the elements
are treated as an abstract basis with the product

    W(s1,t1) W(s2,t2) = exp(pi i gamma (s2 t1 - s1 t2)) W(s1+s2, t1+t2).

``X = W(-i, 0)`` and ``Y = W(0, -i)`` satisfy ``XY = q YX`` and realise the
quantum plane inside this algebra.
"""

from __future__ import annotations

import cmath
import math
from typing import Literal

from . import oqplane
from ._linear import LinearCombination, format_complex
from .oqplane import FreeForm, PlaneElement
from .params import DeformationContext, qpow
from .uqgl2 import UqElement, act_by_factoring

LATTICE = 2.0**-40


def snap(z: complex) -> complex:
    """Round both parts of ``z`` to the key lattice."""
    z = complex(z)
    return complex(round(z.real / LATTICE) * LATTICE, round(z.imag / LATTICE) * LATTICE) + 0j


def _key(s: complex, t: complex) -> tuple[complex, complex]:
    s, t = snap(s), snap(t)
    # normalise signed zeros so that keys hash equal
    return (complex(s.real + 0.0, s.imag + 0.0), complex(t.real + 0.0, t.imag + 0.0))


class WElement(LinearCombination):
    """Finite combination ``sum c W(s, t)``."""

    __slots__ = ()

    def _unit_key(self):
        return _key(0, 0)

    def _mul_keys(self, k1, k2):
        s1, t1 = k1
        s2, t2 = k2
        yield _key(s1 + s2, t1 + t2), cmath.exp(1j * math.pi * self.ctx.gamma * (s2 * t1 - s1 * t2))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].real, kv[0][0].imag, kv[0][1].real, kv[0][1].imag))

    def _format_key(self, key) -> str:
        s, t = key
        if s == 0 and t == 0:
            return "1"
        return f"W({format_complex(s)},{format_complex(t)})"


def W(ctx: DeformationContext, s: complex, t: complex, coeff: complex = 1) -> WElement:
    return WElement.monomial(ctx, _key(s, t), coeff)


def X(ctx: DeformationContext, power: int = 1) -> WElement:
    return W(ctx, -1j * power, 0)


def Y(ctx: DeformationContext, power: int = 1) -> WElement:
    return W(ctx, 0, -1j * power)


def multiply(u: WElement, v: WElement) -> WElement:
    return u * v


def involution(u: WElement) -> WElement:
    """``(c W(s,t))^* = conj(c) W(-conj(s), -conj(t))``."""
    return WElement(u.ctx, {_key(-s.conjugate(), -t.conjugate()): c.conjugate() for (s, t), c in u.terms.items()})


def monomial_inverse(u: WElement) -> WElement:
    if len(u.terms) != 1:
        raise ValueError("only single Weyl elements are inverted")
    ((s, t), c), = u.terms.items()
    return WElement(u.ctx, {_key(-s, -t): 1 / c})


def embed(z: PlaneElement) -> WElement:
    """Map ``x^m y^n`` to ``X^m Y^n``."""
    ctx = z.ctx
    acc = WElement.zero(ctx)
    for (m, n), c in z.terms.items():
        acc = acc + (X(ctx, m) * Y(ctx, n)).scale(c)
    return acc


# -- U_q(gl_2) action ---------------------------------------------------------

def _generator(ctx: DeformationContext, name: str, power: int, u: WElement) -> WElement:
    pg = math.pi * ctx.gamma
    terms = dict(u.terms)
    for _ in range(power if name in "EF" else 1):
        acc: dict = {}
        for (s, t), c in terms.items():
            if name == "E":
                key, d = _key(s + 1j, t - 1j), (cmath.exp(-2 * pg * s) - cmath.exp(2 * pg * s)) / ctx.lam
            elif name == "F":
                key, d = _key(s - 1j, t + 1j), (cmath.exp(-2 * pg * t) - cmath.exp(2 * pg * t)) / ctx.lam
            elif name == "K1":
                key, d = (s, t), cmath.exp(power * pg * s)
            else:
                key, d = (s, t), cmath.exp(power * pg * t)
            if d != 0:
                acc[key] = acc.get(key, 0) + c * d
        terms = acc
    return WElement(ctx, terms)


def act(f: UqElement, u: WElement) -> WElement:
    """Left action: ``E > W(s,t) = lam^{-1}(e^{-2 pi gamma s} - e^{2 pi gamma s}) W(s+i, t-i)``,
    ``F`` symmetric in ``t``, ``K1 > W = e^{pi gamma s} W``, ``K2 > W = e^{pi gamma t} W``."""
    ctx = u.ctx
    return act_by_factoring(f, u, lambda name, p, w: _generator(ctx, name, p, w), WElement.zero(ctx))


def mult_xy(side: Literal["left", "right"], gen: Literal["x", "y"], u: WElement) -> WElement:
    """Multiply by the coordinate ``x = X`` or ``y = Y`` from one side, via the displacement rules."""
    ctx = u.ctx
    pg = math.pi * ctx.gamma
    sign = -1 if side == "left" else 1
    acc: dict = {}
    for (s, t), c in u.terms.items():
        if gen == "x":
            key, d = _key(s - 1j, t), cmath.exp(sign * pg * t)
        else:
            key, d = _key(s, t - 1j), cmath.exp(-sign * pg * s)
        acc[key] = acc.get(key, 0) + c * d
    return WElement(ctx, acc)


def partials_W(u: WElement) -> tuple[WElement, WElement]:
    """Partial derivatives of the calculus ``minus`` on ``W``:

    ``d_x W(s,t) = (1 - e^{4 pi gamma s}) / (1 - q^{-2}) e^{pi gamma t} W(s+i, t)``,
    ``d_y W(s,t) = (1 - e^{4 pi gamma t}) / (1 - q^{-2}) e^{3 pi gamma s} W(s, t+i)``.
    """
    ctx = u.ctx
    pg = math.pi * ctx.gamma
    den = 1 - qpow(ctx, -2)
    dx: dict = {}
    dy: dict = {}
    for (s, t), c in u.terms.items():
        kx = _key(s + 1j, t)
        dx[kx] = dx.get(kx, 0) + c * (1 - cmath.exp(4 * pg * s)) / den * cmath.exp(pg * t)
        ky = _key(s, t + 1j)
        dy[ky] = dy.get(ky, 0) + c * (1 - cmath.exp(4 * pg * t)) / den * cmath.exp(3 * pg * s)
    return WElement(ctx, dx), WElement(ctx, dy)


def differential(u: WElement, calc: oqplane.Calculus = "minus") -> tuple[WElement, WElement]:
    """Right coefficients of ``du = omega u - u omega`` in the basis ``{dx, dy}``."""
    ctx = u.ctx
    xe = lambda k: X(ctx, k)
    ye = lambda k: Y(ctx, k)
    om = oqplane.omega(ctx, calc, xe, ye)
    theta = oqplane.commutator_form(u, om)
    dx, dy = oqplane.basis_forms(ctx, calc, xe, ye)
    return oqplane.solve_right(theta, dx, dy, monomial_inverse)


def random_element(ctx: DeformationContext, rng, terms: int = 2, scale: float = 0.6) -> WElement:
    acc: dict = {}
    for _ in range(terms):
        s = complex(*rng.uniform(-scale, scale, 2))
        t = complex(*rng.uniform(-scale, scale, 2))
        acc[_key(s, t)] = complex(rng.normal(), rng.normal())
    return WElement(ctx, acc)


__all__ = [
    "WElement",
    "W",
    "X",
    "Y",
    "multiply",
    "involution",
    "act",
    "mult_xy",
    "partials_W",
    "differential",
    "embed",
    "FreeForm",
]

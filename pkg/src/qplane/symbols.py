"""Exact Gaussian-polynomial symbols and the Weyl twisted product.

A symbol is a finite sum of terms

    coeff * x1^n1 x2^n2 * exp(-(a11 x1^2 + 2 a12 x1 x2 + a22 x2^2) + c1 x1 + c2 x2)

with a complex symmetric matrix ``A = [[a11, a12], [a12, a22]]`` whose real
part is positive definite.  Diagonal real ``A`` is the class spanned by
``x^n e^{-eps x^2 + c x}``; the cross term is needed because the twisted
product of two such terms generally has one.

Operator convention, used everywhere: ``e^{t P_j}`` with ``P = (2 pi i)^{-1} d/dx``
acts as the complex shift ``x_j -> x_j - t i / (2 pi)``, and ``e^{t Q_j}`` as
multiplication by ``e^{t x_j}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

import numpy as np

from ._gauss import gaussian_integral
from .params import DeformationContext, DomainError

KEY_LATTICE = 2.0**-32
PRUNE_REL = 1e-15


def _snap(v: complex) -> tuple[float, float]:
    v = complex(v)
    return (round(v.real / KEY_LATTICE) * KEY_LATTICE + 0.0, round(v.imag / KEY_LATTICE) * KEY_LATTICE + 0.0)


@dataclass(frozen=True)
class SymbolTerm:
    """``coeff x1^n1 x2^n2 exp(-eps1 x1^2 - 2 eps12 x1 x2 - eps2 x2^2 + c1 x1 + c2 x2)``."""

    n1: int
    n2: int
    eps1: complex
    eps2: complex
    c1: complex = 0j
    c2: complex = 0j
    coeff: complex = 1 + 0j
    eps12: complex = 0j

    def to_json(self) -> dict:
        def enc(v):
            v = complex(v)
            return [v.real, v.imag]

        return {
            "n1": self.n1,
            "n2": self.n2,
            "eps1": enc(self.eps1),
            "eps2": enc(self.eps2),
            "eps12": enc(self.eps12),
            "c1": enc(self.c1),
            "c2": enc(self.c2),
            "coeff": enc(self.coeff),
        }


@dataclass(frozen=True)
class _Block:
    A: tuple[complex, complex, complex]  # a11, a12, a22
    c: tuple[complex, complex]
    poly: dict  # (n1, n2) -> coeff

    def matrix(self) -> np.ndarray:
        a11, a12, a22 = self.A
        return np.array([[a11, a12], [a12, a22]], dtype=complex)


class Symbol:
    """Immutable finite sum of Gaussian-polynomial terms."""

    __slots__ = ("_blocks",)

    def __init__(self, blocks: Iterable[_Block] = ()):
        merged: dict[tuple, list] = {}
        for blk in blocks:
            key = tuple(_snap(v) for v in blk.A + blk.c)
            slot = merged.get(key)
            if slot is None:
                merged[key] = [blk.A, blk.c, dict(blk.poly)]
            else:
                for k, v in blk.poly.items():
                    slot[2][k] = slot[2].get(k, 0) + v
        out = []
        for key in sorted(merged):
            A, c, poly = merged[key]
            top = max((abs(v) for v in poly.values()), default=0.0)
            poly = {k: complex(v) for k, v in sorted(poly.items()) if v != 0 and abs(v) > PRUNE_REL * top}
            if poly:
                out.append(_Block(tuple(complex(a) for a in A), tuple(complex(x) for x in c), poly))
        self._blocks: tuple[_Block, ...] = tuple(out)

    # -- construction --------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Iterable[SymbolTerm]) -> "Symbol":
        return cls(
            _Block((t.eps1, t.eps12, t.eps2), (t.c1, t.c2), {(t.n1, t.n2): t.coeff}) for t in terms
        )

    @classmethod
    def zero(cls) -> "Symbol":
        return cls()

    @property
    def terms(self) -> list[SymbolTerm]:
        return [
            SymbolTerm(n1, n2, b.A[0], b.A[2], b.c[0], b.c[1], coeff, b.A[1])
            for b in self._blocks
            for (n1, n2), coeff in b.poly.items()
        ]

    def blocks(self) -> Iterator[_Block]:
        return iter(self._blocks)

    def is_zero(self) -> bool:
        return not self._blocks

    def __len__(self) -> int:
        return sum(len(b.poly) for b in self._blocks)

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.terms]

    # -- vector space --------------------------------------------------------

    def _map_poly(self, fn) -> "Symbol":
        return Symbol(_Block(b.A, b.c, {k: fn(v) for k, v in b.poly.items()}) for b in self._blocks)

    def __add__(self, other: "Symbol") -> "Symbol":
        if not isinstance(other, Symbol):
            return NotImplemented
        return Symbol(self._blocks + other._blocks)

    def __neg__(self) -> "Symbol":
        return self._map_poly(lambda v: -v)

    def __sub__(self, other: "Symbol") -> "Symbol":
        return self + (-other)

    def scale(self, c: complex) -> "Symbol":
        c = complex(c)
        return self._map_poly(lambda v: c * v)

    def __mul__(self, c):
        if isinstance(c, (int, float, complex)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, z1, z2):
        return eval_symbol(self, z1, z2)

    def __repr__(self) -> str:
        return f"Symbol({len(self)} terms in {len(self._blocks)} Gaussian blocks)"


# -- constructors ---------------------------------------------------------------

def gaussian(eps1: complex, eps2: complex, c1: complex = 0, c2: complex = 0, n1: int = 0, n2: int = 0,
             coeff: complex = 1, eps12: complex = 0) -> Symbol:
    """Single term ``coeff x1^n1 x2^n2 exp(-eps1 x1^2 - 2 eps12 x1 x2 - eps2 x2^2 + c1 x1 + c2 x2)``."""
    A = np.array([[eps1, eps12], [eps12, eps2]], dtype=complex)
    if np.any(np.linalg.eigvalsh(A.real) <= 0):
        raise DomainError("the real part of the Gaussian matrix must be positive definite")
    return Symbol.from_terms([SymbolTerm(n1, n2, eps1, eps2, c1, c2, coeff, eps12)])


def approx_identity(eps: float) -> Symbol:
    """``f_eps(x1, x2) = exp(-pi eps (x1^2 + x2^2))``."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    return gaussian(math.pi * eps, math.pi * eps)


def random_symbol(rng: np.random.Generator, terms: int = 2, degree: int = 1, cscale: float = 0.5,
                  width: tuple[float, float] = (0.6, 1.6)) -> Symbol:
    """Random element of the diagonal class with moderate widths and exponents."""
    out = []
    for _ in range(terms):
        e1, e2 = rng.uniform(*width, 2)
        c1, c2 = (complex(*rng.uniform(-cscale, cscale, 2)) for _ in range(2))
        n1, n2 = (int(v) for v in rng.integers(0, degree + 1, 2))
        coeff = complex(rng.normal(), rng.normal())
        out.append(SymbolTerm(n1, n2, e1, e2, c1, c2, coeff))
    return Symbol.from_terms(out)


# -- evaluation -------------------------------------------------------------------

def eval_symbol(a: Symbol, z1, z2):
    """Evaluate at complex points; ``z1``, ``z2`` may be numpy arrays that broadcast."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    total = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
    for b in a.blocks():
        a11, a12, a22 = b.A
        expo = -(a11 * z1 * z1 + 2 * a12 * z1 * z2 + a22 * z2 * z2) + b.c[0] * z1 + b.c[1] * z2
        poly = np.zeros_like(total)
        for (n1, n2), coeff in b.poly.items():
            poly = poly + coeff * z1**n1 * z2**n2
        total = total + np.exp(expo) * poly
    return total if total.shape else complex(total)


# -- elementary operations -------------------------------------------------------

def _shift_poly(poly: dict, t1: complex, t2: complex) -> dict:
    out: dict = {}
    for (n1, n2), coeff in poly.items():
        for k1 in range(n1 + 1):
            f1 = comb(n1, k1) * t1 ** (n1 - k1)
            if f1 == 0:
                continue
            for k2 in range(n2 + 1):
                f2 = comb(n2, k2) * t2 ** (n2 - k2)
                if f2 == 0:
                    continue
                out[(k1, k2)] = out.get((k1, k2), 0) + coeff * f1 * f2
    return out


def shift(a: Symbol, tau1: complex, tau2: complex) -> Symbol:
    """``a(x1 + tau1, x2 + tau2)`` as an exact symbol."""
    tau = np.array([tau1, tau2], dtype=complex)
    if not tau.any():
        return a
    blocks = []
    for b in a.blocks():
        A = b.matrix()
        c = np.array(b.c)
        factor = np.exp(-tau @ A @ tau + c @ tau)
        cn = c - 2 * A @ tau
        poly = {k: v * factor for k, v in _shift_poly(b.poly, tau[0], tau[1]).items()}
        blocks.append(_Block(b.A, (cn[0], cn[1]), poly))
    return Symbol(blocks)


def mul_exp(a: Symbol, b1: complex, b2: complex) -> Symbol:
    """Multiply by ``exp(b1 x1 + b2 x2)``."""
    if b1 == 0 and b2 == 0:
        return a
    return Symbol(_Block(b.A, (b.c[0] + b1, b.c[1] + b2), b.poly) for b in a.blocks())


def mul_poly(a: Symbol, k1: int, k2: int) -> Symbol:
    """Multiply by ``x1^k1 x2^k2``."""
    if k1 < 0 or k2 < 0:
        raise DomainError("polynomial degrees must be nonnegative")
    return Symbol(_Block(b.A, b.c, {(n1 + k1, n2 + k2): v for (n1, n2), v in b.poly.items()}) for b in a.blocks())


def exp_P(a: Symbol, j: int, t: complex) -> Symbol:
    """``e^{t P_j} a``: the shift ``x_j -> x_j - t i / (2 pi)``."""
    d = -1j * t / (2 * math.pi)
    return shift(a, d, 0) if j == 1 else shift(a, 0, d)


def exp_Q(a: Symbol, j: int, t: complex) -> Symbol:
    """``e^{t Q_j} a``: multiplication by ``e^{t x_j}``."""
    return mul_exp(a, t, 0) if j == 1 else mul_exp(a, 0, t)


def pointwise(a: Symbol, b: Symbol) -> Symbol:
    """Ordinary pointwise product ``a(x) b(x)``."""
    blocks = []
    for p in a.blocks():
        for r in b.blocks():
            A = tuple(x + y for x, y in zip(p.A, r.A))
            c = (p.c[0] + r.c[0], p.c[1] + r.c[1])
            poly: dict = {}
            for (m1, m2), u in p.poly.items():
                for (n1, n2), v in r.poly.items():
                    key = (m1 + n1, m2 + n2)
                    poly[key] = poly.get(key, 0) + u * v
            blocks.append(_Block(A, c, poly))
    return Symbol(blocks)


def conj(a: Symbol) -> Symbol:
    """The symbol ``a-bar`` with ``a-bar(x) = conj(a(conj x))``; equals ``conj(a)`` on real points."""
    return Symbol(
        _Block(tuple(v.conjugate() for v in b.A), tuple(v.conjugate() for v in b.c),
               {k: v.conjugate() for k, v in b.poly.items()})
        for b in a.blocks()
    )


def star(a: Symbol) -> Symbol:
    """The Weyl involution: complex conjugation of the function on the real plane."""
    return conj(a)


def star_transformed(a: Symbol, ctx: DeformationContext) -> Symbol:
    """Involution transported by ``T``: ``T((T^{-1} a)^*) = a-bar(x1 + beta i / 2, x2 - alpha i / 2)``.

    This is the involution for which ``int e^{pi(alpha x1 + beta x2)} (b^star nat a)``
    reproduces the L2 scalar product.
    """
    return shift(conj(a), 0.5j * ctx.beta, -0.5j * ctx.alpha)


# -- integrals -------------------------------------------------------------------

def _to_symbol(Aq, cl, poly) -> Symbol:
    if not poly:
        return Symbol()
    return Symbol([_Block((Aq[0, 0], (Aq[0, 1] + Aq[1, 0]) / 2, Aq[1, 1]), (cl[0], cl[1]), poly)])


def plain_integral(a: Symbol) -> complex:
    """``int_{R^2} a(x) dx`` in closed form."""
    total = 0j
    for b in a.blocks():
        _, _, res = gaussian_integral(b.poly, 2, 0, b.matrix(), np.zeros((2, 0)), np.array(b.c))
        total += res.get((), 0)
    return total


def weighted_integral(a: Symbol, w1: complex, w2: complex) -> complex:
    """``int e^{w1 x1 + w2 x2} a(x) dx``."""
    return plain_integral(mul_exp(a, w1, w2))


def l2_inner(a: Symbol, b: Symbol) -> complex:
    """``(a, b) = int a(x) conj(b(x)) dx`` (linear in ``a``)."""
    return plain_integral(pointwise(a, conj(b)))


def l2_norm(a: Symbol) -> float:
    return math.sqrt(max(l2_inner(a, a).real, 0.0))


def l2_distance(a: Symbol, b: Symbol) -> float:
    return l2_norm(a - b)


def fourier(a: Symbol, inverse: bool = False) -> Symbol:
    """``(F a)(x) = int e^{-2 pi i t.x} a(t) dt``; ``inverse`` flips the sign of the phase."""
    sign = 1 if inverse else -1
    B = sign * 2j * math.pi * np.eye(2)
    out = Symbol()
    for b in a.blocks():
        poly = {(n1, n2, 0, 0): v for (n1, n2), v in b.poly.items()}
        out = out + _to_symbol(*gaussian_integral(poly, 2, 2, b.matrix(), B, np.array(b.c)))
    return out


# -- twisted product -------------------------------------------------------------

_S = np.zeros((4, 4), dtype=complex)
_S[0, 3] = _S[3, 0] = 0.5
_S[1, 2] = _S[2, 1] = -0.5
_BX = 4j * math.pi * np.array([[0, -1], [1, 0], [0, 1], [-1, 0]], dtype=complex)


def twisted_product(a: Symbol, b: Symbol) -> Symbol:
    """Weyl product ``a # b`` by direct closed-form evaluation of

        4 int a(u) b(v) exp(4 pi i [(x1-u1)(x2-v2) - (x1-v1)(x2-u2)]) du dv.

    The phase is quadratic in ``(u, v, x)``, so each pair of Gaussian blocks
    gives one Gaussian integral over R^4.
    """
    out = []
    for p in a.blocks():
        for r in b.blocks():
            M = np.zeros((4, 4), dtype=complex)
            M[:2, :2] = p.matrix()
            M[2:, 2:] = r.matrix()
            M -= 4j * math.pi * _S
            bvec = np.array([p.c[0], p.c[1], r.c[0], r.c[1]])
            poly = {}
            for (m1, m2), u in p.poly.items():
                for (n1, n2), v in r.poly.items():
                    poly[(m1, m2, n1, n2, 0, 0)] = u * v
            Aq, cl, res = gaussian_integral(poly, 4, 2, M, _BX, bvec)
            out.extend(_to_symbol(Aq, cl, {k: 4 * v for k, v in res.items()}).blocks())
    return Symbol(out)


def twisted_convolution(c: Symbol, d: Symbol) -> Symbol:
    """``int c(u) d(x - u) exp(pi i (x1 u2 - x2 u1)) du``."""
    out = []
    J = 1j * math.pi * np.array([[0, -1], [1, 0]], dtype=complex)
    for p in c.blocks():
        for r in d.blocks():
            Ad = r.matrix()
            M = p.matrix() + Ad
            B = 2 * Ad + J
            bvec = np.array(p.c) - np.array(r.c)
            # poly in (u1, u2, x1, x2): P_c(u) P_d(x - u)
            poly: dict = {}
            for (m1, m2), u in p.poly.items():
                for (n1, n2), v in r.poly.items():
                    for i1 in range(n1 + 1):
                        for i2 in range(n2 + 1):
                            coeff = u * v * comb(n1, i1) * comb(n2, i2) * (-1) ** (i1 + i2)
                            key = (m1 + i1, m2 + i2, n1 - i1, n2 - i2)
                            poly[key] = poly.get(key, 0) + coeff
            Aq, cl, res = gaussian_integral(poly, 2, 2, M, B, bvec)
            out.extend(_to_symbol(Aq + Ad, cl + np.array(r.c), res).blocks())
    return Symbol(out)


def twisted_product_fourier(a: Symbol, b: Symbol) -> Symbol:
    """``a # b`` through ``F(a # b) = F(a) *_t F(b)``; an independent route to the same product."""
    return fourier(twisted_convolution(fourier(a), fourier(b)), inverse=True)


# -- transformed product ---------------------------------------------------------

def _natural_left(a: Symbol, ctx: DeformationContext, sign: int) -> Symbol:
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    a = exp_Q(a, 1, -pi / 2 * al)
    a = exp_P(a, 1, sign * pi / 4 * be)
    a = exp_Q(a, 2, -pi / 2 * be)
    return exp_P(a, 2, -sign * pi / 4 * al)


def natural_product(a: Symbol, b: Symbol, ctx: DeformationContext) -> Symbol:
    """Transformed product ``a nat b`` in its symmetric form:

    ``(e^{pi beta P1/4} e^{-pi alpha Q1/2} x e^{-pi alpha P2/4} e^{-pi beta Q2/2}) a``
    ``#  (e^{-pi beta P1/4} e^{-pi alpha Q1/2} x e^{pi alpha P2/4} e^{-pi beta Q2/2}) b``.
    """
    return twisted_product(_natural_left(a, ctx, 1), _natural_left(b, ctx, -1))


def natural_product_right(a: Symbol, b: Symbol, ctx: DeformationContext) -> Symbol:
    """``a # (e^{-pi beta P1/2} e^{-pi alpha Q1} x e^{pi alpha P2/2} e^{-pi beta Q2}) b``."""
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    b = exp_P(exp_Q(b, 1, -pi * al), 1, -pi / 2 * be)
    b = exp_P(exp_Q(b, 2, -pi * be), 2, pi / 2 * al)
    return twisted_product(a, b)


def natural_product_left(a: Symbol, b: Symbol, ctx: DeformationContext) -> Symbol:
    """``(e^{pi beta P1/2} e^{-pi alpha Q1} x e^{-pi alpha P2/2} e^{-pi beta Q2}) a # b``."""
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    a = exp_P(exp_Q(a, 1, -pi * al), 1, pi / 2 * be)
    a = exp_P(exp_Q(a, 2, -pi * be), 2, -pi / 2 * al)
    return twisted_product(a, b)

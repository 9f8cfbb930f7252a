"""The coordinate *-algebra of the real quantum plane, ``xy = q yx``.

Elements are Laurent polynomials in the normal order ``x^m y^n``.  The
module also provides the left U_q(gl_2) action, the q-derivatives and the
two first-order differential calculi ``plus`` and ``minus``.

One-forms are stored with *right* coefficients, ``dz = dx.u + dy.v``;
this is the convention under which the coordinate formulas for the
partial derivatives hold (checked in the test-suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

from ._linear import LinearCombination
from .params import DeformationContext, DomainError, qpow
from .uqgl2 import UqElement, act_by_factoring

Key = tuple[int, int]
Calculus = Literal["plus", "minus"]


class PlaneElement(LinearCombination):
    """Laurent polynomial ``sum c_{mn} x^m y^n`` in O(R^2_q) or its localisation."""

    __slots__ = ()

    def _unit_key(self) -> Key:
        return (0, 0)

    def _mul_keys(self, k1: Key, k2: Key):
        m1, n1 = k1
        m2, n2 = k2
        # y^n x^m = q^{-mn} x^m y^n
        yield (m1 + m2, n1 + n2), qpow(self.ctx, -n1 * m2)

    def _format_key(self, key: Key) -> str:
        parts = []
        for name, e in zip("xy", key):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def is_polynomial(self) -> bool:
        return all(m >= 0 and n >= 0 for m, n in self.terms)

    def degree(self) -> int:
        return max((m + n for m, n in self.terms), default=0)


def x(ctx: DeformationContext, power: int = 1) -> PlaneElement:
    return PlaneElement.monomial(ctx, (power, 0))


def y(ctx: DeformationContext, power: int = 1) -> PlaneElement:
    return PlaneElement.monomial(ctx, (0, power))


def mono(ctx: DeformationContext, m: int, n: int, coeff: complex = 1) -> PlaneElement:
    return PlaneElement.monomial(ctx, (m, n), coeff)


def multiply(z: PlaneElement, w: PlaneElement) -> PlaneElement:
    return z * w


def involution(z: PlaneElement) -> PlaneElement:
    """Antilinear anti-automorphism fixing ``x`` and ``y``: ``(x^m y^n)^* = y^n x^m``."""
    ctx = z.ctx
    return PlaneElement(ctx, {(m, n): c.conjugate() * qpow(ctx, -m * n) for (m, n), c in z.terms.items()})


def monomial_inverse(z: PlaneElement) -> PlaneElement:
    """Inverse of a single monomial ``c x^m y^n``."""
    if len(z.terms) != 1:
        raise DomainError("only single monomials are invertible")
    ((m, n), c), = z.terms.items()
    return PlaneElement(z.ctx, {(-m, -n): qpow(z.ctx, -m * n) / c})


def qint(ctx: DeformationContext, n: int, base: int = -2) -> complex:
    """Coefficient of ``D_{q^base}`` on ``x^n``: ``(1 - q^{base n}) / (1 - q^base)``."""
    if n == 0:
        return 0j
    return (1 - qpow(ctx, base * n)) / (1 - qpow(ctx, base))


# -- U_q(gl_2) action ---------------------------------------------------------

def _generator(ctx: DeformationContext, name: str, power: int, z: PlaneElement) -> PlaneElement:
    terms = dict(z.terms)
    for _ in range(power if name in "EF" else 1):
        acc: dict[Key, complex] = {}
        for (m, n), c in terms.items():
            if name == "E":
                key, d = (m - 1, n + 1), qpow(ctx, (m + n - 1) / 2) * qint(ctx, m)
            elif name == "F":
                key, d = (m + 1, n - 1), qpow(ctx, (m + n - 1) / 2) * qint(ctx, n)
            elif name == "K1":
                key, d = (m, n), qpow(ctx, -power * m / 2)
            else:
                key, d = (m, n), qpow(ctx, -power * n / 2)
            if d != 0:
                acc[key] = acc.get(key, 0) + c * d
        terms = acc
    return PlaneElement(ctx, terms)


def act(f: UqElement, z: PlaneElement) -> PlaneElement:
    """Left action of U_q(gl_2) on polynomials in ``x`` and ``y``.

    On generators: ``E > x^m y^n = q^{(m+n-1)/2} [m] x^{m-1} y^{n+1}``,
    ``F > x^m y^n = q^{(m+n-1)/2} [n] x^{m+1} y^{n-1}``,
    ``K1 > x^m y^n = q^{-m/2} x^m y^n``, ``K2 > x^m y^n = q^{-n/2} x^m y^n``.
    """
    if not z.is_polynomial():
        raise DomainError("the U_q(gl_2) action is defined on polynomials only")
    ctx = z.ctx
    return act_by_factoring(f, z, lambda name, p, w: _generator(ctx, name, p, w), PlaneElement.zero(ctx))


def qderiv_x(z: PlaneElement) -> PlaneElement:
    """``D^q_x (g(x) h(y)) = q^{1/2} lam D(g)(qx) h(qy)``."""
    _require_polynomial(z)
    ctx = z.ctx
    pre = qpow(ctx, 0.5) * ctx.lam
    return PlaneElement._from_pairs(
        ctx,
        (((m - 1, n), c * pre * qint(ctx, m) * qpow(ctx, m - 1 + n)) for (m, n), c in z.terms.items() if m),
    )


def qderiv_y(z: PlaneElement) -> PlaneElement:
    """``D^q_y (g(x) h(y)) = q^{-1/2} lam g(x) D(h)(qy)``."""
    _require_polynomial(z)
    ctx = z.ctx
    pre = qpow(ctx, -0.5) * ctx.lam
    return PlaneElement._from_pairs(
        ctx,
        (((m, n - 1), c * pre * qint(ctx, n) * qpow(ctx, n - 1)) for (m, n), c in z.terms.items() if n),
    )


def _require_polynomial(z: PlaneElement) -> None:
    if not z.is_polynomial():
        raise DomainError("expected an element of O(R^2_q) without negative powers")


# -- first-order differential calculi -----------------------------------------

@dataclass(frozen=True)
class FreeForm:
    """One-form ``t1 e1 + t2 e2`` in the free bimodule with central basis ``e1, e2``."""

    t1: LinearCombination
    t2: LinearCombination

    def __add__(self, other: "FreeForm") -> "FreeForm":
        return FreeForm(self.t1 + other.t1, self.t2 + other.t2)

    def __sub__(self, other: "FreeForm") -> "FreeForm":
        return FreeForm(self.t1 - other.t1, self.t2 - other.t2)

    def lmul(self, z) -> "FreeForm":
        return FreeForm(z * self.t1, z * self.t2)

    def rmul(self, z) -> "FreeForm":
        return FreeForm(self.t1 * z, self.t2 * z)

    def max_abs(self) -> float:
        return max(self.t1.max_abs(), self.t2.max_abs())


@dataclass(frozen=True)
class OneForm:
    """``dx.cx + dy.cy`` in the calculus ``calc``."""

    cx: PlaneElement
    cy: PlaneElement
    calc: Calculus

    def to_free(self) -> FreeForm:
        dx, dy = basis_forms(self.cx.ctx, self.calc)
        return dx.rmul(self.cx) + dy.rmul(self.cy)


def omega(ctx: DeformationContext, calc: Calculus, xe=None, ye=None) -> FreeForm:
    """The element ``omega`` with ``dz = omega z - z omega``.

    ``xe`` and ``ye`` default to the plane generators; other realisations
    (for instance inside the W-algebra) can be supplied as long as they
    provide ``*`` and integer powers through ``pow_fn``.
    """
    xp, yp = _powers(ctx, xe, ye)
    q2 = qpow(ctx, 2)
    if calc == "minus":
        return FreeForm((xp(2) * yp(-2)).scale(q2), yp(-2))
    if calc == "plus":
        return FreeForm((yp(2) * xp(-2)).scale(1 / q2), xp(-2))
    raise ValueError(f"unknown calculus {calc!r}")


def basis_forms(ctx: DeformationContext, calc: Calculus, xe=None, ye=None) -> tuple[FreeForm, FreeForm]:
    """Closed forms of ``dx`` and ``dy`` in the free bimodule."""
    xp, yp = _powers(ctx, xe, ye)
    q2 = qpow(ctx, 2)
    if calc == "minus":
        dx = FreeForm((xp(3) * yp(-2)).scale((q2 - 1) * q2), (xp(1) * yp(-2)).scale(q2 - 1))
        dy = FreeForm((xp(2) * yp(-1)).scale(q2 - 1), xp(0).scale(0))
    elif calc == "plus":
        r = 1 / q2 - 1
        dx = FreeForm((yp(2) * xp(-1)).scale(r), xp(0).scale(0))
        dy = FreeForm((yp(3) * xp(-2)).scale(r / q2), (yp(1) * xp(-2)).scale(r))
    else:
        raise ValueError(f"unknown calculus {calc!r}")
    return dx, dy


def _powers(ctx, xe, ye) -> tuple[Callable[[int], LinearCombination], Callable[[int], LinearCombination]]:
    if xe is None:
        return (lambda k: x(ctx, k)), (lambda k: y(ctx, k))
    return xe, ye


def commutator_form(z, w: FreeForm) -> FreeForm:
    """``w z - z w`` for a one-form ``w``."""
    return w.rmul(z) - w.lmul(z)


def solve_right(theta: FreeForm, dx: FreeForm, dy: FreeForm, inverse: Callable) -> tuple:
    """Right coefficients ``(u, v)`` with ``theta = dx.u + dy.v``.

    Uses that one of ``dx``, ``dy`` has a vanishing ``e2`` part and that the
    remaining entries are single monomials.
    """
    if not dy.t2.terms:
        u = inverse(dx.t2) * theta.t2
        v = inverse(dy.t1) * (theta.t1 - dx.t1 * u)
    elif not dx.t2.terms:
        v = inverse(dy.t2) * theta.t2
        u = inverse(dx.t1) * (theta.t1 - dy.t1 * v)
    else:
        raise ValueError("basis forms are not triangular")
    return u, v


def differential(z: PlaneElement, calc: Calculus = "minus") -> OneForm:
    """``dz = omega z - z omega`` expressed in the left-free basis ``{dx, dy}``."""
    ctx = z.ctx
    theta = commutator_form(z, omega(ctx, calc))
    dx, dy = basis_forms(ctx, calc)
    u, v = solve_right(theta, dx, dy, monomial_inverse)
    return OneForm(u, v, calc)


def partials_closed(z: PlaneElement, calc: Calculus = "minus") -> tuple[PlaneElement, PlaneElement]:
    """Coordinate formulas for ``d_x``, ``d_y`` on polynomials.

    minus: ``d_x(x^m y^n) = [m] x^{m-1} y^n``, ``d_y(x^m y^n) = q^{-m} [n] x^m y^{n-1}``.
    plus:  ``d_x(x^m y^n) = q^{2n} [m]' x^{m-1} y^n``, ``d_y(x^m y^n) = q^m [n]' x^m y^{n-1}``,
    where ``[m]' = (1 - q^{2m}) / (1 - q^2)`` as forced by ``x dx = q^2 dx.x``.
    """
    _require_polynomial(z)
    ctx = z.ctx
    if calc == "minus":
        fx = lambda m, n: qint(ctx, m)
        fy = lambda m, n: qpow(ctx, -m) * qint(ctx, n)
    else:
        fx = lambda m, n: qpow(ctx, 2 * n) * qint(ctx, m, 2)
        fy = lambda m, n: qpow(ctx, m) * qint(ctx, n, 2)
    dx = PlaneElement._from_pairs(ctx, (((m - 1, n), c * fx(m, n)) for (m, n), c in z.terms.items() if m))
    dy = PlaneElement._from_pairs(ctx, (((m, n - 1), c * fy(m, n)) for (m, n), c in z.terms.items() if n))
    return dx, dy


def random_polynomial(ctx: DeformationContext, rng, degree: int = 4, terms: int = 3) -> PlaneElement:
    acc: dict[Key, complex] = {}
    for _ in range(terms):
        m = int(rng.integers(0, degree + 1))
        n = int(rng.integers(0, degree + 1 - m))
        acc[(m, n)] = acc.get((m, n), 0) + complex(rng.normal(), rng.normal())
    return PlaneElement(ctx, acc)

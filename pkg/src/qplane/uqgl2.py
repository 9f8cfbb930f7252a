"""The Hopf *-algebra U_q(gl_2) in the PBW basis ``E^a K1^m K2^n F^b``.

Relations used for normal ordering::

    K1 E = q^{1/2} E K1,   K2 E = q^{-1/2} E K2,
    K1 F = q^{-1/2} F K1,  K2 F = q^{1/2} F K2,
    E F - F E = lam^{-1} (K^2 - K^{-2}),   K = K1 K2^{-1}.

Hopf structure::

    Delta(Kj) = Kj (x) Kj,  Delta(E) = E (x) K + K^{-1} (x) E,
    Delta(F) = F (x) K + K^{-1} (x) F,
    eps(Kj) = 1, eps(E) = eps(F) = 0,
    S(Kj) = Kj^{-1}, S(E) = -q E, S(F) = -q^{-1} F.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable, Literal

from ._linear import LinearCombination
from .params import DeformationContext, qpow

Key = tuple[int, int, int, int]
UNIT: Key = (0, 0, 0, 0)
E_KEY: Key = (1, 0, 0, 0)
F_KEY: Key = (0, 0, 0, 1)

Flavor = Literal["star", "dagger", "adjoint"]


class UqElement(LinearCombination):
    """Element of U_q(gl_2); keys are PBW exponents ``(a, m, n, b)``."""

    __slots__ = ()

    def _unit_key(self) -> Key:
        return UNIT

    def _mul_keys(self, k1: Key, k2: Key):
        return _mul_monomials(self.ctx, k1, k2)

    def _format_key(self, key: Key) -> str:
        a, m, n, b = key
        parts = []
        for name, e in (("E", a), ("K1", m), ("K2", n), ("F", b)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(map(abs, kv[0])), kv[0]))


# -- generators ---------------------------------------------------------------

def one(ctx: DeformationContext) -> UqElement:
    return UqElement.monomial(ctx, UNIT)


def E(ctx: DeformationContext) -> UqElement:
    return UqElement.monomial(ctx, E_KEY)


def F(ctx: DeformationContext) -> UqElement:
    return UqElement.monomial(ctx, F_KEY)


def K1(ctx: DeformationContext, power: int = 1) -> UqElement:
    return UqElement.monomial(ctx, (0, power, 0, 0))


def K2(ctx: DeformationContext, power: int = 1) -> UqElement:
    return UqElement.monomial(ctx, (0, 0, power, 0))


def K(ctx: DeformationContext, power: int = 1) -> UqElement:
    """``K = K1 K2^{-1}`` raised to ``power``."""
    return UqElement.monomial(ctx, (0, power, -power, 0))


def L(ctx: DeformationContext) -> UqElement:
    """The central group-like element ``K1 K2``."""
    return UqElement.monomial(ctx, (0, 1, 1, 0))


def E_prime(ctx: DeformationContext) -> UqElement:
    return E(ctx).scale(qpow(ctx, 0.5) * ctx.lam)


def F_prime(ctx: DeformationContext) -> UqElement:
    return F(ctx).scale(qpow(ctx, -0.5) * ctx.lam)


def generators(ctx: DeformationContext) -> dict[str, UqElement]:
    return {"E": E(ctx), "F": F(ctx), "K1": K1(ctx), "K2": K2(ctx)}


# -- normal ordering ----------------------------------------------------------

def _add(acc: dict[Key, complex], key: Key, c: complex) -> None:
    acc[key] = acc.get(key, 0) + c


@lru_cache(maxsize=None)
def _rmul_E(ctx: DeformationContext, key: Key) -> tuple[tuple[Key, complex], ...]:
    """Normal form of ``mono * E``."""
    a, m, n, b = key
    if b == 0:
        return (((a + 1, m, n, 0), qpow(ctx, (m - n) / 2)),)
    prev = (a, m, n, b - 1)
    acc: dict[Key, complex] = {}
    # M F E = M E F - lam^{-1} M (K^2 - K^{-2})
    for k, c in _rmul_E(ctx, prev):
        _add(acc, (k[0], k[1], k[2], k[3] + 1), c)
    inv_lam = 1 / ctx.lam
    for (s, t), sign in (((2, -2), -1), ((-2, 2), 1)):
        k, c = _rmul_K(ctx, prev, s, t)
        _add(acc, k, sign * inv_lam * c)
    return tuple((k, c) for k, c in acc.items() if c != 0)


def _rmul_K(ctx: DeformationContext, key: Key, s: int, t: int) -> tuple[Key, complex]:
    """``mono * K1^s K2^t`` (a single monomial)."""
    a, m, n, b = key
    return (a, m + s, n + t, b), qpow(ctx, (s - t) * b / 2)


@lru_cache(maxsize=None)
def _mul_monomials(ctx: DeformationContext, k1: Key, k2: Key) -> tuple[tuple[Key, complex], ...]:
    a, m, n, b = k2
    current: dict[Key, complex] = {k1: 1}
    for _ in range(a):
        nxt: dict[Key, complex] = {}
        for key, c in current.items():
            for k, d in _rmul_E(ctx, key):
                _add(nxt, k, c * d)
        current = nxt
    if m or n:
        nxt = {}
        for key, c in current.items():
            k, d = _rmul_K(ctx, key, m, n)
            _add(nxt, k, c * d)
        current = nxt
    if b:
        current = {(k[0], k[1], k[2], k[3] + b): c for k, c in current.items()}
    return tuple((k, c) for k, c in current.items() if c != 0)


# -- tensor powers ------------------------------------------------------------

class UqTensor(LinearCombination):
    """Element of a tensor power of U_q(gl_2); keys are tuples of PBW keys."""

    __slots__ = ()

    def _mul_keys(self, k1: tuple[Key, ...], k2: tuple[Key, ...]):
        legs = [_mul_monomials(self.ctx, a, b) for a, b in zip(k1, k2)]
        for combo in itertools.product(*legs):
            c = 1 + 0j
            for _, d in combo:
                c *= d
            yield tuple(k for k, _ in combo), c

    def _format_key(self, key) -> str:
        fmt = UqElement(self.ctx)._format_key
        return " (x) ".join(fmt(k) for k in key)

    def __pow__(self, n: int) -> "UqTensor":
        result = UqTensor(self.ctx, {(UNIT,) * self.legs(): 1})
        for _ in range(n):
            result = result * self
        return result

    def legs(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def map_leg(self, i: int, fn: Callable[[UqElement], "UqElement | UqTensor"]) -> "UqTensor":
        """Apply ``fn`` to leg ``i`` (linear maps; result may add legs)."""
        acc: dict = {}
        for key, c in self.terms.items():
            image = fn(UqElement.monomial(self.ctx, key[i]))
            for k, d in image.terms.items():
                sub = k if isinstance(image, UqTensor) else (k,)
                new = key[:i] + sub + key[i + 1:]
                acc[new] = acc.get(new, 0) + c * d
        return UqTensor(self.ctx, acc)

    def star_legs(self, flavor: Flavor = "star") -> "UqTensor":
        """Apply the (antilinear) involution on every leg."""
        acc: dict = {}
        for key, c in self.terms.items():
            images = [star(UqElement.monomial(self.ctx, k), flavor).terms.items() for k in key]
            for combo in itertools.product(*images):
                d = c.conjugate()
                for _, e in combo:
                    d *= e
                new = tuple(k for k, _ in combo)
                acc[new] = acc.get(new, 0) + d
        return UqTensor(self.ctx, acc)

    def multiply_legs(self) -> UqElement:
        """Multiplication map ``m(a (x) b (x) ...) = a b ...``."""
        out = UqElement.zero(self.ctx)
        for key, c in self.terms.items():
            prod = UqElement.monomial(self.ctx, key[0], c)
            for k in key[1:]:
                prod = prod * UqElement.monomial(self.ctx, k)
            out = out + prod
        return out


def tensor(*elements: UqElement) -> UqTensor:
    ctx = elements[0].ctx
    acc: dict = {}
    for combo in itertools.product(*(e.terms.items() for e in elements)):
        c = 1 + 0j
        for _, d in combo:
            c *= d
        key = tuple(k for k, _ in combo)
        acc[key] = acc.get(key, 0) + c
    return UqTensor(ctx, acc)


# -- Hopf structure -----------------------------------------------------------

@lru_cache(maxsize=None)
def _coproduct_monomial(ctx: DeformationContext, key: Key) -> tuple:
    a, m, n, b = key
    k_key = (0, 1, -1, 0)
    kinv_key = (0, -1, 1, 0)
    dE = UqTensor(ctx, {(E_KEY, k_key): 1, (kinv_key, E_KEY): 1})
    dF = UqTensor(ctx, {(F_KEY, k_key): 1, (kinv_key, F_KEY): 1})
    kk = (0, m, n, 0)
    result = dE ** a if a else UqTensor(ctx, {(UNIT, UNIT): 1})
    result = result * UqTensor(ctx, {(kk, kk): 1})
    if b:
        result = result * dF ** b
    return tuple(result.terms.items())


def coproduct(f: UqElement) -> UqTensor:
    acc: dict = {}
    for key, c in f.terms.items():
        for k, d in _coproduct_monomial(f.ctx, key):
            acc[k] = acc.get(k, 0) + c * d
    return UqTensor(f.ctx, acc)


def counit(f: UqElement) -> complex:
    return sum((c for (a, m, n, b), c in f.terms.items() if a == 0 and b == 0), 0j)


def character_chi(f: UqElement) -> complex:
    """The character with ``chi(Kj) = q^{1/2}`` and ``chi(E) = chi(F) = 0``."""
    ctx = f.ctx
    return sum(
        (c * qpow(ctx, (m + n) / 2) for (a, m, n, b), c in f.terms.items() if a == 0 and b == 0),
        0j,
    )


def _reverse_product(ctx: DeformationContext, key: Key, images: dict[str, UqElement]) -> UqElement:
    """Product ``img(F)^b img(K2)^n img(K1)^m img(E)^a`` for anti-homomorphisms."""
    a, m, n, b = key
    out = images["F"] ** b if b else one(ctx)
    if n:
        out = out * images["K2"] ** abs(n) if n > 0 else out * images["K2inv"] ** (-n)
    if m:
        out = out * images["K1"] ** abs(m) if m > 0 else out * images["K1inv"] ** (-m)
    if a:
        out = out * images["E"] ** a
    return out


@lru_cache(maxsize=None)
def _antipode_monomial(ctx: DeformationContext, key: Key) -> tuple:
    images = {
        "E": E(ctx).scale(-ctx.q),
        "F": F(ctx).scale(-1 / ctx.q),
        "K1": K1(ctx, -1),
        "K1inv": K1(ctx, 1),
        "K2": K2(ctx, -1),
        "K2inv": K2(ctx, 1),
    }
    return tuple(_reverse_product(ctx, key, images).terms.items())


def antipode(f: UqElement) -> UqElement:
    acc: dict = {}
    for key, c in f.terms.items():
        for k, d in _antipode_monomial(f.ctx, key):
            acc[k] = acc.get(k, 0) + c * d
    return UqElement(f.ctx, acc)


@lru_cache(maxsize=None)
def _star_monomial(ctx: DeformationContext, key: Key, flavor: Flavor) -> tuple:
    if flavor == "star":
        e, f, k = -ctx.q, -1 / ctx.q, 1.0
    elif flavor == "dagger":
        e, f, k = -1 / ctx.q, -ctx.q, qpow(ctx, -0.5)
    elif flavor == "adjoint":
        # the involution for which the symbol action is a *-representation
        e, f, k = -ctx.q, -1 / ctx.q, qpow(ctx, -0.5)
    else:
        raise ValueError(f"unknown involution flavor {flavor!r}")
    images = {
        "E": E(ctx).scale(e),
        "F": F(ctx).scale(f),
        "K1": K1(ctx).scale(k),
        "K1inv": K1(ctx, -1).scale(1 / k),
        "K2": K2(ctx).scale(k),
        "K2inv": K2(ctx, -1).scale(1 / k),
    }
    return tuple(_reverse_product(ctx, key, images).terms.items())


def star(f: UqElement, flavor: Flavor = "star") -> UqElement:
    """Antilinear anti-homomorphic involution.

    ``star``: ``E -> -qE``, ``F -> -q^{-1}F``, ``K_j -> K_j``.
    ``dagger``: ``E -> -q^{-1}E``, ``F -> -qF``, ``K_j -> q^{-1/2}K_j``.
    ``adjoint``: ``E -> -qE``, ``F -> -q^{-1}F``, ``K_j -> q^{-1/2}K_j``; this is
    the adjoint of the action on symbols with respect to ``h(b^* # a)``, and
    makes ``E'`` and ``F'`` hermitian.
    """
    acc: dict = {}
    for key, c in f.terms.items():
        for k, d in _star_monomial(f.ctx, key, flavor):
            acc[k] = acc.get(k, 0) + c.conjugate() * d
    return UqElement(f.ctx, acc)


def multiply(f: UqElement, g: UqElement) -> UqElement:
    return f * g


# -- generator factorisation used by module actions ---------------------------

def factor_monomial(key: Key) -> list[tuple[str, int]]:
    """Sequence of generator applications for ``E^a K1^m K2^n F^b``, rightmost first."""
    a, m, n, b = key
    steps: list[tuple[str, int]] = []
    if b:
        steps.append(("F", b))
    if n:
        steps.append(("K2", n))
    if m:
        steps.append(("K1", m))
    if a:
        steps.append(("E", a))
    return steps


def act_by_factoring(f: UqElement, z, apply_generator: Callable, zero):
    """Left action of ``f`` assembled from generator kernels.

    ``apply_generator(name, power, z)`` must return the image of ``z`` under
    ``name**power`` where ``name`` is one of E, F, K1, K2 (powers of E and F
    are nonnegative, powers of K1, K2 may be negative).
    """
    out = zero
    for key, c in f.terms.items():
        w = z
        for name, power in factor_monomial(key):
            w = apply_generator(name, power, w)
        out = out + w * c
    return out


def random_element(ctx: DeformationContext, rng, degree: int = 3, terms: int = 3) -> UqElement:
    """Random element whose PBW monomials have ``a + |m| + |n| + b <= degree``."""
    acc: dict[Key, complex] = {}
    for _ in range(terms):
        while True:
            a, b = (int(v) for v in rng.integers(0, degree + 1, size=2))
            m, n = (int(v) for v in rng.integers(-degree, degree + 1, size=2))
            if a + b + abs(m) + abs(n) <= degree:
                break
        c = complex(rng.normal(), rng.normal())
        acc[(a, m, n, b)] = acc.get((a, m, n, b), 0) + c
    return UqElement(ctx, acc)


def pbw_monomials(max_degree: int) -> Iterable[Key]:
    for a in range(max_degree + 1):
        for b in range(max_degree + 1 - a):
            rest = max_degree - a - b
            for m in range(-rest, rest + 1):
                for n in range(-(rest - abs(m)), rest - abs(m) + 1):
                    yield (a, m, n, b)

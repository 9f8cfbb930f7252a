"""The glued real quantum plane: 4-tuples of symbols, one per quarter plane.

Component ``j`` (0-based) is identified with the element of the Klein
four-group whose bits are those of ``j``, so the group law is ``xor``.  The symmetry

    J = 1/2 [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]

is the Walsh-Hadamard transform on that group.  The quarter-plane algebras
carry the transported product ``nat`` and involution ``star``; transporting
the componentwise product by ``J`` gives

    (a o b)_c = 1/2 sum_{i xor j = c} a_i nat b_j,

and ``J diag(s) J`` turns a sign pattern ``s`` into a permutation block
matrix.  That is how the block operators below arise from the componentwise
actions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from . import symbols as S
from .bqaction import SymbolOperator, partials_symbol_closed
from .functionals import L_operator, Phi_operator, R_operator
from .params import DeformationContext
from .symbols import Symbol

_J_SIGNS = ((1, 1, 1, 1), (1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1))

# sign patterns of the componentwise actions before applying J
SIGN_PATTERNS: dict[str, tuple[int, int, int, int]] = {
    "x": (1, -1, 1, -1),
    "y": (1, 1, -1, -1),
    "E": (1, -1, -1, 1),
    "F": (1, -1, -1, 1),
    "K1": (1, 1, 1, 1),
    "K2": (1, 1, 1, 1),
    "K": (1, 1, 1, 1),
}


@dataclass(frozen=True)
class Tuple4:
    """Four symbols ``(a1, a2, a3, a4)``."""

    a1: Symbol
    a2: Symbol
    a3: Symbol
    a4: Symbol

    @classmethod
    def of(cls, parts: Iterable[Symbol]) -> "Tuple4":
        parts = list(parts)
        if len(parts) != 4:
            raise ValueError("a Tuple4 needs exactly four components")
        return cls(*parts)

    @classmethod
    def zero(cls) -> "Tuple4":
        return cls(Symbol(), Symbol(), Symbol(), Symbol())

    @classmethod
    def first(cls, a: Symbol) -> "Tuple4":
        return cls(a, Symbol(), Symbol(), Symbol())

    @property
    def parts(self) -> tuple[Symbol, Symbol, Symbol, Symbol]:
        return (self.a1, self.a2, self.a3, self.a4)

    def __add__(self, other: "Tuple4") -> "Tuple4":
        return Tuple4.of(a + b for a, b in zip(self.parts, other.parts))

    def __sub__(self, other: "Tuple4") -> "Tuple4":
        return Tuple4.of(a - b for a, b in zip(self.parts, other.parts))

    def scale(self, c: complex) -> "Tuple4":
        return Tuple4.of(a.scale(c) for a in self.parts)

    def norm(self) -> float:
        return math.sqrt(sum(S.l2_norm(a) ** 2 for a in self.parts))

    def distance(self, other: "Tuple4") -> float:
        return (self - other).norm()

    def relative_distance(self, other: "Tuple4") -> float:
        return self.distance(other) / max(1.0, self.norm())

    def to_json(self) -> list:
        return [a.to_json() for a in self.parts]


def random_tuple(rng, terms: int = 1, degree: int = 1, **kwargs) -> Tuple4:
    return Tuple4.of(S.random_symbol(rng, terms, degree, **kwargs) for _ in range(4))


# -- J, product, involution ------------------------------------------------------------

def apply_J(v: Tuple4) -> Tuple4:
    out = []
    for row in _J_SIGNS:
        acc = Symbol()
        for s, a in zip(row, v.parts):
            acc = acc + a.scale(0.5 * s)
        out.append(acc)
    return Tuple4.of(out)


def componentwise_natural(a: Tuple4, b: Tuple4, ctx: DeformationContext) -> Tuple4:
    return Tuple4.of(S.natural_product(x, y, ctx) for x, y in zip(a.parts, b.parts))


def circle_product(a: Tuple4, b: Tuple4, ctx: DeformationContext) -> Tuple4:
    """``(a o b)_c = 1/2 sum_{i xor j = c} a_i nat b_j``."""
    out = [Symbol() for _ in range(4)]
    for i, ai in enumerate(a.parts):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b.parts):
            if bj.is_zero():
                continue
            out[i ^ j] = out[i ^ j] + S.natural_product(ai, bj, ctx).scale(0.5)
    return Tuple4.of(out)


def circle_product_via_J(a: Tuple4, b: Tuple4, ctx: DeformationContext) -> Tuple4:
    """``J(J(a) nat J(b))`` with the componentwise product."""
    return apply_J(componentwise_natural(apply_J(a), apply_J(b), ctx))


# pairing table of the printed product: output component -> list of (i, j)
_PRINTED_PAIRS = (
    ((0, 0), (1, 1), (2, 2), (3, 3)),
    ((0, 1), (1, 0), (2, 3), (3, 2)),
    ((0, 3), (1, 2), (2, 1), (3, 0)),
    ((0, 2), (1, 3), (2, 0), (3, 1)),
)


def circle_product_printed(a: Tuple4, b: Tuple4, ctx: DeformationContext) -> Tuple4:
    """The product with prefactor 1/4 and components 3, 4 paired as literally printed.

    Kept for comparison only: it is not associative (components 3 and 4 are
    relabelled by a map that does not commute with the group law) and its
    normalisation is half the one induced by ``J``.
    """
    out = []
    for pairs in _PRINTED_PAIRS:
        acc = Symbol()
        for i, j in pairs:
            acc = acc + S.natural_product(a.parts[i], b.parts[j], ctx)
        out.append(acc.scale(0.25))
    return Tuple4.of(out)


def star4(a: Tuple4, ctx: DeformationContext) -> Tuple4:
    return Tuple4.of(S.star_transformed(x, ctx) for x in a.parts)


# -- functional and scalar product -----------------------------------------------------------

def h4(a: Tuple4, ctx: DeformationContext) -> complex:
    """``2 int e^{pi (alpha x1 + beta x2)} a1``."""
    return 2 * S.weighted_integral(a.a1, math.pi * ctx.alpha, math.pi * ctx.beta)


def inner4(a: Tuple4, b: Tuple4, ctx: DeformationContext) -> complex:
    """``h(b^star o a)``."""
    return h4(circle_product(star4(b, ctx), a, ctx), ctx)


def inner4_l2(a: Tuple4, b: Tuple4) -> complex:
    """``sum_j (a_j, b_j)`` in L2."""
    return sum((S.l2_inner(x, y) for x, y in zip(a.parts, b.parts)), 0j)


# -- block operators ----------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockOperator:
    """A 4x4 matrix of symbol operators; missing entries are zero."""

    entries: tuple[tuple[tuple[int, int], SymbolOperator], ...]

    @classmethod
    def from_dict(cls, d: dict[tuple[int, int], SymbolOperator]) -> "BlockOperator":
        return cls(tuple(sorted(((k, v) for k, v in d.items() if v.terms), key=lambda kv: kv[0])))

    @classmethod
    def diagonal(cls, op: SymbolOperator, signs=(1, 1, 1, 1)) -> "BlockOperator":
        return cls.from_dict({(i, i): op.scale(s) for i, s in enumerate(signs)})

    def as_dict(self) -> dict[tuple[int, int], SymbolOperator]:
        return dict(self.entries)

    def __matmul__(self, other: "BlockOperator") -> "BlockOperator":
        acc: dict[tuple[int, int], SymbolOperator] = {}
        for (i, j), u in self.entries:
            for (j2, k), v in other.entries:
                if j == j2:
                    term = u @ v
                    acc[(i, k)] = acc[(i, k)] + term if (i, k) in acc else term
        return BlockOperator.from_dict(acc)

    def __add__(self, other: "BlockOperator") -> "BlockOperator":
        acc = self.as_dict()
        for k, v in other.entries:
            acc[k] = acc[k] + v if k in acc else v
        return BlockOperator.from_dict(acc)

    def __sub__(self, other: "BlockOperator") -> "BlockOperator":
        return self + other.scale(-1)

    def scale(self, c: complex) -> "BlockOperator":
        return BlockOperator(tuple((k, v.scale(c)) for k, v in self.entries))

    def apply(self, a: Tuple4) -> Tuple4:
        out = [Symbol() for _ in range(4)]
        for (i, j), op in self.entries:
            out[i] = out[i] + op.apply(a.parts[j])
        return Tuple4.of(out)

    def __call__(self, a: Tuple4) -> Tuple4:
        return self.apply(a)


def _pattern(kind: str, z: SymbolOperator, zstar: SymbolOperator | None = None) -> BlockOperator:
    """``theta_1, theta_2, kappa_1, kappa_2`` block shapes (0-based indices)."""
    zs = z if zstar is None else zstar
    shapes = {
        "theta1": {(0, 1): z, (1, 0): zs, (2, 3): z, (3, 2): zs},
        "theta2": {(0, 2): z, (1, 3): z, (2, 0): zs, (3, 1): zs},
        "kappa1": {(0, 3): z, (1, 2): zs, (2, 1): z, (3, 0): zs},
        "kappa2": {(0, 3): z, (1, 2): z, (2, 1): zs, (3, 0): zs},
    }
    return BlockOperator.from_dict(shapes[kind])


BLOCK_OPS: tuple[str, ...] = ("E", "F", "K1", "K2", "K", "x", "y", "Dqx", "Dqy")


def block_operator(ctx: DeformationContext, op: str) -> BlockOperator:
    """The block matrices of the generator actions and of the q-derivatives."""
    al, be, pi = ctx.alpha, ctx.beta, math.pi
    if op == "E":
        right = SymbolOperator.multiply_exp(0, 2 * pi * be)
        return _pattern("kappa1", L_operator(ctx, 1) @ right, R_operator(ctx, 1) @ right)
    if op == "F":
        left = SymbolOperator.multiply_exp(2 * pi * al, 0)
        return _pattern("kappa2", left @ L_operator(ctx, 2), left @ R_operator(ctx, 2))
    if op == "K1":
        return BlockOperator.diagonal(SymbolOperator.shift(-0.5j * be, 0))
    if op == "K2":
        return BlockOperator.diagonal(SymbolOperator.shift(0, -0.5j * al))
    if op == "K":
        return BlockOperator.diagonal(Phi_operator(ctx, "K"))
    if op == "x":
        return _pattern("theta1", Phi_operator(ctx, "x"))
    if op == "y":
        return _pattern("theta2", Phi_operator(ctx, "y"))
    if op == "Dqx":
        p2 = SymbolOperator.shift(0, 0.5j * al)
        return _pattern("theta1", L_operator(ctx, 1) @ p2, R_operator(ctx, 1) @ p2)
    if op == "Dqy":
        p1 = SymbolOperator.shift(-0.5j * be, 0)
        return _pattern("theta2", p1 @ L_operator(ctx, 2), p1 @ R_operator(ctx, 2))
    raise ValueError(f"unknown block operator {op!r}; expected one of {BLOCK_OPS}")


def block_apply(ctx: DeformationContext, op: str, a: Tuple4) -> Tuple4:
    return block_operator(ctx, op).apply(a)


def y_inverse_block(ctx: DeformationContext) -> BlockOperator:
    return _pattern("theta2", Phi_operator(ctx, "y").inverse())


def x_inverse_block(ctx: DeformationContext) -> BlockOperator:
    return _pattern("theta1", Phi_operator(ctx, "x").inverse())


def Dqx_composed(ctx: DeformationContext) -> BlockOperator:
    """``K y^{-1} E`` as a product of block matrices."""
    return block_operator(ctx, "K") @ y_inverse_block(ctx) @ block_operator(ctx, "E")


def Dqy_composed(ctx: DeformationContext) -> BlockOperator:
    """``K x^{-1} F`` as a product of block matrices."""
    return block_operator(ctx, "K") @ x_inverse_block(ctx) @ block_operator(ctx, "F")


def J_conjugated(ctx: DeformationContext, gen: str, a: Tuple4) -> Tuple4:
    """``J diag(s Phi(gen)) J a`` for the sign pattern ``s`` of the componentwise action."""
    name = {"E": "Eprime", "F": "Fprime"}.get(gen, gen)
    op = Phi_operator(ctx, name)
    if gen in ("K1", "K2"):
        op = op.scale(1 / ctx.qpow(0.25))
    diag = BlockOperator.diagonal(op, SIGN_PATTERNS[gen])
    return apply_J(diag.apply(apply_J(a)))


def block_relation_residuals(ctx: DeformationContext, a: Tuple4) -> dict[str, float]:
    """Defining relations of ``E', F', K_j`` for the block matrices, applied to ``a``."""
    E, F = block_operator(ctx, "E"), block_operator(ctx, "F")
    K1, K2 = block_operator(ctx, "K1"), block_operator(ctx, "K2")
    K1i = BlockOperator.diagonal(SymbolOperator.shift(0.5j * ctx.beta, 0))
    K2i = BlockOperator.diagonal(SymbolOperator.shift(0, 0.5j * ctx.alpha))
    h = ctx.qpow(0.5)

    def res(lhs: BlockOperator, rhs: BlockOperator) -> float:
        return lhs.apply(a).relative_distance(rhs.apply(a))

    return {
        "K1E": res(K1 @ E, (E @ K1).scale(h)),
        "K2E": res(K2 @ E, (E @ K2).scale(1 / h)),
        "K1F": res(K1 @ F, (F @ K1).scale(1 / h)),
        "K2F": res(K2 @ F, (F @ K2).scale(h)),
        "K1K2": res(K1 @ K2, K2 @ K1),
        "EF": res(E @ F - F @ E, (K1 @ K1 @ K2i @ K2i - K1i @ K1i @ K2 @ K2).scale(ctx.lam)),
        "xy": res(block_operator(ctx, "x") @ block_operator(ctx, "y"), (block_operator(ctx, "y") @ block_operator(ctx, "x")).scale(ctx.q)),
    }


# -- partial derivatives ------------------------------------------------------------------------

def block_partials(a: Tuple4, ctx: DeformationContext) -> tuple[Tuple4, Tuple4]:
    """``d_x`` swaps components ``1 <-> 2`` and ``3 <-> 4``, ``d_y`` swaps ``1 <-> 3`` and ``2 <-> 4``,
    each applying the quarter-plane partial derivative to the moved component."""
    dx = [None] * 4
    dy = [None] * 4
    for j, aj in enumerate(a.parts):
        px, py = partials_symbol_closed(aj, ctx) if not aj.is_zero() else (Symbol(), Symbol())
        dx[j ^ 1] = px
        dy[j ^ 2] = py
    return Tuple4.of(dx), Tuple4.of(dy)


__all__ = [
    "Tuple4",
    "random_tuple",
    "apply_J",
    "circle_product",
    "circle_product_via_J",
    "circle_product_printed",
    "componentwise_natural",
    "star4",
    "h4",
    "inner4",
    "inner4_l2",
    "BlockOperator",
    "BLOCK_OPS",
    "block_operator",
    "block_apply",
    "Dqx_composed",
    "Dqy_composed",
    "J_conjugated",
    "SIGN_PATTERNS",
    "block_relation_residuals",
    "block_partials",
]

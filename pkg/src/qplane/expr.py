"""Textual expressions for every algebra in the package.

The grammar is a small arithmetic language parsed with :mod:`ast`:

* ``+ - *`` and ``^`` (or ``**``) with integer exponents; negative exponents
  invert monomials (``K1^-2``, ``x^-1``, ``W(1,0)^-1``).
* complex literals ``(re,im)``, ``i`` for the imaginary unit and ``pi``.
* ``@`` is the twisted product of symbols and the glued product of tuples.
* names and functions depend on the algebra; see :data:`ALGEBRAS`.

Parse failures raise :class:`ExprError` carrying the column of the offending
token in the original text; algebraic domain failures raise
:class:`~qplane.params.DomainError`.
"""

from __future__ import annotations

import ast
import json
import math
import re
from dataclasses import dataclass, replace
from numbers import Number
from typing import Any, Callable

from . import bqaction as B
from . import functionals as Fn
from . import oqplane as O
from . import qplane4 as Q4
from . import symbols as S
from . import uqgl2 as U
from . import walgebra as Wm
from ._linear import LinearCombination, format_complex
from .params import DeformationContext, DomainError

ALGEBRAS = ("uq", "plane", "w", "symbol", "tuple4")


class ExprError(ValueError):
    """A parse or typing error at a known column of the input."""

    def __init__(self, message: str, text: str = "", col: int | None = None):
        super().__init__(message)
        self.message = message
        self.text = text
        self.col = col

    def render(self) -> str:
        if self.col is None or not self.text:
            return f"error: {self.message}"
        return f"error: {self.message} at column {self.col + 1}\n  {self.text}\n  {' ' * self.col}^"


# -- symbol literals --------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    """A product of ``poly``, ``gauss`` and ``exp`` factors not yet closed into a Symbol."""

    n1: int = 0
    n2: int = 0
    eps: tuple[complex, complex] | None = None
    c: tuple[complex, complex] = (0j, 0j)
    coeff: complex = 1 + 0j

    def __mul__(self, other):
        if isinstance(other, Number):
            return replace(self, coeff=self.coeff * other)
        if isinstance(other, Literal):
            if self.eps is not None and other.eps is not None:
                eps = (self.eps[0] + other.eps[0], self.eps[1] + other.eps[1])
            else:
                eps = self.eps if self.eps is not None else other.eps
            c = (self.c[0] + other.c[0], self.c[1] + other.c[1])
            return Literal(self.n1 + other.n1, self.n2 + other.n2, eps, c, self.coeff * other.coeff)
        if isinstance(other, S.Symbol):
            a = S.mul_poly(other, self.n1, self.n2)
            a = S.mul_exp(a, *self.c).scale(self.coeff)
            if self.eps is not None:
                a = S.pointwise(a, S.gaussian(*self.eps))
            return a
        return NotImplemented

    __rmul__ = __mul__

    def close(self) -> S.Symbol:
        if self.eps is None:
            raise DomainError("a symbol literal needs a gauss(eps1, eps2) factor")
        return S.gaussian(self.eps[0], self.eps[1], self.c[0], self.c[1], self.n1, self.n2, self.coeff)


def _sym(v) -> S.Symbol:
    if isinstance(v, Literal):
        return v.close()
    if isinstance(v, S.Symbol):
        return v
    raise TypeError(f"expected a symbol, got {_kind(v)}")


def _kind(v) -> str:
    if isinstance(v, Number):
        return "a number"
    return type(v).__name__


# -- arithmetic on values -----------------------------------------------------------

def _add(a, b, sign=1):
    if isinstance(a, Literal):
        a = a.close()
    if isinstance(b, Literal):
        b = b.close()
    if isinstance(a, S.Symbol) and isinstance(b, Number) or isinstance(b, S.Symbol) and isinstance(a, Number):
        if (b if isinstance(b, Number) else a) != 0:
            raise DomainError("constants are not symbols; only zero may be added to a symbol")
        return a if isinstance(b, Number) else (b if sign > 0 else -b)
    return a + b if sign > 0 else a - b


def _mul(a, b):
    if isinstance(a, Q4.Tuple4) and isinstance(b, Number):
        return a.scale(b)
    if isinstance(b, Q4.Tuple4) and isinstance(a, Number):
        return b.scale(a)
    if isinstance(a, S.Symbol) and isinstance(b, S.Symbol):
        return S.pointwise(a, b)
    out = a * b
    if out is NotImplemented:
        raise TypeError
    return out


def _matmul(a, b, ctx):
    if isinstance(a, Q4.Tuple4) and isinstance(b, Q4.Tuple4):
        return Q4.circle_product(a, b, ctx)
    return S.twisted_product(_sym(a), _sym(b))


def _inverse(v):
    if isinstance(v, Number):
        return 1 / v
    if len(getattr(v, "terms", ())) != 1 or not isinstance(v, LinearCombination):
        raise DomainError(f"only monomials can be inverted, got {v!r}")
    if isinstance(v, U.UqElement):
        (key, c), = v.terms.items()
        a, m, n, b = key
        if a or b:
            raise DomainError("only monomials in K1, K2 are invertible in U_q(gl_2)")
        return U.UqElement.monomial(v.ctx, (0, -m, -n, 0), 1 / c)
    if isinstance(v, O.PlaneElement):
        return O.monomial_inverse(v)
    if isinstance(v, Wm.WElement):
        return Wm.monomial_inverse(v)
    raise DomainError(f"cannot invert {_kind(v)}")


def _pow(a, n):
    if isinstance(n, complex) and n.imag == 0:
        n = n.real
    if not isinstance(n, Number) or isinstance(n, complex) or n != int(n):
        if isinstance(a, Number) and isinstance(n, Number):
            return a**n
        raise TypeError("exponents must be integers")
    n = int(n)
    if isinstance(a, Number):
        return a**n
    if isinstance(a, Literal):
        if a.eps is not None or a.c != (0j, 0j) or n < 0:
            raise DomainError("only poly(...) literals may be raised to a power")
        return Literal(a.n1 * n, a.n2 * n, coeff=a.coeff**n)
    if n < 0:
        return _inverse(a) ** (-n)
    if isinstance(a, LinearCombination):
        return a**n
    raise TypeError(f"cannot raise {_kind(a)} to a power")


# -- namespaces ---------------------------------------------------------------------

def _star(v, ctx):
    if isinstance(v, U.UqElement):
        return U.star(v)
    if isinstance(v, O.PlaneElement):
        return O.involution(v)
    if isinstance(v, Wm.WElement):
        return Wm.involution(v)
    if isinstance(v, Q4.Tuple4):
        return Q4.star4(v, ctx)
    return S.star(_sym(v))


def _act(f, z):
    if not isinstance(f, U.UqElement):
        raise TypeError("act(f, z) needs an element of U_q(gl_2) first")
    if isinstance(z, O.PlaneElement):
        return O.act(f, z)
    if isinstance(z, Wm.WElement):
        return Wm.act(f, z)
    return B.act_symbol(f, _sym(z))


def _num(v) -> complex:
    if not isinstance(v, Number):
        raise TypeError(f"expected a number, got {_kind(v)}")
    return complex(v)


def _int(v) -> int:
    v = _num(v)
    if v.imag != 0 or v.real != int(v.real):
        raise TypeError("expected an integer")
    return int(v.real)


def _real(v) -> float:
    v = _num(v)
    if v.imag != 0:
        raise TypeError("expected a real number")
    return v.real


def namespace(algebra: str, ctx: DeformationContext, calculus: str = "minus") -> tuple[dict, dict]:
    """Constants and functions visible in ``algebra``."""
    if algebra not in ALGEBRAS:
        raise ExprError(f"unknown algebra {algebra!r}; expected one of {', '.join(ALGEBRAS)}")
    names: dict[str, Any] = {"i": 1j, "pi": math.pi, "q": ctx.q, "lam": ctx.lam,
                             "gamma": ctx.gamma, "alpha": ctx.alpha, "beta": ctx.beta}
    names.update(U.generators(ctx))
    names.update(K=U.K(ctx), L=U.L(ctx), Eprime=U.E_prime(ctx), Fprime=U.F_prime(ctx))
    funcs: dict[str, Callable] = {
        "star": lambda v: _star(v, ctx),
        "act": _act,
    }
    if algebra == "uq":
        funcs.update(
            dagger=lambda f: U.star(f, "dagger"),
            adjoint=lambda f: U.star(f, "adjoint"),
            S=U.antipode,
            Delta=U.coproduct,
            eps=U.counit,
            chi=U.character_chi,
        )
    elif algebra == "plane":
        names.update(x=O.x(ctx), y=O.y(ctx))
        funcs.update(
            d=lambda z: O.differential(z, calculus),
            dx=lambda z: O.partials_closed(z, calculus)[0],
            dy=lambda z: O.partials_closed(z, calculus)[1],
            Dx=O.qderiv_x,
            Dy=O.qderiv_y,
        )
    elif algebra == "w":
        names.update(X=Wm.X(ctx), Y=Wm.Y(ctx))
        funcs.update(
            W=lambda s, t: Wm.W(ctx, _num(s), _num(t)),
            dx=lambda u: Wm.partials_W(u)[0],
            dy=lambda u: Wm.partials_W(u)[1],
        )
    else:
        funcs.update(
            poly=lambda n1, n2: Literal(_int(n1), _int(n2)),
            gauss=lambda e1, e2: Literal(eps=(_num(e1), _num(e2))),
            exp=lambda c1, c2: Literal(c=(_num(c1), _num(c2))),
            f=lambda e: S.approx_identity(_real(e)),
            conj=lambda a: S.conj(_sym(a)),
            fourier=lambda a: S.fourier(_sym(a)),
            ifourier=lambda a: S.fourier(_sym(a), inverse=True),
            shift=lambda a, t1, t2: S.shift(_sym(a), _num(t1), _num(t2)),
            nat=lambda a, b: S.natural_product(_sym(a), _sym(b), ctx),
            hk=lambda k1, k2, a: Fn.h_k(Fn.CovariantIndex(ctx, _int(k1), _int(k2)), _sym(a)),
            htilde=lambda a: Fn.h_tilde(_sym(a), ctx),
            integral=lambda a: S.plain_integral(_sym(a)),
            inner=lambda a, b: S.l2_inner(_sym(a), _sym(b)),
            norm=lambda a: S.l2_norm(_sym(a)),
            value=lambda a, z1, z2: S.eval_symbol(_sym(a), _num(z1), _num(z2)),
            dx=lambda a: B.partials_symbol_closed(_sym(a), ctx)[0],
            dy=lambda a: B.partials_symbol_closed(_sym(a), ctx)[1],
        )
        if algebra == "tuple4":
            funcs.update(
                tuple4=lambda a1, a2, a3, a4: Q4.Tuple4.of(
                    S.Symbol() if isinstance(v, Number) and v == 0 else _sym(v) for v in (a1, a2, a3, a4)),
                J=Q4.apply_J,
                h4=lambda t: Q4.h4(t, ctx),
                inner4=lambda s, t: Q4.inner4(s, t, ctx),
            )
            for op in Q4.BLOCK_OPS:
                funcs[f"op_{op}"] = (lambda op: lambda t: Q4.block_apply(ctx, op, t))(op)
    return names, funcs


# -- parsing -----------------------------------------------------------------------

_HK_PREFIX = re.compile(r"^(\s*)hk\s+(\S+)\s+(\S+)\s+(.*\S)\s*$")


def _rewrite(text: str) -> tuple[str, list[int]]:
    """Rewrite ``^`` to ``**`` and the ``hk k1 k2 a`` prefix form; return a column map."""
    m = _HK_PREFIX.match(text)
    pieces: list[tuple[str, int | None]] = []
    if m and not m.group(2).startswith("("):
        pieces.append((m.group(1) + "hk(", 0))
        pieces.append((m.group(2), m.start(2)))
        pieces.append((",", None))
        pieces.append((m.group(3), m.start(3)))
        pieces.append((",", None))
        pieces.append((m.group(4), m.start(4)))
        pieces.append((")", None))
    else:
        pieces.append((text, 0))
    out, cols = [], []
    for piece, start in pieces:
        for j, ch in enumerate(piece):
            col = start + j if start is not None else (cols[-1] if cols else 0)
            if ch == "^" and start is not None:
                out.append("**")
                cols += [col, col]
            else:
                out.append(ch)
                cols.append(col)
    return "".join(out), cols


def parse(text: str) -> tuple[ast.expr, list[int]]:
    src, cols = _rewrite(text)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as e:
        off = (e.offset or 1) - 1
        col = cols[min(off, len(cols) - 1)] if cols else 0
        raise ExprError(f"syntax error: {e.msg}", text, col) from None
    return tree.body, cols


_BINOPS = {ast.Add: lambda a, b, ctx: _add(a, b), ast.Sub: lambda a, b, ctx: _add(a, b, -1),
           ast.Mult: lambda a, b, ctx: _mul(a, b), ast.Pow: lambda a, b, ctx: _pow(a, b),
           ast.MatMult: _matmul, ast.Div: lambda a, b, ctx: _mul(a, 1 / _num(b))}


class _Evaluator:
    def __init__(self, text: str, cols: list[int], names: dict, funcs: dict, ctx: DeformationContext):
        self.text, self.cols, self.names, self.funcs, self.ctx = text, cols, names, funcs, ctx

    def fail(self, node: ast.AST, message: str):
        off = getattr(node, "col_offset", 0)
        col = self.cols[min(off, len(self.cols) - 1)] if self.cols else 0
        raise ExprError(message, self.text, col)

    def __call__(self, node: ast.AST):
        try:
            return self.visit(node)
        except (TypeError, ZeroDivisionError) as e:
            self.fail(node, str(e) or "operands do not combine")

    def visit(self, node: ast.AST):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.Tuple):
            if len(node.elts) != 2:
                self.fail(node, "complex literals are written (re,im)")
            re_, im = (self.visit(e) for e in node.elts)
            if not all(isinstance(v, (int, float)) for v in (re_, im)):
                self.fail(node, "complex literal parts must be real numbers")
            return complex(re_, im)
        if isinstance(node, ast.Name):
            if node.id in self.names:
                return self.names[node.id]
            self.fail(node, f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.visit(node.operand)
            if isinstance(node.op, ast.UAdd):
                return v
            return _mul(-1, v) if not isinstance(v, Number) else -v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            a, b = self.visit(node.left), self.visit(node.right)
            try:
                return _BINOPS[type(node.op)](a, b, self.ctx)
            except TypeError as e:
                self.fail(node, str(e) or f"cannot combine {_kind(a)} and {_kind(b)}")
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            fn = self.funcs.get(node.func.id)
            if fn is None:
                self.fail(node.func, f"unknown function {node.func.id!r}")
            args = [self.visit(a) for a in node.args]
            try:
                return fn(*args)
            except TypeError as e:
                self.fail(node, f"{node.func.id}: {e}")
        self.fail(node, f"unsupported syntax {type(node).__name__}")


def evaluate(algebra: str, text: str, ctx: DeformationContext, calculus: str = "minus"):
    """Evaluate ``text`` in ``algebra`` and return the resulting value."""
    names, funcs = namespace(algebra, ctx, calculus)
    tree, cols = parse(text)
    value = _Evaluator(text, cols, names, funcs, ctx)(tree)
    if isinstance(value, Literal):
        value = value.close()
    return value


def format_value(value) -> str:
    """Canonical printed form of an evaluation result."""
    if isinstance(value, Number):
        return format_complex(complex(value))
    if isinstance(value, (S.Symbol, Q4.Tuple4)):
        return json.dumps(value.to_json())
    if isinstance(value, O.OneForm):
        return f"dx*({value.cx!r}) + dy*({value.cy!r})"
    return repr(value)


def eval_expr(algebra: str, text: str, ctx: DeformationContext, calculus: str = "minus") -> str:
    """Evaluate and format in one step."""
    return format_value(evaluate(algebra, text, ctx, calculus))


__all__ = ["ALGEBRAS", "ExprError", "Literal", "eval_expr", "evaluate", "format_value", "namespace", "parse"]

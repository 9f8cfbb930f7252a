"""Verification suites and their machine-readable reports.

Each suite evaluates a list of residuals and compares every one against its
own tolerance.  Reports are deterministic given the context, the seed and
the package version; wall time is reported separately so that two runs can
be compared byte for byte.
"""

from __future__ import annotations

import json
import math
import time
import zlib
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import __version__ as VERSION
from . import bqaction as B
from . import functionals as Fn
from . import oqplane as O
from . import oracle as Or
from . import qplane4 as Q4
from . import symbols as S
from . import uqgl2 as U
from . import walgebra as Wm
from .params import DeformationContext, qpow

SUITES: tuple[str, ...] = ("hopf", "oqplane", "walgebra", "symbols", "bqaction", "functionals", "qplane4", "oracle")
TOL_BQ = 1e-12


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    def to_json(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "residual": float(self.residual),
                "tol": float(self.tol), "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    context: dict
    seed: int
    checks: list[Check] = field(default_factory=list)
    grid: dict | None = None
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "version": VERSION,
            "seed": self.seed,
            "context": self.context,
            "grid": self.grid,
            "passed": self.passed,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.id)],
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)


def suite_rng(seed: int, name: str) -> np.random.Generator:
    """Independent stream per suite, so ``all`` and a single suite agree."""
    return np.random.default_rng([int(seed), zlib.crc32(name.encode())])


# -- helpers --------------------------------------------------------------------

def _max(values: Iterable[float]) -> float:
    return max((float(v) for v in values), default=0.0)


def _sym_rel(lhs: S.Symbol, rhs: S.Symbol) -> float:
    return S.l2_distance(lhs, rhs) / max(1.0, S.l2_norm(lhs))


def _fscale(w: O.FreeForm, c: complex) -> O.FreeForm:
    return O.FreeForm(w.t1.scale(c), w.t2.scale(c))


def _uq_monomial(ctx: DeformationContext, key) -> U.UqElement:
    return U.UqElement.monomial(ctx, key)


def module_generators(ctx: DeformationContext) -> dict[str, U.UqElement]:
    """The elements on which the module-algebra laws are tested."""
    E, F, K1, K2 = U.E(ctx), U.F(ctx), U.K1(ctx), U.K2(ctx)
    return {"E": E, "F": F, "K1": K1, "K2": K2, "EF": E * F, "K1F": K1 * F}


def _coproduct_pairs(f: U.UqElement):
    ctx = f.ctx
    for (k1, k2), c in U.coproduct(f).terms.items():
        yield _uq_monomial(ctx, k1), _uq_monomial(ctx, k2), c


def module_residual(act: Callable, f: U.UqElement, z, w, distance: Callable) -> float:
    """``f > (zw)`` against ``sum (f_(1) > z)(f_(2) > w)``."""
    lhs = act(f, z * w)
    rhs = None
    for f1, f2, c in _coproduct_pairs(f):
        term = (act(f1, z) * act(f2, w)).scale(c)
        rhs = term if rhs is None else rhs + term
    return distance(lhs, rhs)


def star_residual(act: Callable, invol: Callable, f: U.UqElement, z, distance: Callable) -> float:
    """``(f > z)^*`` against ``S(f)^* > z^*``."""
    return distance(invol(act(f, z)), act(U.star(U.antipode(f)), invol(z)))


# -- hopf -----------------------------------------------------------------------

def suite_hopf(ctx: DeformationContext, rng: np.random.Generator) -> list[Check]:
    tol = ctx.tol_exact
    gens = [U.E(ctx), U.F(ctx), U.K1(ctx), U.K2(ctx), U.K1(ctx, -1), U.K2(ctx, -1)]
    sample = gens + [U.random_element(ctx, rng, degree=3) for _ in range(100)]
    one = U.one(ctx)
    coassoc, counit, antipode, chi_g3 = [], [], [], []
    star_inv, star_hopf, star_s = [], [], []
    for f in sample:
        d = U.coproduct(f)
        coassoc.append((d.map_leg(0, U.coproduct) - d.map_leg(1, U.coproduct)).max_abs())
        eps = lambda m: one.scale(U.counit(m))
        counit.append(max(d.map_leg(0, eps).multiply_legs().distance(f), d.map_leg(1, eps).multiply_legs().distance(f)))
        unit = one.scale(U.counit(f))
        antipode.append(max(d.map_leg(0, U.antipode).multiply_legs().distance(unit),
                            d.map_leg(1, U.antipode).multiply_legs().distance(unit)))
        fs = U.star(f)
        star_hopf.append((U.coproduct(fs) - d.star_legs()).max_abs())
        star_s.append(U.star(U.antipode(U.star(U.antipode(f)))).distance(f))
        chi_g3.append(abs(U.character_chi(f).conjugate() - U.character_chi(U.star(U.antipode(f)))))
        star_inv.append(U.star(fs).distance(f))
    pairs = [(sample[i], sample[(7 * i + 3) % len(sample)]) for i in range(len(sample))]
    mult, anti, chi = [], {"star": [], "dagger": [], "adjoint": []}, []
    for f, g in pairs:
        fg = f * g
        mult.append((U.coproduct(fg) - U.coproduct(f) * U.coproduct(g)).max_abs())
        for flavor, acc in anti.items():
            acc.append(U.star(fg, flavor).distance(U.star(g, flavor) * U.star(f, flavor)))
        chi.append(abs(U.character_chi(fg) - U.character_chi(f) * U.character_chi(g)))
    dagger_inv = [_max(U.star(U.star(f, fl), fl).distance(f) for f in sample) for fl in ("dagger", "adjoint")]
    r, s = rng.uniform(-3, 3, 2)
    return [
        Check("hopf.qpow_additive", "q^r q^s = q^(r+s)", abs(qpow(ctx, r) * qpow(ctx, s) - qpow(ctx, r + s)), tol),
        Check("hopf.coassociativity", "(D x id) D = (id x D) D", _max(coassoc), tol),
        Check("hopf.coproduct_multiplicative", "D(fg) = D(f) D(g)", _max(mult), tol),
        Check("hopf.counit", "(eps x id) D = id = (id x eps) D", _max(counit), tol),
        Check("hopf.antipode", "m(S x id) D = eps 1 = m(id x S) D", _max(antipode), tol),
        Check("hopf.star_antimultiplicative", "(fg)* = g* f*", _max(anti["star"]), tol),
        Check("hopf.star_involutive", "f** = f", _max(star_inv), tol),
        Check("hopf.star_coproduct", "D(f*) = D(f)^(* x *)", _max(star_hopf), tol),
        Check("hopf.star_antipode", "S * S * = id", _max(star_s), tol),
        Check("hopf.dagger_antimultiplicative", "second involution reverses products", _max(anti["dagger"]), tol),
        Check("hopf.dagger_involutive", "second involution squares to id", dagger_inv[0], tol),
        Check("hopf.adjoint_antimultiplicative", "symbol-adjoint involution reverses products", _max(anti["adjoint"]), tol),
        Check("hopf.adjoint_involutive", "symbol-adjoint involution squares to id", dagger_inv[1], tol),
        Check("hopf.chi_character", "chi(fg) = chi(f) chi(g)", _max(chi), tol),
        Check("hopf.chi_hermitian", "conj chi(f) = chi(S(f)*)", _max(chi_g3), tol),
    ]


# -- quantum plane ----------------------------------------------------------------

def plane_monomials(ctx: DeformationContext, max_degree: int) -> list[O.PlaneElement]:
    return [O.mono(ctx, m, d - m) for d in range(max_degree + 1) for m in range(d + 1)]


def suite_oqplane(ctx: DeformationContext, rng: np.random.Generator) -> list[Check]:
    tol = ctx.tol_exact
    monos = plane_monomials(ctx, 4)
    dist = lambda a, b: a.distance(b)
    gens = module_generators(ctx)
    out = []
    for name, f in gens.items():
        mod = _max(module_residual(O.act, f, z, w, dist) for z in monos for w in monos)
        star = _max(star_residual(O.act, O.involution, f, z, dist) for z in monos)
        out.append(Check(f"oqplane.module_law.{name}", "f > (zw) = (f1 > z)(f2 > w) on monomials", mod, tol))
        out.append(Check(f"oqplane.star_law.{name}", "(f > z)* = S(f)* > z*", star, tol))
    polys = [O.random_polynomial(ctx, rng, 4) for _ in range(6)]
    x, y = O.x(ctx), O.y(ctx)
    pre_x = U.E(ctx) * U.K1(ctx, 3) * U.K2(ctx)
    pre_y = U.F(ctx) * U.K1(ctx, 3) * U.K2(ctx)
    rx, ry, act_x, act_y = [], [], [], []
    for z in polys:
        dx, dy = O.partials_closed(z, "minus")
        act_x.append(dx.distance(O.monomial_inverse(y) * O.act(pre_x, z).scale(qpow(ctx, 1.5))))
        act_y.append(dy.distance(O.monomial_inverse(x) * O.act(pre_y, z).scale(qpow(ctx, 0.5))))
        rx.append(O.qderiv_x(z).distance(O.act(U.K(ctx), O.monomial_inverse(y) * O.act(U.E_prime(ctx), z))))
        ry.append(O.qderiv_y(z).distance(O.act(U.K(ctx), O.monomial_inverse(x) * O.act(U.F_prime(ctx), z))))
    out += [
        Check("oqplane.relation_xy", "xy = q yx", (x * y - (y * x).scale(ctx.q)).max_abs(), tol),
        Check("oqplane.partial_x_action", "d_x z = q^(3/2) y^-1 E K1^3 K2 > z", _max(act_x), tol),
        Check("oqplane.partial_y_action", "d_y z = q^(1/2) x^-1 F K1^3 K2 > z", _max(act_y), tol),
        Check("oqplane.qderiv_x_action", "D_x z = K > (y^-1 (E' > z))", _max(rx), tol),
        Check("oqplane.qderiv_y_action", "D_y z = K > (x^-1 (F' > z))", _max(ry), tol),
    ]
    for calc in ("minus", "plus"):
        dxf, dyf = O.basis_forms(ctx, calc)
        q = ctx.q
        if calc == "plus":
            rels = [dyf.lmul(x) - (_fscale(dyf.rmul(x), q) + _fscale(dxf.rmul(y), q * q - 1)),
                    dxf.lmul(y) - _fscale(dxf.rmul(y), q),
                    dxf.lmul(x) - _fscale(dxf.rmul(x), q * q),
                    dyf.lmul(y) - _fscale(dyf.rmul(y), q * q)]
        else:
            rels = [dxf.lmul(y) - (_fscale(dxf.rmul(y), 1 / q) + _fscale(dyf.rmul(x), q**-2 - 1)),
                    dyf.lmul(x) - _fscale(dyf.rmul(x), 1 / q),
                    dxf.lmul(x) - _fscale(dxf.rmul(x), q**-2),
                    dyf.lmul(y) - _fscale(dyf.rmul(y), q**-2)]
        closed, leibniz = [], []
        for z, w in zip(polys, polys[1:]):
            d = O.differential(z, calc)
            cx, cy = O.partials_closed(z, calc)
            closed.append(max(d.cx.distance(cx), d.cy.distance(cy)))
            dzw = O.differential(z * w, calc).to_free()
            rhs = O.differential(w, calc).to_free().lmul(z) + O.differential(z, calc).to_free().rmul(w)
            leibniz.append((dzw - rhs).max_abs())
        out += [
            Check(f"oqplane.{calc}.bimodule_relations", "commutation of x, y with dx, dy", _max(r.max_abs() for r in rels), tol),
            Check(f"oqplane.{calc}.partials_closed", "omega-commutator partials = coordinate formulas", _max(closed), tol),
            Check(f"oqplane.{calc}.leibniz", "d(zw) = z dw + dz w", _max(leibniz), tol),
        ]
    return out


# -- W algebra ---------------------------------------------------------------------

def suite_walgebra(ctx: DeformationContext, rng: np.random.Generator) -> list[Check]:
    tol = ctx.tol_exact
    dist = lambda a, b: a.distance(b)
    sample = [Wm.random_element(ctx, rng) for _ in range(8)]
    out = []
    for name, f in module_generators(ctx).items():
        mod = _max(module_residual(Wm.act, f, u, v, dist) for u, v in zip(sample, sample[1:]))
        star = _max(star_residual(Wm.act, Wm.involution, f, u, dist) for u in sample)
        out.append(Check(f"walgebra.module_law.{name}", "f > (uv) = (f1 > u)(f2 > v) on W(s,t)", mod, tol))
        out.append(Check(f"walgebra.star_law.{name}", "(f > u)* = S(f)* > u*", star, tol))
    E, F, K1, K2 = U.E(ctx), U.F(ctx), U.K1(ctx), U.K2(ctx)
    h = qpow(ctx, 0.5)
    seq = lambda *fs: (lambda u: _apply_seq(fs, u))
    relations = {
        "K1E": lambda u: seq(K1, E)(u) - seq(E, K1)(u).scale(h),
        "K2E": lambda u: seq(K2, E)(u) - seq(E, K2)(u).scale(1 / h),
        "K1F": lambda u: seq(K1, F)(u) - seq(F, K1)(u).scale(1 / h),
        "K2F": lambda u: seq(K2, F)(u) - seq(F, K2)(u).scale(h),
        "K1K2": lambda u: seq(K1, K2)(u) - seq(K2, K1)(u),
        "EF": lambda u: seq(E, F)(u) - seq(F, E)(u) - Wm.act(E * F - F * E, u),
    }
    for name, rel in relations.items():
        out.append(Check(f"walgebra.relation.{name}", "defining relations as operators on W", _max(rel(u).max_abs() for u in sample), tol))
    emb = []
    for _ in range(5):
        z = O.random_polynomial(ctx, rng, 3)
        f = U.random_element(ctx, rng, 2)
        emb.append(Wm.embed(O.act(f, z)).distance(Wm.act(f, Wm.embed(z))))
    X, Y = Wm.X(ctx), Wm.Y(ctx)
    out += [
        Check("walgebra.relation_XY", "XY = q YX", (X * Y - (Y * X).scale(ctx.q)).max_abs(), tol),
        Check("walgebra.embedding", "embedding intertwines the plane and W actions", _max(emb), tol),
    ]
    return out


def _apply_seq(fs, u):
    for f in reversed(fs):
        u = Wm.act(f, u)
    return u


# -- symbols --------------------------------------------------------------------------

def suite_symbols(ctx: DeformationContext, rng: np.random.Generator, N: int = Or.DEFAULT_N,
                  L: float = Or.DEFAULT_L) -> list[Check]:
    tol = ctx.tol_exact
    T, P, Qe, pi = S.twisted_product, S.exp_P, S.exp_Q, math.pi
    a, b, c = (S.random_symbol(rng, 2, 1) for _ in range(3))
    ab = T(a, b)
    t = float(rng.uniform(-0.3, 0.3))
    shift_laws = {
        "expQ1_left": (Qe(ab, 1, 2 * pi * t), T(Qe(a, 1, 2 * pi * t), P(b, 2, pi * t))),
        "expQ1_right": (Qe(ab, 1, 2 * pi * t), T(P(a, 2, -pi * t), Qe(b, 1, 2 * pi * t))),
        "expQ2_left": (Qe(ab, 2, 2 * pi * t), T(Qe(a, 2, 2 * pi * t), P(b, 1, -pi * t))),
        "expQ2_right": (Qe(ab, 2, 2 * pi * t), T(P(a, 1, pi * t), Qe(b, 2, 2 * pi * t))),
        "expP1_split": (P(ab, 1, 2 * pi * t), T(P(a, 1, 2 * pi * t), P(b, 1, 2 * pi * t))),
        "expP1_via_Q2": (P(ab, 1, 2 * pi * t), T(Qe(a, 2, 4 * pi * t), Qe(b, 2, -4 * pi * t))),
        "expP2_split": (P(ab, 2, 2 * pi * t), T(P(a, 2, 2 * pi * t), P(b, 2, 2 * pi * t))),
        "expP2_via_Q1": (P(ab, 2, 2 * pi * t), T(Qe(a, 1, -4 * pi * t), Qe(b, 1, 4 * pi * t))),
    }
    out = [Check(f"symbols.shift_law.{k}", "exponential shift commutes through #", _sym_rel(*v), tol)
           for k, v in shift_laws.items()]
    scalar, hs, cs = [], [], []
    for _ in range(50):
        u, v = S.random_symbol(rng, 2, 1), S.random_symbol(rng, 2, 1)
        ref = S.l2_inner(u, v)
        scalar.append(abs(S.plain_integral(T(S.conj(v), u)) - ref) / max(1.0, abs(ref)))
        hs.append(max(0.0, S.l2_norm(T(u, v)) - S.l2_norm(u) * S.l2_norm(v)))
        cs.append(max(0.0, abs(ref) ** 2 - S.l2_norm(u) ** 2 * S.l2_norm(v) ** 2))
    a_id = S.random_symbol(rng, 2, 1)
    approx = [S.l2_distance(T(S.approx_identity(e), a_id), a_id) for e in (1.0, 0.1, 0.01)]
    decreasing = 0.0 if approx[0] > approx[1] > approx[2] else 1.0
    cf = float(rng.uniform(-0.4, 0.4))
    four = _sym_rel(S.fourier(S.mul_exp(a, 2 * pi * cf, 0)), S.shift(S.fourier(a), 1j * cf, 0))
    out += [
        Check("symbols.associativity", "(a # b) # c = a # (b # c)", _sym_rel(T(ab, c), T(a, T(b, c))), tol),
        Check("symbols.distributivity", "a # (b + c) = a # b + a # c", _sym_rel(T(a, b + c), ab + T(a, c)), tol),
        Check("symbols.star_antihomomorphism", "(a # b)* = b* # a*", _sym_rel(S.star(ab), T(S.star(b), S.star(a))), tol),
        Check("symbols.fourier_route", "# agrees with the twisted convolution route", _sym_rel(ab, S.twisted_product_fourier(a, b)), tol),
        Check("symbols.fourier_intertwining", "F(e^(2 pi c x1) a) = F(a)(x1 + c i)", four, tol),
        Check("symbols.scalar_identity", "int a conj(b) = int conj(b) # a, 50 pairs", _max(scalar), tol),
        Check("symbols.hs_norm_bound", "||a # b|| <= ||a|| ||b||, 50 pairs (excess)", _max(hs), tol),
        Check("symbols.cauchy_schwarz", "|(a,b)|^2 <= ||a||^2 ||b||^2 (excess)", _max(cs), tol),
        Check("symbols.approx_identity_decreasing", "||f_eps # a - a|| decreases for eps = 1, 0.1, 0.01", decreasing, 0.0),
        Check("symbols.weyl_product_grid", "Op(a # b) = Op(a) Op(b) on the grid",
              Or.weyl_product_residual(a, b, L, N), ctx.tol_oracle),
    ]
    return out


# -- bqaction ----------------------------------------------------------------------

def suite_bqaction(ctx: DeformationContext, rng: np.random.Generator) -> list[Check]:
    tol = ctx.tol_exact
    QE = B.QuarterElement
    syms = [QE.of(ctx, sym=S.random_symbol(rng, 1, 1)) for _ in range(3)]
    planes = [QE.of(ctx, plane=z) for z in plane_monomials(ctx, 2)[1:]]
    picks = [planes[int(i)] for i in rng.choice(len(planes), 3, replace=False)]
    pairs = {
        "symbol_symbol": [(syms[0], syms[1]), (syms[1], syms[2])],
        "plane_symbol": [(z, s) for z, s in zip(picks, syms)],
        "symbol_plane": [(s, z) for z, s in zip(picks, syms)],
    }
    out = []
    for name, f in module_generators(ctx).items():
        for kind, pl in pairs.items():
            out.append(Check(f"bqaction.module_law.{kind}.{name}", "f > (zw) = (f1 > z)(f2 > w), mixed algebra",
                             _max(B.module_law_residual(f, z, w) for z, w in pl), tol))
        out.append(Check(f"bqaction.star_law.{name}", "(f > z)* = S(f)* > z*, mixed algebra",
                         _max(B.star_law_residual(f, z) for z in syms + picks), tol))
    a = syms[0].sym
    act_routes = _max(_sym_rel(B.act_symbol(f, a), B.act_symbol_closed(f, a)) for f in U.generators(ctx).values())
    z = O.random_polynomial(ctx, rng, 2)
    mixed = _max(_sym_rel(B.mixed_product(z, a, side), B.mixed_product_closed(z, a, side)) for side in ("left", "right"))
    dc = B.partials_symbol_closed(a, ctx)
    dr = B.partials_symbol_rho(a, ctx)
    out += [
        Check("bqaction.action_routes", "rho0(psi(f)) agrees with the closed generator formulas", act_routes, tol),
        Check("bqaction.mixed_product_routes", "z a and a z through B_q and in closed form", mixed, tol),
        Check("bqaction.partials_routes", "d_x, d_y on symbols: closed form = B_q route", max(_sym_rel(dc[i], dr[i]) for i in range(2)), tol),
    ]
    for label, fn in (("relation", B.relation_residuals), ("cross", B.cross_relation_residuals),
                      ("fourth_power", B.power_identity_residuals), ("phi_star", B.phi_involution_residuals)):
        for key, val in fn(ctx).items():
            out.append(Check(f"bqaction.{label}.{key}", "identity in B_q normal form", val, TOL_BQ))
    return out


# -- functionals -----------------------------------------------------------------------

def covariance_context(ctx: DeformationContext) -> DeformationContext:
    """Balanced parameters ``|alpha| = |beta|`` keep ``h_k`` finite for ``k != 0``."""
    return Or.convergence_context(ctx)


def suite_functionals(ctx: DeformationContext, rng: np.random.Generator) -> list[Check]:
    tol = ctx.tol_exact
    bal = covariance_context(ctx)
    ks = [Fn.CovariantIndex(bal, k1, k2) for k1 in (-1, 0, 1) for k2 in (-1, 0, 1)]
    syms = [S.random_symbol(rng, 2, 1, width=(3, 6)) for _ in range(20)]
    gens = U.generators(bal)
    out = []
    for k in ks:
        cov = _max(Fn.covariance_residual(k, f, a) for f in gens.values() for a in syms)
        tr = _max(Fn.translation_residual(k, a, s, t) for a in syms[:5] for s, t in zip(Fn.TRANSLATIONS, Fn.TRANSLATIONS[::-1]))
        u, v = syms[0], syms[1]
        r1 = Fn.scalar_product_k(k, u, v)
        routes = max(abs(r1 - Fn.scalar_product_explicit(k, u, v)), abs(r1 - Fn.scalar_product_transported(k, u, v)))
        tag = f"k{k.k1:+d}{k.k2:+d}"
        out += [
            Check(f"functionals.covariance.{tag}", "h_k(f > a) = chi(f) h_k(a), 20 symbols", cov, tol),
            Check(f"functionals.translation.{tag}", "h_k under translations", tr, tol),
            Check(f"functionals.scalar_routes.{tag}", "three routes to <a, b>_k agree", routes / max(1.0, abs(r1)), tol),
        ]
    pos = []
    for _ in range(50):
        a = S.random_symbol(rng, 2, 1, width=(3, 6))
        pos.append(min(Fn.scalar_product_k(k, a, a).real for k in ks))
    out.append(Check("functionals.positivity", "<a, a>_k > 0 for 50 symbols and all k (negated minimum)",
                     -min(pos) if min(pos) <= 0 else 0.0, 0.0))
    a, b = S.random_symbol(rng, 2, 1), S.random_symbol(rng, 2, 1)
    k0 = Fn.CovariantIndex(ctx)
    uq = U.generators(ctx)
    out += [
        Check("functionals.adjoint", "<f > b, a> = <b, f^+ > a> with the symbol-adjoint involution",
              _max(Fn.adjoint_residual(k0, f, a, b) for f in uq.values()), tol),
        Check("functionals.coproduct_chain", "<f > b, a> = chi(f2) <b, f1* > a>",
              _max(Fn.coproduct_chain_residual(k0, f, a, b) for f in uq.values()), tol),
    ]
    k11 = Fn.CovariantIndex(bal, 1, 1)
    kb = Fn.CovariantIndex(bal, 1, 0)
    bs = S.random_symbol(rng, 2, 1, width=(3, 6))
    out.append(Check("functionals.C_conjugation", "C_k Phi(f) C_k^-1 = sign * Phi(f)",
                     _max(Fn.C_conjugation_residual(kk, g, bs) for kk in (k11, kb) for g in Fn.GENERATORS), tol))
    routes = _max(max(_sym_rel(Fn.Phi_apply(ctx, g, a), Fn.Phi_via_phi(ctx, g, a)),
                      _sym_rel(Fn.Phi_apply(ctx, g, a), Fn.Phi_via_T(ctx, g, a))) for g in Fn.GENERATORS)
    out.append(Check("functionals.phi_routes", "Phi closed forms = rho0(phi(f)) = T-conjugated action", routes, tol))
    rel_pairs = (("K1", "Eprime"), ("K2", "Eprime"), ("K1", "Fprime"), ("K2", "Fprime"), ("Eprime", "Fprime"), ("x", "y"))
    out.append(Check("functionals.phi_relations", "Phi images satisfy the generator relations",
                     _max(Fn.phi_relation_residual(ctx, g1, g2, a) for g1, g2 in rel_pairs), tol))
    ht = abs(Fn.h_tilde(a, ctx) - Fn.h_tilde_via_T(a, ctx)) / max(1.0, abs(Fn.h_tilde(a, ctx)))
    inner = abs(Fn.transported_inner(a, b, ctx) - S.l2_inner(a, b)) / max(1.0, abs(S.l2_inner(a, b)))
    out += [
        Check("functionals.h_tilde_routes", "h~(a) = h_0(T^-1 a)", ht, tol),
        Check("functionals.h_tilde_inner", "h~(b* nat a) = (a, b)", inner, tol),
    ]
    return out


# -- qplane4 -------------------------------------------------------------------------

def suite_qplane4(ctx: DeformationContext, rng: np.random.Generator) -> list[Check]:
    tol = ctx.tol_exact
    tuples = [Q4.random_tuple(rng) for _ in range(30)]
    P = lambda u, v: Q4.circle_product(u, v, ctx)
    st = lambda u: Q4.star4(u, ctx)
    assoc, dist, anti, invol, inner, jj, jconj, rel, sym = [], [], [], [], [], [], [], [], []
    for i in range(0, 30, 3):
        a, b, c = tuples[i:i + 3]
        ab = P(a, b)
        assoc.append(P(ab, c).relative_distance(P(a, P(b, c))))
        dist.append(P(a, b + c).relative_distance(ab + P(a, c)))
        anti.append(st(ab).relative_distance(P(st(b), st(a))))
    for i, a in enumerate(tuples):
        b = tuples[(i + 1) % 30]
        invol.append(st(st(a)).relative_distance(a))
        i1, i2 = Q4.inner4(a, b, ctx), Q4.inner4_l2(a, b)
        inner.append(abs(i1 - i2) / max(1.0, abs(i2)))
        jj.append(Q4.apply_J(Q4.apply_J(a)).relative_distance(a))
    for a in tuples[:5]:
        jconj.append(_max(Q4.J_conjugated(ctx, g, a).relative_distance(Q4.block_apply(ctx, g, a))
                          for g in ("x", "y", "E", "F", "K1", "K2", "K")))
        rel.append(_max(Q4.block_relation_residuals(ctx, a).values()))
    for a, b in zip(tuples[5:10], tuples[10:15]):
        for g in ("E", "F", "K", "x", "y", "Dqx", "Dqy"):
            lhs = Q4.inner4_l2(Q4.block_apply(ctx, g, a), b)
            sym.append(abs(lhs - Q4.inner4_l2(a, Q4.block_apply(ctx, g, b))) / max(1.0, abs(lhs)))
    a = tuples[0]
    dq = max(Q4.Dqx_composed(ctx).apply(a).relative_distance(Q4.block_apply(ctx, "Dqx", a)),
             Q4.Dqy_composed(ctx).apply(a).relative_distance(Q4.block_apply(ctx, "Dqy", a)))
    u, v = tuples[1].parts[0], tuples[2].parts[0]
    nat = lambda p, r: S.natural_product(p, r, ctx)
    ph = lambda g, p: Fn.Phi_apply(ctx, g, p)
    kinv = Fn.Phi_operator(ctx, "K").inverse()
    lhs = ph("Eprime", nat(u, v))
    modlaw = _sym_rel(lhs, nat(ph("Eprime", u), ph("K", v)) + nat(kinv.apply(u), ph("Eprime", v)))
    bx, by = Q4.block_partials(a, ctx)
    px = B.partials_symbol_rho(a.parts[0], ctx)
    comp = max(_sym_rel(bx.parts[1], px[0]), _sym_rel(by.parts[2], px[1]))
    return [
        Check("qplane4.associativity", "(a o b) o c = a o (b o c)", _max(assoc), tol),
        Check("qplane4.distributivity", "a o (b + c) = a o b + a o c", _max(dist), tol),
        Check("qplane4.star_antihomomorphism", "(a o b)* = b* o a*", _max(anti), tol),
        Check("qplane4.star_involutive", "a** = a", _max(invol), tol),
        Check("qplane4.inner_routes", "h4(b* o a) = sum of L2 products", _max(inner), tol),
        Check("qplane4.J_squared", "J^2 = id", _max(jj), tol),
        Check("qplane4.J_conjugation", "J diag(signs) Phi J = block operators", _max(jconj), tol),
        Check("qplane4.block_relations", "block operators satisfy the generator relations", _max(rel), tol),
        Check("qplane4.block_symmetry", "<Op a, b> = <a, Op b>", _max(sym), tol),
        Check("qplane4.q_derivatives", "K y^-1 E and K x^-1 F = listed block forms", dq, tol),
        Check("qplane4.module_law_sample", "Phi(E')(a nat b) = Phi(E')a nat Phi(K)b + Phi(K^-1)a nat Phi(E')b", modlaw, tol),
        Check("qplane4.block_partials", "block partial components = symbol partials", comp, tol),
    ]


# -- oracle --------------------------------------------------------------------------

def suite_oracle(ctx: DeformationContext, rng: np.random.Generator, N: int = Or.DEFAULT_N,
                 L: float = Or.DEFAULT_L) -> list[Check]:
    seed = int(rng.integers(0, 2**31))
    out = []
    for name in Or.CHECKS:
        for key, val in Or.run_check(name, ctx, L, N, seed).items():
            out.append(Check(f"oracle.{name}.{key}", "grid route against closed form", val, ctx.tol_oracle))
    strict = math.nextafter(1.0, 0.0)
    for key, v in Or.convergence_study(ctx).items():
        ratio = v["fine"] / v["coarse"] if v["coarse"] > 0 else math.inf
        out.append(Check(f"oracle.convergence.{key}", "fine-grid residual / coarse-grid residual < 1", ratio, strict))
    return out


# -- driver -------------------------------------------------------------------------

_GRID_SUITES = {"symbols", "oracle"}
_RUNNERS = {
    "hopf": suite_hopf,
    "oqplane": suite_oqplane,
    "walgebra": suite_walgebra,
    "symbols": suite_symbols,
    "bqaction": suite_bqaction,
    "functionals": suite_functionals,
    "qplane4": suite_qplane4,
    "oracle": suite_oracle,
}


def run_suite(name: str, ctx: DeformationContext, seed: int = 0, N: int = Or.DEFAULT_N,
              L: float = Or.DEFAULT_L) -> SuiteReport:
    """Run one suite, or every suite for ``name == "all"``."""
    if name != "all" and name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; expected one of {', '.join(SUITES + ('all',))}")
    names = SUITES if name == "all" else (name,)
    start = time.perf_counter()
    checks: list[Check] = []
    for n in names:
        rng = suite_rng(seed, n)
        runner = _RUNNERS[n]
        checks += runner(ctx, rng, N=N, L=L) if n in _GRID_SUITES else runner(ctx, rng)
    grid = {"N": N, "L": L} if any(n in _GRID_SUITES for n in names) else None
    report = SuiteReport(name, ctx.echo(), seed, checks, grid)
    report.wall_time = time.perf_counter() - start
    return report


__all__ = ["Check", "SUITES", "SuiteReport", "module_generators", "module_residual", "plane_monomials",
           "run_suite", "star_residual", "suite_rng"]

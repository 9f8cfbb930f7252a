"""Grid and FFT realisation of the operators, used to cross-check the closed forms.

Functions on ``R`` or ``R^2`` are sampled on the uniform grid ``[-L, L)`` with
``N`` points per axis.  ``e^{2 pi d P}`` is applied spectrally, ``e^{2 pi c Q}``
pointwise, and the Weyl quantisation ``Op(a)`` becomes a dense kernel matrix
that already carries the quadrature weight, so that ``Op(a) Op(b)`` is a plain
matrix product.

Nothing here calls the Gaussian integral machinery of :mod:`qplane.symbols`
except to produce the closed-form side of a comparison.  The Weyl kernel uses
its own one-dimensional moment formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qplane4 as Q4
from . import symbols as S
from .bqaction import SymbolOperator
from .functionals import CovariantIndex, Phi_apply, apply_Tk_inverse, scalar_product_k
from .params import DeformationContext, DomainError, make_context, qpow
from .symbols import Symbol

DEFAULT_N = 512
DEFAULT_L = 10.0
OVERFLOW_EXPONENT = 700.0
# values below this fraction of their maximum are treated as roundoff
NOISE_FLOOR = 1e-14
PLATEAU_FACTOR = 10.0
ROUNDOFF_MARGIN = 16.0
# largest spectral gain kept in the dense matrix of e^{2 pi beta P}
RHO_BAND_GAIN = 1e8


def _check_grid(L: float, N: int) -> None:
    if not (isinstance(N, (int, np.integer)) and N >= 2 and N & (N - 1) == 0):
        raise DomainError(f"grid size must be a power of two, got {N!r}")
    if not L > 0:
        raise DomainError("grid half-width must be positive")


def grid_points(L: float, N: int) -> np.ndarray:
    _check_grid(L, N)
    return -L + (2 * L / N) * np.arange(N)


@dataclass(frozen=True)
class GridFunction1D:
    samples: np.ndarray
    L: float

    def __post_init__(self):
        _check_grid(self.L, self.N)
        if self.samples.ndim != 1:
            raise DomainError("expected a one-dimensional sample array")
        if not np.all(np.isfinite(self.samples)):
            raise DomainError("non-finite samples")

    @property
    def N(self) -> int:
        return int(self.samples.shape[0])

    @property
    def h(self) -> float:
        return 2 * self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return grid_points(self.L, self.N)

    def norm(self) -> float:
        return math.sqrt(self.h * float(np.sum(np.abs(self.samples) ** 2)))


@dataclass(frozen=True)
class GridFunction2D:
    """Samples ``a(x1_i, x2_j)`` stored with ``x1`` along axis 0."""

    samples: np.ndarray
    L: float

    def __post_init__(self):
        if self.samples.ndim != 2 or self.samples.shape[0] != self.samples.shape[1]:
            raise DomainError("expected a square sample array")
        _check_grid(self.L, self.N)
        if not np.all(np.isfinite(self.samples)):
            raise DomainError("non-finite samples")

    @property
    def N(self) -> int:
        return int(self.samples.shape[0])

    @property
    def h(self) -> float:
        return 2 * self.L / self.N

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        x = grid_points(self.L, self.N)
        return np.meshgrid(x, x, indexing="ij")

    def norm(self) -> float:
        return math.sqrt(self.h**2 * float(np.sum(np.abs(self.samples) ** 2)))


GridFunction = GridFunction1D | GridFunction2D


def _like(g, samples: np.ndarray):
    return type(g)(samples, g.L)


def sample(a: Symbol, L: float = DEFAULT_L, N: int = DEFAULT_N) -> GridFunction2D:
    """Point values of a symbol on the ``N x N`` grid."""
    x = grid_points(L, N)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    if a.is_zero():
        return GridFunction2D(np.zeros((N, N), dtype=complex), L)
    return GridFunction2D(np.asarray(S.eval_symbol(a, X1, X2), dtype=complex), L)


def sample_1d(f, L: float = DEFAULT_L, N: int = DEFAULT_N) -> GridFunction1D:
    return GridFunction1D(np.asarray(f(grid_points(L, N)), dtype=complex), L)


# -- elementary grid operators --------------------------------------------------

def apply_expP(g: GridFunction, d: complex, axis: int = 0) -> GridFunction:
    """``e^{2 pi d P}`` along ``axis``: the spectrum is multiplied by ``e^{2 pi d xi}``.

    For real ``d`` this is the analytic continuation ``g(x - d i)``, which is
    ill-conditioned on a truncated grid.  Before the growing multiplier is
    applied, coefficients are dropped below a per-line floor: the larger of the
    roundoff level and ten times the median magnitude over the highest quarter
    of frequencies.  That plateau is what roundoff and the truncation jump at
    ``+-L`` leave behind.  Output samples under the estimated roundoff of the
    transform, ``eps * sum|g| * sum|kept multiplier| / N`` per line, are zeroed
    so that a later growing multiplier does not amplify them.
    """
    if d == 0:
        return g
    xi = np.fft.fftfreq(g.N, d=g.h)
    growth = 2 * math.pi * complex(d).real * xi
    shape = [1] * g.samples.ndim
    shape[axis] = g.N
    spec = np.fft.fft(g.samples, axis=axis)
    mag = np.abs(spec)
    line_max = np.max(mag, axis=axis, keepdims=True)
    top = np.take(mag, np.flatnonzero(np.abs(xi) >= 0.375 / g.h), axis=axis)
    plateau = PLATEAU_FACTOR * np.median(top, axis=axis, keepdims=True)
    keep = mag > np.maximum(NOISE_FLOOR * line_max, plateau)
    kept_growth = np.where(keep, growth.reshape(shape), -np.inf)
    if np.max(kept_growth, initial=-np.inf) > OVERFLOW_EXPONENT:
        raise DomainError("symbol too wide for the grid: e^{2 pi d P} overflows on its band")
    mult = np.exp(2 * math.pi * complex(d) * xi).reshape(shape)
    out = np.fft.ifft(np.where(keep, spec * mult, 0), axis=axis)
    gain = np.sum(np.where(keep, np.abs(mult), 0), axis=axis, keepdims=True) / g.N
    noise = ROUNDOFF_MARGIN * np.finfo(float).eps * np.sum(np.abs(g.samples), axis=axis, keepdims=True) * gain
    return _like(g, np.where(np.abs(out) > noise, out, 0))


def shift_grid(g: GridFunction, s: complex, axis: int = 0) -> GridFunction:
    """``g(x + s)`` along ``axis`` for complex ``s``."""
    return apply_expP(g, 1j * s, axis)


def mul_exp_grid(g: GridFunction, c: complex, axis: int = 0) -> GridFunction:
    """Multiplication by ``e^{c x}`` along ``axis``."""
    if c == 0:
        return g
    x = grid_points(g.L, g.N)
    if abs(complex(c).real) * g.L > OVERFLOW_EXPONENT:
        raise DomainError("exponential multiplier overflows on the grid")
    shape = [1] * g.samples.ndim
    shape[axis] = g.N
    return _like(g, g.samples * np.exp(c * x).reshape(shape))


def integrate(g: GridFunction) -> complex:
    return complex(np.sum(g.samples) * g.h ** g.samples.ndim)


def inner(f: GridFunction, g: GridFunction) -> complex:
    """Quadrature for ``int f conj(g)``."""
    return complex(np.sum(f.samples * np.conj(g.samples)) * f.h ** f.samples.ndim)


def relative_error(approx: np.ndarray, exact: np.ndarray) -> float:
    scale = float(np.max(np.abs(exact)))
    return float(np.max(np.abs(approx - exact))) / max(scale, 1e-300)


def apply_symbol_operator(op: SymbolOperator, g: GridFunction2D) -> GridFunction2D:
    """Grid version of ``a -> sum c e^{e.x} a(x + s)``.

    Each term is reordered as ``c e^{-e.s} S_s M_e`` so that the exponential
    multiplies exact samples and the spectral shift comes last.
    """
    out = np.zeros_like(g.samples)
    for c, e1, e2, s1, s2 in op.terms:
        h = mul_exp_grid(mul_exp_grid(g, e1, 0), e2, 1)
        h = shift_grid(shift_grid(h, s1, 0), s2, 1)
        out = out + c * np.exp(-(e1 * s1 + e2 * s2)) * h.samples
    return GridFunction2D(out, g.L)


# -- Weyl quantisation -------------------------------------------------------------

def _double_factorial_odd(k: int) -> int:
    return math.prod(range(1, 2 * k, 2))


def _gauss_moment_1d(n: int, a: complex, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``int t^n exp(-a t^2 + b t) dt = sqrt(pi/a) exp(b^2/4a) * poly``; returns ``(exponent, poly)``."""
    m = b / (2 * a)
    poly = np.zeros_like(b)
    for k in range(n // 2 + 1):
        poly = poly + math.comb(n, 2 * k) * _double_factorial_odd(k) * (1 / (2 * a)) ** k * m ** (n - 2 * k)
    return b * b / (4 * a), np.sqrt(math.pi / complex(a)) * poly


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense ``N x N`` matrix acting on :class:`GridFunction1D`, quadrature weight included."""

    matrix: np.ndarray
    L: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.matrix)):
            raise DomainError("non-finite operator entries")

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.matrix @ other.matrix, self.L)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.matrix - other.matrix, self.L)

    def scale(self, c: complex) -> "OperatorMatrix":
        return OperatorMatrix(c * self.matrix, self.L)

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.matrix.conj().T, self.L)

    def apply(self, g: GridFunction1D) -> GridFunction1D:
        return GridFunction1D(self.matrix @ g.samples, g.L)

    def norm(self) -> float:
        """Largest singular value."""
        return float(np.linalg.norm(self.matrix, 2))


def weyl_op(a: Symbol, L: float = DEFAULT_L, N: int = DEFAULT_N) -> OperatorMatrix:
    """``Op(a)`` with kernel ``K(x, y) = int a((x+y)/2, t) e^{2 pi i (x - y) t} dt``.

    The ``t`` integral is done exactly term by term; the matrix is ``h K``.
    """
    x = grid_points(L, N)
    h = 2 * L / N
    X, Y = np.meshgrid(x, x, indexing="ij")
    u, s = (X + Y) / 2, X - Y
    K = np.zeros((N, N), dtype=complex)
    for t in a.terms:
        b = t.c2 - 2 * t.eps12 * u + 2j * math.pi * s
        expo, poly = _gauss_moment_1d(t.n2, t.eps2, b)
        K += t.coeff * u**t.n1 * poly * np.exp(expo - t.eps1 * u * u + t.c1 * u)
    return OperatorMatrix(h * K, L)


def operator_relative(A: OperatorMatrix, B: OperatorMatrix) -> float:
    """``||A - B|| / ||B||`` in the spectral norm."""
    return (A - B).norm() / max(B.norm(), 1e-300)


# -- the Schroedinger pair ------------------------------------------------------------

def rep_rho(ctx: DeformationContext, eps: int, epsp: int, gen: str,
            L: float = DEFAULT_L, N: int = DEFAULT_N) -> OperatorMatrix:
    """``rho(x) = eps e^{2 pi alpha Q}`` and ``rho(y) = eps' e^{2 pi beta P}`` as matrices.

    The matrix of ``e^{2 pi beta P}`` keeps only frequencies whose gain is at
    most ``RHO_BAND_GAIN``; beyond that band it would amplify roundoff, and the
    Gaussian test vectors have no content there.
    """
    if eps not in (1, -1) or epsp not in (1, -1):
        raise DomainError("signs must be +1 or -1")
    x = grid_points(L, N)
    if gen == "x":
        if 2 * math.pi * abs(ctx.alpha) * L > OVERFLOW_EXPONENT:
            raise DomainError("e^{2 pi alpha Q} overflows on the grid")
        return OperatorMatrix(np.diag(eps * np.exp(2 * math.pi * ctx.alpha * x)).astype(complex), L)
    if gen == "y":
        xi = np.fft.fftfreq(N, d=2 * L / N)
        if 2 * math.pi * abs(ctx.beta) * np.max(np.abs(xi)) > OVERFLOW_EXPONENT:
            raise DomainError("e^{2 pi beta P} overflows on the grid")
        growth = 2 * math.pi * ctx.beta * xi
        mult = np.where(growth <= math.log(RHO_BAND_GAIN), np.exp(growth), 0)
        F = np.fft.fft(np.eye(N), axis=0)
        mat = np.fft.ifft(mult[:, None] * F, axis=0)
        return OperatorMatrix(epsp * mat, L)
    raise DomainError(f"unknown generator {gen!r}")


def _rho_apply(ctx: DeformationContext, eps: int, epsp: int, gen: str, v: GridFunction1D) -> GridFunction1D:
    if gen == "x":
        return _like(v, eps * mul_exp_grid(v, 2 * math.pi * ctx.alpha).samples)
    return _like(v, epsp * apply_expP(v, ctx.beta).samples)


def rho_commutation_residual(ctx: DeformationContext, v: GridFunction1D, eps: int = 1, epsp: int = 1) -> float:
    """``||XY v - q YX v||`` relative to ``max(||v||, ||XY v||)``; ``X, Y`` act pointwise and spectrally."""
    lhs = _rho_apply(ctx, eps, epsp, "x", _rho_apply(ctx, eps, epsp, "y", v))
    rhs = _rho_apply(ctx, eps, epsp, "y", _rho_apply(ctx, eps, epsp, "x", v))
    diff = GridFunction1D(lhs.samples - ctx.q * rhs.samples, v.L)
    return diff.norm() / max(v.norm(), lhs.norm())


def rho_matrix_residual(ctx: DeformationContext, v: GridFunction1D, eps: int, epsp: int, gen: str) -> float:
    """Dense matrix of :func:`rep_rho` against the pointwise or spectral application."""
    dense = rep_rho(ctx, eps, epsp, gen, v.L, v.N).apply(v)
    return relative_error(dense.samples, _rho_apply(ctx, eps, epsp, gen, v).samples)


# -- independent grid routes to the closed forms -------------------------------------

def grid_fourier(g: GridFunction2D) -> tuple[np.ndarray, np.ndarray]:
    """``int e^{-2 pi i t.xi} g(t) dt`` at the FFT frequencies; returns ``(values, xi)``."""
    xi = np.fft.fftfreq(g.N, d=g.h)
    phase = np.exp(2j * math.pi * g.L * xi)
    vals = g.h**2 * np.fft.fft2(g.samples) * phase[:, None] * phase[None, :]
    return vals, xi


def grid_T(ctx: DeformationContext, g: GridFunction2D, k1: int = 0, k2: int = 0) -> GridFunction2D:
    """``T_k = e^{pi alpha_k Q1} e^{-beta_k P1 / 4} (x) e^{pi beta_k Q2} e^{alpha_k P2 / 4}`` on the grid.

    Moving both multipliers to the right produces phases ``e^{-+ pi i alpha_k beta_k / 4}``
    that cancel, so ``T_k`` is the two multiplications followed by the two shifts.
    """
    al = ctx.alpha + 2 * k1 / ctx.beta
    be = ctx.beta + 2 * k2 / ctx.alpha
    g = mul_exp_grid(mul_exp_grid(g, math.pi * al, axis=0), math.pi * be, axis=1)
    return apply_expP(apply_expP(g, -be / 4, axis=0), al / 4, axis=1)


def grid_L(ctx: DeformationContext, g: GridFunction2D, axis: int) -> GridFunction2D:
    """``conj(f)(P) e^{-2 pi w Q}`` with ``f(P) = -q^{1/2} e^{2 pi v P} + q^{-1/2} e^{-2 pi v P}``."""
    w, v = (ctx.alpha, ctx.beta) if axis == 0 else (ctx.beta, ctx.alpha)
    h = qpow(ctx, 0.5)
    m = mul_exp_grid(g, -2 * math.pi * w, axis)
    out = -(1 / h) * apply_expP(m, v, axis).samples + h * apply_expP(m, -v, axis).samples
    return GridFunction2D(out, g.L)


def grid_Phi(ctx: DeformationContext, gen: str, g: GridFunction2D) -> GridFunction2D:
    """``Phi(E') = L_alpha (x) e^{2 pi beta Q2}`` and ``Phi(F') = e^{2 pi alpha Q1} (x) L_beta``."""
    if gen == "Eprime":
        return grid_L(ctx, mul_exp_grid(g, 2 * math.pi * ctx.beta, axis=1), axis=0)
    if gen == "Fprime":
        # the factors act on different axes; multiplying first keeps it exact
        return grid_L(ctx, mul_exp_grid(g, 2 * math.pi * ctx.alpha, axis=0), axis=1)
    raise DomainError(f"no grid route for {gen!r}")


def grid_block_apply(op: Q4.BlockOperator, gs: list[GridFunction2D]) -> list[GridFunction2D]:
    out = [np.zeros_like(g.samples) for g in gs]
    for (i, j), z in op.entries:
        out[i] = out[i] + apply_symbol_operator(z, gs[j]).samples
    return [GridFunction2D(o, gs[0].L) for o in out]


def grid_inner4(a: list[GridFunction2D], b: list[GridFunction2D]) -> complex:
    return sum(inner(x, y) for x, y in zip(a, b))


# -- residuals ---------------------------------------------------------------------

def weyl_product_residual(a: Symbol, b: Symbol, L: float, N: int) -> float:
    """``Op(a # b)`` against ``Op(a) Op(b)``."""
    return operator_relative(weyl_op(a, L, N) @ weyl_op(b, L, N), weyl_op(S.twisted_product(a, b), L, N))


def weyl_adjoint_residual(a: Symbol, L: float, N: int) -> float:
    """``Op(a)^*`` against ``Op(a^*)``."""
    return operator_relative(weyl_op(a, L, N).adjoint(), weyl_op(S.star(a), L, N))


def hilbert_schmidt_residual(a: Symbol, b: Symbol, L: float, N: int) -> float:
    """``Tr Op(b)^* Op(a)`` against ``(a, b)``."""
    tr = complex(np.sum(np.conj(weyl_op(b, L, N).matrix) * weyl_op(a, L, N).matrix))
    ref = S.l2_inner(a, b)
    return abs(tr - ref) / max(abs(ref), 1e-300)


def shift_residual(a: Symbol, d: float, axis: int, L: float, N: int) -> float:
    """``e^{2 pi d P_j}`` by FFT against the exact shift ``x_j -> x_j - d i``."""
    approx = apply_expP(sample(a, L, N), d, axis)
    s = (-1j * d, 0) if axis == 0 else (0, -1j * d)
    return relative_error(approx.samples, sample(S.shift(a, *s), L, N).samples)


def round_trip_residual(a: Symbol, d: float, axis: int, L: float, N: int) -> float:
    g = sample(a, L, N)
    back = apply_expP(apply_expP(g, d, axis), -d, axis)
    return relative_error(back.samples, g.samples)


def fourier_residual(a: Symbol, L: float, N: int) -> float:
    vals, xi = grid_fourier(sample(a, L, N))
    X1, X2 = np.meshgrid(xi, xi, indexing="ij")
    return relative_error(vals, S.eval_symbol(S.fourier(a), X1, X2))


def natural_product_residual(ctx: DeformationContext, a: Symbol, b: Symbol, L: float, N: int) -> float:
    """``Op(T^{-1}(a nat b)) = Op(T^{-1} a) Op(T^{-1} b)``."""
    k = CovariantIndex(ctx)
    lhs = weyl_op(apply_Tk_inverse(k, S.natural_product(a, b, ctx)), L, N)
    rhs = weyl_op(apply_Tk_inverse(k, a), L, N) @ weyl_op(apply_Tk_inverse(k, b), L, N)
    return operator_relative(rhs, lhs)


def isometry_residual(ctx: DeformationContext, a: Symbol, b: Symbol, L: float, N: int,
                      k1: int = 0, k2: int = 0) -> float:
    """Closed-form ``<a, b>_k`` against grid quadrature of ``(T_k a, T_k b)``."""
    ref = scalar_product_k(CovariantIndex(ctx, k1, k2), a, b)
    val = inner(grid_T(ctx, sample(a, L, N), k1, k2), grid_T(ctx, sample(b, L, N), k1, k2))
    return abs(val - ref) / max(abs(ref), 1e-300)


def phi_residual(ctx: DeformationContext, gen: str, a: Symbol, L: float, N: int) -> float:
    approx = grid_Phi(ctx, gen, sample(a, L, N))
    return relative_error(approx.samples, sample(Phi_apply(ctx, gen, a), L, N).samples)


def block_symmetry_residual(ctx: DeformationContext, op: str, a: Q4.Tuple4, b: Q4.Tuple4,
                            L: float, N: int) -> float:
    """``<Op a, b> = <a, Op b>`` with the block operator applied and integrated on the grid."""
    B = Q4.block_operator(ctx, op)
    ga = [sample(x, L, N) for x in a.parts]
    gb = [sample(x, L, N) for x in b.parts]
    lhs = grid_inner4(grid_block_apply(B, ga), gb)
    rhs = grid_inner4(ga, grid_block_apply(B, gb))
    return abs(lhs - rhs) / max(abs(lhs), 1.0)


def block_apply_residual(ctx: DeformationContext, op: str, a: Q4.Tuple4, L: float, N: int) -> float:
    """Closed-form block action against the grid action."""
    B = Q4.block_operator(ctx, op)
    grid = grid_block_apply(B, [sample(x, L, N) for x in a.parts])
    exact = Q4.block_apply(ctx, op, a)
    num = max(float(np.max(np.abs(g.samples - sample(e, L, N).samples))) for g, e in zip(grid, exact.parts))
    den = max(float(np.max(np.abs(sample(e, L, N).samples))) for e in exact.parts)
    return num / max(den, 1e-300)


# -- checks exposed to the command line ------------------------------------------

CHECKS = ("weyl", "shifts", "rho", "functionals")


def run_check(name: str, ctx: DeformationContext, L: float = DEFAULT_L, N: int = DEFAULT_N,
              seed: int = 0) -> dict[str, float]:
    """Residuals of one oracle family on random moderate-width symbols."""
    rng = np.random.default_rng(seed)
    if name == "weyl":
        a, b = S.random_symbol(rng), S.random_symbol(rng)
        return {
            "op_product": weyl_product_residual(a, b, L, N),
            "op_adjoint": weyl_adjoint_residual(a, L, N),
            "hilbert_schmidt": hilbert_schmidt_residual(a, b, L, N),
        }
    if name == "shifts":
        a = S.random_symbol(rng)
        return {
            "expP_axis1": shift_residual(a, 0.5, 0, L, N),
            "expP_axis2": shift_residual(a, -0.4, 1, L, N),
            "round_trip": round_trip_residual(a, 0.5, 0, L, N),
            "fourier": fourier_residual(a, L, N),
        }
    if name == "rho":
        v = sample_1d(lambda x: np.exp(-math.pi * x * x), L, N)
        out = {}
        for e in (1, -1):
            for ep in (1, -1):
                out[f"commutation_{e:+d}{ep:+d}"] = rho_commutation_residual(ctx, v, e, ep)
                for gen in ("x", "y"):
                    out[f"matrix_{gen}_{e:+d}{ep:+d}"] = rho_matrix_residual(ctx, v, e, ep, gen)
        return out
    if name == "functionals":
        a, b = S.random_symbol(rng), S.random_symbol(rng)
        ta, tb = Q4.random_tuple(rng), Q4.random_tuple(rng)
        return {
            "natural_product": natural_product_residual(ctx, a, b, L, N),
            "isometry_k0": isometry_residual(ctx, a, b, L, N),
            "phi_Eprime": phi_residual(ctx, "Eprime", a, L, N),
            "phi_Fprime": phi_residual(ctx, "Fprime", a, L, N),
            "block_E_action": block_apply_residual(ctx, "E", ta, L, N),
            "block_E_symmetry": block_symmetry_residual(ctx, "E", ta, tb, L, N),
        }
    raise DomainError(f"unknown oracle check {name!r}; expected one of {', '.join(CHECKS)}")


# -- convergence study -------------------------------------------------------------

def h0_quadrature_residual(ctx: DeformationContext, a: Symbol, L: float, N: int) -> float:
    """Closed-form ``h_0(a)`` against grid quadrature of ``e^{2 pi (alpha x1 + beta x2)} a``."""
    ref = S.weighted_integral(a, 2 * math.pi * ctx.alpha, 2 * math.pi * ctx.beta)
    g = mul_exp_grid(mul_exp_grid(sample(a, L, N), 2 * math.pi * ctx.alpha, 0), 2 * math.pi * ctx.beta, 1)
    return abs(integrate(g) - ref) / max(abs(ref), 1e-300)


def _convergence_symbols() -> tuple[Symbol, Symbol, Symbol, Symbol]:
    """Two wide pairs: the Weyl pair is truncated visibly at ``L = 10``; the
    moderate pair survives the shifts and exponential multipliers."""
    wa = S.gaussian(0.1, 0.14, 0.1 + 0.2j, -0.15, n1=1) + S.gaussian(0.15, 0.12, -0.3, 0.1j, n2=1, coeff=0.5 - 0.3j)
    wb = S.gaussian(0.13, 0.1, -0.2j, 0.25, coeff=0.8 + 0.4j) + S.gaussian(0.16, 0.15, 0.2, -0.1, n1=1, n2=1, coeff=-0.4)
    a = S.gaussian(0.25, 0.3, 0.1 + 0.2j, -0.15, n1=1) + S.gaussian(0.3, 0.25, -0.3, 0.1j, n2=1, coeff=0.5 - 0.3j)
    b = S.gaussian(0.3, 0.25, -0.2j, 0.25, coeff=0.8 + 0.4j) + S.gaussian(0.28, 0.3, 0.2, -0.1, n1=1, n2=1, coeff=-0.4)
    return wa, wb, a, b


def convergence_context(ctx: DeformationContext) -> DeformationContext:
    """``ctx`` rebalanced to ``|alpha| = |beta| = sqrt|gamma|`` so multipliers stay on the grid."""
    root = math.sqrt(abs(ctx.gamma))
    return make_context(ctx.gamma, root).with_tolerances(ctx.tol_exact, ctx.tol_oracle)


CONVERGENCE_IDENTITIES = (
    "op_product", "hilbert_schmidt", "fourier", "expP_axis1", "expP_axis2",
    "h0_quadrature", "isometry_k0", "natural_product", "phi_Eprime", "block_E_symmetry",
)


def convergence_residuals(ctx: DeformationContext, L: float, N: int) -> dict[str, float]:
    """The fixed ten-identity test set evaluated on one grid, in the balanced context."""
    ctx = convergence_context(ctx)
    wa, wb, a, b = _convergence_symbols()
    ta = Q4.Tuple4.of((a, b.scale(0.5), S.Symbol(), a.scale(-0.3j)))
    tb = Q4.Tuple4.of((b, S.Symbol(), a.scale(0.7), b.scale(0.2)))
    out = {
        "op_product": weyl_product_residual(wa, wb, L, N),
        "hilbert_schmidt": hilbert_schmidt_residual(wa, wb, L, N),
        "fourier": fourier_residual(a, L, N),
        "expP_axis1": shift_residual(a, 0.2, 0, L, N),
        "expP_axis2": shift_residual(b, -0.2, 1, L, N),
        "h0_quadrature": h0_quadrature_residual(ctx, a, L, N),
        "isometry_k0": isometry_residual(ctx, wa, wb, L, N),
        "natural_product": natural_product_residual(ctx, wa, wb, L, N),
        "phi_Eprime": phi_residual(ctx, "Eprime", a, L, N),
        "block_E_symmetry": block_symmetry_residual(ctx, "E", ta, tb, L, N),
    }
    return {name: out[name] for name in CONVERGENCE_IDENTITIES}


def convergence_study(ctx: DeformationContext, coarse: tuple[float, int] = (10.0, 512),
                      fine: tuple[float, int] = (14.0, 1024)) -> dict[str, dict[str, float | bool]]:
    """Residuals of the fixed set on a coarse and a fine grid, and whether each improved."""
    rc = convergence_residuals(ctx, *coarse)
    rf = convergence_residuals(ctx, *fine)
    return {name: {"coarse": rc[name], "fine": rf[name], "improved": rf[name] < rc[name]} for name in rc}


__all__ = [
    "CHECKS", "CONVERGENCE_IDENTITIES", "DEFAULT_L", "DEFAULT_N", "GridFunction1D", "GridFunction2D",
    "OperatorMatrix", "apply_expP", "apply_symbol_operator", "block_apply_residual",
    "block_symmetry_residual", "convergence_context", "convergence_residuals", "convergence_study", "fourier_residual",
    "grid_Phi", "grid_T", "h0_quadrature_residual", "grid_block_apply", "grid_fourier", "grid_points", "hilbert_schmidt_residual",
    "inner", "integrate", "isometry_residual", "mul_exp_grid", "natural_product_residual",
    "operator_relative", "phi_residual", "relative_error", "rep_rho", "rho_commutation_residual", "rho_matrix_residual",
    "round_trip_residual", "run_check", "sample", "sample_1d", "shift_grid", "shift_residual",
    "weyl_adjoint_residual", "weyl_op", "weyl_product_residual",
]

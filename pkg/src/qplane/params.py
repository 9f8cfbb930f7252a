"""Deformation parameters shared by every algebra in the package.

All modules read ``gamma``, ``alpha``, ``beta`` and the derived unit ``q``
from a single immutable :class:`DeformationContext`.  Fractional powers of
``q`` always use the branch ``q**r = exp(2*pi*i*gamma*r)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Union

Real = Union[int, float, Fraction]

DEFAULT_TOL_EXACT = 1e-10
DEFAULT_TOL_ORACLE = 1e-6


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


@dataclass(frozen=True)
class DeformationContext:
    gamma: float
    alpha: float
    beta: float
    q: complex
    lam: complex
    tol_exact: float = DEFAULT_TOL_EXACT
    tol_oracle: float = DEFAULT_TOL_ORACLE
    precision: str = "double"
    _qcache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def qpow(self, r: Real) -> complex:
        return qpow(self, r)

    def with_tolerances(self, tol_exact: float | None = None, tol_oracle: float | None = None) -> "DeformationContext":
        return replace(
            self,
            tol_exact=self.tol_exact if tol_exact is None else float(tol_exact),
            tol_oracle=self.tol_oracle if tol_oracle is None else float(tol_oracle),
            _qcache={},
        )

    def echo(self) -> dict:
        return {
            "gamma": self.gamma,
            "alpha": self.alpha,
            "beta": self.beta,
            "tol_exact": self.tol_exact,
            "tol_oracle": self.tol_oracle,
            "precision": self.precision,
        }


def make_context(
    gamma: float,
    alpha: float,
    *,
    tol_exact: float = DEFAULT_TOL_EXACT,
    tol_oracle: float = DEFAULT_TOL_ORACLE,
    precision: str = "double",
) -> DeformationContext:
    """Build a context with ``beta = gamma / alpha`` and ``q = exp(2 pi i gamma)``.

    Raises :class:`DomainError` unless ``0 < |gamma| < 1/3`` and ``alpha != 0``.
    """
    gamma = float(gamma)
    alpha = float(alpha)
    if not math.isfinite(gamma) or not 0.0 < abs(gamma) < 1.0 / 3.0:
        raise DomainError(f"gamma must satisfy 0 < |gamma| < 1/3, got {gamma!r}")
    if alpha == 0.0 or not math.isfinite(alpha):
        raise DomainError("alpha must be a finite nonzero real")
    if precision != "double":
        raise DomainError(f"unsupported precision {precision!r}")
    q = cmath.exp(2j * math.pi * gamma)
    return DeformationContext(
        gamma=gamma,
        alpha=alpha,
        beta=gamma / alpha,
        q=q,
        lam=q - 1 / q,
        tol_exact=float(tol_exact),
        tol_oracle=float(tol_oracle),
        precision=precision,
    )


def qpow(ctx: DeformationContext, r: Real) -> complex:
    """Return ``exp(2 pi i gamma r)``, the fixed branch of ``q**r``."""
    key = Fraction(r).limit_denominator(1 << 20) if isinstance(r, (int, Fraction)) else float(r)
    cached = ctx._qcache.get(key)
    if cached is None:
        cached = cmath.exp(2j * math.pi * ctx.gamma * float(r))
        ctx._qcache[key] = cached
    return cached


CONFIG_KEYS = ("gamma", "alpha", "tol_exact", "tol_oracle", "precision", "N", "L", "seed")


def read_config(path: str | Path) -> dict[str, str]:
    """Parse a ``key = value`` text file; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values

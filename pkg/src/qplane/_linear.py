"""Finite linear combinations over hashable monomial keys."""

from __future__ import annotations

from numbers import Number
from typing import Any, Hashable, Iterable, Iterator, TypeVar

from .params import DeformationContext

T = TypeVar("T", bound="LinearCombination")


class LinearCombination:
    """Immutable map ``key -> complex`` with vector-space operations.

    Subclasses supply ``_mul_keys`` (product of two basis keys as an iterable
    of ``(key, coeff)``) and optionally ``_format_key``.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: DeformationContext, terms: dict[Hashable, complex] | None = None):
        self.ctx = ctx
        self.terms: dict[Hashable, complex] = {}
        if terms:
            for key, c in terms.items():
                if c != 0:
                    self.terms[key] = complex(c)

    @classmethod
    def _from_pairs(cls: type[T], ctx: DeformationContext, pairs: Iterable[tuple[Hashable, complex]]) -> T:
        acc: dict[Hashable, complex] = {}
        for key, c in pairs:
            acc[key] = acc.get(key, 0) + c
        return cls(ctx, acc)

    @classmethod
    def monomial(cls: type[T], ctx: DeformationContext, key: Hashable, coeff: complex = 1) -> T:
        return cls(ctx, {key: coeff})

    @classmethod
    def zero(cls: type[T], ctx: DeformationContext) -> T:
        return cls(ctx)

    def _mul_keys(self, k1: Any, k2: Any) -> Iterable[tuple[Hashable, complex]]:
        raise NotImplementedError

    def _coerce(self: T, other: Any) -> T:
        if isinstance(other, type(self)):
            return other
        if isinstance(other, Number):
            return type(self).monomial(self.ctx, self._unit_key(), complex(other))
        return NotImplemented

    def _unit_key(self) -> Hashable:
        raise NotImplementedError

    def __iter__(self) -> Iterator[tuple[Hashable, complex]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self: T, other: Any) -> T:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc.get(key, 0) + c
        return type(self)(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self: T) -> T:
        return type(self)(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self: T, other: Any) -> T:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self: T, other: Any) -> T:
        return (-self) + other

    def scale(self: T, c: complex) -> T:
        return type(self)(self.ctx, {k: c * v for k, v in self.terms.items()})

    def __mul__(self: T, other: Any) -> T:
        if isinstance(other, Number):
            return self.scale(complex(other))
        if not isinstance(other, type(self)):
            return NotImplemented
        acc: dict[Hashable, complex] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for key, c in self._mul_keys(k1, k2):
                    acc[key] = acc.get(key, 0) + c1 * c2 * c
        return type(self)(self.ctx, acc)

    def __rmul__(self: T, other: Any) -> T:
        if isinstance(other, Number):
            return self.scale(complex(other))
        return NotImplemented

    def __truediv__(self: T, other: Number) -> T:
        return self.scale(1 / complex(other))

    def __pow__(self: T, n: int) -> T:
        if n < 0:
            raise ValueError("negative powers are not defined for general elements")
        result = type(self).monomial(self.ctx, self._unit_key())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def distance(self, other: "LinearCombination") -> float:
        """Largest coefficient of ``self - other``."""
        return (self - other).max_abs()

    def is_close(self, other: "LinearCombination", tol: float | None = None) -> bool:
        tol = self.ctx.tol_exact if tol is None else tol
        return self.distance(other) <= tol

    def coeff(self, key: Hashable) -> complex:
        return self.terms.get(key, 0j)

    def sorted_terms(self) -> list[tuple[Hashable, complex]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def _format_key(self, key: Any) -> str:
        return str(key)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            mono = self._format_key(key)
            coeff = format_complex(c)
            parts.append(coeff if mono == "1" else f"{coeff}*{mono}")
        return " + ".join(parts)


def format_complex(c: complex, digits: int = 12) -> str:
    re = round(c.real, digits) + 0.0
    im = round(c.imag, digits) + 0.0
    if im == 0:
        return f"{re:.{digits}g}"
    return f"({re:.{digits}g},{im:.{digits}g})"

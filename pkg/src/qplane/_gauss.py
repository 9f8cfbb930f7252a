"""Closed-form Gaussian integrals with polynomial prefactors.

The single workhorse is

    I(x) = int_{R^n} P(z, x) exp(-z^T M z + z^T (B x + b)) dz

for complex symmetric ``M`` with positive definite real part.  Completing
the square gives

    I(x) = pi^{n/2} det(M)^{-1/2} exp(m^T M^{-1} m / 4) E[P(z0 + w, x)],

with ``m = Bx + b``, ``z0 = M^{-1} m / 2`` and ``w`` a centred Gaussian of
covariance ``M^{-1}/2``, whose moments follow from Isserlis' theorem.  The
result is again a polynomial times a Gaussian in ``x``.
"""

from __future__ import annotations

import itertools
import math
from math import comb

import numpy as np

Poly = dict  # exponent tuple -> complex


def poly_add(p: Poly, q: Poly, scale: complex = 1) -> Poly:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + scale * c
    return out


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            out[k] = out.get(k, 0) + c1 * c2
    return out


def poly_pow(p: Poly, n: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: 1}
    for _ in range(n):
        out = poly_mul(out, p)
    return out


def det_inv_sqrt(M: np.ndarray) -> complex:
    """``det(M)^{-1/2}`` continued analytically from real positive definite matrices.

    For ``Re M > 0`` every eigenvalue lies in the open right half plane, so the
    product of principal square roots is the continuous branch.
    """
    if M.shape[0] == 0:
        return 1.0 + 0j
    eig = np.linalg.eigvals(M)
    return complex(np.prod(1 / np.sqrt(eig.astype(complex))))


class _Moments:
    """Moments ``E[w^beta]`` of a centred complex Gaussian with covariance ``S``."""

    def __init__(self, S: np.ndarray):
        self.S = S
        self.cache: dict[tuple, complex] = {}

    def __call__(self, beta: tuple) -> complex:
        if sum(beta) % 2:
            return 0j
        if not any(beta):
            return 1 + 0j
        hit = self.cache.get(beta)
        if hit is not None:
            return hit
        i = next(j for j, e in enumerate(beta) if e)
        rest = list(beta)
        rest[i] -= 1
        total = 0j
        for j, e in enumerate(rest):
            if e:
                sub = list(rest)
                sub[j] -= 1
                total += self.S[i, j] * e * self(tuple(sub))
        self.cache[beta] = total
        return total


def gaussian_integral(poly: Poly, n: int, k: int, M: np.ndarray, B: np.ndarray, b: np.ndarray):
    """Integrate out the first ``n`` variables of ``poly`` against the Gaussian weight.

    ``poly`` has exponent tuples of length ``n + k`` (integration variables
    first).  Returns ``(Aq, cl, result_poly)`` with the result equal to
    ``exp(-x^T Aq x + cl . x) * result_poly(x)``; the constant factor is folded
    into ``result_poly``.
    """
    M = np.asarray(M, dtype=complex)
    B = np.asarray(B, dtype=complex).reshape(n, k)
    b = np.asarray(b, dtype=complex).reshape(n)
    Minv = np.linalg.inv(M)
    Minv = (Minv + Minv.T) / 2
    const = math.pi ** (n / 2) * det_inv_sqrt(M) * np.exp(b @ Minv @ b / 4)
    Aq = -(B.T @ Minv @ B) / 4
    cl = B.T @ Minv @ b / 2
    L = Minv @ B / 2
    l0 = Minv @ b / 2
    moments = _Moments(Minv / 2)
    if k == 0:
        return Aq, cl, _scalar_sum(poly, n, moments, l0, const)

    # s_i = L_i . x + l0_i as polynomials in x
    zero_x = (0,) * k
    shifts = []
    for i in range(n):
        p: Poly = {zero_x: l0[i]} if l0[i] != 0 else {}
        for j in range(k):
            if L[i, j] != 0:
                e = [0] * k
                e[j] = 1
                p[tuple(e)] = L[i, j]
        shifts.append(p)
    power_cache: dict[tuple[int, int], Poly] = {}

    def s_pow(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = {zero_x: 1} if e == 0 else poly_mul(s_pow(i, e - 1), shifts[i])
        return power_cache[key]

    result: Poly = {}
    for expo, coeff in poly.items():
        alpha, kappa = expo[:n], expo[n:]
        for beta in itertools.product(*(range(a + 1) for a in alpha)):
            mom = moments(beta)
            if mom == 0:
                continue
            factor = coeff * mom
            for a_i, b_i in zip(alpha, beta):
                factor *= comb(a_i, b_i)
            term: Poly = {kappa: factor}
            for i, (a_i, b_i) in enumerate(zip(alpha, beta)):
                if a_i - b_i:
                    term = poly_mul(term, s_pow(i, a_i - b_i))
            for kk, c in term.items():
                result[kk] = result.get(kk, 0) + c
    result = {kk: c * const for kk, c in result.items() if c != 0}
    return Aq, cl, result


def _scalar_sum(poly: Poly, n: int, moments: _Moments, l0: np.ndarray, const: complex) -> Poly:
    """Full integral: sum of non-central moments ``E[(l0 + w)^alpha]``.

    The table follows ``m(beta + e_i) = l0_i m(beta) + sum_j S_ij beta_j m(beta - e_j)``.
    """
    if not poly:
        return {}
    S = moments.S
    mu = [complex(v) for v in l0]
    top = [max(e[i] for e in poly) for i in range(n)]
    table: dict[tuple, complex] = {(0,) * n: 1 + 0j}
    for alpha in sorted(itertools.product(*(range(t + 1) for t in top)), key=sum):
        if not any(alpha):
            continue
        i = next(j for j, e in enumerate(alpha) if e)
        beta = list(alpha)
        beta[i] -= 1
        val = mu[i] * table[tuple(beta)]
        for j, e in enumerate(beta):
            if e:
                sub = list(beta)
                sub[j] -= 1
                val += S[i, j] * e * table[tuple(sub)]
        table[alpha] = val
    total = const * sum(c * table[e[:n]] for e, c in poly.items())
    return {(): total} if total != 0 else {}

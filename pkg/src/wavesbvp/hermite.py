"""Hermite polynomials and Hermite wavelets on [0, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .polynomial import PiecewisePolynomial, Polynomial


@lru_cache(maxsize=None)
def hermite_polynomial(m: int) -> Polynomial:
    """Physicists' Hermite polynomial H_m with integer coefficients.

    Built from H_{m+1}(t) = 2t H_m(t) - 2m H_{m-1}(t).
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    prev, cur = Polynomial([1]), Polynomial([0, 2])
    if m == 0:
        return prev
    two_t = Polynomial([0, 2])
    for j in range(1, m):
        prev, cur = cur, two_t * cur - prev * (2 * j)
    return cur


@dataclass(frozen=True)
class HermiteWaveletIndex:
    """Resolution level ``k``, translation ``n`` and polynomial order ``m``."""

    k: int
    n: int
    m: int
    M: Optional[int] = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 1 <= self.n <= 2 ** (self.k - 1):
            raise ValueError(f"n must lie in 1..{2 ** (self.k - 1)}")
        if self.m < 0 or (self.M is not None and self.m > self.M - 1):
            raise ValueError("m out of range")

    @property
    def n_hat(self) -> int:
        return 2 * self.n - 1

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        w = Fraction(1, 2 ** self.k)
        return (self.n_hat - 1) * w, (self.n_hat + 1) * w

    @property
    def normalization(self) -> float:
        # Translation index n (not m) in the factorial, as in the defining formula.
        n = self.n
        return 2 ** (self.k / 2) / math.sqrt(math.factorial(n) * 2 ** n * math.sqrt(math.pi))


def hermite_wavelet(idx: HermiteWaveletIndex) -> PiecewisePolynomial:
    """psi_{n,m}: scaled, shifted H_m on its dyadic support, zero elsewhere."""
    start, end = idx.support
    local = hermite_polynomial(idx.m).compose_affine(2 ** idx.k, -idx.n_hat)
    breakpoints, pieces = [Fraction(0)], []
    if start > 0:
        breakpoints.append(start)
        pieces.append(Polynomial([0]))
    breakpoints.append(end)
    pieces.append(local)
    if end < 1:
        breakpoints.append(Fraction(1))
        pieces.append(Polynomial([0]))
    return PiecewisePolynomial(breakpoints, pieces, idx.normalization)


def integrate_wavelet(idx: HermiteWaveletIndex, nu: int) -> PiecewisePolynomial:
    """nu-fold integral of psi_{n,m} from 0, including the polynomial tail past the support."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    out = hermite_wavelet(idx)
    for _ in range(nu):
        out = out.antiderivative()
    return out

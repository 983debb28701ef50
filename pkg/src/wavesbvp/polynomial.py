"""Dense univariate polynomials and piecewise polynomials on [0, 1].

Coefficients are stored in ascending powers. Integer and ``Fraction``
inputs stay exact under arithmetic and integration; evaluation falls back
to floating point unless the argument itself is exact.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number, Rational
from typing import Sequence

import numpy as np


def _trim(coeffs: Sequence[Number]) -> tuple:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        coeffs = [0]
    return tuple(coeffs)


def _exact(c):
    # Rational -> Fraction keeps integrals exact; floats pass through.
    if isinstance(c, Rational) and not isinstance(c, Fraction):
        return Fraction(c)
    return c


@dataclass(frozen=True)
class Polynomial:
    """Polynomial ``sum(coeffs[i] * t**i)`` in canonical (trimmed) form."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[Number]):
        object.__setattr__(self, "coeffs", _trim(_exact(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (0,) else 0

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, t):
        """Horner evaluation; accepts scalars or numpy arrays."""
        if isinstance(t, np.ndarray):
            acc = np.zeros_like(t, dtype=float)
            for c in reversed(self.coeffs):
                acc = acc * t + float(c)
            return acc
        if isinstance(t, Rational):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * t + c
            return acc
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:] or [0])

    def antiderivative(self, lower=0) -> Polynomial:
        """Antiderivative vanishing at ``lower``."""
        raw = Polynomial([0] + [c / Fraction(i + 1) for i, c in enumerate(self.coeffs)])
        return raw - Polynomial([raw(lower)])

    def compose_affine(self, scale, shift) -> Polynomial:
        """Return ``p(scale * t + shift)``."""
        inner = Polynomial([shift, scale])
        out = Polynomial([0])
        power = Polynomial([1])
        for c in self.coeffs:
            out = out + power * c
            power = power * inner
        return out

    def taylor_at(self, x0, order: int) -> list:
        """Values of the first ``order`` derivatives (0..order-1) at ``x0``."""
        vals, p = [], self
        for _ in range(order):
            vals.append(p(x0))
            p = p.derivative()
        return vals


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Polynomial pieces on ``[b_j, b_{j+1})``; the last piece is closed at 1.

    ``scale`` multiplies every piece at evaluation time. It carries
    irrational normalisation constants so the pieces themselves can stay
    exact.
    """

    breakpoints: tuple
    pieces: tuple
    scale: float = 1.0

    def __post_init__(self):
        bp = tuple(self.breakpoints)
        if len(bp) != len(self.pieces) + 1:
            raise ValueError("need exactly one piece per interval")
        if bp[0] != 0 or bp[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(b >= a for a, b in zip(bp[1:], bp[:-1])):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def piece_index(self, t) -> int:
        if t < 0 or t > 1:
            raise ValueError(f"t={t} outside [0, 1]")
        j = bisect.bisect_right(self.breakpoints, t) - 1
        return min(j, len(self.pieces) - 1)

    def __call__(self, t):
        if isinstance(t, np.ndarray):
            out = np.empty(t.shape, dtype=float)
            flat = t.ravel()
            res = out.ravel()
            for n, x in enumerate(flat):
                res[n] = float(self.pieces[self.piece_index(x)](float(x)))
            return out * self.scale
        val = self.pieces[self.piece_index(t)](t)
        if self.scale == 1.0:
            return val
        return float(val) * self.scale

    def antiderivative(self) -> PiecewisePolynomial:
        """Integral from 0, continuous across breakpoints."""
        pieces, carry = [], Fraction(0)
        for j, p in enumerate(self.pieces):
            a, b = self.breakpoints[j], self.breakpoints[j + 1]
            q = p.antiderivative(lower=a) + Polynomial([carry])
            pieces.append(q)
            carry = q(b)
        return PiecewisePolynomial(self.breakpoints, pieces, self.scale)

    def derivative(self) -> PiecewisePolynomial:
        return PiecewisePolynomial(self.breakpoints,
                                   [p.derivative() for p in self.pieces], self.scale)

    def integral(self):
        """Definite integral over [0, 1]."""
        val = self.antiderivative().pieces[-1](Fraction(1))
        return val if self.scale == 1.0 else float(val) * self.scale

"""Haar wavelets on [P, Q], their repeated integrals and operational matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np


@dataclass(frozen=True)
class HaarGrid:
    """Uniform grid of 2M cells on [P, Q] with M = 2**J."""

    J: int
    P: Fraction = Fraction(0)
    Q: Fraction = Fraction(1)

    def __post_init__(self):
        if self.J < 0:
            raise ValueError("J must be >= 0")
        if not self.Q > self.P:
            raise ValueError("need P < Q")
        for name in ("P", "Q"):
            v = getattr(self, name)
            if isinstance(v, Rational):
                object.__setattr__(self, name, Fraction(v))

    @property
    def M(self) -> int:
        return 2 ** self.J

    @property
    def size(self) -> int:
        return 2 * self.M

    @property
    def dx(self):
        return (self.Q - self.P) / (2 * self.M)

    def collocation_points(self, exact: bool = False):
        """Cell midpoints x_t = P + (2t - 1) dx / 2, t = 1..2M."""
        pts = [self.P + (2 * t - 1) * self.dx / 2 for t in range(1, self.size + 1)]
        if exact:
            return pts
        return np.array([float(p) for p in pts])


@dataclass(frozen=True)
class HaarIndex:
    """Wavelet number i >= 1 with i = m + k + 1, m = 2**j (for i >= 2)."""

    i: int
    j: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        if self.i < 1:
            raise ValueError("wavelet number must be >= 1")
        if self.i == 1:
            j, k = 0, 0
        else:
            j = (self.i - 1).bit_length() - 1
            k = self.i - 2 ** j - 1
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", k)

    @property
    def m(self) -> int:
        return 2 ** self.j


def _index(idx) -> HaarIndex:
    return idx if isinstance(idx, HaarIndex) else HaarIndex(int(idx))


def haar_breakpoints(idx, grid: HaarGrid):
    """(eta1, eta2, eta3) for wavelet ``idx``; i = 1 gives (P, Q, Q)."""
    idx = _index(idx)
    if idx.j > grid.J:
        raise ValueError(f"wavelet {idx.i} needs level {idx.j} > J={grid.J}")
    P, Q = grid.P, grid.Q
    if idx.i == 1:
        return P, Q, Q
    if idx.i == 2:
        return P, (2 * P + Q) / 2, Q
    mu = Fraction(grid.M, idx.m)
    dx = grid.dx
    return (P + 2 * idx.k * mu * dx,
            P + (2 * idx.k + 1) * mu * dx,
            P + 2 * (idx.k + 1) * mu * dx)


def _check_domain(grid: HaarGrid, x):
    if x < grid.P or x > grid.Q:
        raise ValueError(f"x={x} outside [{grid.P}, {grid.Q}]")


def haar_function(idx, grid: HaarGrid, x):
    """h_i(x): +1 on [eta1, eta2), -1 on [eta2, eta3), 0 elsewhere; h_1 = 1."""
    _check_domain(grid, x)
    idx = _index(idx)
    if idx.i == 1:
        return 1
    e1, e2, e3 = haar_breakpoints(idx, grid)
    if e1 <= x < e2:
        return 1
    if e2 <= x < e3:
        return -1
    return 0


def haar_integral(idx, grid: HaarGrid, nu: int, x):
    """p_{nu,i}(x), the nu-fold integral of h_i from P, in closed form.

    Exact (``Fraction``) when ``x`` and the grid are rational.
    """
    if nu < 1:
        raise ValueError("nu must be >= 1")
    _check_domain(grid, x)
    idx = _index(idx)
    val = _integral_unscaled(idx.i, haar_breakpoints(idx, grid), nu, x)
    if isinstance(x, Rational):
        return Fraction(val) / math.factorial(nu)
    return val / math.factorial(nu)


def _integral_unscaled(i, breaks, nu, x):
    """nu! * p_{nu,i}(x) from the three-region closed form."""
    e1, e2, e3 = breaks
    if i == 1:
        return (x - e1) ** nu
    if x < e1:
        return 0 * x
    val = (x - e1) ** nu
    if x >= e2:
        val -= 2 * (x - e2) ** nu
    if x > e3:
        val += (x - e3) ** nu
    return val


@dataclass(frozen=True)
class OperationalMatrices:
    """H and P_1..P_nu with H[i-1, t-1] = h_i(x_t)."""

    H: np.ndarray
    P: tuple

    def integral(self, nu: int) -> np.ndarray:
        return self.P[nu - 1]


def build_matrices(grid: HaarGrid, max_nu: int, exact: bool = False) -> OperationalMatrices:
    """Haar matrix and integration matrices at the collocation points.

    With ``exact=True`` entries are ``Fraction`` objects (object arrays).
    """
    if max_nu < 1:
        raise ValueError("max_nu must be >= 1")
    pts = grid.collocation_points(exact=True)
    n = grid.size
    dtype = object if exact else float
    conv = (lambda v: Fraction(v)) if exact else float
    facts = [Fraction(math.factorial(nu)) for nu in range(1, max_nu + 1)]
    H = np.empty((n, n), dtype=dtype)
    Ps = [np.empty((n, n), dtype=dtype) for _ in range(max_nu)]
    for i in range(1, n + 1):
        breaks = haar_breakpoints(i, grid)
        e1, e2, e3 = breaks
        for t, x in enumerate(pts):
            h = 1 if i == 1 else (1 if e1 <= x < e2 else (-1 if e2 <= x < e3 else 0))
            H[i - 1, t] = conv(h)
            for nu in range(1, max_nu + 1):
                Ps[nu - 1][i - 1, t] = conv(_integral_unscaled(i, breaks, nu, x) / facts[nu - 1])
    return OperationalMatrices(H, tuple(Ps))

"""Collocation discretisation: basis values, integrated basis values and
boundary embedding, giving affine maps c -> (y, y', y'') at any t."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .haar import HaarGrid, HaarIndex, haar_breakpoints
from .hermite import HermiteWaveletIndex, hermite_wavelet, integrate_wavelet
from .problem import BCCase, BoundaryCondition


class Family(enum.Enum):
    HAAR = "haar"
    HERMITE = "hermite"


@dataclass(frozen=True)
class BasisSpec:
    """Haar at level ``resolution = J`` (N = 2**(J+1)) or Hermite with
    ``resolution = M`` functions at k = 1 (N = M)."""

    family: Family
    resolution: int

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family(self.family.lower()))
        if self.n_coeffs < 2:
            raise ValueError("basis needs at least two coefficients")

    @property
    def n_coeffs(self) -> int:
        if self.family is Family.HAAR:
            if self.resolution < 0:
                raise ValueError("Haar level J must be >= 0")
            return 2 ** (self.resolution + 1)
        return self.resolution

    @classmethod
    def haar(cls, J: int) -> BasisSpec:
        return cls(Family.HAAR, J)

    @classmethod
    def hermite(cls, M: int) -> BasisSpec:
        return cls(Family.HERMITE, M)


def collocation_points(spec: BasisSpec) -> np.ndarray:
    """Midpoints (2l - 1) / (2N), l = 1..N."""
    n = spec.n_coeffs
    return (2 * np.arange(1, n + 1) - 1) / (2 * n)


@lru_cache(maxsize=64)
def _hermite_functions(M: int):
    idx = [HermiteWaveletIndex(1, 1, m, M) for m in range(M)]
    # k = 1: one piece on [0, 1]; keep float coefficients for fast evaluation.
    out = []
    for fam in ([hermite_wavelet(i) for i in idx],
                [integrate_wavelet(i, 1) for i in idx],
                [integrate_wavelet(i, 2) for i in idx]):
        out.append([(pp.scale, np.array([float(c) for c in pp.pieces[0].coeffs])) for pp in fam])
    return tuple(out)


def _eval_hermite(M: int, t: np.ndarray):
    mats = []
    for fam in _hermite_functions(M):
        cols = [scale * np.polynomial.polynomial.polyval(t, coeffs) for scale, coeffs in fam]
        mats.append(np.column_stack(cols))
    return tuple(mats)


def _eval_haar(J: int, t: np.ndarray):
    grid = HaarGrid(J)
    n = grid.size
    B0 = np.zeros((t.size, n))
    B1 = np.zeros((t.size, n))
    B2 = np.zeros((t.size, n))
    for i in range(1, n + 1):
        e1, e2, e3 = (float(e) for e in haar_breakpoints(HaarIndex(i), grid))
        if i == 1:
            B0[:, 0] = 1.0
            B1[:, 0] = t
            B2[:, 0] = t ** 2 / 2
            continue
        r1 = np.clip(t - e1, 0, None)
        r2 = np.clip(t - e2, 0, None)
        r3 = np.clip(t - e3, 0, None)
        B0[:, i - 1] = ((t >= e1) & (t < e2)).astype(float) - ((t >= e2) & (t < e3))
        B1[:, i - 1] = r1 - 2 * r2 + r3
        B2[:, i - 1] = (r1 ** 2 - 2 * r2 ** 2 + r3 ** 2) / 2
    return B0, B1, B2


def basis_values(spec: BasisSpec, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rows of (basis, once-integrated, twice-integrated) values at each t."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0) or np.any(t > 1):
        raise ValueError("t must lie in [0, 1]")
    if spec.family is Family.HAAR:
        return _eval_haar(spec.resolution, t)
    return _eval_hermite(spec.resolution, t)


@dataclass(frozen=True)
class AffineMap:
    """Row-wise ``offset + linear @ c``."""

    offset: np.ndarray
    linear: np.ndarray

    def __call__(self, c: np.ndarray) -> np.ndarray:
        return self.offset + self.linear @ c


def boundary_terms(bc: BoundaryCondition, t: np.ndarray, B1_at_1: np.ndarray,
                   B2_at_1: np.ndarray) -> tuple[AffineMap, AffineMap]:
    """Boundary contributions to y and y' after eliminating y(0), y'(0).

    Starts from y' = B1 c + y'(0), y = B2 c + t y'(0) + y(0).
    """
    al, be = bc.alpha, bc.beta
    ones = np.ones_like(t)
    zero = np.zeros((t.size, B2_at_1.size))
    if bc.case is BCCase.NEUMANN_DIRICHLET:
        value = AffineMap((t - 1) * al + be, -np.tile(B2_at_1, (t.size, 1)))
        deriv = AffineMap(al * ones, zero)
    elif bc.case is BCCase.DIRICHLET_DIRICHLET:
        # y'(0) = beta - alpha - B2(1) c
        value = AffineMap((1 - t) * al + t * be, -np.outer(t, B2_at_1))
        deriv = AffineMap((be - al) * ones, -np.tile(B2_at_1, (t.size, 1)))
    else:
        r = bc.b / bc.a
        value = AffineMap(be / bc.a + (t - 1 - r) * al,
                          -np.tile(B2_at_1 + r * B1_at_1, (t.size, 1)))
        deriv = AffineMap(al * ones, zero)
    return value, deriv


@dataclass(frozen=True)
class CollocationSystem:
    """Everything needed to map coefficients to (y, y', y'') at the points.

    y'' = B0 c,  y' = B1 c + bt_deriv(c),  y = B2 c + bt_value(c).
    """

    spec: BasisSpec
    bc: BoundaryCondition
    points: np.ndarray
    B0: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    B1_at_1: np.ndarray
    B2_at_1: np.ndarray
    bt_value: AffineMap
    bt_deriv: AffineMap

    @property
    def n(self) -> int:
        return self.spec.n_coeffs

    @property
    def value_matrix(self) -> np.ndarray:
        return self.B2 + self.bt_value.linear

    @property
    def deriv_matrix(self) -> np.ndarray:
        return self.B1 + self.bt_deriv.linear

    def values(self, c):
        """(y, y', y'') at the collocation points."""
        return (self.value_matrix @ c + self.bt_value.offset,
                self.deriv_matrix @ c + self.bt_deriv.offset,
                self.B0 @ c)


def assemble(spec: BasisSpec, bc: BoundaryCondition) -> CollocationSystem:
    points = collocation_points(spec)
    B0, B1, B2 = basis_values(spec, points)
    _, e1, e2 = basis_values(spec, [1.0])
    bt_value, bt_deriv = boundary_terms(bc, points, e1[0], e2[0])
    return CollocationSystem(spec, bc, points, B0, B1, B2, e1[0], e2[0], bt_value, bt_deriv)


def reconstruct(sys: CollocationSystem, c, t):
    """(y, y', y'') at arbitrary t in [0, 1]; scalars in, scalars out."""
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    c = np.asarray(c, dtype=float)
    B0, B1, B2 = basis_values(sys.spec, t)
    bt_value, bt_deriv = boundary_terms(sys.bc, t, sys.B1_at_1, sys.B2_at_1)
    y = B2 @ c + bt_value(c)
    yp = B1 @ c + bt_deriv(c)
    ypp = B0 @ c
    if scalar:
        return float(y[0]), float(yp[0]), float(ypp[0])
    return y, yp, ypp

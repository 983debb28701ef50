"""Quasilinearisation (QA) and Newton-Raphson (NA) drivers over Haar or
Hermite collocation, plus the small dense LU they share."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .collocation import BasisSpec, CollocationSystem, Family, assemble, reconstruct
from .problem import BCCase, DomainError, SBVProblem, linearized_rhs

log = logging.getLogger(__name__)


class SingularMatrixError(np.linalg.LinAlgError):
    def __init__(self, msg: str, iteration: Optional[int] = None):
        if iteration is not None:
            msg = f"{msg} (iteration {iteration})"
        super().__init__(msg)
        self.iteration = iteration


class Method(enum.Enum):
    QA = "QA"
    NA = "NA"


# Short names used in tables and on the command line.
METHODS = {
    "HWQA": (Method.QA, Family.HAAR),
    "HWNA": (Method.NA, Family.HAAR),
    "HeWQA": (Method.QA, Family.HERMITE),
    "HeWNA": (Method.NA, Family.HERMITE),
}


def lu_factor(A: np.ndarray, iteration: Optional[int] = None):
    """In-place Doolittle LU with row partial pivoting; returns (LU, perm)."""
    LU = np.array(A, dtype=float, copy=True)
    n = LU.shape[0]
    if LU.ndim != 2 or LU.shape[1] != n:
        raise ValueError("matrix must be square")
    perm = np.arange(n)
    scale = np.abs(LU).max() if n else 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(LU[k:, k])))
        if abs(LU[p, k]) < 1e-14 * scale or scale == 0.0:
            raise SingularMatrixError(f"numerically singular matrix at column {k}", iteration)
        if p != k:
            LU[[k, p]] = LU[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        LU[k + 1:, k] /= LU[k, k]
        LU[k + 1:, k + 1:] -= np.outer(LU[k + 1:, k], LU[k, k + 1:])
    return LU, perm


def lu_solve(LU: np.ndarray, perm: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    x = np.asarray(rhs, dtype=float)[perm].copy()
    n = x.size
    for i in range(1, n):
        x[i] -= LU[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - LU[i, i + 1:] @ x[i + 1:]) / LU[i, i]
    return x


def solve_linear_system(A, rhs, iteration: Optional[int] = None) -> np.ndarray:
    LU, perm = lu_factor(A, iteration)
    return lu_solve(LU, perm, rhs)


@dataclass(frozen=True)
class SolverConfig:
    """``initial_vector`` is a nodal guess y_0 at the collocation points
    (a scalar is broadcast). NA maps it to coefficients by one linear solve."""

    method: Method
    basis: BasisSpec
    tol: float = 1e-12
    max_iter: int = 50
    initial_vector: Union[float, Sequence[float], None] = None
    jacobian: str = "analytic"
    fd_step: float = 1e-7

    def __post_init__(self):
        if isinstance(self.method, str):
            object.__setattr__(self, "method", Method(self.method.upper()))
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.jacobian not in ("analytic", "finite-difference"):
            raise ValueError("jacobian must be 'analytic' or 'finite-difference'")

    def initial_nodes(self) -> Optional[np.ndarray]:
        """Initial nodal guess, or None for the boundary interpolant (c = 0)."""
        n = self.basis.n_coeffs
        if self.initial_vector is None:
            return None
        init = np.asarray(self.initial_vector, dtype=float)
        if init.ndim == 0:
            return np.full(n, float(init))
        if init.shape != (n,):
            raise ValueError(f"initial vector needs {n} entries, got {init.size}")
        return init.copy()


@dataclass(frozen=True)
class SolveResult:
    coefficients: np.ndarray
    iterations: int
    converged: bool
    final_update_norm: float
    trace: tuple
    system: CollocationSystem = field(repr=False)
    message: str = ""

    def evaluate(self, t):
        """(y, y', y'') of the collocation solution at t."""
        return reconstruct(self.system, self.coefficients, t)

    def grid(self) -> np.ndarray:
        return reported_grid(self.system)

    def grid_values(self) -> np.ndarray:
        return self.evaluate(self.grid())[0]


def reported_grid(sys: CollocationSystem) -> np.ndarray:
    """t = 0, the collocation points, and t = 1 for the Robin case."""
    parts = [[0.0], sys.points]
    if sys.bc.case is BCCase.NEUMANN_ROBIN:
        parts.append([1.0])
    return np.concatenate(parts)


def _checked(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise DomainError(f"non-finite {what}")
    return values


def residual_vector(p: SBVProblem, sys: CollocationSystem, c) -> np.ndarray:
    """F_l(c) = y'' + (k_g/x_l) y' + f(x_l, y) at every collocation point."""
    y, yp, ypp = sys.values(c)
    return _checked(ypp + p.k_g / sys.points * yp + p.f(sys.points, y), "residual")


def analytic_jacobian(p: SBVProblem, sys: CollocationSystem, c) -> np.ndarray:
    y = sys.value_matrix @ c + sys.bt_value.offset
    fy = _checked(np.asarray(p.f_y(sys.points, y), dtype=float), "f_y")
    return (sys.B0 + (p.k_g / sys.points)[:, None] * sys.deriv_matrix
            + fy[:, None] * sys.value_matrix)


def fd_jacobian(p: SBVProblem, sys: CollocationSystem, c, step: float = 1e-7) -> np.ndarray:
    """Column-wise forward differences with h_j = step * (1 + |c_j|)."""
    c = np.asarray(c, dtype=float)
    F0 = residual_vector(p, sys, c)
    Jm = np.empty((F0.size, c.size))
    for j in range(c.size):
        h = step * (1 + abs(c[j]))
        cp = c.copy()
        cp[j] += h
        Jm[:, j] = (residual_vector(p, sys, cp) - F0) / h
    return Jm


def nodal_to_coefficients(sys: CollocationSystem, y_nodes, iteration: Optional[int] = None):
    """Coefficients whose reconstruction takes the values ``y_nodes`` at the points."""
    return solve_linear_system(sys.value_matrix, np.asarray(y_nodes) - sys.bt_value.offset,
                               iteration)


def _result(c, it, converged, trace, sys, message=""):
    return SolveResult(np.asarray(c, dtype=float), it, converged,
                       trace[-1] if trace else float("inf"), tuple(trace), sys, message)


def solve_qa(p: SBVProblem, cfg: SolverConfig) -> SolveResult:
    """Quasilinearisation: solve one linear collocation system per iterate."""
    if cfg.method is not Method.QA:
        raise ValueError("config is not a QA config")
    sys = assemble(cfg.basis, p.bc)
    x = sys.points
    K = (p.k_g / x)[:, None]
    base = sys.B0 + K * sys.deriv_matrix
    const = (p.k_g / x) * sys.bt_deriv.offset
    y_r = cfg.initial_nodes()
    if y_r is None:
        y_r = sys.bt_value.offset.copy()
    c = np.zeros(sys.n)
    trace: list[float] = []
    for it in range(1, cfg.max_iter + 1):
        try:
            g, q = linearized_rhs(p, x, y_r)
            g = _checked(np.asarray(g, dtype=float), "source term")
            q = _checked(np.asarray(q, dtype=float), "reaction term")
            A = base - q[:, None] * sys.value_matrix
            rhs = g - const + q * sys.bt_value.offset
        except (DomainError, FloatingPointError) as exc:
            return _result(c, it - 1, False, trace, sys, str(exc))
        c = solve_linear_system(A, rhs, iteration=it)
        y_new = sys.value_matrix @ c + sys.bt_value.offset
        upd = float(np.max(np.abs(y_new - y_r)))
        trace.append(upd)
        y_r = y_new
        log.debug("QA iteration %d: update %.3e", it, upd)
        if not np.isfinite(upd):
            return _result(c, it, False, trace, sys, "iterate diverged")
        if upd <= cfg.tol:
            return _result(c, it, True, trace, sys)
    return _result(c, cfg.max_iter, False, trace, sys, "max_iter reached")


def solve_na(p: SBVProblem, cfg: SolverConfig) -> SolveResult:
    """Newton-Raphson on the collocation residual in the coefficients."""
    if cfg.method is not Method.NA:
        raise ValueError("config is not an NA config")
    sys = assemble(cfg.basis, p.bc)
    y0 = cfg.initial_nodes()
    c = np.zeros(sys.n) if y0 is None else nodal_to_coefficients(sys, y0, iteration=0)
    trace: list[float] = []
    for it in range(1, cfg.max_iter + 1):
        try:
            F = residual_vector(p, sys, c)
            if cfg.jacobian == "analytic":
                Jm = analytic_jacobian(p, sys, c)
            else:
                Jm = fd_jacobian(p, sys, c, cfg.fd_step)
        except (DomainError, FloatingPointError) as exc:
            return _result(c, it - 1, False, trace, sys, str(exc))
        dc = solve_linear_system(Jm, -F, iteration=it)
        c = c + dc
        upd = float(np.max(np.abs(dc)))
        trace.append(upd)
        log.debug("NA iteration %d: update %.3e", it, upd)
        if not np.isfinite(upd):
            return _result(c, it, False, trace, sys, "iterate diverged")
        if upd <= cfg.tol:
            return _result(c, it, True, trace, sys)
    return _result(c, cfg.max_iter, False, trace, sys, "max_iter reached")


def solve(p: SBVProblem, cfg: SolverConfig) -> SolveResult:
    return solve_qa(p, cfg) if cfg.method is Method.QA else solve_na(p, cfg)


def solve_named(p: SBVProblem, method: str, resolution: int, **kwargs) -> SolveResult:
    """Run one of HWQA / HWNA / HeWQA / HeWNA at the given J (Haar) or M (Hermite)."""
    try:
        kind, family = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(METHODS)}") from None
    return solve(p, SolverConfig(kind, BasisSpec(family, resolution), **kwargs))


def error_norms(grid, values, exact) -> tuple[float, float]:
    """(L_inf, L2) of pointwise errors over the reported grid points."""
    err = np.abs(np.asarray(values, dtype=float) - exact(np.asarray(grid, dtype=float)))
    return float(err.max()), float(np.sqrt(np.sum(err ** 2)))

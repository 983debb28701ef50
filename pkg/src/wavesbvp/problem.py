"""Singular BVP  y'' + (k_g/t) y' + f(t, y) = 0  on (0, 1] with three BC types."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


class DomainError(ValueError):
    """Nonlinearity evaluated outside the region where it is defined."""


class SingularPointError(ValueError):
    """Evaluation requested at the singular point t = 0."""


class InvalidBoundaryCondition(ValueError):
    pass


class BCCase(enum.Enum):
    NEUMANN_DIRICHLET = "i"      # y'(0) = alpha, y(1) = beta
    DIRICHLET_DIRICHLET = "ii"   # y(0) = alpha,  y(1) = beta
    NEUMANN_ROBIN = "iii"        # y'(0) = alpha, a y(1) + b y'(1) = beta


@dataclass(frozen=True)
class BoundaryCondition:
    case: BCCase
    alpha: float = 0.0
    beta: float = 0.0
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if self.case is BCCase.NEUMANN_ROBIN and self.a == 0:
            raise InvalidBoundaryCondition("Robin condition needs a != 0")

    @classmethod
    def neumann_dirichlet(cls, alpha: float, beta: float) -> BoundaryCondition:
        return cls(BCCase.NEUMANN_DIRICHLET, alpha, beta)

    @classmethod
    def dirichlet_dirichlet(cls, alpha: float, beta: float) -> BoundaryCondition:
        return cls(BCCase.DIRICHLET_DIRICHLET, alpha, beta)

    @classmethod
    def neumann_robin(cls, alpha: float, a: float, b: float, beta: float) -> BoundaryCondition:
        return cls(BCCase.NEUMANN_ROBIN, alpha, beta, a, b)

    def residuals(self, y0: float, yp0: float, y1: float, yp1: float) -> tuple[float, float]:
        """How far endpoint data are from satisfying the two conditions."""
        if self.case is BCCase.NEUMANN_DIRICHLET:
            return yp0 - self.alpha, y1 - self.beta
        if self.case is BCCase.DIRICHLET_DIRICHLET:
            return y0 - self.alpha, y1 - self.beta
        return yp0 - self.alpha, self.a * y1 + self.b * yp1 - self.beta


@dataclass(frozen=True)
class SBVProblem:
    """Problem data. ``f`` and ``f_y`` must accept numpy arrays and be pure."""

    k_g: float
    f: Callable
    f_y: Callable
    bc: BoundaryCondition
    exact: Optional[Callable] = None
    name: str = ""

    def __post_init__(self):
        if self.k_g < 0:
            raise ValueError("shape factor k_g must be nonnegative")


@dataclass(frozen=True)
class StateTriple:
    t: float
    y: float
    yp: float
    ypp: float


def residual(p: SBVProblem, s: StateTriple) -> float:
    """y'' + (k_g/t) y' + f(t, y) at one point."""
    if s.t <= 0:
        raise SingularPointError("residual is undefined at t = 0")
    return s.ypp + p.k_g / s.t * s.yp + p.f(s.t, s.y)


def linearized_rhs(p: SBVProblem, t, y_r):
    """Source and reaction terms of one quasilinearisation step about ``y_r``.

    Returns ``(g, q)`` such that the linear step reads ``L y_new - q y_new = g``,
    i.e. ``g = -f(t, y_r) + y_r f_y(t, y_r)`` and ``q = -f_y(t, y_r)``.
    The f depends on y only; a y' contribution would enter the same way.
    """
    if np.any(np.asarray(t) <= 0):
        raise SingularPointError("linearization is undefined at t = 0")
    fy = p.f_y(t, y_r)
    return -p.f(t, y_r) + y_r * fy, -fy

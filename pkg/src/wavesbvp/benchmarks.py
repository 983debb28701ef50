"""The five benchmark problems, manufactured-solution problems, and the
golden solution tables that ship with the package."""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .polynomial import Polynomial
from .problem import BCCase, BoundaryCondition, DomainError, SBVProblem


class InvalidManufactured(ValueError):
    pass


@dataclass(frozen=True)
class GoldenRow:
    grid_point: Fraction
    method: str
    value: float
    source_table: str


@dataclass(frozen=True)
class BenchmarkCase:
    problem: SBVProblem
    params: dict = field(default_factory=dict)
    default_init: float = 0.0
    golden_table: Optional[int] = None

    @property
    def golden_rows(self) -> tuple:
        if self.golden_table is None:
            return ()
        return load_golden(self.golden_table)

    def initial_vector(self, n: int) -> np.ndarray:
        return np.full(n, self.default_init)


def load_golden(table: int) -> tuple:
    """Rows of one stored solution table (1..10)."""
    path = resources.files("wavesbvp.data.golden").joinpath(f"table{table:02d}.csv")
    with path.open() as fh:
        return tuple(GoldenRow(Fraction(r["grid_point"]), r["method"], float(r["value"]),
                               r["source_table"]) for r in csv.DictReader(fh))


def load_error_table() -> list[dict]:
    path = resources.files("wavesbvp.data.golden").joinpath("errors.csv")
    with path.open() as fh:
        return [dict(r, value=float(r["value"])) for r in csv.DictReader(fh)]


_ARRHENIUS_TABLES = {(1, 1): 1, (1, 2): 2, (2, 1): 3, (2, 2): 4, (3, 1): 5, (3, 2): 6}


def make_arrhenius(n: int = 1, k_g: float = 1.0, A: float = 1.0, B: float = 1.0,
                   c: float = 1.0) -> BenchmarkCase:
    """Ly + B exp(-A / (c^n + y^n)^(1/n)) = 0, y'(0) = 0, y(1) = 0."""
    if n < 1:
        raise ValueError("n must be a positive integer")

    def f(t, y):
        return B * np.exp(-A / (c ** n + y ** n) ** (1.0 / n))

    def f_y(t, y):
        s = c ** n + y ** n
        return f(t, y) * A * y ** (n - 1) * s ** (-1.0 - 1.0 / n)

    problem = SBVProblem(k_g, f, f_y, BoundaryCondition.neumann_dirichlet(0.0, 0.0),
                         name=f"arrhenius-n{n}-kg{k_g:g}")
    table = _ARRHENIUS_TABLES.get((n, k_g)) if (A, B, c) == (1.0, 1.0, 1.0) else None
    return BenchmarkCase(problem, dict(A=A, B=B, c=c, n=n, k_g=k_g), 0.0, table)


def make_stellar() -> BenchmarkCase:
    """Ly + y^5 = 0, k_g = 2, y'(0) = 0, y(1) = sqrt(3/4)."""
    beta = math.sqrt(0.75)
    problem = SBVProblem(2.0, lambda t, y: y ** 5, lambda t, y: 5 * y ** 4,
                         BoundaryCondition.neumann_dirichlet(0.0, beta),
                         exact=lambda t: np.sqrt(3.0 / (3.0 + np.asarray(t) ** 2)),
                         name="stellar")
    return BenchmarkCase(problem, dict(k_g=2.0), beta, 7)


_R2 = math.sqrt(2.0)


def make_thermal_explosion() -> BenchmarkCase:
    """Ly + e^y = 0, k_g = 1, y'(0) = 0, y(1) = 0."""
    problem = SBVProblem(
        1.0, lambda t, y: np.exp(y), lambda t, y: np.exp(y),
        BoundaryCondition.neumann_dirichlet(0.0, 0.0),
        exact=lambda t: 2 * np.log((4 - 2 * _R2) / ((3 - 2 * _R2) * np.asarray(t) ** 2 + 1)),
        name="thermal-explosion")
    return BenchmarkCase(problem, dict(k_g=1.0), 0.0, 8)


def make_membrane(k_g: float = 3.0) -> BenchmarkCase:
    """Ly + 1/(8y^2) - 1/2 = 0, y'(0) = 0, y(1) = 1.

    The default k_g = 3 is the shallow-membrane-cap geometry that the
    stored solution table corresponds to.
    """
    def _guard(y):
        if np.any(np.abs(y) < 1e-8):
            raise DomainError("membrane nonlinearity is singular at y = 0")

    def f(t, y):
        _guard(y)
        return 1.0 / (8.0 * y ** 2) - 0.5

    def f_y(t, y):
        _guard(y)
        return -1.0 / (4.0 * y ** 3)

    problem = SBVProblem(k_g, f, f_y, BoundaryCondition.neumann_dirichlet(0.0, 1.0),
                         name="membrane")
    return BenchmarkCase(problem, dict(k_g=k_g), 1.0, 9 if k_g == 3.0 else None)


def make_human_head() -> BenchmarkCase:
    """Ly + e^{-y} = 0, k_g = 2, y'(0) = 0, 2 y(1) + y'(1) = 0."""
    problem = SBVProblem(2.0, lambda t, y: np.exp(-y), lambda t, y: -np.exp(-y),
                         BoundaryCondition.neumann_robin(0.0, 2.0, 1.0, 0.0),
                         name="human-head")
    return BenchmarkCase(problem, dict(k_g=2.0, a=2.0, b=1.0), 0.0, 10)


def make_manufactured(exact: Union[Polynomial, Sequence[float]], k_g: float,
                      bc_case: Union[BCCase, str] = BCCase.NEUMANN_DIRICHLET,
                      a: float = 2.0, b: float = 1.0) -> BenchmarkCase:
    """Problem whose solution is the given polynomial.

    f(t, y) = -(u'' + (k_g/t) u') + (y - u(t)), so f_y = 1.
    """
    u = exact if isinstance(exact, Polynomial) else Polynomial(exact)
    bc_case = BCCase(bc_case) if isinstance(bc_case, str) else bc_case
    du, ddu = u.derivative(), u.derivative().derivative()
    flat = du(Fraction(0)) == 0
    if bc_case is not BCCase.DIRICHLET_DIRICHLET and not flat:
        raise InvalidManufactured("Neumann condition at 0 needs u'(0) = 0 for a regular solution")
    if flat:
        # u'/t is again a polynomial.
        du_over_t = Polynomial(du.coeffs[1:] or [0])
        forcing = ddu + du_over_t * k_g

        def source(t):
            return forcing(np.asarray(t, dtype=float))
    else:
        def source(t):
            t = np.asarray(t, dtype=float)
            return ddu(t) + k_g / t * du(t)

    u0, up0, u1, up1 = (float(v) for v in (u(Fraction(0)), du(Fraction(0)),
                                           u(Fraction(1)), du(Fraction(1))))
    if bc_case is BCCase.NEUMANN_DIRICHLET:
        bc = BoundaryCondition.neumann_dirichlet(up0, u1)
    elif bc_case is BCCase.DIRICHLET_DIRICHLET:
        bc = BoundaryCondition.dirichlet_dirichlet(u0, u1)
    else:
        bc = BoundaryCondition.neumann_robin(up0, a, b, a * u1 + b * up1)

    def exact_fn(t):
        return u(np.asarray(t, dtype=float))

    problem = SBVProblem(k_g, lambda t, y: -source(t) + (y - exact_fn(t)),
                         lambda t, y: np.ones_like(np.asarray(y, dtype=float)),
                         bc, exact=exact_fn, name=f"manufactured-{bc_case.value}")
    return BenchmarkCase(problem, dict(k_g=k_g), 0.0, None)


_ARRHENIUS_KEY = re.compile(r"^arrhenius(?:-n(\d+))?(?:-kg([\d.]+))?$")

REGISTRY: dict[str, Callable[[], BenchmarkCase]] = {
    "arrhenius": make_arrhenius,
    "stellar": make_stellar,
    "thermal-explosion": make_thermal_explosion,
    "membrane": make_membrane,
    "human-head": make_human_head,
}


def get_case(key: str) -> BenchmarkCase:
    """Look up a registered problem. ``arrhenius-n2-kg2`` selects n and k_g."""
    m = _ARRHENIUS_KEY.match(key)
    if m:
        n = int(m.group(1) or 1)
        kg = float(m.group(2) or 1)
        return make_arrhenius(n, kg)
    try:
        return REGISTRY[key]()
    except KeyError:
        raise KeyError(f"unknown problem {key!r}; known: {', '.join(problem_keys())}") from None


def problem_keys() -> list[str]:
    return list(REGISTRY) + [f"arrhenius-n{n}-kg{k}" for n, k in _ARRHENIUS_TABLES]

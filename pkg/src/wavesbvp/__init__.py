"""Haar and Hermite wavelet collocation for singular boundary value problems
of Lane-Emden type, with quasilinearisation and Newton-Raphson drivers."""

from .benchmarks import (BenchmarkCase, get_case, make_arrhenius, make_human_head,
                         make_manufactured, make_membrane, make_stellar,
                         make_thermal_explosion)
from .collocation import BasisSpec, CollocationSystem, Family, assemble, collocation_points, reconstruct
from .haar import HaarGrid, HaarIndex, build_matrices, haar_function, haar_integral
from .hermite import HermiteWaveletIndex, hermite_polynomial, hermite_wavelet, integrate_wavelet
from .polynomial import PiecewisePolynomial, Polynomial
from .problem import BCCase, BoundaryCondition, SBVProblem, StateTriple, linearized_rhs, residual
from .solvers import (Method, SolveResult, SolverConfig, error_norms, solve, solve_linear_system,
                      solve_na, solve_named, solve_qa)

__version__ = "0.1.0"

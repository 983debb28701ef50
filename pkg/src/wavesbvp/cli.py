"""Command-line front end.

Exit codes: 0 every solve converged; 1 bad arguments or unknown problem;
2 at least one solve did not converge (the table is still written).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .benchmarks import problem_keys
from .report import FORMATS, RunSpec, emit_convergence_sweep, parse_resolution, run, _write
from .solvers import METHODS


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _csv_list(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def _init(text: str):
    vals = [float(v) for v in _csv_list(text)]
    if not vals:
        raise argparse.ArgumentTypeError("empty initial vector")
    return vals[0] if len(vals) == 1 else vals


def _resolutions(text: str) -> list[str]:
    toks = _csv_list(text)
    try:
        for t in toks:
            parse_resolution(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad resolution list {text!r}") from None
    if not toks:
        raise argparse.ArgumentTypeError("empty resolution list")
    return toks


def _positive(kind):
    def conv(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="wavesbvp",
        description="Wavelet collocation solvers for singular BVPs "
                    "y'' + (k_g/t) y' + f(t, y) = 0.",
        epilog="Resolutions: J<n> for Haar (2^(n+1) coefficients), M<n> for Hermite "
               "(n functions); a bare integer applies to both families. Hermite methods "
               "given only J tokens use the matching grid size M = 2^(J+1). "
               "Exit codes: 0 converged, 1 usage error, 2 some solve did not converge.")
    p.add_argument("--problem", required=True,
                   help="one of: " + ", ".join(problem_keys()))
    p.add_argument("--method", type=_csv_list, default=["HWNA", "HeWNA", "HWQA", "HeWQA"],
                   help="comma list from " + ", ".join(METHODS))
    p.add_argument("--resolution", type=_resolutions, default=["J2"],
                   help="comma list, e.g. J2 or J2,M8 or 1,2,3")
    p.add_argument("--tol", type=_positive(float), default=1e-12)
    p.add_argument("--max-iter", type=_positive(int), default=50)
    p.add_argument("--init", type=_init, default=None,
                   help="constant or comma list of nodal initial values")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--sweep", action="store_true",
                   help="emit a convergence-sweep CSV for the first method instead")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.problem not in problem_keys():
        parser.error(f"unknown problem {args.problem!r}")
    try:
        if args.sweep:
            res = [parse_resolution(t)[1] for t in args.resolution]
            _write(emit_convergence_sweep(args.problem, args.method[0], res,
                                          args.tol, args.max_iter), args.out)
            return 0
        spec = RunSpec(args.problem, args.method, args.resolution, args.tol, args.max_iter,
                       args.init, args.format, args.out)
    except ValueError as exc:
        parser.error(str(exc))
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())

"""Run (method, resolution) combinations and format solution tables,
error norms and convergence sweeps."""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO, Union

import numpy as np

from .benchmarks import BenchmarkCase, get_case
from .collocation import Family
from .solvers import METHODS, SolveResult, error_norms, solve_named

FORMATS = ("table", "csv", "json")


def parse_resolution(token: Union[str, int]) -> tuple[Optional[str], int]:
    """'J2' -> ('J', 2), 'M8' -> ('M', 8), '3' -> (None, 3)."""
    if isinstance(token, int):
        return None, token
    tok = token.strip()
    kind = None
    if tok[:1].upper() in ("J", "M"):
        kind, tok = tok[0].upper(), tok[1:].lstrip("=")
    value = int(tok)
    if value < 0:
        raise ValueError(f"resolution must be nonnegative: {token!r}")
    return kind, value


def resolutions_for(method: str, tokens: Sequence[Union[str, int]]) -> list[int]:
    """Resolutions that apply to one method.

    Haar methods take J and bare tokens; Hermite methods take M and bare
    tokens, and fall back to the Haar grid size 2**(J+1) when only J is given.
    """
    family = METHODS[method][1]
    parsed = [parse_resolution(t) for t in tokens]
    own = "J" if family is Family.HAAR else "M"
    out = [v for k, v in parsed if k in (None, own)]
    if not out and family is Family.HERMITE:
        out = [2 ** (v + 1) for k, v in parsed if k == "J"]
    return out


@dataclass
class RunSpec:
    problem: str
    methods: Sequence[str]
    resolutions: Sequence[Union[str, int]]
    tol: float = 1e-12
    max_iter: int = 50
    init: Union[None, float, Sequence[float]] = None
    fmt: str = "table"
    out: Optional[str] = None

    def __post_init__(self):
        if not self.methods or not self.resolutions:
            raise ValueError("need at least one method and one resolution")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ValueError(f"unknown method(s) {bad}; choose from {sorted(METHODS)}")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        for m in self.methods:
            if not resolutions_for(m, self.resolutions):
                raise ValueError(f"no resolution applies to {m}")


@dataclass
class Run:
    method: str
    resolution: int
    result: SolveResult
    grid: np.ndarray
    values: np.ndarray
    l_inf: Optional[float] = None
    l2: Optional[float] = None

    @property
    def label(self) -> str:
        letter = "J" if METHODS[self.method][1] is Family.HAAR else "M"
        return f"{self.method}({letter}={self.resolution})"

    def as_json(self, problem: str) -> dict:
        d = dict(problem=problem, method=self.method, resolution=self.resolution,
                 grid=self.grid.tolist(), values=self.values.tolist(),
                 iterations=self.result.iterations, converged=self.result.converged)
        if self.l_inf is not None:
            d["l_inf"] = self.l_inf
            d["l2"] = self.l2
        if not self.result.converged:
            d["warning"] = f"did not converge: {self.result.message}"
        return d


@dataclass
class ReportRow:
    grid_point: float
    values: dict = field(default_factory=dict)
    exact: Optional[float] = None
    errors: dict = field(default_factory=dict)


def _init_for(case: BenchmarkCase, init, n: int):
    if init is None:
        return case.default_init
    arr = np.asarray(init, dtype=float)
    if arr.ndim == 0 or arr.size == 1:
        return float(arr.ravel()[0])
    if arr.size != n:
        raise ValueError(f"initial vector has {arr.size} entries; basis needs {n}")
    return arr


def execute(spec: RunSpec, case: Optional[BenchmarkCase] = None) -> list[Run]:
    """Solve every (method, resolution) pair, ordered by method then resolution."""
    case = case or get_case(spec.problem)
    exact = case.problem.exact
    runs = []
    for method in spec.methods:
        for res in sorted(set(resolutions_for(method, spec.resolutions))):
            family = METHODS[method][1]
            n = 2 ** (res + 1) if family is Family.HAAR else res
            result = solve_named(case.problem, method, res, tol=spec.tol, max_iter=spec.max_iter,
                                 initial_vector=_init_for(case, spec.init, n))
            grid = result.grid()
            values = result.grid_values()
            run = Run(method, res, result, grid, values)
            if exact is not None:
                run.l_inf, run.l2 = error_norms(grid, values, exact)
            runs.append(run)
    return runs


def build_rows(runs: Sequence[Run], exact=None) -> list[ReportRow]:
    points = sorted({float(t) for r in runs for t in r.grid})
    rows = []
    for t in points:
        row = ReportRow(t, exact=None if exact is None else float(exact(t)))
        for r in runs:
            hit = np.flatnonzero(r.grid == t)
            if hit.size:
                v = float(r.values[hit[0]])
                row.values[r.label] = v
                if row.exact is not None:
                    row.errors[r.label] = abs(v - row.exact)
        rows.append(row)
    return rows


def _fmt(v: Optional[float]) -> str:
    return "" if v is None else f"{v:.9g}"


def _grid_label(t: float) -> str:
    from fractions import Fraction
    fr = Fraction(t).limit_denominator(1 << 20)
    return str(fr) if float(fr) == t else repr(t)


def format_table(problem: str, runs: Sequence[Run], rows: Sequence[ReportRow]) -> str:
    labels = [r.label for r in runs]
    has_exact = any(row.exact is not None for row in rows)
    header = ["t"] + labels + (["Exact"] if has_exact else [])
    body = []
    for row in rows:
        line = [_grid_label(row.grid_point)] + [_fmt(row.values.get(l)) for l in labels]
        if has_exact:
            line.append(_fmt(row.exact))
        body.append(line)
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    out = [f"# {problem}"]
    out.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    out += ["  ".join(c.ljust(w) for c, w in zip(line, widths)) for line in body]
    for r in runs:
        if r.l_inf is not None:
            out.append(f"{r.label}: L_inf = {_fmt(r.l_inf)}  L2 = {_fmt(r.l2)}")
    for r in runs:
        status = "converged" if r.result.converged else "WARNING: not converged"
        out.append(f"{r.label}: {status} after {r.result.iterations} iterations"
                   + (f" ({r.result.message})" if r.result.message else ""))
    return "\n".join(out) + "\n"


def format_csv(runs: Sequence[Run], rows: Sequence[ReportRow]) -> str:
    """Full-precision CSV: one row per grid point, then norm and status rows."""
    labels = [r.label for r in runs]
    has_exact = any(row.exact is not None for row in rows)
    cols = ["grid_point"] + labels
    if has_exact:
        cols += ["exact"] + [f"err_{l}" for l in labels]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        line = [repr(row.grid_point)] + [_r(row.values.get(l)) for l in labels]
        if has_exact:
            line += [_r(row.exact)] + [_r(row.errors.get(l)) for l in labels]
        w.writerow(line)
    pad = [""] * (len(cols) - 1 - len(labels))
    if has_exact:
        w.writerow(["L_inf"] + [_r(r.l_inf) for r in runs] + pad)
        w.writerow(["L2"] + [_r(r.l2) for r in runs] + pad)
    w.writerow(["iterations"] + [str(r.result.iterations) for r in runs] + pad)
    w.writerow(["converged"] + [str(r.result.converged).lower() for r in runs] + pad)
    return buf.getvalue()


def _r(v: Optional[float]) -> str:
    return "" if v is None else repr(float(v))


def format_json(problem: str, runs: Sequence[Run]) -> str:
    docs = [r.as_json(problem) for r in runs]
    return json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n"


def render(spec: RunSpec, runs: Sequence[Run], exact=None) -> str:
    if spec.fmt == "json":
        return format_json(spec.problem, runs)
    rows = build_rows(runs, exact)
    if spec.fmt == "csv":
        return format_csv(runs, rows)
    return format_table(spec.problem, runs, rows)


def _write(text: str, out: Optional[str], stream: Optional[TextIO] = None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)


def run(spec: RunSpec, stream: Optional[TextIO] = None) -> int:
    """Execute and emit a report. Exit code 0 if every solve converged, else 2."""
    case = get_case(spec.problem)
    runs = execute(spec, case)
    _write(render(spec, runs, case.problem.exact), spec.out, stream)
    return 0 if all(r.result.converged for r in runs) else 2


def convergence_sweep(problem: str, method: str, resolutions: Sequence[int], tol: float = 1e-12,
                      max_iter: int = 50) -> list[dict]:
    """Error (or successive self-difference) against resolution."""
    case = get_case(problem)
    spec = RunSpec(problem, [method], [str(r) for r in resolutions], tol, max_iter)
    runs = execute(spec, case)
    rows = []
    prev = None
    for r in runs:
        row = dict(resolution=r.resolution, iterations=r.result.iterations,
                   converged=r.result.converged)
        if case.problem.exact is not None:
            row["L_inf"], row["L2"] = r.l_inf, r.l2
        elif prev is not None:
            # Compare on the coarser run's reported grid.
            diff = np.abs(r.result.evaluate(prev.grid)[0] - prev.values)
            row["self_diff"], row["L2"] = float(diff.max()), float(np.sqrt(np.sum(diff ** 2)))
        else:
            row["self_diff"], row["L2"] = None, None
        rows.append(row)
        prev = r
    return rows


def emit_convergence_sweep(problem: str, method: str, resolutions: Sequence[int],
                           tol: float = 1e-12, max_iter: int = 50) -> str:
    """CSV with columns resolution, L_inf|self_diff, L2, iterations.

    With more than one measured error a trailing comment records whether it
    decreases strictly.
    """
    rows = convergence_sweep(problem, method, resolutions, tol, max_iter)
    key = "L_inf" if "L_inf" in rows[0] else "self_diff"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["resolution", key, "L2", "iterations"])
    for row in rows:
        w.writerow([row["resolution"], _r(row[key]), _r(row["L2"]), row["iterations"]])
    errs = [row[key] for row in rows if row[key] is not None]
    if len(errs) > 1:
        mono = all(b < a for a, b in zip(errs, errs[1:]))
        buf.write(f"# monotone_decrease: {str(mono).lower()}\n")
    return buf.getvalue()


def read_csv_report(text: str) -> dict:
    """Parse ``format_csv`` output back into {label: {grid_point: value}}."""
    reader = csv.DictReader(io.StringIO(text))
    out: dict = {}
    for rec in reader:
        try:
            t = float(rec["grid_point"])
        except ValueError:
            continue
        for k, v in rec.items():
            if k == "grid_point" or v == "":
                continue
            out.setdefault(k, {})[t] = float(v)
    return out


"""Solve every benchmark and compare with the stored solution tables.

    python scripts/reproduce_tables.py [--tables 1,8,10] [--out results/]

Prints, per table and method, the largest deviation from the stored values;
with --out also writes each full comparison as CSV.
"""

import argparse
import csv
import os

import numpy as np

from wavesbvp.benchmarks import get_case, load_golden
from wavesbvp.solvers import solve_named

TABLES = {1: "arrhenius-n1-kg1", 2: "arrhenius-n1-kg2", 3: "arrhenius-n2-kg1",
          4: "arrhenius-n2-kg2", 5: "arrhenius-n3-kg1", 6: "arrhenius-n3-kg2",
          7: "stellar", 8: "thermal-explosion", 9: "membrane", 10: "human-head"}
METHODS = ("HWNA", "HeWNA", "HWQA", "HeWQA")


def compare(table):
    case = get_case(TABLES[table])
    golden = load_golden(table)
    rows = []
    for method in METHODS:
        res = 2 if method.startswith("HW") else 8
        r = solve_named(case.problem, method, res, initial_vector=case.default_init)
        ref = [g for g in golden if g.method == method]
        got = r.evaluate(np.array([float(g.grid_point) for g in ref]))[0]
        for g, v in zip(ref, got):
            rows.append(dict(table=table, method=method, grid_point=str(g.grid_point),
                             stored=g.value, computed=float(v), deviation=abs(float(v) - g.value),
                             converged=r.converged))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tables", default=",".join(map(str, TABLES)))
    ap.add_argument("--out", default=None, help="directory for per-table CSV files")
    args = ap.parse_args()
    tables = [int(t) for t in args.tables.split(",")]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    print(f"{'table':>5}  {'problem':18s}" + "".join(f"{m:>12s}" for m in METHODS))
    for table in tables:
        rows = compare(table)
        worst = {m: max(r["deviation"] for r in rows if r["method"] == m) for m in METHODS}
        print(f"{table:>5}  {TABLES[table]:18s}" + "".join(f"{worst[m]:12.3e}" for m in METHODS))
        if args.out:
            with open(os.path.join(args.out, f"table{table:02d}_comparison.csv"), "w",
                      newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=list(rows[0]))
                w.writeheader()
                w.writerows(rows)


if __name__ == "__main__":
    main()

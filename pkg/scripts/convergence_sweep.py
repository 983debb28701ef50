"""Error against resolution for every method on the benchmarks.

    python scripts/convergence_sweep.py [--problems stellar,membrane] [--out sweeps/]

Haar methods run J = 1..4, Hermite methods M = 4, 6, 8, 10.  Problems with
a known solution report L_inf against it; the rest report the difference
between successive resolutions.
"""

import argparse
import os

from wavesbvp.report import emit_convergence_sweep

HAAR_LEVELS = [1, 2, 3, 4]
HERMITE_SIZES = [4, 6, 8, 10]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problems", default="stellar,thermal-explosion,membrane,human-head,"
                                          "arrhenius-n1-kg1")
    ap.add_argument("--methods", default="HWNA,HWQA,HeWNA,HeWQA")
    ap.add_argument("--out", default=None, help="directory for CSV files (default: print)")
    args = ap.parse_args()
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    for problem in args.problems.split(","):
        for method in args.methods.split(","):
            res = HAAR_LEVELS if method.startswith("HW") else HERMITE_SIZES
            text = emit_convergence_sweep(problem, method, res)
            if args.out:
                with open(os.path.join(args.out, f"{problem}_{method}.csv"), "w") as fh:
                    fh.write(text)
            else:
                print(f"## {problem} {method}")
                print(text)


if __name__ == "__main__":
    main()

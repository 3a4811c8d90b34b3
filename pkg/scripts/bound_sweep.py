"""Sweep the difference-count bound r*k*(1 + log_k N)/N over a grid of shifts
and lengths and write one CSV row per (spec, r, N).

    python3 scripts/bound_sweep.py --specs rudin_shapiro z3_k6 --max-r 16 -o sweep.csv
"""

import argparse
import csv
import sys
import time

from grs.correlation import diff_correlation
from grs.weights import catalog_matrix


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--specs", nargs="+", default=["rudin_shapiro", "queffelec_p3", "z3_k6"])
    ap.add_argument("--max-r", type=int, default=16)
    ap.add_argument("--N", nargs="+", type=int, default=[10**3, 10**4, 10**5, 10**6])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("-o", "--output")
    args = ap.parse_args(argv)

    out = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["spec", "r", "N", "max_deviation", "bound", "ratio", "pass"])
    violations = 0
    t = time.perf_counter()
    for name in args.specs:
        w = catalog_matrix(name)
        for N in args.N:
            for r in range(1, args.max_r + 1):
                rep = diff_correlation(w, r, N, workers=args.workers)
                dev = float(rep.max_deviation)
                violations += not rep.within_bound
                writer.writerow([name, r, N, repr(dev), repr(rep.bound), f"{dev / rep.bound:.6f}", rep.within_bound])
    if out is not sys.stdout:
        out.close()
    print(f"{violations} violations, {time.perf_counter() - t:.1f} s", file=sys.stderr)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())

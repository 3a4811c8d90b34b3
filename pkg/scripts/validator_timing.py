"""Time the difference-condition validator on every finite-field matrix with
p^n up to a limit, grouped by matrix size.

    python3 scripts/validator_timing.py --max-order 512
"""

import argparse
import time
from collections import defaultdict

from grs.field import build_field_difference_matrix, is_prime
from grs.weights import validate_difference_condition


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=512)
    args = ap.parse_args(argv)
    by_size = defaultdict(lambda: [0, 0.0])
    total = 0.0
    for p in range(2, args.max_order + 1):
        if not is_prime(p):
            continue
        n = 1
        while p**n <= args.max_order:
            for m in range(1, n + 1):
                w = build_field_difference_matrix(p, m, n)
                t = time.perf_counter()
                ok = validate_difference_condition(w).is_difference
                dt = time.perf_counter() - t
                assert ok, (p, m, n)
                by_size[p**n][0] += 1
                by_size[p**n][1] += dt
                total += dt
            n += 1
    print("size  matrices  seconds")
    for q in sorted(by_size, key=lambda q: -by_size[q][1])[:15]:
        c, s = by_size[q]
        print(f"{q:4d}  {c:8d}  {s:7.3f}")
    print(f"total {sum(c for c, _ in by_size.values())} matrices, {total:.2f} s")


if __name__ == "__main__":
    main()

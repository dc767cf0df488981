#!/usr/bin/env python3
"""Measure solver runtime growth on random connected cubic graphs.

The per-step work is linear and the number of steps linear, so doubling n
should roughly quadruple the runtime; the table prints the observed ratios.
"""

import argparse
import time

from minmatch.generators import gen_random_cubic
from minmatch.solver import solve


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 2000, 4000, 8000])
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--repeats", type=int, default=2)
    args = parser.parse_args()

    prev = None
    print(f"{'n':>6} {'steps':>6} {'size':>6} {'best secs':>10} {'ratio':>6}")
    for n in args.sizes:
        g = gen_random_cubic(n, args.seed)
        best = float("inf")
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            cert = solve(g)
            best = min(best, time.perf_counter() - t0)
        assert cert.valid
        ratio = "" if prev is None else f"{best / prev:6.2f}"
        print(f"{n:>6} {len(cert.trace):>6} {len(cert.matching):>6} {best:>10.3f} {ratio:>6}")
        prev = best


if __name__ == "__main__":
    main()

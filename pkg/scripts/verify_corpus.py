#!/usr/bin/env python3
"""Exhaustively verify the solver on all connected subcubic graphs, n <= N.

For every graph: solve, validate the certificate, compare the exact optimum
against the bound, and confirm the equality case is exactly K33.  Prints a
per-n summary table.
"""

import argparse
import sys
import time

from minmatch.generators import enumerate_connected_subcubic
from minmatch.graph import is_k33
from minmatch.matching import gamma_lower_bound
from minmatch.oracle import gamma_exact
from minmatch.solver import solve


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6, choices=range(1, 8))
    parser.add_argument("--with-oracle", action="store_true")
    args = parser.parse_args()

    print(f"{'n':>2} {'graphs':>8} {'invalid':>8} {'tight':>6} {'k33':>4} {'secs':>7}")
    bad = 0
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        total = invalid = tight = k33s = 0
        for g in enumerate_connected_subcubic(n):
            total += 1
            cert = solve(g)
            if not cert.valid:
                invalid += 1
                bad += 1
            if args.with_oracle:
                gamma = gamma_exact(g).gamma
                assert gamma_lower_bound(g) <= gamma <= len(cert.matching)
                if 6 * gamma == 4 * g.n - g.m + 3:
                    tight += 1
                    assert is_k33(g)
            k33s += 1 if cert.k33_special else 0
        print(
            f"{n:>2} {total:>8} {invalid:>8} {tight:>6} {k33s:>4}"
            f" {time.perf_counter() - t0:>7.1f}"
        )
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

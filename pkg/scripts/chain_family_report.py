#!/usr/bin/env python3
"""Report on the cyclic chain family of K33-minus blocks.

For each k: census, the pattern matching of size ceil(7k/3), the solver's
certified size, and (for small k) the exact optimum.  The family shows the
bound's 5/12 density is not asymptotically tight: gamma/n approaches 7/18.
"""

import argparse

from minmatch.generators import gen_gk, gen_gk_optimal_matching
from minmatch.oracle import gamma_exact
from minmatch.solver import solve


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-k", type=int, default=12)
    parser.add_argument("--oracle-up-to", type=int, default=4)
    args = parser.parse_args()

    print(f"{'k':>3} {'n':>4} {'m':>4} {'pattern':>7} {'solver':>6} {'floor-bound':>11} {'exact':>5}")
    for k in range(1, args.max_k + 1):
        fam = gen_gk(k)
        g = fam.graph
        pattern = len(gen_gk_optimal_matching(fam))
        cert = solve(g)
        exact = ""
        if k <= args.oracle_up_to:
            exact = str(gamma_exact(g).gamma)
        bound = "3" if cert.k33_special else str(cert.bound.lambda_times_6 // 6)
        print(
            f"{k:>3} {g.n:>4} {g.m:>4} {pattern:>7} {len(cert.matching):>6}"
            f" {bound:>11} {exact:>5}"
        )


if __name__ == "__main__":
    main()

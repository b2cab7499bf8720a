#!/usr/bin/env python3
"""Verifier-cost comparison across protocols and sizes.

Runs one honest non-interactive session per (protocol, n) and prints the
metered verifier work next to its analytic budget, the communication
volume, and the number of random field elements drawn by both parties.

Example:
    python scripts/budget_table.py --sizes 10,50,100,200 --modulus 1000003
"""

import argparse

from certilin.harness import run_bench

PROTOCOLS = ("fauv", "det-diag", "det-gamma")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,50,100")
    ap.add_argument("--modulus", type=int, default=1_000_003)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--density", type=float, default=None)
    args = ap.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",")]

    header = (f"{'protocol':>10} {'n':>5} {'nnz':>6} {'verifier ops':>13} "
              f"{'budget':>8} {'sent':>6} {'budget':>7} {'rand':>5} {'ok':>4}")
    print(header)
    print("-" * len(header))
    for protocol in PROTOCOLS:
        for row in run_bench(protocol, sizes, args.modulus, args.seed,
                             args.density):
            print(f"{row.protocol:>10} {row.n:>5} {row.nnz:>6} "
                  f"{row.verifier_ops:>13} "
                  f"{row.ops_bound if row.ops_bound is not None else '-':>8} "
                  f"{row.sent:>6} "
                  f"{row.sent_bound if row.sent_bound is not None else '-':>7} "
                  f"{row.random_elements:>5} {str(row.ok):>4}")


if __name__ == "__main__":
    main()

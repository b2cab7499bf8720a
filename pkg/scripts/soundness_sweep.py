#!/usr/bin/env python3
"""Empirical rejection rates of every adversarial strategy vs its bound.

Example:
    python scripts/soundness_sweep.py --trials 2000 --n 10
"""

import argparse

from certilin.harness import run_attack

SWEEP = [
    ("fauv", "wrong_generator"),
    ("fauv", "wrong_residue"),
    ("fauv", "degree_pad"),
    ("fauv", "wrong_solution"),
    ("fauv", "forged_bezout"),
    ("det-diag", "wrong_generator"),
    ("det-gamma", "wrong_generator"),
    ("det-gamma", "wrong_solution"),
    ("det-gamma", "singular_denial"),
    ("det-simple", "wrong_generator"),
    ("det-simple", "singular_denial"),
    ("charpoly", "wrong_generator"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--modulus", type=int, default=1_000_003)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    header = (f"{'protocol':>10} {'strategy':>16} {'rejected':>9} "
              f"{'rate':>8} {'bound':>8} {'verdict':>8}")
    print(header)
    print("-" * len(header))
    for protocol, strategy in SWEEP:
        rep = run_attack(protocol, strategy, args.trials, args.n,
                         args.modulus, args.seed)
        bound = f"{rep.bound:.5f}" if rep.bound is not None else rep.label
        verdict = "PASS" if rep.passed else "FAIL"
        print(f"{protocol:>10} {strategy:>16} "
              f"{rep.rejected:>5}/{rep.trials:<4}"
              f"{rep.rejection_rate:>7.4f} {bound:>8} {verdict:>8}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the exact-rational path against the fast modular path.

Evaluates every claim's left side on both paths at one prime and prints the
per-claim timings plus the aggregate speedup.  The modular path should win
by well over an order of magnitude once the prime is in the low hundreds.

Usage:
    python scripts/benchmark_paths.py
    python scripts/benchmark_paths.py --prime 499 --repeats 5
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wzlab.claims import CLAIM_IDS, REGISTRY  # noqa: E402


def time_side(fn, p, e, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn(p, e)
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best / 1000.0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--prime", type=int, default=199)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    p = args.prime
    print(f"left-side evaluation at p = {p} (best of {args.repeats} runs)\n")
    print(f"{'claim':<16}{'exact (us)':>12}{'modular (us)':>14}{'speedup':>9}")
    total_exact = total_mod = 0.0
    for cid in CLAIM_IDS:
        claim = REGISTRY[cid]
        claim.lhs_mod(p, claim.exponent)  # warm shared caches
        t_exact = time_side(claim.lhs_exact, p, claim.exponent, args.repeats)
        t_mod = time_side(claim.lhs_mod, p, claim.exponent, args.repeats)
        total_exact += t_exact
        total_mod += t_mod
        print(f"{cid:<16}{t_exact:>12.0f}{t_mod:>14.0f}{t_exact / t_mod:>8.1f}x")
    print("-" * 51)
    print(
        f"{'aggregate':<16}{total_exact:>12.0f}{total_mod:>14.0f}"
        f"{total_exact / total_mod:>8.1f}x"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

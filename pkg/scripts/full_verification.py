#!/usr/bin/env python3
"""Run the complete verification battery and print a one-line summary per stage.

Stages: certificate (symbolic + grid + mutation sweep), all congruence claims
over 5..499 with cross-checked paths up to 199, the summation identities to
n = 200, both telescoping decompositions and all proof checkpoints to 97,
and the tail-valuation behavior.  Exits nonzero if anything fails.

Usage:
    python scripts/full_verification.py
    python scripts/full_verification.py --hi 199 --workers 4
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wzlab.claims import (  # noqa: E402
    CLAIM_IDS,
    guo_schlosser_p3_check,
    proof_step_checks,
    scan,
    sigma_identity_mismatch,
)
from wzlab.exact import primes_in, reduce_mod  # noqa: E402
from wzlab.series import MAIN, partial_sum_exact, tail_vanishing_check  # noqa: E402
from wzlab.wz import (  # noqa: E402
    builtin_certificate,
    cert_numeric_mismatch,
    decomposition_1_holds,
    decomposition_2_holds,
    single_coefficient_mutants,
    verify_pair_numeric,
    verify_pair_symbolic,
)


def stage(name, ok, detail=""):
    print(f"[{'ok' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else ""))
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--hi", type=int, default=499, help="top of the prime range")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    all_ok = True
    t0 = time.time()

    cert_ok = verify_pair_symbolic(builtin_certificate()) and verify_pair_numeric(50, 50)
    mutants = single_coefficient_mutants()
    mutants_dead = all(
        not verify_pair_symbolic(m) and cert_numeric_mismatch(m, 8, 8) is not None
        for m in mutants
    )
    all_ok &= stage(
        "certificate", cert_ok and mutants_dead,
        f"symbolic + 51x51 grid, {len(mutants)} mutants rejected",
    )

    rep = scan(list(CLAIM_IDS), primes_in(5, args.hi), mode="mod", workers=args.workers)
    all_ok &= stage(
        f"claims mod p^e, 5..{args.hi}", rep.all_pass,
        f"{len(rep.verdicts)} verdicts",
    )

    cross_hi = min(args.hi, 199)
    rep = scan(list(CLAIM_IDS), primes_in(5, cross_hi), mode="cross", workers=args.workers)
    agree = rep.all_pass and all(v.paths_agree for v in rep.verdicts)
    all_ok &= stage(f"cross-path 5..{cross_hi}", agree, f"{len(rep.verdicts)} verdicts")

    all_ok &= stage("p = 3 spot check", guo_schlosser_p3_check())

    witness = sigma_identity_mismatch(200)
    all_ok &= stage("summation identities n <= 200", witness is None)

    tele_ok = all(
        decomposition_1_holds(p) and decomposition_2_holds(p) for p in primes_in(5, 97)
    )
    all_ok &= stage("telescoping decompositions 5..97", tele_ok)

    step_fails = [
        (v.claim_id, p)
        for p in primes_in(5, 97)
        for v in proof_step_checks(p)
        if not v.holds
    ]
    all_ok &= stage("proof checkpoints 5..97", not step_fails)

    tail_ok = True
    split = 0
    for p in primes_in(5, 97):
        tail_ok &= tail_vanishing_check(p)
        half = partial_sum_exact(MAIN, (p + 1) // 2)
        full = partial_sum_exact(MAIN, p - 1)
        tail_ok &= reduce_mod(half, p, 3) == reduce_mod(full, p, 3)
        split += reduce_mod(half, p, 4) != reduce_mod(full, p, 4)
    all_ok &= stage("tail valuations 5..97", tail_ok and split > 0,
                    f"sums split mod p^4 at {split} primes")

    print(f"\n{'all stages passed' if all_ok else 'FAILURES PRESENT'} "
          f"({time.time() - t0:.1f}s)")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

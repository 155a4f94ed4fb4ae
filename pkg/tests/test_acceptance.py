"""Acceptance suite: one test per criterion, each printing a verdict line.

All congruence comparisons are exact (tolerance identically zero).  Run with
`pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
"""

import json
import os
import subprocess
import sys
import time
from pathlib import Path

from wzlab.claims import CLAIM_IDS, evaluate_claim, guo_schlosser_p3_check, scan, sigma_identity_mismatch
from wzlab.exact import primes_in, reduce_mod
from wzlab.series import MAIN, REGISTRY, natural_limits, partial_sum_exact, partial_sum_mod, tail_vanishing_check
from wzlab.wz import (
    builtin_certificate,
    cert_numeric_mismatch,
    decomposition_1_holds,
    decomposition_2_holds,
    single_coefficient_mutants,
    verify_pair_numeric,
    verify_pair_symbolic,
)

REPO = Path(__file__).resolve().parent.parent
SRC = REPO / "src"

SUPPORTING = [
    "van_hamme",
    "sun_refine",
    "sun11",
    "morley",
    "lemma23_a",
    "lemma23_b",
    "lemma23_c",
    "lemma23_d",
    "lemma24",
    "lemma25_a",
    "lemma25_b",
    "lemma25_c",
    "lemma25_d",
    "lemma25_e",
]


def announce(num: int, ok: bool, desc: str) -> None:
    print(f"ACCEPTANCE {num:2d}: {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def test_criterion_01_wz_certificate():
    t0 = time.perf_counter()
    symbolic_ok = verify_pair_symbolic(builtin_certificate())
    numeric_ok = verify_pair_numeric(50, 50)  # the 51 x 51 grid
    elapsed = time.perf_counter() - t0

    mutants = single_coefficient_mutants()
    mutants_ok = len(mutants) >= 10 and all(
        not verify_pair_symbolic(m) and cert_numeric_mismatch(m, 8, 8) is not None
        for m in mutants
    )
    ok = symbolic_ok and numeric_ok and elapsed < 5.0 and mutants_ok
    announce(
        1,
        ok,
        f"certificate symbolic + 51x51 grid in {elapsed:.2f}s (< 5s); "
        f"{len(mutants)} single-coefficient mutants all fail with witnesses",
    )


def test_criterion_02_main_congruence_half_range():
    t0 = time.perf_counter()
    rep = scan(["thm1"], primes_in(5, 499), mode="exact")
    elapsed = time.perf_counter() - t0
    pinned = evaluate_claim("thm1", 5, mode="exact")
    ok = (
        rep.all_pass
        and len(rep.verdicts) == 93
        and elapsed < 30.0
        and pinned.lhs == (255,)
        and pinned.rhs == (255,)
    )
    announce(
        2,
        ok,
        f"thm1 holds mod p^4 for all 93 primes 5..499 on the exact path "
        f"in {elapsed:.1f}s (< 30s); pinned 255 (mod 625) at p=5",
    )


def test_criterion_03_main_congruence_full_range():
    rep = scan(["thm2"], primes_in(5, 499), mode="mod")
    exact_spot = scan(["thm2"], primes_in(5, 97), mode="exact")
    pinned = evaluate_claim("thm2", 5)
    ok = (
        rep.all_pass
        and exact_spot.all_pass
        and pinned.lhs == (380,)
        and pinned.rhs == (380,)
    )
    announce(
        3,
        ok,
        "thm2 holds mod p^4 for all primes 5..499 (exact path re-checked to 97); "
        "pinned 380 (mod 625) at p=5",
    )


def test_criterion_04_truncation_congruence_mod_p3():
    spot = guo_schlosser_p3_check()
    rep = scan(["guo_schlosser"], primes_in(5, 499), mode="mod")
    ok = spot and rep.all_pass
    announce(
        4,
        ok,
        "guo_schlosser holds mod p^3 for 3 <= p <= 499 "
        "(p = 3 by the dedicated spot check, 15/32 == 3 mod 27)",
    )


def test_criterion_05_supporting_claims():
    rep = scan(SUPPORTING, primes_in(5, 499), mode="mod")
    morley = evaluate_claim("morley", 5)
    l25a = evaluate_claim("lemma25_a", 5)
    vh = evaluate_claim("van_hamme", 5)
    ok = (
        rep.all_pass
        and morley.lhs == (6,) == morley.rhs
        and l25a.lhs == (101,) == l25a.rhs
        and vh.lhs == (5,) == vh.rhs
    )
    announce(
        5,
        ok,
        f"all {len(SUPPORTING)} supporting claims hold for every admissible "
        "prime <= 499; pinned morley=6 (mod 125), lemma25_a=101 (mod 125), "
        "van_hamme=5 (mod 125) at p=5",
    )


def test_criterion_06_summation_identities():
    witness = sigma_identity_mismatch(200)
    announce(
        6,
        witness is None,
        "three weighted-sum identities and their three-term recurrence "
        "hold exactly for 1 <= n <= 200",
    )


def test_criterion_07_telescoping_decompositions():
    ok = all(
        decomposition_1_holds(p) and decomposition_2_holds(p)
        for p in primes_in(5, 97)
    )
    announce(
        7,
        ok,
        "both telescoping decompositions reproduce the exact partial sums "
        "for all primes 5..97",
    )


def test_criterion_08_proof_step_checkpoints():
    from wzlab.claims import proof_step_checks

    failures = []
    for p in primes_in(5, 97):
        failures.extend(v.claim_id for v in proof_step_checks(p) if not v.holds)
    announce(
        8,
        not failures,
        f"all 24 intermediate checkpoints hold for primes 5..97 "
        f"(failures: {failures or 'none'})",
    )


def test_criterion_09_cross_path_agreement_and_speedup():
    rep = scan(list(CLAIM_IDS), primes_in(5, 199), mode="cross")
    agree = rep.all_pass and all(v.paths_agree for v in rep.verdicts)

    near = [v for v in rep.verdicts if v.prime >= 150]
    exact_us = sum(v.micros_exact for v in near)
    mod_us = sum(v.micros_mod for v in near)
    ratio = exact_us / mod_us if mod_us else float("inf")

    # the series-level invariant at both natural limits, full range
    series_ok = all(
        partial_sum_mod(spec, upper, p, 4)
        == reduce_mod(partial_sum_exact(spec, upper), p, 4)
        for name, spec in REGISTRY.items()
        for p in primes_in(97, 199)
        for upper in natural_limits(name, p)
    )

    ok = agree and series_ok and ratio >= 10.0
    announce(
        9,
        ok,
        f"modular path == exact path on every claim over 5..199; aggregate "
        f"speedup at p in [150,199]: {ratio:.1f}x (>= 10x required)",
    )


def test_criterion_10_tail_behavior():
    diverged = []
    for p in primes_in(5, 97):
        assert tail_vanishing_check(p)
        half = partial_sum_exact(MAIN, (p + 1) // 2)
        full = partial_sum_exact(MAIN, p - 1)
        assert reduce_mod(half, p, 3) == reduce_mod(full, p, 3), p
        if reduce_mod(half, p, 4) != reduce_mod(full, p, 4):
            diverged.append(p)
    announce(
        10,
        bool(diverged),
        f"the two main partial sums agree mod p^3 for all primes 5..97 and "
        f"differ mod p^4 at {len(diverged)} of them (e.g. p={diverged[0] if diverged else '-'})",
    )


def test_criterion_11_deterministic_reports(tmp_path):
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    outputs = []
    for workers in (1, 8):
        out = tmp_path / f"report_w{workers}.json"
        res = subprocess.run(
            [
                sys.executable,
                "-m",
                "wzlab",
                "scan",
                "--claims",
                "all",
                "--primes",
                "5..61",
                "--format",
                "json",
                "--no-timing",
                "--workers",
                str(workers),
                "-o",
                str(out),
            ],
            capture_output=True,
            text=True,
            env=env,
            timeout=600,
        )
        assert res.returncode == 0, res.stderr
        outputs.append(out.read_bytes())
    ok = outputs[0] == outputs[1] and json.loads(outputs[0])["summary"]["all_pass"]
    announce(
        11,
        ok,
        "scan with 1 worker and 8 workers emits byte-identical JSON "
        "(all claims, primes 5..61, timing suppressed)",
    )

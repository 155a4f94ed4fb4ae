"""Command-line frontend: claim scans, certificate verification, checkpoints.

Exit status contract: 0 = everything verified, 1 = a mathematical verdict
failed, 2 = usage or configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import claims as claims_mod
from .claims import (
    CLAIM_IDS,
    PredicateViolation,
    Report,
    VERSION,
    proof_step_checks,
    scan,
)
from .exact import primes_in
from .wz import (
    CertificateFormatError,
    ShiftRatioMismatch,
    builtin_certificate,
    cert_numeric_mismatch,
    load_certificate,
    numeric_mismatch,
    symbolic_residual,
    validate_shift_ratios,
)

EXIT_OK = 0
EXIT_VERDICT_FAILURE = 1
EXIT_CONFIG_ERROR = 2


@dataclass
class RunConfig:
    command: str
    claim_ids: list[str]
    prime_lo: int
    prime_hi: int
    workers: int
    fmt: str
    output: str | None
    cert_path: str | None
    grid: int
    mode: str
    e_override: int | None
    timing: bool


def _default_workers() -> int:
    env = os.environ.get("WZLAB_WORKERS", "")
    try:
        n = int(env)
        return n if n >= 1 else 1
    except ValueError:
        return 1


def _parse_prime_range(args: argparse.Namespace, parser: argparse.ArgumentParser) -> tuple[int, int]:
    if getattr(args, "prime", None) is not None:
        if getattr(args, "primes", None) is not None:
            parser.error("use either --prime or --primes, not both")
        return args.prime, args.prime
    spec = getattr(args, "primes", None)
    if spec is None:
        parser.error("a prime range is required (--primes lo..hi or --prime p)")
    try:
        lo_s, hi_s = spec.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        parser.error(f"cannot parse prime range {spec!r}; expected lo..hi")
    if lo > hi:
        parser.error(f"empty prime range {spec!r}")
    return lo, hi


def _resolve_claims(spec: str, parser: argparse.ArgumentParser) -> list[str]:
    if spec.strip().lower() == "all":
        return list(CLAIM_IDS)
    ids = [s.strip() for s in spec.split(",") if s.strip()]
    unknown = [cid for cid in ids if cid not in CLAIM_IDS]
    if unknown:
        parser.error(
            f"unknown claim ids: {', '.join(unknown)} "
            f"(known: {', '.join(CLAIM_IDS)})"
        )
    if not ids:
        parser.error("no claim ids given")
    return ids


def _emit(report: Report, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = report.to_json()
    elif fmt == "csv":
        text = report.to_csv()
    else:
        text = report.human()
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_verify_wz(args: argparse.Namespace) -> int:
    if args.cert:
        try:
            cert = load_certificate(args.cert)
        except CertificateFormatError as exc:
            print(f"certificate error: {exc}", file=sys.stderr)
            return EXIT_CONFIG_ERROR
    else:
        cert = builtin_certificate()

    ok = True
    try:
        validate_shift_ratios(cert, grid=10)
        residual = symbolic_residual(cert)
        if residual.is_zero:
            print(f"symbolic check: PASS ({cert.name})")
        else:
            ok = False
            print(f"symbolic check: FAIL ({cert.name})")
            print(f"  nonzero residual: {residual!r}")
    except ShiftRatioMismatch as exc:
        ok = False
        print(f"symbolic check: FAIL ({cert.name})")
        print(f"  shift-quotient validation: {exc}")

    grid = args.grid
    witness = (
        numeric_mismatch(grid, grid)
        if args.cert is None
        else cert_numeric_mismatch(cert, grid, grid)
    )
    if witness is None:
        print(f"numeric check: PASS on [0..{grid}] x [0..{grid}]")
    else:
        ok = False
        n, k = witness
        print(f"numeric check: FAIL at (n, k) = ({n}, {k})")
        print("  F(n,k+1) - F(n,k) != G(n+1,k) - G(n,k) there")

    return EXIT_OK if ok else EXIT_VERDICT_FAILURE


def _cmd_scan(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    claim_ids = _resolve_claims(args.claims, parser)
    lo, hi = _parse_prime_range(args, parser)
    if args.exact_only and args.cross_check:
        parser.error("--exact-only and --cross-check are mutually exclusive")
    mode = "cross" if args.cross_check else ("exact" if args.exact_only else "mod")

    config = RunConfig(
        command="scan",
        claim_ids=claim_ids,
        prime_lo=lo,
        prime_hi=hi,
        workers=args.workers,
        fmt=args.format,
        output=args.output,
        cert_path=None,
        grid=0,
        mode=mode,
        e_override=args.e_override,
        timing=not args.no_timing,
    )

    primes = primes_in(config.prime_lo, config.prime_hi)
    report = scan(
        config.claim_ids,
        primes,
        e_override=config.e_override,
        mode=config.mode,
        workers=config.workers,
        timing=config.timing,
    )
    if not report.verdicts:
        print(
            f"no admissible primes in {config.prime_lo}..{config.prime_hi} "
            "(all claims require p > 3)",
            file=sys.stderr,
        )
        return EXIT_CONFIG_ERROR
    _emit(report, config.fmt, config.output)
    return EXIT_OK if report.all_pass else EXIT_VERDICT_FAILURE


def _proof_task(p: int) -> list:
    return proof_step_checks(p)


def _cmd_proof_steps(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    lo, hi = _parse_prime_range(args, parser)
    primes = [p for p in primes_in(lo, hi) if p > 3]
    if not primes:
        print(f"no primes > 3 in {lo}..{hi}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    try:
        if args.workers > 1 and len(primes) > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                verdict_lists = list(pool.map(_proof_task, primes))
        else:
            verdict_lists = [proof_step_checks(p) for p in primes]
    except PredicateViolation as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG_ERROR

    verdicts = [v for vs in verdict_lists for v in vs]
    checkpoint_order = {cid: i for i, cid in enumerate(claims_mod.CHECKPOINT_IDS)}
    verdicts.sort(key=lambda v: (checkpoint_order[v.claim_id], v.prime))
    run = {
        "tool": "wzlab",
        "version": VERSION,
        "command": "proof-steps",
        "claims": list(claims_mod.CHECKPOINT_IDS),
        "prime_lo": primes[0],
        "prime_hi": primes[-1],
        "prime_count": len(primes),
        "mode": "exact",
        "e_override": None,
        "timing": not args.no_timing,
    }
    if args.no_timing:
        verdicts = [
            claims_mod.Verdict(
                claim_id=v.claim_id,
                prime=v.prime,
                exponent=v.exponent,
                holds=v.holds,
                lhs=v.lhs,
                rhs=v.rhs,
                micros=0,
                mode=v.mode,
            )
            for v in verdicts
        ]
    report = Report(run=run, verdicts=verdicts)
    _emit(report, args.format, args.output)
    return EXIT_OK if report.all_pass else EXIT_VERDICT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wzlab",
        description=(
            "Exact verification of the telescoping certificate and the "
            "hypergeometric congruences it implies."
        ),
    )
    parser.add_argument("--version", action="version", version=f"wzlab {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_wz = sub.add_parser("verify-wz", help="check the certificate symbolically and on a grid")
    p_wz.add_argument("--cert", metavar="PATH", default=None, help="certificate JSON file")
    p_wz.add_argument("--grid", type=int, default=50, metavar="N", help="grid bound (default 50)")

    def add_common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--primes", metavar="LO..HI", default=None, help="inclusive prime range")
        sp.add_argument("--prime", type=int, default=None, metavar="P", help="a single prime")
        sp.add_argument(
            "--format", choices=("json", "csv", "human"), default="human", help="report format"
        )
        sp.add_argument("-o", "--output", metavar="PATH", default=None, help="write report here")
        sp.add_argument(
            "--workers",
            type=int,
            default=_default_workers(),
            metavar="N",
            help="worker processes (default $WZLAB_WORKERS or 1)",
        )
        sp.add_argument(
            "--no-timing",
            action="store_true",
            help="zero the per-verdict timing fields (reproducible reports)",
        )

    p_scan = sub.add_parser("scan", help="evaluate congruence claims over a prime range")
    p_scan.add_argument(
        "--claims", required=True, metavar="IDS", help="comma-separated claim ids, or 'all'"
    )
    add_common(p_scan)
    p_scan.add_argument(
        "--exact-only", action="store_true", help="evaluate left sides on the exact path only"
    )
    p_scan.add_argument(
        "--cross-check",
        action="store_true",
        help="evaluate both paths and require agreement",
    )
    p_scan.add_argument(
        "--e-override",
        type=int,
        default=None,
        metavar="E",
        help="compare modulo p^E instead of each claim's stated exponent",
    )

    p_steps = sub.add_parser("proof-steps", help="run the intermediate checkpoint suite")
    add_common(p_steps)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify-wz":
        return _cmd_verify_wz(args)
    if args.command == "scan":
        return _cmd_scan(args, parser)
    if args.command == "proof-steps":
        return _cmd_proof_steps(args, parser)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    raise SystemExit(main())

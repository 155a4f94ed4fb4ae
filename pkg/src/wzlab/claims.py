"""Executable registry of every verified congruence and proof checkpoint.

Each claim is data: an identifier, the congruence statement it encodes (the
anchor string, which the reports echo so a run doubles as an audit trail),
a modulus exponent, and three evaluators -- exact-rational left side, fast
modular left side, and right side.  A claim holds at a prime iff both sides
reduce to the same residue; every claim here is a proved theorem, so any
failing verdict indicates a bug in this package, which is exactly the
regression contract the scan enforces.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable, Iterable, Sequence

from . import wz
from .exact import (
    Residue,
    fermat_quotient_2,
    fermat_quotient_2_mod,
    is_prime,
    legendre_symbol,
    reduce_mod,
)
from .sequences import (
    alternating_inv_square_mod,
    bernoulli_poly_mod,
    euler_mod,
    falling_alternating_inv_square,
    harmonic,
    harmonic_mod,
    pochhammer,
)
from .series import (
    BINOM_HARMONIC,
    BINOM_OVER_K,
    BINOM_OVER_K2,
    CENTRAL_SQ,
    MAIN,
    SUN,
    VAN_HAMME,
    partial_sum_exact,
    partial_sum_mod,
)

VERSION = "0.1.0"


class PredicateViolation(ValueError):
    """A claim was evaluated at a prime outside its stated range."""


Residues = tuple[Residue, ...]
Evaluator = Callable[[int, int], Residues]


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    exponent: int
    lhs_exact: Evaluator
    lhs_mod: Evaluator
    rhs: Evaluator
    min_p: int = 5


@dataclass(frozen=True)
class Verdict:
    claim_id: str
    prime: int
    exponent: int
    holds: bool
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    micros: int
    mode: str
    paths_agree: bool | None = None
    micros_exact: int | None = None
    micros_mod: int | None = None

    def value_str(self, side: str) -> str:
        return "|".join(str(v) for v in getattr(self, side))


# ---------------------------------------------------------------------------
# claim construction helpers

def _series_evaluators(spec, upper: Callable[[int], int]) -> tuple[Evaluator, Evaluator]:
    def lhs_exact(p: int, e: int) -> Residues:
        return (reduce_mod(partial_sum_exact(spec, upper(p)), p, e),)

    def lhs_mod(p: int, e: int) -> Residues:
        return (partial_sum_mod(spec, upper(p), p, e),)

    return lhs_exact, lhs_mod


def _eps(p: int) -> int:
    """(-1)^((p-1)/2), i.e. the Legendre symbol (-1/p)."""
    return legendre_symbol(-1, p)


def _euler_pm3(p: int) -> int:
    return euler_mod(p, p - 3).value


def _const_rhs(expr: Callable[[int], Fraction | int]) -> Evaluator:
    def rhs(p: int, e: int) -> Residues:
        return (reduce_mod(Fraction(expr(p)), p, e),)

    return rhs


def _morley_lhs_exact(p: int, e: int) -> Residues:
    return (reduce_mod(comb(p - 1, (p - 1) // 2), p, e),)


def _morley_lhs_mod(p: int, e: int) -> Residues:
    # C(p-1, (p-1)/2) = prod_{j=1}^{(p-1)/2} (p-j) / (p-1)/2!, mod p^e.
    # Both products are units, so one modular inverse finishes the job.
    pe = p**e
    h = (p - 1) // 2
    num = prod(range(p - h, p)) % pe
    den = prod(range(1, h + 1)) % pe
    return (Residue(p, e, num * pow(den, -1, pe) % pe),)


def _morley_rhs(p: int, e: int) -> Residues:
    pe = p**e
    return (Residue(p, e, _eps(p) * pow(4, p - 1, pe) % pe),)


def _harmonic_lhs(idx: Callable[[int], int], order: int) -> tuple[Evaluator, Evaluator]:
    def lhs_exact(p: int, e: int) -> Residues:
        return (reduce_mod(harmonic(idx(p), order), p, e),)

    def lhs_mod(p: int, e: int) -> Residues:
        return (harmonic_mod(idx(p), order, p, e),)

    return lhs_exact, lhs_mod


def _lemma23_c_exact(p: int, e: int) -> Residues:
    return (
        reduce_mod(harmonic(p - 1, 2), p, e),
        reduce_mod(harmonic((p - 1) // 2, 2), p, e),
    )


def _lemma23_c_mod(p: int, e: int) -> Residues:
    return (
        harmonic_mod(p - 1, 2, p, e),
        harmonic_mod((p - 1) // 2, 2, p, e),
    )


def _lemma23_c_rhs(p: int, e: int) -> Residues:
    zero = Residue(p, e, 0)
    return (zero, zero)


def _lemma24_lhs_exact(p: int, e: int) -> Residues:
    return (reduce_mod(falling_alternating_inv_square((p - 1) // 2), p, e),)


def _lemma24_lhs_mod(p: int, e: int) -> Residues:
    return (alternating_inv_square_mod((p - 1) // 2, p, e),)


def _bernoulli_third(p: int) -> int:
    """(p/3) B_{p-2}(1/3) mod p, the shared factor of the last two sums."""
    return legendre_symbol(p, 3) * bernoulli_poly_mod(p, p - 2, Fraction(1, 3)).value % p


def _lemma25_d_rhs(p: int, e: int) -> Residues:
    return (reduce_mod(Fraction(_bernoulli_third(p), 2), p, e),)


def _lemma25_e_rhs(p: int, e: int) -> Residues:
    return (reduce_mod(Fraction(_bernoulli_third(p), 3), p, e),)


def _build_registry() -> dict[str, Claim]:
    claims: list[Claim] = []

    lx, lm = _series_evaluators(MAIN, lambda p: (p + 1) // 2)
    claims.append(
        Claim(
            id="thm1",
            anchor=(
                "sum(k=0..(p+1)/2) (3k-1)(-1/2)_k^2(1/2)_k 4^k/k!^3 "
                "== p - 6p^3(-1/p) + 2p^3(-1/p)E_{p-3}  (mod p^4)"
            ),
            exponent=4,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(
                lambda p: p - 6 * p**3 * _eps(p) + 2 * p**3 * _eps(p) * _euler_pm3(p)
            ),
        )
    )

    lx, lm = _series_evaluators(MAIN, lambda p: p - 1)
    claims.append(
        Claim(
            id="thm2",
            anchor=(
                "sum(k=0..p-1) (3k-1)(-1/2)_k^2(1/2)_k 4^k/k!^3 "
                "== p - 2p^3  (mod p^4)"
            ),
            exponent=4,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: p - 2 * p**3),
        )
    )

    lx, lm = _series_evaluators(MAIN, lambda p: (p + 1) // 2)
    claims.append(
        Claim(
            id="guo_schlosser",
            anchor=(
                "sum(k=0..(p+1)/2) (3k-1)(-1/2)_k^2(1/2)_k 4^k/k!^3 == p  (mod p^3)"
            ),
            exponent=3,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: p),
        )
    )

    lx, lm = _series_evaluators(VAN_HAMME, lambda p: (p - 1) // 2)
    claims.append(
        Claim(
            id="van_hamme",
            anchor=(
                "sum(k=0..(p-1)/2) (-1)^k(4k+1)(1/2)_k^3/k!^3 == p(-1/p)  (mod p^3)"
            ),
            exponent=3,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: p * _eps(p)),
        )
    )

    claims.append(
        Claim(
            id="sun_refine",
            anchor=(
                "sum(k=0..(p-1)/2) (-1)^k(4k+1)(1/2)_k^3/k!^3 "
                "== p(-1/p) + p^3 E_{p-3}  (mod p^4)"
            ),
            exponent=4,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: p * _eps(p) + p**3 * _euler_pm3(p)),
        )
    )

    lx, lm = _series_evaluators(SUN, lambda p: (p - 1) // 2)
    claims.append(
        Claim(
            id="sun11",
            anchor=(
                "sum(k=0..(p-1)/2) (3k+1)(1/2)_k^3 4^k/k!^3 "
                "== p + 2p^3(-1/p)E_{p-3}  (mod p^4)"
            ),
            exponent=4,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: p + 2 * p**3 * _eps(p) * _euler_pm3(p)),
        )
    )

    claims.append(
        Claim(
            id="morley",
            anchor="C(p-1,(p-1)/2) == (-1)^((p-1)/2) 4^(p-1)  (mod p^3)",
            exponent=3,
            lhs_exact=_morley_lhs_exact,
            lhs_mod=_morley_lhs_mod,
            rhs=_morley_rhs,
        )
    )

    lx, lm = _harmonic_lhs(lambda p: p - 1, 1)
    claims.append(
        Claim(
            id="lemma23_a",
            anchor="H_{p-1} == 0  (mod p^2)",
            exponent=2,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: 0),
        )
    )

    lx, lm = _harmonic_lhs(lambda p: (p - 1) // 2, 1)
    claims.append(
        Claim(
            id="lemma23_b",
            anchor="H_{(p-1)/2} == -2 q_p(2) + p q_p(2)^2  (mod p^2)",
            exponent=2,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=lambda p, e: (
                Residue(
                    p,
                    e,
                    (
                        -2 * fermat_quotient_2_mod(p, e)
                        + p * fermat_quotient_2_mod(p, e) ** 2
                    )
                    % p**e,
                ),
            ),
        )
    )

    claims.append(
        Claim(
            id="lemma23_c",
            anchor="H^(2)_{p-1} == 0 and H^(2)_{(p-1)/2} == 0  (mod p)",
            exponent=1,
            lhs_exact=_lemma23_c_exact,
            lhs_mod=_lemma23_c_mod,
            rhs=_lemma23_c_rhs,
        )
    )

    lx, lm = _harmonic_lhs(lambda p: p // 4, 2)
    claims.append(
        Claim(
            id="lemma23_d",
            anchor="H^(2)_{floor(p/4)} == 4 (-1)^((p-1)/2) E_{p-3}  (mod p)",
            exponent=1,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: 4 * _eps(p) * _euler_pm3(p)),
        )
    )

    claims.append(
        Claim(
            id="lemma24",
            anchor=(
                "sum(k=1..(p-1)/2) (-1)^k/k^2 == 2 (-1)^((p-1)/2) E_{p-3}  (mod p)"
            ),
            exponent=1,
            lhs_exact=_lemma24_lhs_exact,
            lhs_mod=_lemma24_lhs_mod,
            rhs=_const_rhs(lambda p: 2 * _eps(p) * _euler_pm3(p)),
        )
    )

    lx, lm = _series_evaluators(CENTRAL_SQ, lambda p: (p - 1) // 2)
    claims.append(
        Claim(
            id="lemma25_a",
            anchor=(
                "sum(k=0..(p-1)/2) C(2k,k)^2/16^k "
                "== (-1)^((p-1)/2) + p^2 E_{p-3}  (mod p^3)"
            ),
            exponent=3,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: _eps(p) + p * p * _euler_pm3(p)),
        )
    )

    lx, lm = _series_evaluators(BINOM_OVER_K, lambda p: p - 1)
    claims.append(
        Claim(
            id="lemma25_b",
            anchor="sum(k=1..p-1) C(2k,k)/k == 0  (mod p^2)",
            exponent=2,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: 0),
        )
    )

    lx, lm = _series_evaluators(BINOM_OVER_K, lambda p: (p - 1) // 2)
    claims.append(
        Claim(
            id="lemma25_c",
            anchor=(
                "sum(k=1..(p-1)/2) C(2k,k)/k "
                "== (-1)^((p+1)/2) (8/3) p E_{p-3}  (mod p^2)"
            ),
            exponent=2,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_const_rhs(lambda p: Fraction(-_eps(p) * 8 * p * _euler_pm3(p), 3)),
        )
    )

    lx, lm = _series_evaluators(BINOM_OVER_K2, lambda p: p - 1)
    claims.append(
        Claim(
            id="lemma25_d",
            anchor="sum(k=1..p-1) C(2k,k)/k^2 == (1/2)(p/3) B_{p-2}(1/3)  (mod p)",
            exponent=1,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_lemma25_d_rhs,
        )
    )

    lx, lm = _series_evaluators(BINOM_HARMONIC, lambda p: p - 1)
    claims.append(
        Claim(
            id="lemma25_e",
            anchor="sum(k=1..p-1) (C(2k,k)/k) H_k == (1/3)(p/3) B_{p-2}(1/3)  (mod p)",
            exponent=1,
            lhs_exact=lx,
            lhs_mod=lm,
            rhs=_lemma25_e_rhs,
        )
    )

    return {c.id: c for c in claims}


REGISTRY: dict[str, Claim] = _build_registry()
CLAIM_IDS: tuple[str, ...] = tuple(REGISTRY)


def guo_schlosser_p3_check() -> bool:
    """The p = 3 instance, checked directly (the registry needs p > 3).

    sum_{k=0}^{2} of the main term is 15/32, and 15/32 == 3 (mod 27).
    """
    total = partial_sum_exact(MAIN, 2)
    return total == Fraction(15, 32) and reduce_mod(total, 3, 3).value == 3


# ---------------------------------------------------------------------------
# claim evaluation

def evaluate_claim(
    claim_id: str,
    p: int,
    e_override: int | None = None,
    mode: str = "mod",
    timing: bool = True,
) -> Verdict:
    """Evaluate one claim at one prime and return the structured verdict.

    mode is "mod" (fast path), "exact" (rational path) or "cross" (both
    paths must agree with each other as well as with the right side).
    """
    try:
        claim = REGISTRY[claim_id]
    except KeyError:
        raise ValueError(f"unknown claim id: {claim_id!r}") from None
    if not is_prime(p) or p < claim.min_p:
        raise PredicateViolation(f"claim {claim_id} requires a prime p > 3, got {p}")
    if mode not in ("mod", "exact", "cross"):
        raise ValueError(f"unknown mode {mode!r}")

    e = claim.exponent if e_override is None else e_override
    t0 = time.perf_counter_ns()
    paths_agree: bool | None = None
    micros_exact: int | None = None
    micros_mod: int | None = None

    if mode == "cross":
        t_ex = time.perf_counter_ns()
        lhs_exact = claim.lhs_exact(p, e)
        t_mid = time.perf_counter_ns()
        lhs_mod = claim.lhs_mod(p, e)
        t_end = time.perf_counter_ns()
        micros_exact = (t_mid - t_ex) // 1000
        micros_mod = (t_end - t_mid) // 1000
        paths_agree = lhs_exact == lhs_mod
        lhs = lhs_mod
    elif mode == "exact":
        lhs = claim.lhs_exact(p, e)
    else:
        lhs = claim.lhs_mod(p, e)

    rhs = claim.rhs(p, e)
    holds = lhs == rhs and (paths_agree is not False)
    micros = (time.perf_counter_ns() - t0) // 1000

    return Verdict(
        claim_id=claim_id,
        prime=p,
        exponent=e,
        holds=holds,
        lhs=tuple(r.value for r in lhs),
        rhs=tuple(r.value for r in rhs),
        micros=micros if timing else 0,
        mode=mode,
        paths_agree=paths_agree,
        micros_exact=(micros_exact if timing else 0) if mode == "cross" else None,
        micros_mod=(micros_mod if timing else 0) if mode == "cross" else None,
    )


# ---------------------------------------------------------------------------
# the three exact summation identities and their recurrence

def _sigma_rows(n_max: int):
    """Yield (n, S_hsq2, S_hsq, S_h, H_n, alt_n): the three weighted sums
    sum_k (-n)_k(1+n)_k/(1)_k^2 * {H_k^(2), H_k^2, H_k} and reference data."""
    for n in range(1, n_max + 1):
        c = Fraction(1)
        h = Fraction(0)
        h2 = Fraction(0)
        s_h2 = Fraction(0)
        s_hsq = Fraction(0)
        s_h = Fraction(0)
        for k in range(1, n + 1):
            c *= Fraction((-n + k - 1) * (n + k), k * k)
            h += Fraction(1, k)
            h2 += Fraction(1, k * k)
            s_h2 += c * h2
            s_hsq += c * h * h
            s_h += c * h
        yield n, s_h2, s_hsq, s_h, h, h2


def sigma_identity_mismatch(n_max: int) -> tuple[int, int] | None:
    """First (identity index, n) violating the three identities

        sum_k (-n)_k(1+n)_k/(1)_k^2 H_k^(2) = -2(-1)^n sum_k (-1)^k/k^2
        sum_k (-n)_k(1+n)_k/(1)_k^2 H_k^2  = 4(-1)^n H_n^2 + 2(-1)^n sum_k (-1)^k/k^2
        sum_k (-n)_k(1+n)_k/(1)_k^2 H_k    = 2(-1)^n H_n

    or (4, n) when (1+n)S_n + (3+2n)S_{n+1} + (n+2)S_{n+2} = 0 fails for the
    third sum.  Returns None when everything holds for 1 <= n <= n_max.
    """
    s3: list[Fraction] = [Fraction(0)]  # 1-based store of the third sum
    alt = Fraction(0)
    for n, s_h2, s_hsq, s_h, h_n, _ in _sigma_rows(n_max):
        alt += Fraction((-1) ** n, n * n)
        sign = (-1) ** n
        if s_h2 != -2 * sign * alt:
            return (1, n)
        if s_hsq != 4 * sign * h_n * h_n + 2 * sign * alt:
            return (2, n)
        if s_h != 2 * sign * h_n:
            return (3, n)
        s3.append(s_h)
    for n in range(1, n_max - 1):
        if (1 + n) * s3[n] + (3 + 2 * n) * s3[n + 1] + (n + 2) * s3[n + 2] != 0:
            return (4, n)
    return None


def evaluate_sigma_identities(n_max: int) -> bool:
    """True iff all three identities and the recurrence hold for 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return sigma_identity_mismatch(n_max) is None


# ---------------------------------------------------------------------------
# proof-step checkpoints

Pair = tuple[Fraction, Fraction]
CheckData = tuple[int, str, list[Pair]]  # (stage exponent, "exact"|"mod", pairs)


@dataclass(frozen=True)
class CheckpointSpec:
    id: str
    anchor: str
    fn: Callable[[int], CheckData]


def _half(p: int) -> int:
    return (p - 1) // 2


def _core_factor(p: int) -> Fraction:
    """(-1/2)_{(p-1)/2}^2 (-1/2)_{(p+1)/2} 4^((p+1)/2) / (1)_{(p-1)/2}^3."""
    h = _half(p)
    return (
        pochhammer(Fraction(-1, 2), h) ** 2
        * pochhammer(Fraction(-1, 2), h + 1)
        * Fraction(4) ** (h + 1)
        / Fraction(factorial(h)) ** 3
    )


def _inner_shifted_sum(p: int) -> Fraction:
    """sum_{k=1}^{(p-1)/2} (1/2)_k^2 / (1-p/2)_k^2."""
    acc = Fraction(0)
    num = Fraction(1)
    den = Fraction(1)
    for k in range(1, _half(p) + 1):
        num *= Fraction(2 * k - 1, 2)
        den *= 1 - Fraction(p, 2) + (k - 1)
        acc += (num / den) ** 2
    return acc


def _cp_f_boundary_ratio(p: int) -> CheckData:
    n = (p + 1) // 2
    lhs = Fraction(6 * n * n - 5 * n + 1, (p + 1) ** 3)
    rhs = Fraction(p, 2) - Fraction(3 * p**3, 2)
    return (4, "mod", [(lhs, rhs)])


def _cp_f_boundary_morley_stage(p: int) -> CheckData:
    lhs = wz.eval_F((p + 1) // 2, 0)
    rhs = -(2 * p - 6 * p**3) * Fraction(comb(p - 1, _half(p)) ** 3, 4 ** (p - 1))
    return (3, "mod", [(lhs, rhs)])


def _cp_f_boundary_qform(p: int) -> CheckData:
    q = fermat_quotient_2(p)
    lhs = wz.eval_F((p + 1) // 2, 0)
    rhs = Fraction(
        -_eps(p) * (2 * p - 6 * p**3 + 8 * p * p * q + 12 * p**3 * q * q)
    )
    return (4, "mod", [(lhs, rhs)])


def _cp_poch_column_shift(p: int) -> CheckData:
    h = _half(p)
    base = (2 - p) * pochhammer(Fraction(-1, 2), h)
    num = Fraction(1)
    den = Fraction(1)
    pairs: list[Pair] = []
    for k in range(h):
        num *= Fraction(2 * k + 1, 2)
        den *= 1 - Fraction(p, 2) + k
        pairs.append((pochhammer(Fraction(-1, 2) - k, h), base * num / den))
    return (4, "exact", pairs)


def _cp_g_half_split(p: int) -> CheckData:
    _, b_sum, _ = wz.telescoping_decomposition_1(p)
    rhs = -p * (p - 2) ** 2 * _core_factor(p) * _inner_shifted_sum(p)
    return (4, "exact", [(b_sum, rhs)])


def _cp_g_half_prefactor_exact(p: int) -> CheckData:
    lhs = (p - 2) ** 2 * _core_factor(p)
    rhs = -2 * Fraction(comb(p - 1, _half(p)) ** 3, 4 ** (p - 1))
    return (4, "exact", [(lhs, rhs)])


def _cp_g_half_prefactor_qform(p: int) -> CheckData:
    q = fermat_quotient_2(p)
    lhs = (p - 2) ** 2 * _core_factor(p)
    rhs = Fraction(-2 * _eps(p) * (1 + 4 * p * q + 6 * p * p * q * q))
    return (3, "mod", [(lhs, rhs)])


def _weighted_half_sums(p: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """sum_{k<=(p-1)/2} ((1/2)_k/(1)_k)^2 * {1+pH_k+..., H_k, H_k^2, H_k^(2)}."""
    w = Fraction(1)
    h = Fraction(0)
    h2 = Fraction(0)
    expanded = Fraction(0)
    s_h = Fraction(0)
    s_hsq = Fraction(0)
    s_h2 = Fraction(0)
    for k in range(1, _half(p) + 1):
        w *= Fraction(2 * k - 1, 2 * k) ** 2
        h += Fraction(1, k)
        h2 += Fraction(1, k * k)
        expanded += w * (1 + p * h + Fraction(p * p, 2) * h * h + Fraction(p * p, 4) * h2)
        s_h += w * h
        s_hsq += w * h * h
        s_h2 += w * h2
    return expanded, s_h, s_hsq, s_h2


def _cp_g_half_core_expand(p: int) -> CheckData:
    lhs = _inner_shifted_sum(p)
    rhs = _weighted_half_sums(p)[0]
    return (3, "mod", [(lhs, rhs)])


def _cp_poch_descent(p: int) -> CheckData:
    shifted = Fraction(1)
    fact = Fraction(1)
    h = Fraction(0)
    h2 = Fraction(0)
    pairs: list[Pair] = []
    for k in range(1, _half(p) + 1):
        shifted *= 1 - Fraction(p, 2) + (k - 1)
        fact *= k
        h += Fraction(1, k)
        h2 += Fraction(1, k * k)
        rhs = fact * (1 - Fraction(p, 2) * h + Fraction(p * p, 8) * (h * h - h2))
        pairs.append((shifted, rhs))
    return (3, "mod", pairs)


def _cp_poch_square_split(p: int) -> CheckData:
    half_sq = Fraction(1)
    lo = Fraction(1)
    hi = Fraction(1)
    pairs: list[Pair] = []
    for k in range(1, _half(p) + 1):
        half_sq *= Fraction(2 * k - 1, 2) ** 2
        lo *= Fraction(1 - p, 2) + (k - 1)
        hi *= Fraction(1 + p, 2) + (k - 1)
        pairs.append((half_sq, lo * hi))
    return (2, "mod", pairs)


def _cp_sigma_weight_h(p: int) -> CheckData:
    _, s_h, _, _ = _weighted_half_sums(p)
    rhs = 2 * _eps(p) * harmonic(_half(p))
    return (2, "mod", [(s_h, rhs)])


def _cp_sigma_weight_h_sq(p: int) -> CheckData:
    _, _, s_hsq, _ = _weighted_half_sums(p)
    hh = harmonic(_half(p))
    rhs = 4 * _eps(p) * hh * hh + 2 * _eps(p) * falling_alternating_inv_square(_half(p))
    return (1, "mod", [(s_hsq, rhs)])


def _cp_sigma_weight_h2(p: int) -> CheckData:
    _, _, _, s_h2 = _weighted_half_sums(p)
    rhs = -2 * _eps(p) * falling_alternating_inv_square(_half(p))
    return (1, "mod", [(s_h2, rhs)])


def _cp_g_half_sum_qform(p: int) -> CheckData:
    q = fermat_quotient_2(p)
    eps = _eps(p)
    _, b_sum, _ = wz.telescoping_decomposition_1(p)
    rhs = Fraction(
        2 * p
        - 2 * eps * p
        - 8 * eps * p * p * q
        - 12 * eps * p**3 * q * q
        + 4 * eps * p**3 * _euler_pm3(p)
    )
    return (4, "mod", [(b_sum, rhs)])


def _cp_f_column_half_expand(p: int) -> CheckData:
    _, _, c_sum = wz.telescoping_decomposition_1(p)
    s1 = sum(Fraction(comb(2 * n, n), n) for n in range(1, _half(p) + 1))
    s2 = sum(Fraction(comb(2 * n, n), n * n) for n in range(1, _half(p) + 1))
    s3 = sum(
        Fraction(comb(2 * n, n), n) * harmonic(n) for n in range(1, _half(p) + 1)
    )
    rhs = (
        p
        - Fraction(3, 4) * p * p * s1
        - Fraction(p**3, 2) * s2
        + Fraction(3, 4) * p**3 * s3
    )
    return (4, "mod", [(c_sum, rhs)])


def _cp_f_column_half(p: int) -> CheckData:
    _, _, c_sum = wz.telescoping_decomposition_1(p)
    rhs = Fraction(p + 2 * _eps(p) * p**3 * _euler_pm3(p))
    return (4, "mod", [(c_sum, rhs)])


def _cp_f_column_full(p: int) -> CheckData:
    _, c_sum = wz.telescoping_decomposition_2(p)
    return (4, "mod", [(c_sum, Fraction(p))])


def _cp_poch_half_p_exact(p: int) -> CheckData:
    lhs = pochhammer(Fraction(-1, 2), p)
    rhs = -p * pochhammer(Fraction(1 + p), p - 1) / (2 ** (2 * p - 1) * (2 * p - 1))
    return (4, "exact", [(lhs, rhs)])


def _cp_poch_half_p_qform(p: int) -> CheckData:
    lhs = pochhammer(Fraction(-1, 2), p)
    rhs = Fraction(-p * factorial(p - 1), 2 ** (2 * p - 1) * (2 * p - 1))
    return (4, "mod", [(lhs, rhs)])


def _g_p_head_terms(p: int) -> Fraction:
    """sum_{k=0}^{(p-5)/2} of the rewritten G(p,k) terms (all but the last)."""
    m12p = pochhammer(Fraction(-1, 2), p) ** 3
    pref = Fraction(-2 * p + 1) / (p - Fraction(3, 2)) ** 2
    fixed = pref * m12p * Fraction(4) ** p / Fraction(factorial(p - 1)) ** 3
    acc = Fraction(0)
    num = Fraction(1)
    den = Fraction(1)
    for k in range((p - 3) // 2):
        if k > 0:
            num *= Fraction(3, 2) + (k - 1)
            den *= Fraction(5, 2) - p + (k - 1)
        acc += fixed * (num / den) ** 2
    return acc


def _cp_g_p_split(p: int) -> CheckData:
    b_sum, _ = wz.telescoping_decomposition_2(p)
    rhs = _g_p_head_terms(p) + wz.eval_G(p, (p - 3) // 2)
    return (4, "exact", [(b_sum, rhs)])


def _cp_g_p_head(p: int) -> CheckData:
    return (4, "mod", [(_g_p_head_terms(p), Fraction(-2 * p**3))])


def _cp_g_p_last(p: int) -> CheckData:
    return (4, "mod", [(wz.eval_G(p, (p - 3) // 2), Fraction(2 * p))])


def _cp_g_p_sum(p: int) -> CheckData:
    b_sum, _ = wz.telescoping_decomposition_2(p)
    return (4, "mod", [(b_sum, Fraction(2 * p - 2 * p**3))])


def _cp_odd_square_sum(p: int) -> CheckData:
    lhs = sum(Fraction(1, (2 * k + 1) ** 2) for k in range(_half(p)))
    rhs = harmonic(p - 1, 2) - Fraction(1, 4) * harmonic(_half(p), 2)
    return (4, "exact", [(lhs, rhs)])


CHECKPOINTS: tuple[CheckpointSpec, ...] = (
    CheckpointSpec(
        "f_boundary_ratio",
        "(6n^2-5n+1)/(p+1)^3 == p/2 - 3p^3/2 at n=(p+1)/2  (mod p^4)",
        _cp_f_boundary_ratio,
    ),
    CheckpointSpec(
        "f_boundary_morley_stage",
        "F((p+1)/2,0) == -(2p-6p^3) C(p-1,(p-1)/2)^3/4^(p-1)  (mod p^3)",
        _cp_f_boundary_morley_stage,
    ),
    CheckpointSpec(
        "f_boundary_qform",
        "F((p+1)/2,0) == (-1)^((p+1)/2)(2p-6p^3+8p^2 q_p(2)+12p^3 q_p(2)^2)  (mod p^4)",
        _cp_f_boundary_qform,
    ),
    CheckpointSpec(
        "poch_column_shift",
        "(-1/2-k)_{(p-1)/2} == (2-p)(-1/2)_{(p-1)/2}(1/2)_{k+1}/(1-p/2)_{k+1}, "
        "k=0..(p-3)/2  (exact)",
        _cp_poch_column_shift,
    ),
    CheckpointSpec(
        "g_half_split",
        "sum_k G((p+1)/2,k) == -p(p-2)^2 * core * sum_k (1/2)_{k+1}^2/(1-p/2)_{k+1}^2  (exact)",
        _cp_g_half_split,
    ),
    CheckpointSpec(
        "g_half_prefactor_exact",
        "(p-2)^2 * core == -2 C(p-1,(p-1)/2)^3 / 4^(p-1)  (exact)",
        _cp_g_half_prefactor_exact,
    ),
    CheckpointSpec(
        "g_half_prefactor_qform",
        "(p-2)^2 * core == 2(-1)^((p+1)/2)(1+4p q_p(2)+6p^2 q_p(2)^2)  (mod p^3)",
        _cp_g_half_prefactor_qform,
    ),
    CheckpointSpec(
        "g_half_core_expand",
        "sum_k (1/2)_k^2/(1-p/2)_k^2 == sum_k ((1/2)_k/(1)_k)^2 "
        "(1+pH_k+p^2 H_k^2/2+p^2 H_k^(2)/4)  (mod p^3)",
        _cp_g_half_core_expand,
    ),
    CheckpointSpec(
        "poch_descent",
        "(1-p/2)_k == (1)_k (1 - p H_k/2 + p^2 (H_k^2 - H_k^(2))/8), "
        "k=1..(p-1)/2  (mod p^3)",
        _cp_poch_descent,
    ),
    CheckpointSpec(
        "poch_square_split",
        "(1/2)_k^2 == ((1-p)/2)_k ((1+p)/2)_k, k=1..(p-1)/2  (mod p^2)",
        _cp_poch_square_split,
    ),
    CheckpointSpec(
        "sigma_weight_h",
        "sum_k ((1/2)_k/(1)_k)^2 H_k == 2(-1)^((p-1)/2) H_{(p-1)/2}  (mod p^2)",
        _cp_sigma_weight_h,
    ),
    CheckpointSpec(
        "sigma_weight_h_sq",
        "sum_k ((1/2)_k/(1)_k)^2 H_k^2 == 4(-1)^((p-1)/2) H_{(p-1)/2}^2 "
        "+ 2(-1)^((p-1)/2) sum_k (-1)^k/k^2  (mod p)",
        _cp_sigma_weight_h_sq,
    ),
    CheckpointSpec(
        "sigma_weight_h2",
        "sum_k ((1/2)_k/(1)_k)^2 H_k^(2) == -2(-1)^((p-1)/2) sum_k (-1)^k/k^2  (mod p)",
        _cp_sigma_weight_h2,
    ),
    CheckpointSpec(
        "g_half_sum_qform",
        "sum_k G((p+1)/2,k) == 2p - 2(-1)^((p-1)/2)p - 8(-1)^((p-1)/2)p^2 q_p(2) "
        "- 12(-1)^((p-1)/2)p^3 q_p(2)^2 + 4(-1)^((p-1)/2)p^3 E_{p-3}  (mod p^4)",
        _cp_g_half_sum_qform,
    ),
    CheckpointSpec(
        "f_column_half_expand",
        "sum_{n<=(p-1)/2} F(n,(p-1)/2) == p - (3/4)p^2 sum C(2n,n)/n "
        "- (p^3/2) sum C(2n,n)/n^2 + (3/4)p^3 sum C(2n,n)H_n/n  (mod p^4)",
        _cp_f_column_half_expand,
    ),
    CheckpointSpec(
        "f_column_half",
        "sum_{n<=(p-1)/2} F(n,(p-1)/2) == p + 2(-1)^((p-1)/2) p^3 E_{p-3}  (mod p^4)",
        _cp_f_column_half,
    ),
    CheckpointSpec(
        "f_column_full",
        "sum_{n<=p-1} F(n,(p-1)/2) == p  (mod p^4)",
        _cp_f_column_full,
    ),
    CheckpointSpec(
        "poch_half_p_exact",
        "(-1/2)_p == -p (1+p)_{p-1} / (2^(2p-1)(2p-1))  (exact)",
        _cp_poch_half_p_exact,
    ),
    CheckpointSpec(
        "poch_half_p_qform",
        "(-1/2)_p == -p (1)_{p-1} / (2^(2p-1)(2p-1))  (mod p^4)",
        _cp_poch_half_p_qform,
    ),
    CheckpointSpec(
        "g_p_split",
        "sum_k G(p,k) == rewritten head sum + G(p,(p-3)/2)  (exact)",
        _cp_g_p_split,
    ),
    CheckpointSpec(
        "g_p_head",
        "head part of sum_k G(p,k) == -2p^3  (mod p^4)",
        _cp_g_p_head,
    ),
    CheckpointSpec(
        "g_p_last",
        "G(p,(p-3)/2) == 2p  (mod p^4)",
        _cp_g_p_last,
    ),
    CheckpointSpec(
        "g_p_sum",
        "sum_{k<=(p-3)/2} G(p,k) == 2p - 2p^3  (mod p^4)",
        _cp_g_p_sum,
    ),
    CheckpointSpec(
        "odd_square_sum",
        "sum_{k<(p-1)/2} 1/(2k+1)^2 == H^(2)_{p-1} - H^(2)_{(p-1)/2}/4  (exact)",
        _cp_odd_square_sum,
    ),
)

CHECKPOINT_IDS: tuple[str, ...] = tuple(cp.id for cp in CHECKPOINTS)


def proof_step_checks(
    p: int, ids: Sequence[str] | None = None, timing: bool = True
) -> list[Verdict]:
    """Run the intermediate checkpoint suite at one prime.

    Each checkpoint compares an exact-rational left side against the
    closed-form right side, either as exact rationals or at the stated stage
    modulus.  Per-k families hold only if every member holds; the reported
    residues belong to the first failing member (or the last one on success).
    """
    if not is_prime(p) or p <= 3:
        raise PredicateViolation(f"proof-step checks require a prime p > 3, got {p}")
    wanted = set(ids) if ids is not None else None
    verdicts = []
    for cp in CHECKPOINTS:
        if wanted is not None and cp.id not in wanted:
            continue
        t0 = time.perf_counter_ns()
        stage, kind, pairs = cp.fn(p)
        shown: Pair = pairs[-1]
        holds = True
        for lhs, rhs in pairs:
            ok = lhs == rhs if kind == "exact" else (
                reduce_mod(lhs, p, stage) == reduce_mod(rhs, p, stage)
            )
            if not ok:
                holds = False
                shown = (lhs, rhs)
                break
        micros = (time.perf_counter_ns() - t0) // 1000
        verdicts.append(
            Verdict(
                claim_id=cp.id,
                prime=p,
                exponent=stage,
                holds=holds,
                lhs=(reduce_mod(shown[0], p, stage).value,),
                rhs=(reduce_mod(shown[1], p, stage).value,),
                micros=micros if timing else 0,
                mode="exact",
            )
        )
    return verdicts


# ---------------------------------------------------------------------------
# scanning and reports

@dataclass
class Report:
    run: dict
    verdicts: list[Verdict]
    skipped: list[dict] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def claim_summaries(self) -> list[dict]:
        order: dict[str, int] = {}
        for v in self.verdicts:
            order.setdefault(v.claim_id, len(order))
        rows = []
        for cid in sorted(order, key=order.get):
            vs = [v for v in self.verdicts if v.claim_id == cid]
            anchor = REGISTRY[cid].anchor if cid in REGISTRY else _checkpoint_anchor(cid)
            rows.append(
                {
                    "id": cid,
                    "anchor": anchor,
                    "exponent": vs[0].exponent,
                    "primes_checked": len(vs),
                    "passed": sum(v.holds for v in vs),
                    "failed": sum(not v.holds for v in vs),
                }
            )
        return rows

    def to_json(self) -> str:
        verdict_rows = []
        for v in self.verdicts:
            row = {
                "claim": v.claim_id,
                "prime": v.prime,
                "e": v.exponent,
                "lhs": v.value_str("lhs"),
                "rhs": v.value_str("rhs"),
                "holds": v.holds,
                "micros": v.micros,
            }
            if v.mode == "cross":
                row["paths_agree"] = v.paths_agree
                row["micros_exact"] = v.micros_exact
                row["micros_mod"] = v.micros_mod
            verdict_rows.append(row)
        payload = {
            "run": self.run,
            "claims": self.claim_summaries(),
            "verdicts": verdict_rows,
            "skipped": self.skipped,
            "summary": {
                "verdicts": len(self.verdicts),
                "passed": sum(v.holds for v in self.verdicts),
                "failed": sum(not v.holds for v in self.verdicts),
                "all_pass": self.all_pass,
            },
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["claim", "prime", "e", "lhs", "rhs", "holds", "micros"])
        for v in self.verdicts:
            writer.writerow(
                [
                    v.claim_id,
                    v.prime,
                    v.exponent,
                    v.value_str("lhs"),
                    v.value_str("rhs"),
                    str(v.holds).lower(),
                    v.micros,
                ]
            )
        return buf.getvalue()

    def human(self) -> str:
        lines = []
        header = f"{'claim':<24}{'e':>3}{'primes':>8}{'pass':>6}{'fail':>6}  anchor"
        lines.append(header)
        lines.append("-" * len(header))
        for row in self.claim_summaries():
            lines.append(
                f"{row['id']:<24}{row['exponent']:>3}{row['primes_checked']:>8}"
                f"{row['passed']:>6}{row['failed']:>6}  {row['anchor']}"
            )
        failures = [v for v in self.verdicts if not v.holds]
        if failures:
            lines.append("")
            lines.append("failures:")
            for v in failures:
                lines.append(
                    f"  {v.claim_id} at p={v.prime} (mod p^{v.exponent}): "
                    f"lhs={v.value_str('lhs')} rhs={v.value_str('rhs')}"
                )
        if self.skipped:
            lines.append("")
            lines.append(f"skipped {len(self.skipped)} (claim, prime) pairs:")
            for s in self.skipped:
                lines.append(f"  {s['claim']} at p={s['prime']}: {s['reason']}")
        lines.append("")
        total = len(self.verdicts)
        passed = sum(v.holds for v in self.verdicts)
        lines.append(f"{passed}/{total} verdicts hold")
        return "\n".join(lines) + "\n"


def _checkpoint_anchor(cid: str) -> str:
    for cp in CHECKPOINTS:
        if cp.id == cid:
            return cp.anchor
    return ""


def _scan_task(args: tuple[str, int, int | None, str, bool]) -> Verdict:
    claim_id, p, e_override, mode, timing = args
    return evaluate_claim(claim_id, p, e_override=e_override, mode=mode, timing=timing)


def scan(
    claim_ids: Sequence[str],
    primes: Iterable[int],
    e_override: int | None = None,
    mode: str = "mod",
    workers: int = 1,
    timing: bool = True,
) -> Report:
    """Evaluate a set of claims over a set of primes.

    Unknown claim ids are rejected before any work.  Primes failing a
    claim's predicate are skipped with a notice.  Verdict order is
    deterministic -- registry order, then prime -- regardless of the worker
    schedule, so identical configurations produce identical reports.
    """
    for cid in claim_ids:
        if cid not in REGISTRY:
            raise ValueError(f"unknown claim id: {cid!r}")
    prime_list = sorted(set(primes))

    tasks: list[tuple[str, int, int | None, str, bool]] = []
    skipped: list[dict] = []
    for cid in claim_ids:
        claim = REGISTRY[cid]
        for p in prime_list:
            if not is_prime(p):
                continue
            if p < claim.min_p:
                skipped.append(
                    {"claim": cid, "prime": p, "reason": f"predicate requires p >= {claim.min_p}"}
                )
                continue
            tasks.append((cid, p, e_override, mode, timing))

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_scan_task, tasks, chunksize=8))
    else:
        verdicts = [_scan_task(t) for t in tasks]

    claim_order = {cid: i for i, cid in enumerate(CLAIM_IDS)}
    verdicts.sort(key=lambda v: (claim_order[v.claim_id], v.prime))

    run = {
        "tool": "wzlab",
        "version": VERSION,
        "command": "scan",
        "claims": list(claim_ids),
        "prime_lo": prime_list[0] if prime_list else None,
        "prime_hi": prime_list[-1] if prime_list else None,
        "prime_count": len(prime_list),
        "mode": mode,
        "e_override": e_override,
        "timing": timing,
    }
    return Report(run=run, verdicts=verdicts, skipped=skipped)

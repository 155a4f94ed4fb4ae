"""The truncated sums under test, on two independent evaluation paths.

Each ``SeriesSpec`` carries a pointwise term formula (the reference used by
oracle tests), an exact-rational incremental stream driven by the term ratio
term(k+1)/term(k), and a modular stream that pushes the same recursion
through Z/p^e with ``ValuedResidue``.  ``partial_sum_mod`` must always equal
``reduce_mod(partial_sum_exact(...))``; that cross-path agreement is the
core self-check of the whole package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterator

from .exact import (
    NonPIntegral,
    Residue,
    ValuedResidue,
    cached_inverse_table,
    padic_valuation,
)
from .sequences import pochhammer

Ratio = Callable[[int], tuple[int, int]]


@dataclass(frozen=True)
class SeriesSpec:
    """A named series with exact and modular term streams.

    ``term`` is the direct pointwise formula (O(k) per call, used as an
    independent oracle); the streams are O(1) per term.  Terms must be
    p-integral over every summation range a claim uses; the modular stream
    enforces this and raises NonPIntegral on a negative valuation.
    """

    name: str
    start: int
    term: Callable[[int], Fraction]
    ratio: Ratio | None = None
    exact_stream: Callable[[int], Iterator[Fraction]] | None = None
    mod_stream: Callable[[int, int, int], Iterator[ValuedResidue]] | None = None
    mod_sum: Callable[[int, int, int], int] | None = None

    def exact_terms(self, upper: int) -> Iterator[Fraction]:
        if upper < self.start:
            return
        if self.exact_stream is not None:
            yield from self.exact_stream(upper)
            return
        t = self.term(self.start)
        yield t
        for k in range(self.start, upper):
            num, den = self.ratio(k)
            t = t * Fraction(num, den)
            yield t

    def mod_terms(self, upper: int, p: int, e: int) -> Iterator[ValuedResidue]:
        if upper < self.start:
            return
        if self.mod_stream is not None:
            yield from self.mod_stream(upper, p, e)
            return
        t = ValuedResidue.from_rat(self.term(self.start), p, e)
        yield t
        for k in range(self.start, upper):
            num, den = self.ratio(k)
            t = t.mul_int(num).div_int(den)
            yield t


def partial_sum_exact(spec: SeriesSpec, upper: int) -> Fraction:
    """Exact sum of term(start..upper)."""
    acc = Fraction(0)
    for t in spec.exact_terms(upper):
        acc += t
    return acc


_ratio_cache: dict[str, list[tuple[int, int]]] = {}


def _ratio_pairs(spec: SeriesSpec, upper: int) -> list[tuple[int, int]]:
    """term(k+1)/term(k) for k = start..upper-1, memoized per series."""
    pairs = _ratio_cache.setdefault(spec.name, [])
    k = spec.start + len(pairs)
    while k < upper:
        pairs.append(spec.ratio(k))
        k += 1
    return pairs[: upper - spec.start]


# Valuation headroom for the cleared-denominator accumulator.  Ratio
# denominators contribute at most v_p = 1 each and at most a couple of times
# per summation range, so 6 is generous; the slow ValuedResidue stream is a
# fallback should a series ever exceed it.
_HEADROOM = 6


def _cleared_ratio_sum(spec: SeriesSpec, upper: int, p: int, e: int) -> int | None:
    """Residue of the partial sum via common-denominator accumulation.

    Maintains sum = S / (D * p^w) and term = N / (D * p^w) with D a unit
    product, so the whole summation costs O(upper) multiplications and a
    single modular inverse at the end.  Per-term p-integrality is still
    enforced exactly: v_p(term) = v_p(N) - w, tracked from the actual ratio
    integers.  Returns None when the headroom is exhausted (caller falls
    back to the ValuedResidue stream).
    """
    term0 = spec.term(spec.start)
    if term0.denominator % p == 0:
        raise NonPIntegral(f"term {spec.start} of {spec.name} is not p-integral at {p}")
    big_m = p ** (e + _HEADROOM)
    ppow = [p**i for i in range(_HEADROOM + 1)]

    num0 = term0.numerator
    v_num = 0
    while num0 and num0 % p == 0:
        num0 //= p
        v_num += 1
    n_acc = term0.numerator % big_m
    s_acc = n_acc
    d_acc = term0.denominator % big_m
    w = 0

    for num, den in _ratio_pairs(spec, upper):
        if num % p == 0:
            if num == 0:
                raise ZeroDivisionError(f"zero term ratio in {spec.name}")
            x = num
            while x % p == 0:
                x //= p
                v_num += 1
        if den % p:
            n_acc = n_acc * num % big_m
            s_acc = (s_acc * den + n_acc) % big_m
            d_acc = d_acc * den % big_m
        else:
            dv = 0
            while den % p == 0:
                den //= p
                dv += 1
            w += dv
            if w > _HEADROOM:
                return None
            if v_num < w:
                raise NonPIntegral(
                    f"term of {spec.name} has negative valuation at p = {p}"
                )
            n_acc = n_acc * num % big_m
            s_acc = (s_acc * den * ppow[dv] + n_acc) % big_m
            d_acc = d_acc * den % big_m

    r = s_acc * pow(d_acc, -1, big_m) % big_m
    if r % ppow[w]:
        raise NonPIntegral(f"sum of {spec.name} is not p-integral at p = {p}")
    return r // ppow[w] % p**e


def partial_sum_mod(spec: SeriesSpec, upper: int, p: int, e: int) -> Residue:
    """Sum of term(start..upper) in Z/p^e, O(upper) modular operations.

    Equals reduce_mod(partial_sum_exact(spec, upper), p, e) whenever every
    term is p-integral; otherwise raises NonPIntegral at the offending term.
    Ratio-driven series run through the cleared-denominator accumulator;
    everything else consumes the ValuedResidue stream directly.
    """
    if upper < spec.start:
        return Residue(p, e, 0)
    if spec.mod_sum is not None:
        return Residue(p, e, spec.mod_sum(upper, p, e))
    if spec.ratio is not None and spec.exact_stream is None:
        value = _cleared_ratio_sum(spec, upper, p, e)
        if value is not None:
            return Residue(p, e, value)
    pe = p**e
    acc = 0
    for t in spec.mod_terms(upper, p, e):
        acc = (acc + t.to_residue().value) % pe
    return Residue(p, e, acc)


# ---------------------------------------------------------------------------
# the main series: sum_k (3k-1) (-1/2)_k^2 (1/2)_k 4^k / k!^3

def main_term(k: int) -> Fraction:
    """(3k-1) (-1/2)_k^2 (1/2)_k 4^k / k!^3, exactly."""
    return (
        (3 * k - 1)
        * pochhammer(Fraction(-1, 2), k) ** 2
        * pochhammer(Fraction(1, 2), k)
        * Fraction(4) ** k
        / Fraction(factorial(k)) ** 3
    )


def _main_ratio(k: int) -> tuple[int, int]:
    return (
        (3 * k + 2) * (2 * k - 1) ** 2 * (2 * k + 1),
        2 * (3 * k - 1) * (k + 1) ** 3,
    )


MAIN = SeriesSpec(name="main", start=0, term=main_term, ratio=_main_ratio)


def _van_hamme_term(k: int) -> Fraction:
    return (
        (-1) ** k
        * (4 * k + 1)
        * pochhammer(Fraction(1, 2), k) ** 3
        / Fraction(factorial(k)) ** 3
    )


def _van_hamme_ratio(k: int) -> tuple[int, int]:
    return (-(4 * k + 5) * (2 * k + 1) ** 3, 8 * (4 * k + 1) * (k + 1) ** 3)


VAN_HAMME = SeriesSpec(name="van_hamme", start=0, term=_van_hamme_term, ratio=_van_hamme_ratio)


def _sun_term(k: int) -> Fraction:
    return (
        (3 * k + 1)
        * pochhammer(Fraction(1, 2), k) ** 3
        * Fraction(4) ** k
        / Fraction(factorial(k)) ** 3
    )


def _sun_ratio(k: int) -> tuple[int, int]:
    return ((3 * k + 4) * (2 * k + 1) ** 3, 2 * (3 * k + 1) * (k + 1) ** 3)


SUN = SeriesSpec(name="sun", start=0, term=_sun_term, ratio=_sun_ratio)


def _central_sq_term(k: int) -> Fraction:
    return Fraction(comb(2 * k, k) ** 2, 16**k)


def _central_sq_ratio(k: int) -> tuple[int, int]:
    return ((2 * k + 1) ** 2, 4 * (k + 1) ** 2)


CENTRAL_SQ = SeriesSpec(
    name="central_sq", start=0, term=_central_sq_term, ratio=_central_sq_ratio
)


def _binom_over_k_term(k: int) -> Fraction:
    return Fraction(comb(2 * k, k), k)


def _binom_over_k_ratio(k: int) -> tuple[int, int]:
    return (2 * (2 * k + 1) * k, (k + 1) ** 2)


BINOM_OVER_K = SeriesSpec(
    name="binom_over_k", start=1, term=_binom_over_k_term, ratio=_binom_over_k_ratio
)


def _binom_over_k2_term(k: int) -> Fraction:
    return Fraction(comb(2 * k, k), k * k)


def _binom_over_k2_ratio(k: int) -> tuple[int, int]:
    return (2 * (2 * k + 1) * k * k, (k + 1) ** 3)


BINOM_OVER_K2 = SeriesSpec(
    name="binom_over_k2", start=1, term=_binom_over_k2_term, ratio=_binom_over_k2_ratio
)


def _binom_harmonic_term(k: int) -> Fraction:
    h = sum(Fraction(1, j) for j in range(1, k + 1))
    return Fraction(comb(2 * k, k), k) * h


def _binom_harmonic_exact(upper: int) -> Iterator[Fraction]:
    c = Fraction(2)  # C(2k,k)/k at k = 1
    h = Fraction(1)
    yield c * h
    for k in range(1, upper):
        c *= Fraction(2 * (2 * k + 1) * k, (k + 1) ** 2)
        h += Fraction(1, k + 1)
        yield c * h


def _binom_harmonic_mod(upper: int, p: int, e: int) -> Iterator[ValuedResidue]:
    # C(2k,k)/k runs through ValuedResidue; the p-integral factor H_k is
    # accumulated as a plain residue and multiplied in per term.
    pe = p**e
    inv = cached_inverse_table(p, e)
    c = ValuedResidue.from_int(2, p, e)
    h = 1 % pe
    yield c.mul_int(h)
    for k in range(1, upper):
        c = c.mul_int(2 * (2 * k + 1) * k).div_int((k + 1) ** 2)
        h = (h + inv[k + 1]) % pe
        yield c.mul_int(h)


def _binom_harmonic_mod_sum(upper: int, p: int, e: int) -> int:
    # Denominators (k+1)^2 stay coprime to p for upper <= p-1, so the sum
    # accumulates over a common unit denominator with one final inverse.
    if upper > p - 1:
        raise NonPIntegral("binom_harmonic fast sum requires upper <= p-1")
    pe = p**e
    inv = cached_inverse_table(p, e)
    n_acc = 2
    d_acc = 1
    h = 1 % pe
    s_acc = n_acc * h % pe
    for k in range(1, upper):
        h = (h + inv[k + 1]) % pe
        n_acc = n_acc * (2 * (2 * k + 1) * k) % pe
        s_acc = (s_acc * ((k + 1) ** 2) + n_acc * h) % pe
        d_acc = d_acc * ((k + 1) ** 2) % pe
    return s_acc * pow(d_acc, -1, pe) % pe


BINOM_HARMONIC = SeriesSpec(
    name="binom_harmonic",
    start=1,
    term=_binom_harmonic_term,
    exact_stream=_binom_harmonic_exact,
    mod_stream=_binom_harmonic_mod,
    mod_sum=_binom_harmonic_mod_sum,
)


REGISTRY: dict[str, SeriesSpec] = {
    s.name: s
    for s in (MAIN, VAN_HAMME, SUN, CENTRAL_SQ, BINOM_OVER_K, BINOM_OVER_K2, BINOM_HARMONIC)
}


def natural_limits(name: str, p: int) -> list[int]:
    """The upper summation limits at which claims consume each series."""
    half = (p - 1) // 2
    return {
        "main": [(p + 1) // 2, p - 1],
        "van_hamme": [half],
        "sun": [half],
        "central_sq": [half],
        "binom_over_k": [half, p - 1],
        "binom_over_k2": [p - 1],
        "binom_harmonic": [p - 1],
    }[name]


def tail_vanishing_check(p: int) -> bool:
    """True iff v_p(main term) >= 3 for all (p+3)/2 <= k <= p-1.

    This is what forces the two main partial sums (to (p+1)/2 and to p-1) to
    agree mod p^3 while leaving them free to differ mod p^4.
    """
    if p <= 3:
        raise ValueError("tail_vanishing_check requires p > 3")
    terms = list(MAIN.exact_terms(p - 1))
    return all(
        padic_valuation(terms[k], p) >= 3 for k in range((p + 3) // 2, p)
    )

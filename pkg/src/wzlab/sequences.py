"""Special sequences behind the congruence right-hand sides.

Euler numbers E_n (coefficients of 2e^x/(e^(2x)+1)), Bernoulli numbers and
polynomials reduced mod p, generalized harmonic numbers H_n^(m), rising
factorials (Pochhammer symbols) and central binomial coefficients.  Exact
tables are computed by the defining recurrences; the mod-p variants run the
same recurrences inside Z/p so prime scans never touch thousand-digit
integers.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exact import (
    NonPIntegral,
    Rat,
    Residue,
    cached_inverse_table,
    inverse_table,
    is_prime,
)

_table_lock = threading.Lock()
_euler_cache: list[int] = [1]  # E_0..E_N, grown on demand


def euler_numbers(n_max: int) -> list[int]:
    """Exact Euler numbers E_0..E_n_max.

    Built from sum_{j=0}^{n} C(2n, 2j) E_{2j} = 0 with E_0 = 1; odd-index
    entries are zero.  The table is memoized and grown monotonically.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    with _table_lock:
        top = len(_euler_cache) - 1
        while top < n_max:
            top += 1
            if top % 2 == 1:
                _euler_cache.append(0)
            else:
                n = top // 2
                _euler_cache.append(
                    -sum(comb(2 * n, 2 * j) * _euler_cache[2 * j] for j in range(n))
                )
        return _euler_cache[: n_max + 1]


@lru_cache(maxsize=None)
def _factorials_mod(p: int) -> tuple[list[int], list[int]]:
    """(k! mod p, (k!)^-1 mod p) for 0 <= k <= p-1."""
    fact = [1] * p
    for k in range(1, p):
        fact[k] = fact[k - 1] * k % p
    inv_fact = [1] * p
    inv_fact[p - 1] = pow(fact[p - 1], -1, p)
    for k in range(p - 1, 0, -1):
        inv_fact[k - 1] = inv_fact[k] * k % p
    return fact, inv_fact


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p for 0 <= k <= n <= p-1 (no Lucas step needed)."""
    if k < 0 or k > n:
        return 0
    fact, inv_fact = _factorials_mod(p)
    return fact[n] * inv_fact[k] % p * inv_fact[n - k] % p


@lru_cache(maxsize=None)
def _euler_mod_table(p: int) -> tuple[int, ...]:
    """E_0, E_2, ..., E_{p-3} mod p via the defining recurrence in Z/p."""
    fact, inv_fact = _factorials_mod(p)
    even = [1] + [0] * ((p - 3) // 2)
    for n in range(1, (p - 3) // 2 + 1):
        f2n = fact[2 * n]
        acc = 0
        for j in range(n):
            c = f2n * inv_fact[2 * j] % p * inv_fact[2 * n - 2 * j] % p
            acc = (acc + c * even[j]) % p
        even[n] = -acc % p
    return tuple(even)


def euler_mod(p: int, idx: int) -> Residue:
    """E_idx mod p for even idx <= p-3, computed entirely inside Z/p."""
    if not is_prime(p) or p <= 3:
        raise ValueError(f"euler_mod needs a prime p > 3, got {p}")
    if idx % 2 == 1 or not 0 <= idx <= p - 3:
        raise ValueError(f"index must be even in [0, p-3], got {idx}")
    return Residue(p, 1, _euler_mod_table(p)[idx // 2])


@lru_cache(maxsize=None)
def bernoulli_mod_table(p: int) -> tuple[int, ...]:
    """B_0..B_{p-2} mod p (first convention, B_1 = -1/2).

    Every entry is p-integral by von Staudt-Clausen because (p-1) divides no
    index in 1..p-2; index p-1 sits on the pole and is deliberately not
    provided.
    """
    if not is_prime(p) or p <= 3:
        raise ValueError(f"bernoulli_mod_table needs a prime p > 3, got {p}")
    fact, inv_fact = _factorials_mod(p)
    inv = inverse_table(p - 1, p, 1)
    b = [0] * (p - 1)
    b[0] = 1
    for m in range(1, p - 2 + 1):
        # sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  solve for B_m
        fm1 = fact[m + 1]
        acc = 0
        for j in range(m):
            c = fm1 * inv_fact[j] % p * inv_fact[m + 1 - j] % p
            acc = (acc + c * b[j]) % p
        b[m] = -acc * inv[m + 1] % p
    return tuple(b)


def bernoulli_poly_mod(p: int, n: int, x: Rat) -> Residue:
    """B_n(x) = sum_k C(n,k) B_k x^(n-k) reduced mod p, for n <= p-2."""
    if not 0 <= n <= p - 2:
        raise ValueError(f"index must lie in [0, p-2], got {n} for p = {p}")
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonPIntegral(f"evaluation point {x} is not p-integral at p = {p}")
    table = bernoulli_mod_table(p)
    xr = x.numerator * pow(x.denominator, -1, p) % p
    acc = 0
    xpow = 1  # x^(n-k), built from the k = n term downwards
    for k in range(n, -1, -1):
        acc = (acc + binom_mod(n, k, p) * table[k] % p * xpow) % p
        xpow = xpow * xr % p
    return Residue(p, 1, acc)


def harmonic(n: int, m: int = 1) -> Fraction:
    """H_n^(m) = sum_{k=1}^{n} 1/k^m, exactly; H_0^(m) = 0."""
    if n < 0 or m < 1:
        raise ValueError("harmonic requires n >= 0 and m >= 1")
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += Fraction(1, k**m)
    return acc


def harmonic_mod(n: int, m: int, p: int, e: int) -> Residue:
    """H_n^(m) mod p^e for n < p, via a shared batched inverse table."""
    if n >= p:
        raise ValueError("harmonic_mod requires n < p")
    pe = p**e
    inv = cached_inverse_table(p, e)
    if m == 1:
        acc = sum(inv[1 : n + 1]) % pe
    elif m == 2:
        acc = sum(x * x % pe for x in inv[1 : n + 1]) % pe
    else:
        acc = sum(pow(x, m, pe) for x in inv[1 : n + 1]) % pe
    return Residue(p, e, acc)


def pochhammer(x: Rat, k: int) -> Fraction:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1); empty product is 1."""
    if k < 0:
        raise ValueError("pochhammer requires k >= 0")
    x = Fraction(x)
    acc = Fraction(1)
    for j in range(k):
        acc *= x + j
    return acc


def central_binomial(k: int) -> int:
    """C(2k, k).  Satisfies (1/2)_k / (1)_k = C(2k, k) / 4^k."""
    if k < 0:
        raise ValueError("central_binomial requires k >= 0")
    return comb(2 * k, k)


def falling_alternating_inv_square(n: int) -> Fraction:
    """sum_{k=1}^{n} (-1)^k / k^2, exactly."""
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += Fraction((-1) ** k, k * k)
    return acc


def alternating_inv_square_mod(n: int, p: int, e: int) -> Residue:
    """sum_{k=1}^{n} (-1)^k / k^2 mod p^e for n < p."""
    if n >= p:
        raise ValueError("alternating_inv_square_mod requires n < p")
    pe = p**e
    inv = cached_inverse_table(p, e)
    acc = 0
    for k in range(1, n + 1):
        term = inv[k] * inv[k] % pe
        acc = (acc - term if k % 2 else acc + term) % pe
    return Residue(p, e, acc)

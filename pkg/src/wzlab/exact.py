"""Exact arithmetic kernel: rationals, residue rings Z/p^e, p-adic valuations.

Every congruence verdict in this package is ultimately a comparison of two
``Residue`` values.  Rationals are plain ``fractions.Fraction`` (gcd-reduced,
positive denominator, so equality is structural); ``Rat`` is an alias for it.
``ValuedResidue`` is the fast-path representation p^v * u used to push
hypergeometric term recursions through Z/p^e without ever building the exact
(and enormous) rational term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rat = Fraction

RatLike = Union[Fraction, int]


class NonPIntegral(ArithmeticError):
    """A rational with p in its denominator reached a mod-p^e reduction."""


class NotInvertible(ArithmeticError):
    """Modular inverse requested for a residue divisible by p."""


# ---------------------------------------------------------------------------
# primes

@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    """Simple sieve of Eratosthenes, inclusive."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def primes_in(lo: int, hi: int) -> list[int]:
    return [p for p in primes_up_to(hi) if p >= lo]


def odd_primes_in(lo: int, hi: int) -> list[int]:
    return [p for p in primes_in(lo, hi) if p > 2]


# ---------------------------------------------------------------------------
# modular primitives

def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m (m a prime power p^e), with 0 < result < m."""
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise NotInvertible(f"{a} is not invertible modulo {m}") from exc


def inverse_table(n: int, p: int, e: int) -> list[int]:
    """Inverses of 1..n modulo p^e in O(n), for n < p.

    Uses inv(k) = -(m // k) * inv(m mod k); for k < p the remainder m mod k
    is nonzero and coprime to p, so the recursion stays inside the units.
    """
    if n >= p:
        raise ValueError("inverse_table requires n < p")
    m = p**e
    inv = [0] * (n + 1)
    if n >= 1:
        inv[1] = 1
    for k in range(2, n + 1):
        inv[k] = (-(m // k) * inv[m % k]) % m
    return inv


@lru_cache(maxsize=128)
def cached_inverse_table(p: int, e: int) -> tuple[int, ...]:
    """Immutable inverse table of 1..p-1 mod p^e, shared across claims."""
    return tuple(inverse_table(p - 1, p, e))


def padic_valuation(x: RatLike, p: int) -> int | float:
    """v_p(x); math.inf for x = 0.  Negative when p divides the denominator."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num = x.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def legendre_symbol(a: int, p: int) -> int:
    """Quadratic character of a mod p via Euler's criterion, in {-1, 0, +1}."""
    if p <= 2 or not is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def fermat_quotient_2(p: int) -> int:
    """q_p(2) = (2^(p-1) - 1) / p, an integer by Fermat's little theorem."""
    return (pow(2, p - 1) - 1) // p


def fermat_quotient_2_mod(p: int, e: int) -> int:
    """q_p(2) mod p^e without forming the full power of two."""
    return (pow(2, p - 1, p ** (e + 1)) - 1) // p % p**e


# ---------------------------------------------------------------------------
# residues

@dataclass(frozen=True, slots=True)
class Residue:
    """An element of Z/p^e for an odd prime p.

    Arithmetic between residues with different (p, e) is a hard error: the
    claims mix moduli p^3 and p^4 and silent coercion would be a correctness
    hazard, not a convenience.
    """

    p: int
    e: int
    value: int

    def __post_init__(self) -> None:
        if self.e < 1:
            raise ValueError(f"exponent must be >= 1, got {self.e}")
        if self.p <= 2 or not is_prime(self.p):
            raise ValueError(f"modulus base must be an odd prime, got {self.p}")
        if not 0 <= self.value < self.p**self.e:
            raise ValueError(f"value {self.value} out of range for {self.p}^{self.e}")

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @classmethod
    def of(cls, x: int, p: int, e: int) -> "Residue":
        return cls(p, e, x % p**e)

    def _check(self, other: "Residue") -> None:
        if self.p != other.p or self.e != other.e:
            raise ValueError(
                f"mixed moduli: {self.p}^{self.e} vs {other.p}^{other.e}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.p, self.e, (self.value + other.value) % self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.p, self.e, (self.value - other.value) % self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.p, self.e, self.value * other.value % self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(self.p, self.e, -self.value % self.modulus)

    def inverse(self) -> "Residue":
        return Residue(self.p, self.e, mod_inverse(self.value, self.modulus))

    def lift_to(self, e: int) -> "Residue":
        """Reinterpret modulo p^e for e <= self.e (information is only dropped)."""
        if e > self.e:
            raise ValueError("cannot lift a residue to a finer modulus")
        return Residue(self.p, e, self.value % self.p**e)

    def __str__(self) -> str:
        return f"{self.value} (mod {self.p}^{self.e})"


def reduce_mod(x: RatLike, p: int, e: int) -> Residue:
    """Image of a p-integral rational in Z/p^e.

    Raises NonPIntegral when p divides the denominator: the congruence being
    evaluated is then ill-posed at p and must not silently produce a value.
    """
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonPIntegral(f"{x} has p = {p} in its denominator")
    m = p**e
    return Residue(p, e, x.numerator * pow(x.denominator, -1, m) % m)


# ---------------------------------------------------------------------------
# valuation-tracking residues (fast modular path)

def _split_unit(n: int, p: int) -> tuple[int, int]:
    """(v_p(n), n / p^v) for n != 0."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


@dataclass(frozen=True, slots=True)
class ValuedResidue:
    """p^v * u with u a unit known modulo p^e; v = None encodes exact zero.

    Multiplication and division track the valuation exactly (no capping):
    term recursions divide by quantities like 3k-1 that may be divisible by
    p, so a valuation clamped at e would corrupt later terms whose true
    valuation drops back below e.  The cap "anything >= e is zero" is applied
    only on observation (``to_residue``) and on addition, where residues are
    all that is known.
    """

    p: int
    e: int
    v: int | None
    u: int

    @classmethod
    def zero(cls, p: int, e: int) -> "ValuedResidue":
        return cls(p, e, None, 0)

    @classmethod
    def from_int(cls, n: int, p: int, e: int) -> "ValuedResidue":
        if n == 0:
            return cls.zero(p, e)
        v, unit = _split_unit(n, p)
        return cls(p, e, v, unit % p**e)

    @classmethod
    def from_rat(cls, x: RatLike, p: int, e: int) -> "ValuedResidue":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, e)
        m = p**e
        vn, un = _split_unit(x.numerator, p)
        vd, ud = _split_unit(x.denominator, p)
        return cls(p, e, vn - vd, un * pow(ud, -1, m) % m)

    @property
    def is_zero(self) -> bool:
        return self.v is None

    def mul_int(self, n: int) -> "ValuedResidue":
        if self.is_zero or n == 0:
            return ValuedResidue.zero(self.p, self.e)
        v, unit = _split_unit(n, self.p)
        return ValuedResidue(
            self.p, self.e, self.v + v, self.u * unit % self.p**self.e
        )

    def div_int(self, n: int) -> "ValuedResidue":
        if n == 0:
            raise ZeroDivisionError("division of ValuedResidue by zero")
        if self.is_zero:
            return self
        v, unit = _split_unit(n, self.p)
        m = self.p**self.e
        return ValuedResidue(self.p, self.e, self.v - v, self.u * pow(unit, -1, m) % m)

    def mul(self, other: "ValuedResidue") -> "ValuedResidue":
        if self.p != other.p or self.e != other.e:
            raise ValueError("mixed moduli in ValuedResidue multiplication")
        if self.is_zero or other.is_zero:
            return ValuedResidue.zero(self.p, self.e)
        return ValuedResidue(
            self.p, self.e, self.v + other.v, self.u * other.u % self.p**self.e
        )

    def add(self, other: "ValuedResidue") -> "ValuedResidue":
        """Sum, exact down to the observable precision p^e (floor semantics)."""
        if self.p != other.p or self.e != other.e:
            raise ValueError("mixed moduli in ValuedResidue addition")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p, e, m = self.p, self.e, self.p**self.e
        lo = min(self.v, other.v)
        s = (self.u * p ** (self.v - lo) + other.u * p ** (other.v - lo)) % m
        if s == 0:
            return ValuedResidue.zero(p, e)
        w, unit = _split_unit(s, p)
        return ValuedResidue(p, e, lo + w, unit % m)

    def to_residue(self) -> Residue:
        if self.is_zero or self.v >= self.e:
            return Residue(self.p, self.e, 0)
        if self.v < 0:
            raise NonPIntegral(
                f"negative valuation {self.v} observed at p = {self.p}"
            )
        return Residue(self.p, self.e, self.u * self.p**self.v % self.p**self.e)

    def to_rat_window(self) -> Fraction:
        """p^v * u as an exact rational, for debugging only (u is a residue)."""
        return Fraction(self.p) ** self.v * self.u if not self.is_zero else Fraction(0)

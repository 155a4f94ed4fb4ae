"""Exact bivariate polynomials and rational functions in (n, k).

Just enough symbolic machinery to decide the telescoping certificate
identity: sparse polynomials over Fraction with structural equality, and
rational functions kept unreduced (equality by cross-multiplication, never
by GCD).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

Monomial = tuple[int, int]  # (degree in n, degree in k)


class Poly2:
    """Sparse polynomial in (n, k) with Fraction coefficients.

    Zero coefficients are never stored, so `monomials` is a canonical form
    and equality/hash are structural.
    """

    __slots__ = ("monomials",)

    def __init__(self, monomials: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if monomials:
            for (dn, dk), c in monomials.items():
                c = Fraction(c)
                if c != 0:
                    clean[(int(dn), int(dk))] = c
        self.monomials = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "Poly2":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def var_n(cls) -> "Poly2":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def var_k(cls) -> "Poly2":
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, Fraction]]) -> "Poly2":
        acc: dict[Monomial, Fraction] = {}
        for dn, dk, c in terms:
            key = (dn, dk)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        return cls(acc)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Poly2") -> "Poly2":
        acc = dict(self.monomials)
        for key, c in other.monomials.items():
            acc[key] = acc.get(key, Fraction(0)) + c
        return Poly2(acc)

    def __sub__(self, other: "Poly2") -> "Poly2":
        acc = dict(self.monomials)
        for key, c in other.monomials.items():
            acc[key] = acc.get(key, Fraction(0)) - c
        return Poly2(acc)

    def __neg__(self) -> "Poly2":
        return Poly2({key: -c for key, c in self.monomials.items()})

    def __mul__(self, other: "Poly2") -> "Poly2":
        acc: dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self.monomials.items():
            for (a2, b2), c2 in other.monomials.items():
                key = (a1 + a2, b1 + b2)
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return Poly2(acc)

    def scale(self, c) -> "Poly2":
        c = Fraction(c)
        return Poly2({key: coef * c for key, coef in self.monomials.items()})

    def __pow__(self, exp: int) -> "Poly2":
        if exp < 0:
            raise ValueError("negative exponent on Poly2")
        result = Poly2.constant(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly2) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash(frozenset(self.monomials.items()))

    def shift(self, dn: int, dk: int) -> "Poly2":
        """Substitute n -> n + dn, k -> k + dk (binomial expansion)."""
        acc: dict[Monomial, Fraction] = {}
        for (a, b), c in self.monomials.items():
            for i in range(a + 1):
                ci = c * comb(a, i) * dn ** (a - i)
                for j in range(b + 1):
                    key = (i, j)
                    acc[key] = acc.get(key, Fraction(0)) + ci * comb(b, j) * dk ** (b - j)
        return Poly2(acc)

    def eval(self, n, k) -> Fraction:
        n = Fraction(n)
        k = Fraction(k)
        acc = Fraction(0)
        for (a, b), c in self.monomials.items():
            acc += c * n**a * k**b
        return acc

    def with_integer_coefficients(self) -> "Poly2":
        """Scaled by the lcm of coefficient denominators (same zero set)."""
        if self.is_zero:
            return self
        lcm = 1
        for c in self.monomials.values():
            d = c.denominator
            lcm = lcm * d // _gcd(lcm, d)
        return self.scale(lcm)

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (a, b), c in sorted(self.monomials.items(), reverse=True):
            term = str(c)
            if a:
                term += f"*n^{a}" if a > 1 else "*n"
            if b:
                term += f"*k^{b}" if b > 1 else "*k"
            parts.append(term)
        return " + ".join(parts)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class RatFun2:
    """Unreduced quotient of two Poly2.  Equality is decided by
    cross-multiplication; no polynomial GCDs anywhere."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly2, den: Poly2 | None = None):
        den = Poly2.constant(1) if den is None else den
        if den.is_zero:
            raise ZeroDivisionError("RatFun2 denominator is the zero polynomial")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly2) -> "RatFun2":
        return cls(p)

    @classmethod
    def constant(cls, c) -> "RatFun2":
        return cls(Poly2.constant(c))

    def __add__(self, other: "RatFun2") -> "RatFun2":
        return RatFun2(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RatFun2") -> "RatFun2":
        return RatFun2(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RatFun2") -> "RatFun2":
        return RatFun2(self.num * other.num, self.den * other.den)

    def __neg__(self) -> "RatFun2":
        return RatFun2(-self.num, self.den)

    def shift(self, dn: int, dk: int) -> "RatFun2":
        return RatFun2(self.num.shift(dn, dk), self.den.shift(dn, dk))

    def eval(self, n, k) -> Fraction:
        den = self.den.eval(n, k)
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at (n, k) = ({n}, {k})")
        return self.num.eval(n, k) / den

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFun2):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        raise TypeError("RatFun2 is unhashable (equality is extensional)")

    def __repr__(self) -> str:
        return f"({self.num!r}) / ({self.den!r})"

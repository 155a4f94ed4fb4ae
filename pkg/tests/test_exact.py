import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wzlab.exact import (
    NonPIntegral,
    NotInvertible,
    Residue,
    ValuedResidue,
    cached_inverse_table,
    fermat_quotient_2,
    fermat_quotient_2_mod,
    inverse_table,
    is_prime,
    legendre_symbol,
    mod_inverse,
    padic_valuation,
    primes_in,
    primes_up_to,
    reduce_mod,
)

SMALL_ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

odd_primes = st.sampled_from(SMALL_ODD_PRIMES)
exponents = st.integers(min_value=1, max_value=4)


def egcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = egcd(b, a % b)
    return g, y, x - (a // b) * y


# ---------------------------------------------------------------------------
# primes

def test_primes_up_to_matches_trial_division():
    sieved = set(primes_up_to(500))
    for n in range(501):
        assert (n in sieved) == is_prime(n)


def test_primes_in_bounds():
    assert primes_in(5, 30) == [5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_in(24, 28) == []


# ---------------------------------------------------------------------------
# mod_inverse

def test_mod_inverse_examples():
    assert mod_inverse(1, 625) == 1
    assert mod_inverse(32, 625) == 293
    assert mod_inverse(67, 625) == 28  # 67*28 = 1876 = 3*625 + 1


def test_mod_inverse_not_invertible():
    with pytest.raises(NotInvertible):
        mod_inverse(10, 625)


def test_mod_inverse_round_trip_1000_random():
    rng = random.Random(20240817)
    for _ in range(1000):
        p = rng.choice(SMALL_ODD_PRIMES)
        e = rng.randint(1, 4)
        m = p**e
        a = rng.randrange(1, m)
        while a % p == 0:
            a = rng.randrange(1, m)
        b = mod_inverse(a, m)
        assert 0 < b < m
        assert a * b % m == 1


@given(odd_primes, exponents, st.integers(min_value=1, max_value=10**9))
def test_mod_inverse_matches_extended_gcd(p, e, a):
    m = p**e
    if a % p == 0:
        a += 1
    g, x, _ = egcd(a % m, m)
    assert g == 1
    assert mod_inverse(a, m) == x % m


def test_inverse_table_agrees_with_mod_inverse():
    for p in (5, 13, 31):
        for e in (1, 2, 4):
            table = inverse_table(p - 1, p, e)
            for k in range(1, p):
                assert table[k] == mod_inverse(k, p**e)
    assert cached_inverse_table(13, 2)[5] == mod_inverse(5, 169)


def test_inverse_table_rejects_large_n():
    with pytest.raises(ValueError):
        inverse_table(7, 7, 2)


# ---------------------------------------------------------------------------
# reduce_mod

def test_reduce_mod_examples():
    assert reduce_mod(Fraction(1, 1), 7, 3).value == 1
    # 2^-1 = 13 (mod 25), 3*13 = 39 = 14
    assert reduce_mod(Fraction(3, 2), 5, 2).value == 14
    # 32^-1 = 293 (mod 625), 35*293 = 10255 = 255
    assert reduce_mod(Fraction(35, 32), 5, 4).value == 255


def test_reduce_mod_non_p_integral():
    with pytest.raises(NonPIntegral):
        reduce_mod(Fraction(1, 5), 5, 2)
    with pytest.raises(NonPIntegral):
        reduce_mod(Fraction(3, 50), 5, 1)


rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=200
)


@given(odd_primes, exponents, rationals, rationals)
def test_reduce_mod_is_ring_homomorphism(p, e, x, y):
    if x.denominator % p == 0 or y.denominator % p == 0:
        return
    rx, ry = reduce_mod(x, p, e), reduce_mod(y, p, e)
    assert reduce_mod(x + y, p, e) == rx + ry
    assert reduce_mod(x * y, p, e) == rx * ry
    assert reduce_mod(x - y, p, e) == rx - ry


# ---------------------------------------------------------------------------
# legendre symbol

def test_legendre_examples():
    assert legendre_symbol(-1, 5) == 1  # 5 = 1 (mod 4)
    assert legendre_symbol(-1, 7) == -1  # 7 = 3 (mod 4)
    assert legendre_symbol(5, 3) == -1  # squares mod 3 are {0, 1}; 5 = 2


def test_legendre_against_square_enumeration():
    for p in SMALL_ODD_PRIMES:
        squares = {x * x % p for x in range(1, p)}
        for a in range(2 * p):
            expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert legendre_symbol(a, p) == expected


@given(odd_primes, st.integers(-500, 500), st.integers(-500, 500))
def test_legendre_multiplicative_and_periodic(p, a, b):
    assert legendre_symbol(a, p) == legendre_symbol(a % p, p)
    if a % p and b % p:
        assert legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p)


def test_legendre_rejects_non_prime():
    with pytest.raises(ValueError):
        legendre_symbol(3, 15)


# ---------------------------------------------------------------------------
# Fermat quotient

def test_fermat_quotient_examples():
    assert fermat_quotient_2(3) == 1
    assert fermat_quotient_2(5) == 3
    assert fermat_quotient_2(7) == 9


@given(st.sampled_from([5, 7, 11, 13, 97, 199]), exponents)
def test_fermat_quotient_mod_matches_exact(p, e):
    assert fermat_quotient_2_mod(p, e) == fermat_quotient_2(p) % p**e


# ---------------------------------------------------------------------------
# p-adic valuation

def test_padic_valuation_examples():
    assert padic_valuation(Fraction(0), 5) == math.inf
    assert padic_valuation(Fraction(35, 32), 5) == 1  # 35 = 5*7
    assert padic_valuation(Fraction(9625, 8192), 5) == 3  # 9625 = 5^3*7*11
    assert padic_valuation(Fraction(3, 50), 5) == -2


@given(odd_primes, rationals, rationals)
def test_padic_valuation_additive(p, x, y):
    if x == 0 or y == 0:
        return
    assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)


# ---------------------------------------------------------------------------
# Residue ring discipline

def test_residue_mixed_moduli_is_hard_error():
    a = Residue(5, 4, 2)
    b = Residue(5, 3, 2)
    c = Residue(7, 4, 2)
    for other in (b, c):
        with pytest.raises(ValueError):
            _ = a + other
        with pytest.raises(ValueError):
            _ = a * other


def test_residue_validation():
    with pytest.raises(ValueError):
        Residue(4, 2, 1)  # not prime
    with pytest.raises(ValueError):
        Residue(2, 2, 1)  # not odd
    with pytest.raises(ValueError):
        Residue(5, 0, 0)  # bad exponent
    with pytest.raises(ValueError):
        Residue(5, 2, 25)  # out of range


def test_residue_arithmetic_and_inverse():
    a = Residue.of(42, 5, 4)
    assert (-a).value == (625 - 42) % 625
    assert (a.inverse() * a).value == 1
    assert a.lift_to(2).value == 42 % 25
    with pytest.raises(ValueError):
        a.lift_to(5)
    assert str(Residue(5, 4, 255)) == "255 (mod 5^4)"


def test_residue_supports_exponent_above_four():
    # e_override scans compare modulo p^5, so the ring cannot hard-cap at 4.
    r = Residue.of(7, 5, 5)
    assert (r * r).value == 49


# ---------------------------------------------------------------------------
# ValuedResidue

@given(odd_primes, exponents, rationals, rationals)
def test_valued_residue_mul_matches_exact_split(p, e, x, y):
    if x == 0 or y == 0:
        return
    if x.denominator % p == 0 or y.denominator % p == 0:
        # keep products p-integral overall but allow unit denominators
        return
    vx = ValuedResidue.from_rat(x, p, e)
    vy = ValuedResidue.from_rat(y, p, e)
    prod = vx.mul(vy)
    z = x * y
    v = padic_valuation(z, p)
    assert prod.v == v
    unit = z / Fraction(p) ** v
    assert prod.u == reduce_mod(unit, p, e).value


@given(odd_primes, exponents, rationals, rationals)
def test_valued_residue_add_matches_exact_within_window(p, e, x, y):
    if x.denominator % p == 0 or y.denominator % p == 0:
        return
    if padic_valuation(x, p) < 0 or padic_valuation(y, p) < 0:
        return
    vx = ValuedResidue.from_rat(x, p, e)
    vy = ValuedResidue.from_rat(y, p, e)
    assert vx.add(vy).to_residue() == reduce_mod(x + y, p, e)


def test_valued_residue_division_dips_below_cap():
    # valuation must be tracked exactly: 5^5/25 = 125 is nonzero mod 5^4,
    # which an in-place "cap at e" representation would destroy.
    v = ValuedResidue.from_int(5**5, 5, 4).div_int(25)
    assert v.to_residue() == Residue(5, 4, 125)
    # and mod 5^3 the same chain collapses to zero only at observation
    v3 = ValuedResidue.from_int(5**4 * 14, 5, 3).div_int(5)
    assert v3.v == 3
    assert v3.to_residue().value == 0


def test_valued_residue_negative_valuation_observation():
    v = ValuedResidue.from_rat(Fraction(1, 5), 5, 3)
    with pytest.raises(NonPIntegral):
        v.to_residue()


def test_valued_residue_zero():
    z = ValuedResidue.from_int(0, 5, 3)
    assert z.is_zero
    assert z.mul_int(7).is_zero
    assert z.to_residue().value == 0
    nz = ValuedResidue.from_int(3, 5, 3)
    assert nz.add(z).to_residue().value == 3

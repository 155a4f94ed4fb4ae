from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wzlab.exact import NonPIntegral, legendre_symbol, primes_in, reduce_mod
from wzlab.sequences import (
    alternating_inv_square_mod,
    bernoulli_mod_table,
    bernoulli_poly_mod,
    central_binomial,
    euler_mod,
    euler_numbers,
    falling_alternating_inv_square,
    harmonic,
    harmonic_mod,
    pochhammer,
)


def zigzag_numbers(n_max):
    """A000111 via the Seidel boustrophedon triangle; entries at even index
    are the secant numbers |E_{2m}|.  Independent of the recurrence used by
    euler_numbers."""
    out = [1]
    row = [1]
    for i in range(1, n_max + 1):
        new = [0]
        for j in range(i):
            new.append(new[-1] + row[i - 1 - j])
        row = new
        out.append(row[-1])
    return out


# ---------------------------------------------------------------------------
# Euler numbers

def test_euler_numbers_small():
    assert euler_numbers(0) == [1]
    table = euler_numbers(8)
    assert table[2] == -1
    assert table[4] == 5
    assert table[6] == -61
    assert table[8] == 1385


def test_euler_numbers_against_zigzag_oracle():
    table = euler_numbers(30)
    zz = zigzag_numbers(30)
    for m in range(0, 31, 2):
        assert abs(table[m]) == zz[m]


def test_euler_numbers_signs_and_odd_zero():
    table = euler_numbers(40)
    for idx in range(1, 41, 2):
        assert table[idx] == 0
    for j in range(0, 10):
        assert table[4 * j] > 0
        if 4 * j + 2 <= 40:
            assert table[4 * j + 2] < 0


def test_euler_numbers_satisfy_recurrence():
    table = euler_numbers(24)
    for n in range(1, 13):
        assert sum(comb(2 * n, 2 * j) * table[2 * j] for j in range(n + 1)) == 0


def test_euler_mod_matches_exact_table_up_to_100():
    table = euler_numbers(97)
    for p in primes_in(5, 100):
        for idx in range(0, p - 2, 2):
            assert euler_mod(p, idx).value == table[idx] % p


def test_euler_mod_examples_and_errors():
    assert euler_mod(5, 2).value == 4  # E_2 = -1
    assert euler_mod(7, 4).value == 5
    assert euler_mod(11, 0).value == 1
    with pytest.raises(ValueError):
        euler_mod(7, 3)  # odd index
    with pytest.raises(ValueError):
        euler_mod(7, 6)  # above p-3
    with pytest.raises(ValueError):
        euler_mod(4, 0)


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials mod p

def worpitzky_bernoulli(n):
    """B_n (first convention) from the double sum over falling powers."""
    acc = Fraction(0)
    for k in range(n + 1):
        inner = sum((-1) ** j * comb(k, j) * Fraction(j**n) for j in range(k + 1))
        acc += inner / (k + 1)
    return acc


def test_bernoulli_mod_table_against_worpitzky():
    for p in (5, 7, 11, 13):
        table = bernoulli_mod_table(p)
        for n in range(p - 1):
            assert table[n] == reduce_mod(worpitzky_bernoulli(n), p, 1).value


def test_bernoulli_mod_table_invariants():
    for p in (7, 31, 97):
        table = bernoulli_mod_table(p)
        assert table[0] == 1
        assert table[1] == (-(p + 1) // 2) % p  # -1/2 mod p
        for n in range(3, p - 1, 2):
            assert table[n] == 0
        for m in range(1, p - 2):
            acc = sum(comb(m + 1, j) * table[j] for j in range(m + 1)) % p
            assert acc == 0


def test_bernoulli_poly_mod_examples():
    assert bernoulli_poly_mod(5, 0, Fraction(1, 3)).value == 1
    # B_3(1/3) = 1/27 exactly; 27 = 2 (mod 5), 2^-1 = 3
    assert bernoulli_poly_mod(5, 3, Fraction(1, 3)).value == 3
    # B_1(0) = B_1 = -1/2 = 3 (mod 7)
    assert bernoulli_poly_mod(7, 1, Fraction(0)).value == 3


def test_bernoulli_poly_mod_rejects_pole_and_bad_point():
    with pytest.raises(ValueError):
        bernoulli_poly_mod(7, 6, Fraction(1, 3))  # index p-1 is the pole
    with pytest.raises(NonPIntegral):
        bernoulli_poly_mod(7, 2, Fraction(1, 7))


@given(
    st.sampled_from([5, 7, 11, 13, 17]),
    st.data(),
)
def test_bernoulli_poly_difference_property(p, data):
    n = data.draw(st.integers(min_value=1, max_value=p - 2))
    x = data.draw(st.fractions(min_value=-20, max_value=20, max_denominator=12))
    if x.denominator % p == 0:
        return
    lhs = bernoulli_poly_mod(p, n, x + 1).value - bernoulli_poly_mod(p, n, x).value
    rhs = n * reduce_mod(x, p, 1).value ** (n - 1)
    assert lhs % p == rhs % p


def test_bernoulli_poly_exact_cross_check():
    # B_4(x) = x^4 - 2x^3 + x^2 - 1/30, evaluated at 1/3 and reduced
    x = Fraction(1, 3)
    exact = x**4 - 2 * x**3 + x**2 - Fraction(1, 30)
    for p in (7, 11, 13):
        assert bernoulli_poly_mod(p, 4, x) == reduce_mod(exact, p, 1)


# ---------------------------------------------------------------------------
# harmonic numbers

def test_harmonic_examples():
    assert harmonic(0, 1) == 0
    assert harmonic(3, 1) == Fraction(11, 6)
    assert harmonic(2, 2) == Fraction(5, 4)


@given(st.integers(1, 80), st.integers(1, 3))
def test_harmonic_recurrence(n, m):
    assert harmonic(n, m) - harmonic(n - 1, m) == Fraction(1, n**m)


def test_harmonic_mod_matches_exact():
    for p in (5, 13, 31):
        for e in (1, 2, 4):
            for m in (1, 2, 3):
                for n in (0, 1, p // 2, p - 1):
                    assert harmonic_mod(n, m, p, e) == reduce_mod(
                        harmonic(n, m), p, e
                    )


def test_alternating_inv_square_paths_agree():
    for p in (5, 13, 31):
        for n in (1, p // 2, p - 1):
            assert alternating_inv_square_mod(n, p, 2) == reduce_mod(
                falling_alternating_inv_square(n), p, 2
            )


# ---------------------------------------------------------------------------
# Pochhammer and central binomials

def test_pochhammer_examples():
    assert pochhammer(Fraction(-1, 2), 0) == 1
    assert pochhammer(Fraction(-1, 2), 2) == Fraction(-1, 4)
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)


@given(
    st.fractions(min_value=-10, max_value=10, max_denominator=8),
    st.integers(0, 30),
)
def test_pochhammer_functional_equation(x, k):
    assert pochhammer(x, k + 1) == pochhammer(x, k) * (x + k)


def test_pochhammer_of_one_is_factorial():
    for k in range(20):
        assert pochhammer(Fraction(1), k) == factorial(k)


def test_central_binomial_examples_and_identity():
    assert central_binomial(0) == 1
    assert central_binomial(2) == 6
    assert central_binomial(5) == 252
    for k in range(61):
        assert pochhammer(Fraction(1, 2), k) / pochhammer(Fraction(1), k) == Fraction(
            central_binomial(k), 4**k
        )


# ---------------------------------------------------------------------------
# Morley's congruence (exercised as a sequences-level invariant)

def test_morley_congruence_through_199():
    for p in primes_in(5, 199):
        lhs = comb(p - 1, (p - 1) // 2) % p**3
        rhs = legendre_symbol(-1, p) * pow(4, p - 1, p**3) % p**3
        assert lhs == rhs
    # pinned: p = 5 has C(4,2) = 6 and 4^4 = 256 = 6 (mod 125)
    assert comb(4, 2) % 125 == 6
    assert pow(4, 4, 125) == 6

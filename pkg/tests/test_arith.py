"""Number-theoretic helpers: Kronecker symbol, discriminants, Moebius."""

import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakforms.arith import (
    chi_trivial_mod,
    divisors,
    factorize,
    is_fundamental_discriminant,
    is_square,
    kronecker,
    moebius,
    shadow_level,
    squarefree_part,
)


def test_kronecker_minus_three_at_two():
    # -3 = 5 mod 8, so the symbol at 2 is -1
    assert kronecker(-3, 2) == -1


@pytest.mark.parametrize("n", [1, 2, 3, -5, 10, 97, -1])
def test_kronecker_one_is_trivial(n):
    assert kronecker(1, n) == 1


def test_kronecker_euler_criterion():
    # against odd primes the symbol must obey a^((p-1)/2) mod p
    rng = random.Random(11)
    primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97, 101]
    for _ in range(300):
        a = rng.randint(-60, 60)
        p = rng.choice(primes)
        want = pow(a % p, (p - 1) // 2, p)
        want = -1 if want == p - 1 else want
        assert kronecker(a, p) == want, (a, p)


@given(st.integers(-50, 50), st.integers(-40, 40), st.integers(-40, 40))
@settings(max_examples=200)
def test_kronecker_multiplicative_in_bottom(d, m, n):
    assert kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n)


def test_kronecker_multiplicative_in_top():
    rng = random.Random(23)
    for _ in range(200):
        a, b = rng.randint(-40, 40), rng.randint(-40, 40)
        n = rng.randint(1, 60)
        if n % 2 == 0 and (a % 2 == 0 or b % 2 == 0):
            continue  # top multiplicativity needs odd entries at even bottom
        assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


# -- fundamental discriminants -------------------------------------------------

@pytest.mark.parametrize("d", [1, 5, 8, 12, 13, 17, -3, -4, -7, -8, -15, -20])
def test_fundamental_discriminants(d):
    assert is_fundamental_discriminant(d)


@pytest.mark.parametrize("d", [0, 2, 3, 9, 25, -1, -9, -12, -16, 45])
def test_not_fundamental(d):
    assert not is_fundamental_discriminant(d)


@given(st.integers(-400, 400))
@settings(max_examples=300)
def test_fundamental_matches_definition(d):
    def squarefree(n):
        n = abs(n)
        k = 2
        while k * k <= n:
            if n % (k * k) == 0:
                return False
            k += 1
        return True

    if d % 4 == 1:
        want = d != 1 and squarefree(d) or d == 1
    elif d % 4 == 0:
        m = d // 4
        want = m % 4 in (2, 3) and squarefree(m)
    else:
        want = False
    assert is_fundamental_discriminant(d) == want


# -- the trivial level-p character ----------------------------------------------

@pytest.mark.parametrize("p,n,want", [(5, 10, 0), (5, 3, 1), (7, 0, 0),
                                      (7, 14, 0), (13, 12, 1), (3, 5, 1)])
def test_trivial_character(p, n, want):
    assert chi_trivial_mod(p, n) == want


# -- Moebius and divisors -------------------------------------------------------

def test_moebius_sample():
    assert moebius(1) == 1
    assert moebius(6) == 1
    assert moebius(30) == -1
    assert moebius(4) == 0
    assert moebius(12) == 0


def test_moebius_sum_detects_one():
    # sum_{d|n} mu(d) is the indicator of n == 1
    for n in range(1, 10001):
        total = sum(moebius(d) for d in divisors(n))
        assert total == (1 if n == 1 else 0), n


def test_divisors_ordered():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert divisors(97) == [1, 97]


def test_divisors_rejects_nonpositive():
    with pytest.raises(ValueError):
        divisors(0)


def test_factorize_reassembles():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 10 ** 6)
        prod = 1
        for p, e in factorize(n):
            prod *= p ** e
        assert prod == n


def test_squarefree_part_and_is_square():
    assert squarefree_part(1) == 1
    assert squarefree_part(12) == 3
    assert squarefree_part(49) == 1
    assert is_square(0) and is_square(36) and not is_square(12)


# -- the level selector N(n) = 4p / gcd(n, p) -----------------------------------

@pytest.mark.parametrize("p,n,want", [(5, 10, 4), (5, 3, 20), (7, 7, 4),
                                      (7, 6, 28), (13, 26, 4), (3, 4, 12)])
def test_shadow_level(p, n, want):
    assert shadow_level(p, n) == want


def test_shadow_level_only_two_values():
    for p in (3, 5, 7, 13):
        for n in range(1, 200):
            assert shadow_level(p, n) == (4 if n % p == 0 else 4 * p)
            assert shadow_level(p, n) == 4 * p // gcd(n, p)

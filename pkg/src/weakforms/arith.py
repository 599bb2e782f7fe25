"""Elementary number-theoretic helpers.

Everything here is small and exact: Kronecker symbols, fundamental
discriminants, divisor lists, the Moebius function.  Factoring is plain
trial division, which is plenty for the ranges this package touches.
"""

from __future__ import annotations

from math import gcd, isqrt

__all__ = [
    "kronecker",
    "is_fundamental_discriminant",
    "chi_trivial_mod",
    "divisors",
    "moebius",
    "factorize",
    "squarefree_part",
    "shadow_level",
    "is_square",
]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # pull out factors of 2 from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # now n is odd and positive: Jacobi with quadratic reciprocity
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of |n| as [(p, e), ...]; n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    """Sorted list of positive divisors of |n|."""
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    out = [1]
    for p, e in factorize(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius is defined for positive integers")
    if n == 1:
        return 1
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def squarefree_part(n: int) -> int:
    if n == 0:
        return 0
    s = 1
    for p, e in factorize(n):
        if e % 2:
            s *= p
    return s if n > 0 else -s


def is_fundamental_discriminant(d: int) -> bool:
    """True for 1 and for discriminants of quadratic fields."""
    if d == 1:
        return True
    if d == 0:
        return False
    r = d % 4
    if r == 1:
        return squarefree_part(d) == d
    if r == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree_part(m) == m
    return False


def chi_trivial_mod(p: int, n: int) -> int:
    """The trivial character mod p: 1 on integers prime to p, else 0."""
    return 0 if n % p == 0 else 1


def shadow_level(p: int, n: int) -> int:
    """4p when p does not divide n, otherwise 4.

    This is the level on which the n-th term of a theta-lift expansion
    naturally lives.
    """
    return 4 * p // gcd(n, p)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n

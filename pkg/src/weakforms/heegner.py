"""Positive definite binary quadratic forms and Heegner points.

A form ``[a, b, c]`` stands for ``a*x**2 + b*x*y + c*y**2`` with integer
coefficients and negative discriminant ``b**2 - 4*a*c``.  The functions here
enumerate the forms needed for trace computations: for a level ``N`` and a
negative discriminant ``disc`` we list inequivalent forms under the action of
the congruence subgroup of upper-triangular-mod-``N`` matrices, restricted to
forms whose leading coefficient is divisible by ``N``.

Each class is tagged with the order of its stabiliser (1, 2 or 3), the value
of a genus character attached to an auxiliary fundamental discriminant, and
the CM point ``(-b + sqrt(disc)) / (2a)`` in the upper half plane.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .arith import is_fundamental_discriminant, kronecker

__all__ = [
    "QuadForm",
    "reduced_forms",
    "class_count",
    "heegner_forms",
    "square_roots_mod",
    "equivalent_under_gamma0",
]


class QuadForm:
    """An integral binary quadratic form ``a*x**2 + b*x*y + c*y**2``.

    Instances are immutable and hashable.  Only positive definite forms are
    allowed: ``a > 0`` and ``b**2 - 4*a*c < 0``.
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a: int, b: int, c: int):
        a, b, c = int(a), int(b), int(c)
        if a <= 0:
            raise ValueError("form must be positive definite (a > 0)")
        if b * b - 4 * a * c >= 0:
            raise ValueError("form must have negative discriminant")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("QuadForm is immutable")

    # -- basic invariants ---------------------------------------------------

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, p: int, q: int, r: int, s: int) -> "QuadForm":
        """Apply the unimodular substitution x -> p*x + q*y, y -> r*x + s*y."""
        if p * s - q * r != 1:
            raise ValueError("substitution matrix must have determinant 1")
        a, b, c = self.a, self.b, self.c
        a2 = a * p * p + b * p * r + c * r * r
        b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s
        c2 = a * q * q + b * q * s + c * s * s
        return QuadForm(a2, b2, c2)

    # -- reduction ----------------------------------------------------------

    def reduced(self) -> "QuadForm":
        """The unique reduced form equivalent to this one under SL2(Z).

        Reduced means ``|b| <= a <= c``, with ``b >= 0`` whenever ``|b| == a``
        or ``a == c``.
        """
        a, b, c = self.a, self.b, self.c
        while True:
            if a > c:
                a, b, c = c, -b, a
                continue
            if b > a or b <= -a:
                # shift b into (-a, a] by a translation
                t = (a - b) // (2 * a)
                b2 = b + 2 * a * t
                c = a * t * t + b * t + c
                b = b2
                continue
            break
        if (b < 0 and a == c) or b == -a:
            b = -b
        return QuadForm(a, b, c)

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (-a < b <= a <= c):
            return False
        return not (b < 0 and a == c)

    # -- Heegner data -------------------------------------------------------

    def stabilizer_order(self) -> int:
        """Order of the stabiliser of the form in PSL2(Z): 3, 2 or 1.

        Only forms proportional to one of discriminant -3 or -4 have extra
        automorphisms, so the answer depends on disc divided by the squared
        content.
        """
        g = self.content
        d0 = self.disc // (g * g)
        if d0 == -3:
            return 3
        if d0 == -4:
            return 2
        return 1

    def represented_coprime_to(self, n: int) -> int:
        """A value of the form at integer arguments that is coprime to n."""
        n = abs(n)
        if n <= 1:
            return self.value(1, 0)
        bound = 1
        while True:
            for x in range(-bound, bound + 1):
                for y in range(-bound, bound + 1):
                    if (x, y) == (0, 0):
                        continue
                    v = self.value(x, y)
                    if gcd(v, n) == 1:
                        return v
            bound += 1
            if bound > n + 2:  # pragma: no cover - cannot happen for valid input
                raise ArithmeticError("no represented value coprime to %d" % n)

    def genus_character(self, d: int) -> int:
        """Genus character attached to a fundamental discriminant ``d``.

        Returns the Kronecker symbol ``(d / r)`` for any value ``r`` of the
        form coprime to ``d``, or 0 when ``gcd(a, b, c, d)`` exceeds 1.  The
        result does not depend on the choice of ``r``.
        """
        if not is_fundamental_discriminant(d):
            raise ValueError("character requires a fundamental discriminant")
        if d != 1 and self.disc % d != 0:
            raise ValueError("form discriminant not divisible by %d" % d)
        if gcd(self.content, d) > 1:
            return 0
        r = self.represented_coprime_to(d)
        return kronecker(d, r)

    def cm_point(self) -> tuple[Fraction, Fraction]:
        """The root ``(-b + i*sqrt(|disc|)) / (2a)`` of the form.

        Returned as a pair ``(re, t)`` of rationals where the point is
        ``re + i*t*sqrt(|disc|)``.
        """
        return Fraction(-self.b, 2 * self.a), Fraction(1, 2 * self.a)

    # -- plumbing -----------------------------------------------------------

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return "QuadForm(%d, %d, %d)" % (self.a, self.b, self.c)


def reduced_forms(disc: int) -> tuple[QuadForm, ...]:
    """All reduced forms of the given negative discriminant.

    Imprimitive forms are included, so the count is the total number of
    SL2(Z) classes of forms with this discriminant.
    """
    if disc >= 0:
        raise ValueError("discriminant must be negative")
    if disc % 4 not in (0, 1):
        raise ValueError("discriminant must be 0 or 1 mod 4")
    out = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and c == a:
                continue
            out.append(QuadForm(a, b, c))
    return tuple(sorted(out, key=QuadForm.key))


def class_count(disc: int) -> int:
    """Number of SL2(Z) classes of forms of discriminant ``disc``."""
    return len(reduced_forms(disc))


def square_roots_mod(disc: int, modulus: int) -> tuple[int, ...]:
    """Residues ``b`` in ``[0, modulus)`` with ``b**2 == disc mod 2*modulus``.

    Used with ``modulus = 2*N`` to count the square roots of ``disc`` modulo
    ``4*N`` that classify Heegner form classes.
    """
    return tuple(b for b in range(modulus) if (b * b - disc) % (2 * modulus) == 0)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y == g; the sign of g follows the inputs."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def equivalent_under_gamma0(form1: QuadForm, form2: QuadForm, level: int,
                            search_bound: int = 12) -> bool:
    """Bounded search for a substitution carrying ``form1`` to ``form2``.

    Tries every determinant-one integer matrix whose lower-left entry is a
    multiple of ``level`` and whose entries are at most ``search_bound`` in
    absolute value.  A ``False`` therefore only certifies absence within the
    bound.  Slow and meant for cross-checking the class enumeration on small
    inputs, not for production use.
    """
    if level < 1:
        raise ValueError("level must be positive")
    if form1.disc != form2.disc:
        return False
    bound = int(search_bound)
    window = 2 * bound + 2
    for r in range(-bound, bound + 1):
        if r % level:
            continue
        for p in range(-bound, bound + 1):
            g, x, y = _egcd(p, r)
            if g < 0:
                g, x, y = -g, -x, -y
            if g != 1:
                continue
            # p*x + r*y == 1, so (q, s) = (-y + p*t, x + r*t) gives det 1
            for t in range(-window, window + 1):
                q = -y + p * t
                s = x + r * t
                if abs(q) > bound or abs(s) > bound:
                    continue
                if form1.transform(p, q, r, s) == form2:
                    return True
    return False


def heegner_forms(disc: int, level: int) -> tuple[QuadForm, ...]:
    """Inequivalent positive definite forms of discriminant ``disc`` with
    leading coefficient divisible by ``level``.

    Equivalence is taken under the subgroup of SL2(Z) whose lower-left entry
    is divisible by ``level``.  Two such forms are equivalent exactly when
    they are SL2(Z)-equivalent and their middle coefficients agree modulo
    ``2*level``, which gives a cheap dedup key; the expected number of
    classes is the plain form class number times the number of square roots
    of ``disc`` modulo ``4*level``.

    Returns an empty tuple when ``disc`` is not a discriminant.  Raises
    ``RuntimeError`` if the expected class count is not reached, which would
    signal a bug rather than bad input.
    """
    if level < 1:
        raise ValueError("level must be positive")
    if disc >= 0:
        raise ValueError("discriminant must be negative")
    if disc % 4 not in (0, 1):
        return ()

    target = class_count(disc) * len(square_roots_mod(disc, 2 * level))
    if target == 0:
        return ()

    found: dict[tuple, QuadForm] = {}
    a = level
    cap = 4 * level * (-disc + 4)
    while len(found) < target and a <= cap:
        for b in range(2 * a):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            q = QuadForm(a, b, c)
            key = (q.reduced().key(), b % (2 * level))
            if key not in found:
                found[key] = q
        a += level
    if len(found) != target:
        raise RuntimeError(
            "class enumeration for disc %d level %d stopped at %d of %d"
            % (disc, level, len(found), target)
        )
    return tuple(sorted(found.values(), key=QuadForm.key))

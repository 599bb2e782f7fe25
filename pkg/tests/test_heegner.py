"""Binary quadratic forms, class enumeration, genus characters, CM points."""

import random
from fractions import Fraction
from math import gcd, isqrt

import pytest

from weakforms.heegner import (
    QuadForm,
    class_count,
    equivalent_under_gamma0,
    heegner_forms,
    reduced_forms,
    square_roots_mod,
)

F = Fraction


def _random_gamma0_matrix(rng, level, spread=3):
    """A small determinant-one matrix with lower-left divisible by level."""
    while True:
        r = level * rng.randint(-1, 1)
        p = rng.randint(-spread, spread)
        if gcd(p, r) != 1:
            continue
        # extend (p, r) to a determinant-one matrix by inspection
        for q in range(-3 * spread, 3 * spread + 1):
            for s in range(-3 * spread, 3 * spread + 1):
                if p * s - q * r == 1:
                    return p, q, r, s


# -- QuadForm basics -------------------------------------------------------------

def test_rejects_indefinite_and_negative():
    with pytest.raises(ValueError):
        QuadForm(1, 5, 1)  # disc 21 > 0
    with pytest.raises(ValueError):
        QuadForm(-1, 0, -1)


def test_transform_preserves_discriminant():
    rng = random.Random(3)
    for _ in range(50):
        f = QuadForm(rng.randint(1, 9), rng.randint(-5, 5), rng.randint(7, 15))
        p, q, r, s = _random_gamma0_matrix(rng, 1)
        assert f.transform(p, q, r, s).disc == f.disc


def test_reduction_reaches_normal_form():
    f = QuadForm(15, 14, 4)  # disc = 196 - 240 = -44
    red = f.reduced()
    assert red.is_reduced()
    assert red.disc == -44
    # reduction is stable and lands on a class representative
    assert red.reduced() == red


def test_reduced_is_class_invariant():
    rng = random.Random(17)
    for _ in range(60):
        f = QuadForm(rng.randint(1, 8), rng.randint(-4, 4), rng.randint(6, 12))
        p, q, r, s = _random_gamma0_matrix(rng, 1)
        assert f.transform(p, q, r, s).reduced() == f.reduced()


# -- class counts ------------------------------------------------------------------

KNOWN_CLASS_NUMBERS = {
    # fundamental discriminants: textbook values of h(D)
    -3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -19: 1, -20: 2,
    -23: 3, -24: 2, -31: 3, -35: 2, -39: 4, -40: 2, -43: 1,
    -47: 5, -67: 1, -71: 7, -84: 4, -163: 1,
}


@pytest.mark.parametrize("disc,h", sorted(KNOWN_CLASS_NUMBERS.items()))
def test_class_count_fundamental(disc, h):
    assert class_count(disc) == h


def test_class_count_brute_force_to_200():
    # independent triple-loop count of reduced forms, imprimitive included
    for disc in range(-3, -201, -1):
        if disc % 4 not in (0, 1):
            continue
        count = 0
        for a in range(1, isqrt(-disc // 3) + 1):
            for b in range(-a + 1, a + 1):
                num = b * b - disc
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if c < a or (b < 0 and c == a):
                    continue
                count += 1
        assert class_count(disc) == count, disc


def test_reduced_forms_shape():
    forms = reduced_forms(-12)
    assert [f.key() for f in forms] == [(1, 0, 3), (2, 2, 2)]
    assert forms[1].content == 2


# -- stabilizers ----------------------------------------------------------------------

def test_stabilizer_orders():
    assert QuadForm(1, 1, 1).stabilizer_order() == 3
    assert QuadForm(1, 0, 1).stabilizer_order() == 2
    assert QuadForm(2, 1, 3).stabilizer_order() == 1
    # imprimitive multiple of the disc -3 form keeps its extra symmetry
    assert QuadForm(2, 2, 2).stabilizer_order() == 3


# -- Heegner enumeration ----------------------------------------------------------------

def test_heegner_disc4_level5():
    forms = heegner_forms(-4, 5)
    assert [f.key() for f in forms] == [(5, 4, 1), (5, 6, 2)]
    assert all(f.stabilizer_order() == 2 for f in forms)
    # CM points (-2+i)/5 and (-3+i)/5
    assert forms[0].cm_point() == (F(-2, 5), F(1, 10))
    assert forms[1].cm_point() == (F(-3, 5), F(1, 10))


def test_heegner_disc15_level5():
    forms = heegner_forms(-15, 5)
    assert [f.key() for f in forms] == [(5, 5, 2), (10, 5, 1)]
    # (-5 + i sqrt 15)/10 and /20
    assert forms[0].cm_point() == (F(-1, 2), F(1, 10))
    assert forms[1].cm_point() == (F(-1, 4), F(1, 20))
    assert all(f.stabilizer_order() == 1 for f in forms)


def test_heegner_disc3_level1():
    forms = heegner_forms(-3, 1)
    assert [f.key() for f in forms] == [(1, 1, 1)]
    assert forms[0].stabilizer_order() == 3


def test_heegner_count_matches_square_root_formula():
    for disc in (-4, -11, -15, -16, -20, -24, -36, -40):
        for level in (1, 3, 5, 7, 13):
            forms = heegner_forms(disc, level)
            want = class_count(disc) * len(square_roots_mod(disc, 2 * level))
            assert len(forms) == want, (disc, level)
            assert all(f.a % level == 0 for f in forms)
            assert all(f.disc == disc for f in forms)


def test_heegner_empty_when_no_square_roots():
    # -3 is not a square mod 20
    assert heegner_forms(-3, 5) == ()
    assert heegner_forms(-2, 5) == ()  # 2 mod 4: not a discriminant


def test_heegner_rejects_bad_input():
    with pytest.raises(ValueError):
        heegner_forms(4, 5)
    with pytest.raises(ValueError):
        heegner_forms(-4, 0)


def test_square_roots_mod_example():
    assert square_roots_mod(-4, 10) == (4, 6)


# -- genus characters ----------------------------------------------------------------------

def test_genus_character_trivial_discriminant():
    for f in heegner_forms(-4, 5) + heegner_forms(-15, 5):
        assert f.genus_character(1) == 1


def test_genus_character_gcd_branch():
    f = QuadForm(5, 10, 10)  # content 5, disc -100
    assert f.genus_character(5) == 0


def test_genus_character_requires_fundamental():
    with pytest.raises(ValueError):
        QuadForm(1, 0, 1).genus_character(9)


def test_genus_character_on_translates():
    # well-definedness: constant across 50 random level-5 translates
    rng = random.Random(41)
    for base in heegner_forms(-20, 5):
        want = base.genus_character(-4)
        for _ in range(50):
            p, q, r, s = _random_gamma0_matrix(rng, 5)
            assert base.transform(p, q, r, s).genus_character(-4) == want


def test_dedup_key_invariant_on_orbits():
    rng = random.Random(53)
    level = 5
    for base in heegner_forms(-36, level) + heegner_forms(-15, level):
        key = (base.reduced().key(), base.b % (2 * level))
        for _ in range(25):
            p, q, r, s = _random_gamma0_matrix(rng, level)
            g = base.transform(p, q, r, s)
            if g.a <= 0:
                continue
            assert (g.reduced().key(), g.b % (2 * level)) == key


# -- the bounded matrix-search oracle ---------------------------------------------------------

def test_equivalence_is_reflexive():
    f = QuadForm(5, 4, 1)
    assert equivalent_under_gamma0(f, f, 5)


def test_enumerated_classes_are_inequivalent():
    f1, f2 = heegner_forms(-4, 5)
    assert not equivalent_under_gamma0(f1, f2, 5, search_bound=14)


def test_apply_then_detect_round_trip():
    rng = random.Random(71)
    for level in (1, 5, 7):
        for disc in (-4, -15, -20, -24):
            forms = heegner_forms(disc, level)
            if not forms:
                continue
            f = forms[rng.randrange(len(forms))]
            p, q, r, s = _random_gamma0_matrix(rng, level)
            assert equivalent_under_gamma0(f, f.transform(p, q, r, s), level,
                                           search_bound=12)


def test_oracle_confirms_enumeration_pairwise():
    for disc in (-4, -15, -20):
        forms = heegner_forms(disc, 5)
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                assert not equivalent_under_gamma0(forms[i], forms[j], 5,
                                                   search_bound=10)


def test_mismatched_discriminants_never_equivalent():
    assert not equivalent_under_gamma0(QuadForm(1, 0, 1), QuadForm(1, 1, 1), 1)


# -- CM point data ------------------------------------------------------------------------------

def test_cm_point_is_exact_root():
    # a*tau^2 + b*tau + c = 0 for tau = re + i*t*sqrt(|disc|)
    for f in heegner_forms(-20, 5) + heegner_forms(-15, 5):
        re, t = f.cm_point()
        # real part: a*(re^2 - t^2*|disc|) + b*re + c = 0
        assert f.a * (re * re - t * t * (-f.disc)) + f.b * re + f.c == 0
        # imaginary part: 2*a*re*t + b*t = 0
        assert 2 * f.a * re * t + f.b * t == 0
        assert t > 0

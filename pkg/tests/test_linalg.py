"""Exact row reduction over truncated Laurent series."""

import random
from fractions import Fraction

from weakforms.linalg import Echelon, express_in_basis, in_span, rank_of, row_reduce
from weakforms.qseries import QSeries

F = Fraction


def _random_series(rng, trunc=12):
    lead = rng.randint(-4, 3)
    terms = {}
    for e in range(lead, trunc):
        if rng.random() < 0.5:
            terms[e] = F(rng.randint(-9, 9), rng.randint(1, 4))
    terms.setdefault(lead, F(1))
    return QSeries.from_terms(terms, trunc)


def test_row_reduce_idempotent():
    rng = random.Random(31)
    rows = [_random_series(rng) for _ in range(6)]
    once = row_reduce(rows)
    twice = row_reduce(once)
    assert once == twice


def test_row_reduce_pivots_distinct_and_normalized():
    rng = random.Random(7)
    rows = [_random_series(rng) for _ in range(5)]
    red = row_reduce(rows)
    leads = [r.lead for r in red]
    assert leads == sorted(set(leads))
    for r in red:
        assert r.coef(r.lead) == 1
        # full reduction: other rows' pivot columns are cleared
        for other in red:
            if other is not r:
                assert r.coef(other.lead) == 0


def test_rank_drops_on_dependent_insert():
    a = QSeries.from_terms({0: F(1), 1: F(2)}, 6)
    b = QSeries.from_terms({1: F(1), 2: F(-1)}, 6)
    assert rank_of([a, b, a + 3 * b]) == 2


def test_echelon_ignores_dependent_rows():
    ech = Echelon(8)
    a = QSeries.from_terms({-1: F(1), 0: F(5)}, 8)
    b = QSeries.from_terms({0: F(2), 3: F(1)}, 8)
    assert ech.insert(a)
    assert ech.insert(b)
    assert not ech.insert(a + b)
    assert len(ech.rows()) == 2


def test_express_in_basis_round_trip():
    rng = random.Random(99)
    basis = row_reduce([_random_series(rng) for _ in range(4)])
    want = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in basis]
    f = QSeries.zero(12)
    for c, b in zip(want, basis):
        f = f + c * b
    got = express_in_basis(f, list(basis))
    assert got is not None
    rebuilt = QSeries.zero(12)
    for c, b in zip(got, basis):
        rebuilt = rebuilt + c * b
    assert rebuilt == f


def test_in_span_negative():
    a = QSeries.from_terms({0: F(1)}, 5)
    b = QSeries.from_terms({1: F(1)}, 5)
    outsider = QSeries.from_terms({2: F(1)}, 5)
    assert in_span(a + b, [a, b])
    assert not in_span(outsider, [a, b])
    assert express_in_basis(outsider, [a, b]) is None


def test_zero_always_in_span():
    a = QSeries.from_terms({0: F(1), 2: F(3)}, 6)
    assert in_span(QSeries.zero(6), [a])
    assert in_span(QSeries.zero(6), [])

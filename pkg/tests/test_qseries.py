"""Exact Laurent q-series: arithmetic, operators, and the text format."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakforms.qseries import QSeries

F = Fraction


def qs(terms, trunc):
    return QSeries.from_terms({n: F(c) for n, c in terms.items()}, trunc)


# -- hypothesis strategy for small Laurent series ----------------------------

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def small_series(draw, min_lead=-5, max_exp=6):
    n = draw(st.integers(1, 6))
    exps = draw(st.lists(st.integers(min_lead, max_exp), min_size=n, max_size=n,
                         unique=True))
    trunc = max(exps) + draw(st.integers(1, 4))
    return QSeries.from_terms({e: draw(coeffs) for e in exps}, trunc)


# -- addition -----------------------------------------------------------------

def test_add_cancels_pole():
    a = qs({-1: 1, 0: 1}, 3)
    b = qs({-1: -1}, 3)
    assert (a + b) == qs({0: 1}, 3)


def test_add_zero_identity():
    f = qs({-2: 3, 1: F(1, 2)}, 4)
    assert f + QSeries.zero(4) == f


def test_add_truncation_propagates():
    a = qs({0: 1, 1: 1}, 2)
    b = qs({0: 1, 1: 1, 2: 1}, 3)
    total = a + b
    assert total.trunc == 2
    assert list(total.terms()) == [(0, F(2)), (1, F(2))]


# -- multiplication -----------------------------------------------------------

def test_mul_hand_expansion():
    a = qs({-1: 1, 0: 1}, 5)
    b = qs({0: -1, 1: 1}, 5)
    assert a * b == qs({-1: -1, 1: 1}, 4)


def test_mul_one_identity():
    f = qs({-3: 2, 0: -1, 2: F(5, 3)}, 6)
    assert f * QSeries.one(9) == f


def test_mul_trunc_rule():
    a = qs({-2: 1}, 7)   # lead -2, trunc 7
    b = qs({3: 1}, 11)   # lead 3, trunc 11
    assert (a * b).trunc == min(-2 + 11, 3 + 7)


def test_theta_squared_counts_lattice_points():
    # theta(z)^2 must count representations n = x^2 + y^2 over Z^2
    theta = qs({0: 1, 1: 2, 4: 2, 9: 2, 16: 2, 25: 2}, 30)
    sq = theta * theta
    for n in range(25):
        count = sum(1 for x in range(-6, 7) for y in range(-6, 7)
                    if x * x + y * y == n)
        assert sq.coef(n) == count
    assert sq.coef(1) == 4 and sq.coef(2) == 4 and sq.coef(3) == 0


# -- inversion ----------------------------------------------------------------

def test_invert_geometric_series():
    f = qs({0: 1, 1: -1}, 12)
    g = f.invert()
    assert all(g.coef(n) == 1 for n in range(10))


def test_invert_monomial():
    q = QSeries.monomial(1, 1, 8)
    assert q.invert().lead == -1
    assert q.invert().coef(-1) == 1


def test_invert_swaps_lead_sign():
    f = qs({1: 1, 2: 6, 3: 9}, 14)  # lead 1, like a hauptmodul
    assert f.invert().lead == -1


def test_invert_zero_series_rejected():
    with pytest.raises(ZeroDivisionError):
        QSeries.zero(5).invert()


@given(small_series())
@settings(max_examples=60, deadline=None)
def test_invert_two_sided(f):
    if f.is_zero():
        return
    g = f.invert()
    prod = f * g
    assert prod.coef(0) == 1
    assert all(prod.coef(n) == 0 for n in range(1, prod.trunc))


# -- U_m / V_m ----------------------------------------------------------------

def test_u_op_definition():
    f = qs({0: 1, 1: 2, 2: 3, 3: 4, 4: 5}, 5)
    assert f.u_op(2) == qs({0: 1, 1: 3, 2: 5}, 3)


def test_u_op_identity():
    f = qs({-4: 1, 0: 2, 3: -7}, 6)
    assert f.u_op(1) == f


def test_u_op_theta_on_squares():
    # theta lives on squares, so U_4 keeps 0, 4, 16, 36 -> 0, 1, 4, 9
    theta = qs({0: 1, 1: 2, 4: 2, 9: 2, 16: 2, 25: 2, 36: 2}, 49)
    out = theta.u_op(4)
    assert out.coef(0) == 1 and out.coef(1) == 2 and out.coef(4) == 2
    assert out.coef(2) == 0 and out.coef(3) == 0 and out.coef(9) == 2


def test_v_op_dilates():
    f = qs({-1: 1, 0: 5}, 2)
    out = f.v_op(4)
    assert out == qs({-4: 1, 0: 5}, 8)


@given(small_series(), st.integers(1, 16))
@settings(max_examples=80, deadline=None)
def test_u_after_v_is_identity(f, m):
    assert f.v_op(m).u_op(m) == f


def test_u_op_rejects_bad_m():
    with pytest.raises(ValueError):
        qs({0: 1}, 2).u_op(0)


# -- derivative ---------------------------------------------------------------

def test_d_op_termwise():
    f = qs({-2: 1, -1: 4, 0: 5}, 1)
    assert f.d_op() == qs({-2: -2, -1: -4}, 1)


def test_d_op_kills_constants():
    assert qs({0: 17}, 6).d_op().is_zero()


@given(small_series(), small_series())
@settings(max_examples=80, deadline=None)
def test_d_op_leibniz(f, g):
    lhs = (f * g).d_op()
    rhs = f.d_op() * g + f * g.d_op()
    assert lhs.agrees_with(rhs, upto=min(lhs.trunc, rhs.trunc))


# -- ring laws ----------------------------------------------------------------

@given(small_series(), small_series(), small_series())
@settings(max_examples=60, deadline=None)
def test_mul_associative_on_known_range(a, b, c):
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert lhs.agrees_with(rhs, upto=min(lhs.trunc, rhs.trunc))


@given(small_series(), small_series(), small_series())
@settings(max_examples=60, deadline=None)
def test_mul_distributes(a, b, c):
    lhs = a * (b + c)
    rhs = a * b + a * c
    assert lhs.agrees_with(rhs, upto=min(lhs.trunc, rhs.trunc))


@given(small_series(), small_series())
@settings(max_examples=60, deadline=None)
def test_add_commutes(a, b):
    assert a + b == b + a


# -- text format --------------------------------------------------------------

def test_text_round_trip_with_meta():
    f = qs({-12: 1, -11: F(1, 2), 0: F(5, 2), 8: -2}, 9)
    text = f.to_text({"level": 28, "weight2": -7})
    g, meta = QSeries.from_text(text)
    assert g == f
    assert meta["level"] == "28" and meta["weight2"] == "-7"


def test_text_header_fields():
    f = qs({-1: 1, 2: F(-3, 4)}, 5)
    lines = f.to_text().splitlines()
    assert lines[0] == "#qseries lead=-1 trunc=5"
    assert "-1 1/1" in lines and "2 -3/4" in lines
    # zero coefficients are omitted entirely
    assert not any(line.startswith("0 ") or line.startswith("1 ") for line in lines)


def test_text_rejects_unreduced_fraction():
    bad = "#qseries lead=0 trunc=3\n0 2/4\n"
    with pytest.raises(ValueError):
        QSeries.from_text(bad)


def test_text_rejects_decreasing_exponents():
    bad = "#qseries lead=0 trunc=5\n3 1/1\n1 1/1\n"
    with pytest.raises(ValueError):
        QSeries.from_text(bad)


def test_coef_beyond_trunc_is_an_error():
    f = qs({0: 1}, 4)
    with pytest.raises(IndexError):
        f.coef(4)
    assert f.coef(-3) == 0  # below lead is known to vanish


def test_truncate_cannot_invent_terms():
    f = qs({0: 1}, 4)
    with pytest.raises(ValueError):
        f.truncate(9)

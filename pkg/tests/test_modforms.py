"""Named forms: eta quotients, theta, Eisenstein series, hauptmoduls, dims.

The eta oracle below multiplies out prod(1 - q^n) naively with integer
lists, so it shares no code with the pentagonal-theorem fast path.
"""

from fractions import Fraction

import pytest

from weakforms.linalg import in_span
from weakforms.modforms import (
    canonical_cusp_form,
    cusp_basis,
    delta_series,
    dim_cusp,
    dim_modular,
    e2_prime,
    e2_series,
    e4_series,
    e6_series,
    eta_quotient,
    euler_product,
    hecke_operator,
    holomorphic_basis,
    index_mu,
    ladder_form,
    phi_hauptmodul,
    psi_hauptmodul,
    serre_derivative,
    sturm_bound,
    theta_series,
)

F = Fraction
ORACLE_TRUNC = 500


# -- oracle helpers ------------------------------------------------------------

def _conv(a, b, trunc):
    out = [0] * trunc
    for i, x in enumerate(a):
        if x == 0 or i >= trunc:
            continue
        for j, y in enumerate(b):
            if i + j >= trunc:
                break
            out[i + j] += x * y
    return out


def _eta_block(delta, trunc):
    """Coefficients of prod_{n>=1} (1 - q^(delta*n)) by literal expansion."""
    out = [0] * trunc
    out[0] = 1
    n = delta
    while n < trunc:
        # multiply by (1 - q^n) in place, highest index first
        for i in range(trunc - 1, n - 1, -1):
            out[i] -= out[i - n]
        n += delta
    return out


def _power(block, e, trunc):
    out = [0] * trunc
    out[0] = 1
    for _ in range(e):
        out = _conv(out, block, trunc)
    return out


def _invert_unit(block, trunc):
    inv = [0] * trunc
    inv[0] = 1
    for n in range(1, trunc):
        inv[n] = -sum(block[k] * inv[n - k] for k in range(1, n + 1) if block[k])
    return inv


def test_euler_product_matches_naive_expansion():
    naive = _eta_block(1, ORACLE_TRUNC)
    fast = euler_product(ORACLE_TRUNC)
    for n in range(ORACLE_TRUNC):
        assert fast.coef(n) == naive[n], n


def test_eta_quotient_c63_against_oracle():
    # eta(z)^6 eta(3z)^6, the weight-6 level-3 cusp form; lead (6+18)/24 = 1
    got = eta_quotient({1: 6, 3: 6}, ORACLE_TRUNC)
    assert got.lead == 1
    want = _conv(_power(_eta_block(1, ORACLE_TRUNC), 6, ORACLE_TRUNC),
                 _power(_eta_block(3, ORACLE_TRUNC), 6, ORACLE_TRUNC),
                 ORACLE_TRUNC)
    for n in range(ORACLE_TRUNC - 1):
        assert got.coef(n + 1) == want[n], n


def test_eta_quotient_with_negative_exponent_against_oracle():
    # eta(5z)^10 / eta(z)^2 has lead (50-2)/24 = 2; quotient oracle by
    # inverting the unit power series over Z
    trunc = 200
    got = eta_quotient({5: 10, 1: -2}, trunc)
    assert got.lead == 2
    num = _power(_eta_block(5, trunc), 10, trunc)
    den_inv = _invert_unit(_power(_eta_block(1, trunc), 2, trunc), trunc)
    want = _conv(num, den_inv, trunc)
    for n in range(trunc - 2):
        assert got.coef(n + 2) == want[n], n


def test_eta_quotient_needs_integral_lead():
    with pytest.raises(ValueError):
        eta_quotient({1: 1}, 10)


# -- the printed small expansions -----------------------------------------------

def test_weight4_level5_leading_terms():
    h = eta_quotient({5: 10, 1: -2}, 6)
    assert [h.coef(n) for n in range(2, 6)] == [1, 2, 5, 10]


def test_weight6_level7_cusp_form_lead():
    assert eta_quotient({7: 10, 1: 2}, 10).lead == 3


def test_weight4_level5_eta_lead():
    assert eta_quotient({1: 4, 5: 4}, 10).lead == 1


def test_weight6_level13_cusp_form():
    c = canonical_cusp_form(13, 6, 3, 40)
    assert c.lead == 3 and c.coef(3) == 1
    assert c.is_integral()
    assert in_span(c, cusp_basis(13, 6, 40))


# -- theta ----------------------------------------------------------------------

def test_theta_small_window():
    t = theta_series(5)
    assert list(t.terms()) == [(0, F(1)), (1, F(2)), (4, F(2))]
    assert t.coef(3) == 0


def test_theta_cubed_counts_representations():
    t = theta_series(30)
    cube = t * t * t
    for n in range(25):
        count = sum(1 for x in range(-5, 6) for y in range(-5, 6)
                    for z in range(-5, 6) if x * x + y * y + z * z == n)
        assert cube.coef(n) == count, n
    assert cube.coef(2) == 12


# -- Eisenstein series ------------------------------------------------------------

def _sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def test_e2_first_coefficient():
    assert e2_series(5).coef(1) == -24


def test_e2_prime_against_divisor_sums():
    # (p E_2(pz) - E_2(z)) / (p - 1) termwise from sigma_1
    for p in (3, 5, 7, 13):
        f = e2_prime(p, 60)
        assert f.coef(0) == 1
        for n in range(1, 60):
            mult = F(24, p - 1)
            want = mult * _sigma(n) - mult * p * (_sigma(n // p) if n % p == 0 else 0)
            assert f.coef(n) == want, (p, n)
        assert f.is_integral()


def test_e2_prime_level5_printed_values():
    f = e2_prime(5, 3)
    assert [f.coef(0), f.coef(1), f.coef(2)] == [1, 6, 18]


def test_classical_eisenstein_normalizations():
    assert e4_series(3).coef(1) == 240
    assert e6_series(3).coef(1) == -504
    d = delta_series(8)
    assert [d.coef(n) for n in range(1, 8)] == [1, -24, 252, -1472, 4830, -6048, -16744]


# -- hauptmoduls ------------------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_hauptmodul_valuations(p):
    phi = phi_hauptmodul(p, 20)
    psi = psi_hauptmodul(p, 20)
    assert phi.lead == 1 and phi.coef(1) == 1
    assert psi.lead == -1
    prod = phi * psi
    assert prod.coef(0) == 1
    assert all(prod.coef(n) == 0 for n in range(1, prod.trunc))


def test_psi3_dilated_lead():
    assert psi_hauptmodul(3, 10).v_op(4).lead == -4


def test_phi13_exponent_is_two():
    # 24/(13-1) = 2 copies of eta(13z)/eta(z)
    phi = phi_hauptmodul(13, 30)
    assert phi == eta_quotient({13: 2, 1: -2}, 30)


# -- ladder forms -------------------------------------------------------------------

@pytest.mark.parametrize("p,step,lead", [(3, 6, 2), (5, 4, 2), (7, 6, 4), (13, 12, 14)])
def test_ladder_form_shape(p, step, lead):
    f, got_step = ladder_form(p, 40)
    assert got_step == step
    assert f.lead == lead
    assert f.coef(lead) == 1
    assert f.is_integral()


# -- dimensions, index, Sturm bound ---------------------------------------------------

def test_index_values():
    assert index_mu(12) == 24
    assert index_mu(5) == 6
    assert index_mu(1) == 1
    assert index_mu(52) == 84


@pytest.mark.parametrize("N,weight2,want", [(12, 12, 13), (5, 4, 2), (7, 0, 1)])
def test_sturm_bound(N, weight2, want):
    assert sturm_bound(N, weight2) == want


def test_dimensions_against_bases():
    for N, k in [(5, 4), (5, 10), (7, 6), (13, 6), (3, 8)]:
        basis = holomorphic_basis(N, k, 40)
        assert len(basis) == dim_modular(N, k), (N, k)
        leads = [b.lead for b in basis]
        assert leads == sorted(leads)
        cusps = cusp_basis(N, k, 40)
        assert len(cusps) == dim_cusp(N, k), (N, k)
        assert all(c.lead >= 1 for c in cusps)


def test_level52_weight2_dimension():
    assert dim_modular(52, 2) == 10
    assert len(holomorphic_basis(52, 2, 40)) == 10


def test_weight10_level5_cusp_dimension():
    assert dim_cusp(5, 10) == 3
    assert [c.lead for c in cusp_basis(5, 10, 30)] == [1, 2, 3]


# -- operators -------------------------------------------------------------------------

def test_hecke_t2_on_delta():
    d = delta_series(30)
    t2 = hecke_operator(d, 2, 12, 1)
    assert t2 == (-24) * d.truncate(t2.trunc)


def test_serre_derivative_of_e4():
    sd = serre_derivative(e4_series(20), 4)
    assert sd == F(-1, 3) * e6_series(20).truncate(sd.trunc)

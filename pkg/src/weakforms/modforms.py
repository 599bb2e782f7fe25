"""Holomorphic modular forms on Gamma_0(N) as exact q-expansions.

The central entry point is :func:`holomorphic_basis`, which returns a
row-reduced basis of M_k(Gamma_0(N)) (trivial character, even weight)
certified against the classical dimension formula.  Bases are assembled
greedily from eta quotients, Eisenstein series, embeddings from lower
levels, products of lower weights, Serre derivatives and, when those
stall, Hecke translates.

Also here: the Dedekind eta machinery, the named series the rest of the
package is built from (theta, the Eisenstein ladder, hauptmoduls) and the
per-level "ladder" forms whose divisor is concentrated at infinity.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count, product as iproduct
from math import gcd, isqrt

from weakforms.arith import divisors, factorize, is_square, kronecker
from weakforms.linalg import Echelon
from weakforms.qseries import QSeries

__all__ = [
    "euler_product", "eta_quotient", "eta_cusp_order",
    "theta_series", "e2_series", "e4_series", "e6_series", "delta_series",
    "e2_prime", "phi_hauptmodul", "psi_hauptmodul", "f2_series", "j_series",
    "index_mu", "cusp_number", "elliptic2", "elliptic3", "genus_x0",
    "dim_modular", "dim_cusp", "sturm_bound",
    "hecke_operator", "serre_derivative",
    "holomorphic_basis", "cusp_basis", "canonical_cusp_form", "ladder_form",
]


# ---------------------------------------------------------------------------
# eta and friends

def euler_product(trunc: int) -> QSeries:
    """prod_{n>=1} (1 - q^n) via the pentagonal number theorem."""
    terms = {0: 1}
    for k in count(1):
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= trunc and g2 >= trunc:
            break
        s = 1 if k % 2 == 0 else -1
        if g1 < trunc:
            terms[g1] = s
        if g2 < trunc:
            terms[g2] = s
    return QSeries.from_terms(terms, trunc)


def eta_quotient(r: dict[int, int], trunc: int) -> QSeries:
    """Expansion of prod_delta eta(delta z)^{r_delta}.

    The total eta power must satisfy 24 | sum(delta * r_delta) so that the
    quotient lives in integer q-powers.
    """
    s = sum(d * e for d, e in r.items())
    if s % 24:
        raise ValueError(f"eta quotient has fractional leading exponent: sum={s}")
    lead = s // 24
    length = trunc - lead
    if length <= 0:
        return QSeries.zero(trunc)
    out = QSeries.one(length)
    for d, e in sorted(r.items()):
        if e == 0:
            continue
        base = euler_product(length // d + 1).v_op(d).truncate(length)
        out = out * base**e
    return out.shift(lead)


def eta_cusp_order(r: dict[int, int], level: int, c: int) -> Fraction:
    """Order of vanishing of an eta quotient at the cusp with denominator c.

    Normalised so that the order at the cusp infinity (c = level) equals the
    leading q-exponent.
    """
    if level % c:
        raise ValueError(f"cusp denominator {c} does not divide the level {level}")
    total = Fraction(0)
    for d, e in r.items():
        total += Fraction(gcd(c, d) ** 2 * e, gcd(c, level // c) * c * d)
    return Fraction(level, 24) * total


# ---------------------------------------------------------------------------
# classical series

def _sigma_sieve(power: int, n: int) -> list[int]:
    """[sigma_power(0)=0, sigma_power(1), ..., sigma_power(n-1)]"""
    out = [0] * n
    for d in range(1, n):
        dp = d**power
        for m in range(d, n, d):
            out[m] += dp
    return out


def _bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0 .. B_n (with B_1 = -1/2)."""
    out = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        comb = 1
        for j in range(m):
            acc += comb * out[j] / (m - j + 1)
            comb = comb * (m - j) // (j + 1)
        out.append(-acc)
    return out


def _bernoulli_poly(j: int, x: Fraction) -> Fraction:
    bn = _bernoulli_numbers(j)
    acc = Fraction(0)
    comb = 1
    for i in range(j + 1):
        acc += comb * bn[i] * x ** (j - i)
        comb = comb * (j - i) // (i + 1)
    return acc


def char_eisenstein(p: int, j: int, trunc: int, flip: bool = False) -> QSeries:
    """Weight-j Eisenstein series attached to the quadratic character mod p.

    With flip=False this is the series with coefficients sum_{d|n} chi(d) d^(j-1)
    and constant term -B_{j,chi}/(2j); with flip=True the character sits on the
    complementary divisor and the constant term vanishes.  Weight 1 is special:
    there is a single series per character, so both flips agree there and keep
    the constant term.  Lives in M_j(Gamma_0(p), chi); products of two of them
    have trivial character.
    """
    if (1 if p % 4 == 3 else 0) != j % 2:
        raise ValueError(f"parity mismatch: weight {j} with the character mod {p}")
    chi = [kronecker(a, p) for a in range(p)]
    terms: dict[int, Fraction] = {}
    for n in range(1, trunc):
        acc = 0
        for d in divisors(n):
            acc += chi[(d if not flip else n // d) % p] * d ** (j - 1)
        terms[n] = Fraction(acc)
    if not flip or j == 1:
        b = sum(chi[a % p] * _bernoulli_poly(j, Fraction(a, p)) for a in range(1, p))
        terms[0] = -Fraction(p ** (j - 1)) * b / (2 * j)
    return QSeries.from_terms(terms, trunc)


def _e1_fund(disc: int, trunc: int) -> QSeries:
    """Weight-1 Eisenstein series for the odd quadratic character of a
    negative fundamental discriminant, constant term -B_{1,chi}/2."""
    terms: dict[int, Fraction] = {}
    for n in range(1, trunc):
        terms[n] = Fraction(sum(kronecker(disc, d) for d in divisors(n)))
    b1 = Fraction(sum(kronecker(disc, a) * a for a in range(1, -disc)), -disc)
    terms[0] = -b1 / 2
    return QSeries.from_terms(terms, trunc)


def theta_series(trunc: int) -> QSeries:
    terms = {0: 1}
    n = 1
    while n * n < trunc:
        terms[n * n] = 2
        n += 1
    return QSeries.from_terms(terms, trunc)


def e2_series(trunc: int) -> QSeries:
    sig = _sigma_sieve(1, max(trunc, 1))
    return QSeries(0, [1] + [-24 * s for s in sig[1:]], trunc) if trunc > 0 \
        else QSeries.zero(trunc)


def e4_series(trunc: int) -> QSeries:
    sig = _sigma_sieve(3, max(trunc, 1))
    return QSeries(0, [1] + [240 * s for s in sig[1:]], trunc)


def e6_series(trunc: int) -> QSeries:
    sig = _sigma_sieve(5, max(trunc, 1))
    return QSeries(0, [1] + [-504 * s for s in sig[1:]], trunc)


def delta_series(trunc: int) -> QSeries:
    return eta_quotient({1: 24}, trunc)


def j_series(trunc: int) -> QSeries:
    e4 = e4_series(trunc + 2)
    return e4**3 / delta_series(trunc + 2)


def e2_prime(p: int, trunc: int) -> QSeries:
    """(p E_2(pz) - E_2(z)) / (p - 1): weight 2, level p, constant term 1."""
    e2 = e2_series(trunc)
    return (p * e2.v_op(p).truncate(trunc) - e2) / (p - 1)


def phi_hauptmodul(p: int, trunc: int) -> QSeries:
    """(eta(pz)/eta(z))^(24/(p-1)): leading term q, simple pole at the cusp 0."""
    if (p - 1) and 24 % (p - 1):
        raise ValueError(f"no hauptmodul of this shape at level {p}")
    e = 24 // (p - 1)
    return eta_quotient({p: e, 1: -e}, trunc)


def psi_hauptmodul(p: int, trunc: int) -> QSeries:
    """1/phi: leading term q^{-1}, vanishing at the cusp 0."""
    return phi_hauptmodul(p, trunc + 2).invert().truncate(trunc)


def f2_series(trunc: int) -> QSeries:
    """eta(4z)^8/eta(2z)^4, the weight 2 form on Gamma_0(4) vanishing only at infinity."""
    return eta_quotient({4: 8, 2: -4}, trunc)


# ---------------------------------------------------------------------------
# dimensions

def index_mu(N: int) -> int:
    mu = N
    for p, _ in factorize(N):
        mu += mu // p
    return mu


def cusp_number(N: int) -> int:
    total = 0
    for d in divisors(N):
        g = gcd(d, N // d)
        phi = g
        for p, _ in factorize(g) if g > 1 else []:
            phi -= phi // p
        total += phi
    return total


def elliptic2(N: int) -> int:
    if N % 4 == 0:
        return 0
    e = 1
    for p, _ in factorize(N):
        e *= 1 + (0 if p == 2 else kronecker(-1, p))
    return e


def elliptic3(N: int) -> int:
    if N % 9 == 0:
        return 0
    e = 1
    for p, _ in factorize(N):
        e *= 1 + kronecker(-3, p)
    return e


def genus_x0(N: int) -> int:
    g = Fraction(1) + Fraction(index_mu(N), 12) - Fraction(elliptic2(N), 4) \
        - Fraction(elliptic3(N), 3) - Fraction(cusp_number(N), 2)
    assert g.denominator == 1
    return int(g)


def dim_modular(N: int, k: int) -> int:
    """dim M_k(Gamma_0(N)) for even k >= 0 with trivial character."""
    if k < 0 or k % 2:
        return 0
    if k == 0:
        return 1
    g = genus_x0(N)
    if k == 2:
        return g + cusp_number(N) - 1
    return (k - 1) * (g - 1) + (k // 4) * elliptic2(N) \
        + (k // 3) * elliptic3(N) + (k // 2) * cusp_number(N)


def dim_cusp(N: int, k: int) -> int:
    if k < 2 or k % 2:
        return 0
    if k == 2:
        return genus_x0(N)
    return dim_modular(N, k) - cusp_number(N)


def sturm_bound(N: int, weight2: int) -> int:
    """Exponent bound certifying equality of forms of weight weight2/2 on Gamma_0(N)."""
    mu = index_mu(N)
    b = (weight2 * mu + 23) // 24  # ceil(k mu / 12)
    return b + 1


# ---------------------------------------------------------------------------
# operators on expansions

def hecke_operator(f: QSeries, m: int, k: int, N: int) -> QSeries:
    """T_m on M_k(Gamma_0(N)) for gcd(m, N) = 1, on q-expansion level."""
    if gcd(m, N) != 1:
        raise ValueError(f"T_{m} with m not coprime to the level {N}")
    if f.lead < 0:
        raise ValueError("hecke_operator expects a holomorphic expansion")
    trunc = -(-f.trunc // m)
    terms: dict[int, Fraction] = {}
    for n in range(trunc):
        acc = Fraction(0)
        for d in divisors(gcd(m, n)) if n else divisors(m):
            acc += d ** (k - 1) * f.coef(m * n // (d * d))
        terms[n] = acc
    return QSeries.from_terms(terms, trunc)


def serre_derivative(f: QSeries, k: int) -> QSeries:
    """q df/dq - (k/12) E_2 f, sending weight k to weight k+2."""
    return f.d_op() - Fraction(k, 12) * (e2_series(f.trunc - f.lead) * f)


# ---------------------------------------------------------------------------
# eta quotient search

def _eta_candidates(N: int, k: int, bound: int = 12):
    """Yield exponent dicts of holomorphic weight-k eta quotients on Gamma_0(N).

    For levels with many divisors the search is restricted to quotients
    supported on at most four divisors; the basis builder has other atom
    sources to fall back on.
    """
    divs = divisors(N)
    supports = [divs] if len(divs) <= 4 else _subsets(divs, 4)
    seen = set()
    for sup in supports:
        m = len(sup)
        for partial in iproduct(range(-bound, bound + 1), repeat=m - 1):
            last = 2 * k - sum(partial)
            if abs(last) > bound:
                continue
            r = dict(zip(sup, partial + (last,)))
            key = tuple(sorted((d, e) for d, e in r.items() if e))
            if not key or key in seen:
                continue
            if sum(d * e for d, e in r.items()) % 24:
                continue
            if sum((N // d) * e for d, e in r.items()) % 24:
                continue
            # trivial character: (-1)^k prod d^{r_d} must be a rational square
            num = den = 1
            for d, e in r.items():
                if e > 0:
                    num *= d**e
                else:
                    den *= d**(-e)
            if k % 2 and num * den > 0:
                continue
            if not is_square(num * den):
                continue
            if any(eta_cusp_order(r, N, c) < 0 for c in divs):
                continue
            seen.add(key)
            yield r


def _subsets(xs, size):
    from itertools import combinations
    out = []
    for s in combinations(xs, min(size, len(xs))):
        out.append(list(s))
    return out


# ---------------------------------------------------------------------------
# bases of holomorphic spaces

_basis_cache: dict[tuple[int, int], list[QSeries]] = {}
_partial_cache: dict[tuple[int, int], list[QSeries]] = {}


def _atoms(N: int, k: int, t: int):
    """Yield weight-k level-N holomorphic expansions, cheap sources first."""
    if N == 1:
        e4 = e4_series(t)
        e6 = e6_series(t)
        for a in range(k // 4 + 1):
            rem = k - 4 * a
            if rem % 6 == 0:
                yield e4**a * e6 ** (rem // 6)
        return
    # embeddings f(dz) from lower levels
    for M in divisors(N):
        if M == N:
            continue
        sub = holomorphic_basis(M, k, t, partial=True)
        for d in divisors(N // M):
            for f in sub:
                if d == 1:
                    yield f
                else:
                    yield f.truncate(-(-t // d)).v_op(d).truncate(t)
    if k == 2:
        e2 = e2_series(t)
        for d in divisors(N):
            if d > 1:
                yield d * e2.v_op(d).truncate(t) - e2
        p = N // 4
        if N % 4 == 0 and p > 2 and factorize(p) == [(p, 1)]:
            # squares and cross-products of odd weight-1 Eisenstein series;
            # these reach cusp components on Gamma_0(4p) that no eta
            # quotient supports (the levels 2p carry none)
            a4 = _e1_fund(-4, t)
            a4p = a4.truncate(-(-t // p)).v_op(p).truncate(t)
            yield (a4 * a4p).truncate(t)
            if p % 4 == 1:
                e = _e1_fund(-N, t)
                yield (e * e).truncate(t)
                # the mixed-pair series (character mod p times odd mod 4)
                # also carries the level-N character, so these products are
                # trivial too
                pair = QSeries.from_terms(
                    {n: Fraction(sum(kronecker(d, p) * kronecker(-4, n // d)
                                     for d in divisors(n)))
                     for n in range(1, t)}, t)
                yield (pair * e).truncate(t)
                yield (pair * pair).truncate(t)
    for r in _eta_candidates(N, k):
        yield eta_quotient(r, t)
    if N > 2 and N % 2 and len(factorize(N)) == 1:
        # products of two quadratic-character Eisenstein series: these reach
        # newform components that eta quotients and Hecke translates miss
        jpar = 1 if N % 4 == 3 else 0
        j = jpar if jpar else 2
        while j <= k - max(jpar, 1):
            j2 = k - j
            if j2 % 2 == jpar:
                for fa in (False, True):
                    for fb in (False, True):
                        a = char_eisenstein(N, j, t, flip=fa)
                        b = char_eisenstein(N, j2, t, flip=fb)
                        yield (a * b).truncate(t)
            j += 2
    if k >= 4:
        for f in holomorphic_basis(N, k - 2, t, partial=True):
            yield serre_derivative(f, k - 2)
        for k1 in range(2, k // 2 + 1, 2):
            a_part = holomorphic_basis(N, k1, t, partial=True)
            b_part = holomorphic_basis(N, k - k1, t, partial=True)
            for f in a_part:
                for g in b_part:
                    yield (f * g).truncate(t)


def holomorphic_basis(N: int, k: int, trunc: int, partial: bool = False) -> list[QSeries]:
    """Row-reduced basis of M_k(Gamma_0(N)), trivial character.

    The result is checked against the dimension formula; a RuntimeError
    means the atom sources could not fill the space (with partial=True the
    best rank found is returned instead, for use as raw material).
    """
    if k % 2 or k < 0:
        return []
    if k == 0:
        return [QSeries.one(trunc)]
    key = (N, k)
    cached = _basis_cache.get(key)
    if cached is not None and (not cached or cached[0].trunc >= trunc):
        return [f.truncate(trunc) for f in cached]
    if partial:
        got = _partial_cache.get(key)
        if got is not None and (not got or got[0].trunc >= trunc):
            return [f.truncate(trunc) for f in got]

    d = dim_modular(N, k)
    # leading exponents can reach the valence bound, so the working window
    # must be at least that long for the rank to be attainable at all
    t_work = max(trunc, sturm_bound(N, 2 * k) + 4)
    ech = Echelon(t_work)
    for f in _atoms(N, k, t_work):
        if ech.insert(f) and len(ech) == d:
            break

    if len(ech) < d:
        _hecke_escalation(ech, N, k, t_work, d)

    rows = ech.rows()
    if len(rows) > d:
        raise RuntimeError(
            f"dimension formula violated: M_{k}(Gamma_0({N})) gave {len(rows)} > {d} forms"
        )
    if len(rows) < d and not partial:
        raise RuntimeError(
            f"could not span M_{k}(Gamma_0({N})): found {len(rows)} of {d} dimensions"
        )
    if len(rows) == d:
        _basis_cache[key] = rows
    else:
        _partial_cache[key] = rows
    return [f.truncate(trunc) for f in rows] if t_work > trunc else rows


def _hecke_escalation(ech: Echelon, N: int, k: int, trunc: int, d: int) -> None:
    """Grow the echelon with Hecke and U_q translates of longer-window copies.

    Each schedule entry costs a factor of that size in working window, so the
    single U_q passes (which already finish most stalled spaces) run before
    the threefold coprime-Hecke pass.
    """
    qs = [q for q, _ in factorize(N)] if N > 1 else []
    ms = [m for m in (2, 3, 5, 7) if gcd(m, N) == 1][:2]
    schedules = [[q] for q in qs]
    if len(qs) > 1:
        schedules.append(qs)
    if ms:
        schedules.append([ms[0], ms[-1], ms[0]])
    for schedule in schedules:
        factor = 1
        for m in schedule:
            factor *= m
        t_big = trunc * factor
        big = Echelon(t_big)
        for f in _atoms(N, k, t_big):
            if big.insert(f) and len(big) == d:
                break
        t_cur = t_big
        for m in schedule:
            t_cur //= m
            nxt = Echelon(t_cur)
            for row in big.rows():
                nxt.insert(row)
                if gcd(m, N) == 1:
                    nxt.insert(hecke_operator(row, m, k, N))
                else:
                    nxt.insert(row.u_op(m))
                if len(nxt) == d:
                    break
            big = nxt
            if len(big) == d:
                break
        for row in big.rows():
            if ech.insert(row.truncate(trunc)) and len(ech) == d:
                return


def cusp_basis(p: int, k: int, trunc: int) -> list[QSeries]:
    """Row-reduced basis of S_k(Gamma_0(p)) for prime p.

    A holomorphic form vanishes at the cusp 0 exactly when dividing by the
    hauptmodul keeps it holomorphic, so the cusp space is psi_p times the
    part of M_k with leading exponent >= 2.
    """
    full = holomorphic_basis(p, k, trunc + 2)
    psi = psi_hauptmodul(p, trunc + 2)
    ech = Echelon(trunc)
    for f in full:
        if f.lead >= 2:
            ech.insert((psi * f).truncate(trunc))
    rows = ech.rows()
    want = dim_cusp(p, k)
    if len(rows) != want:
        raise RuntimeError(
            f"S_{k}(Gamma_0({p})) construction gave {len(rows)} of {want} forms"
        )
    return rows


def canonical_cusp_form(p: int, k: int, lead: int, trunc: int) -> QSeries:
    """The row-reduced cusp form of weight k, level p with prescribed leading exponent."""
    for f in cusp_basis(p, k, trunc):
        if f.lead == lead:
            return f
    raise ValueError(f"S_{k}(Gamma_0({p})) has no element with leading term q^{lead}")


_LADDER_WEIGHT = {3: 6, 5: 4, 7: 6, 13: 12}


def ladder_form(p: int, trunc: int) -> tuple[QSeries, int]:
    """The weight-w form on Gamma_0(p) whose divisor sits entirely at infinity.

    Returns (form, w).  Multiplying by it adds poles nowhere; dividing by it
    moves a window of weakly holomorphic forms down by w in weight.  The
    leading exponent always saturates the valence bound, which certifies
    that there are no other zeros.
    """
    if p == 3:
        h = eta_quotient({3: 18, 1: -6}, trunc)
    elif p == 5:
        h = eta_quotient({5: 10, 1: -2}, trunc)
    elif p == 7:
        h = eta_quotient({7: 10, 1: 2}, trunc + 2) * phi_hauptmodul(7, trunc + 2)
        h = h.truncate(trunc)
    elif p == 13:
        rows = holomorphic_basis(13, 12, trunc)
        h = rows[-1]
    else:
        raise ValueError(f"no ladder form implemented for level {p}")
    w = _LADDER_WEIGHT[p]
    want = (w * index_mu(p)) // 12
    if h.lead != want:
        raise RuntimeError(
            f"ladder form at level {p} has leading exponent {h.lead}, expected {want}"
        )
    return h, w

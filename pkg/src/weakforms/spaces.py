"""Canonical row-reduced families of weakly holomorphic modular forms.

Two flavours of family are provided.

Integer weight, odd prime level ``p``: the members have poles only at the
cusp at infinity.  They are produced by dividing holomorphic bases of higher
weight by a power of a fixed form whose divisor is concentrated at infinity.
A companion family spans the subspace vanishing at the cusp 0.

Half integral weight, level ``4p`` (and 4): the members satisfy the Kohnen
support condition -- coefficients live on exponents ``0, (-1)**s mod 4``
where the weight is ``s + 1/2`` -- and have poles only at the infinity class
of cusps.  Holomorphic bases for a block of weights are shipped as data
files; higher weights are reached by multiplying the two top members by a
fixed weight-raising form and powers of a level hauptmodul in ``4z``, lower
weights by dividing out that form (for level 52 a weight 12 form is used,
since the weight 4 cusp form there vanishes at elliptic points and must not
be divided by).  Level 4 bases are solved directly from theta quotients.

Every member is normalized ``q**(-m) + O(q**(n0))`` with zeros at the other
members' leading exponents, so coefficient duality statements apply to them
directly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .config import Config
from .linalg import Echelon, in_span
from .modforms import (
    dim_cusp,
    dim_modular,
    eta_quotient,
    holomorphic_basis,
    ladder_form,
    psi_hauptmodul,
    sturm_bound,
    theta_series,
)
from .qseries import QSeries

__all__ = [
    "plus_residues",
    "plus_cusp_rows",
    "plus_family_element",
    "plus_family_rows",
    "plus_zero_element",
    "plus_zero_rows",
    "plus_top_lead",
    "integer_family_element",
    "integer_family_rows",
    "integer_zero_element",
    "integer_zero_rows",
    "validate_seed",
    "SeedReport",
    "clear_caches",
]

GENUS_ZERO_PRIMES = (3, 5, 7, 13)

# weight2 ranges of the shipped holomorphic bases, keyed by 4p
SEED_RANGE = {12: (11, 21), 20: (11, 17), 28: (11, 21), 52: (1, 23)}

# weight2 increment and leading exponent of the climb form at each level.
# At p = 13 the short multiplier gains too little vanishing per hop to reach
# the deepest leads of the next space, so climbing reuses the weight-12
# ladder there; the wide seed range keeps every odd weight2 reachable.
_CLIMB_STEP = {3: 12, 5: 8, 7: 12, 13: 24}
_CLIMB_LEAD = {3: 8, 5: 8, 7: 16, 13: 56}
# ... and of the division form used to reach lower weights
_DESC_STEP = {3: 12, 5: 8, 7: 12, 13: 24}
_DESC_LEAD = {3: 8, 5: 8, 7: 16, 13: 56}

_SEED_TRUNC = 420


def _seed_dir(config: Config | None) -> str:
    if config is not None:
        return config.seed_dir
    return os.path.join(os.path.dirname(__file__), "data", "seeds")


def plus_residues(weight2: int) -> tuple[int, int]:
    """Exponent residues mod 4 allowed in the plus space of weight ``weight2/2``."""
    if weight2 % 2 == 0:
        raise ValueError("plus space weights have odd weight2")
    s = (weight2 - 1) // 2
    return (0, 1 if s % 2 == 0 else 3)


def _is_plus_supported(f: QSeries, residues) -> bool:
    return all(n % 4 in residues for n, _ in f.terms())


# ---------------------------------------------------------------------------
# auxiliary forms in 4z
# ---------------------------------------------------------------------------


def _in_4z(f: QSeries) -> QSeries:
    return f.v_op(4)


def _climb_form(p: int, trunc: int) -> QSeries:
    """Weight-raising multiplier in ``4z``, with divisor over the infinity
    class of cusps only."""
    inner = trunc // 4 + 2
    return _in_4z(ladder_form(p, inner)[0])


def _descent_form(p: int, trunc: int) -> QSeries:
    """Division form in ``4z`` whose zero divisor sits over the infinity
    class, so dividing by it cannot create poles elsewhere."""
    inner = trunc // 4 + 2
    return _in_4z(ladder_form(p, inner)[0])


def _psi_4z(p: int, trunc: int) -> QSeries:
    return _in_4z(psi_hauptmodul(p, trunc // 4 + 2))


# ---------------------------------------------------------------------------
# seed ingestion (levels 12, 20, 28, 52)
# ---------------------------------------------------------------------------

_seed_cache: dict = {}


def _plus_dim(level: int, weight2: int) -> int:
    """Dimension of the holomorphic plus space, via the isomorphism with an
    integer weight space of the odd part of the level."""
    s = (weight2 - 1) // 2
    if s < 0:
        return 0
    p = level // 4 if level > 4 else 1
    return dim_modular(p, 2 * s)


def _load_seeds(level: int, weight2: int, config: Config | None) -> tuple[QSeries, ...]:
    key = (level, weight2, _seed_dir(config))
    if key in _seed_cache:
        return _seed_cache[key]
    path = os.path.join(_seed_dir(config), str(level), str(weight2))
    if not os.path.isdir(path):
        raise RuntimeError("missing seed directory %s" % path)
    names = sorted((n for n in os.listdir(path) if n.endswith(".qs")),
                   key=lambda n: int(n.split(".")[0]))
    residues = plus_residues(weight2)
    rows = []
    for name in names:
        with open(os.path.join(path, name), "r", encoding="ascii") as fh:
            f, meta = QSeries.from_text(fh.read())
        if int(meta.get("level", -1)) != level or int(meta.get("weight2", 0)) != weight2:
            raise RuntimeError("seed %s/%s has inconsistent metadata" % (path, name))
        if not _is_plus_supported(f, residues):
            raise RuntimeError("seed %s/%s breaks the support condition" % (path, name))
        rows.append(f)
    dim = _plus_dim(level, weight2)
    if len(rows) != dim:
        raise RuntimeError(
            "seed basis at level %d weight2 %d has %d members, expected %d"
            % (level, weight2, len(rows), dim)
        )
    ech = Echelon(min(r.trunc for r in rows))
    for r in rows:
        ech.insert(r)
    out = tuple(ech.rows())
    if len(out) != dim:
        raise RuntimeError("seed basis at level %d weight2 %d is not independent" % (level, weight2))
    _seed_cache[key] = out
    return out


@dataclass(frozen=True)
class SeedReport:
    level: int
    weight2: int
    members: int
    verified_to: int

    def __str__(self) -> str:
        return ("seeds at level %d weight2 %d: %d members modular of the "
                "claimed type through q^%d" %
                (self.level, self.weight2, self.members, self.verified_to))


def validate_seed(level: int, weight2: int, config: Config | None = None) -> SeedReport:
    """Re-certify a shipped seed basis from scratch.

    Loading already enforces the support condition, metadata, dimension and
    independence.  This adds the expensive check: multiplying by the theta
    series (once or thrice, so the weight lands even) must give a form inside
    an independently built holomorphic basis, tested past the Sturm bound.
    Integrality of the product is checked along the way.
    """
    rows = _load_seeds(level, weight2, config)
    s = (weight2 - 1) // 2
    copies = 1 if s % 2 else 3
    k = s + (copies + 1) // 2
    bound = sturm_bound(level, 2 * k) + 8
    theta = theta_series(bound)
    mult = theta if copies == 1 else theta * theta * theta
    basis = holomorphic_basis(level, k, bound)
    for f in rows:
        g = (mult * f).truncate(bound)
        if any(c.denominator != 1 for _, c in g.terms()):
            raise RuntimeError(
                "seed rejected: theta multiple at level %d weight2 %d is not "
                "integral" % (level, weight2))
        if not in_span(g, basis):
            raise RuntimeError(
                "seed rejected: not modular of claimed type (level %d, "
                "weight2 %d)" % (level, weight2))
    return SeedReport(level, weight2, len(rows), bound - 1)


# ---------------------------------------------------------------------------
# level 4: solve for plus-supported theta quotients directly
# ---------------------------------------------------------------------------


def _plus_nullspace(atoms, residues, lead_floor: int) -> list[QSeries]:
    """Combinations of the atoms supported only on the allowed residues.

    Every exponent in the common window that lies off the residue classes
    contributes one linear condition; the returned forms are the full
    solution space, echelonized.
    """
    trunc = min(a.trunc for a in atoms)
    bad = [n for n in range(lead_floor, trunc) if n % 4 not in residues]
    # Gaussian elimination on the atom coefficients, tracking combinations
    combos = [[Fraction(1 if i == j else 0) for j in range(len(atoms))] for i in range(len(atoms))]
    vecs = [[a[n] for n in bad] for a in atoms]
    pivot_of_col: dict[int, int] = {}
    alive = list(range(len(atoms)))
    for col in range(len(bad)):
        piv = None
        for i in alive:
            if i in pivot_of_col.values():
                continue
            if vecs[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        pivot_of_col[col] = piv
        pv = vecs[piv][col]
        for i in alive:
            if i == piv or vecs[i][col] == 0:
                continue
            ratio = vecs[i][col] / pv
            vecs[i] = [x - ratio * y for x, y in zip(vecs[i], vecs[piv])]
            combos[i] = [x - ratio * y for x, y in zip(combos[i], combos[piv])]
    ech = Echelon(trunc)
    used = set(pivot_of_col.values())
    for i in alive:
        if i in used:
            continue
        f = None
        for c, a in zip(combos[i], atoms):
            if c == 0:
                continue
            term = a * c
            f = term if f is None else f + term
        if f is not None and not f.is_zero():
            ech.insert(f)
    return ech.rows()


_level4_cache: dict = {}


def _level4_rows(weight2: int, depth: int, trunc: int) -> tuple[QSeries, ...]:
    """Family rows at level 4 with leads reaching ``-4*depth``."""
    key = (weight2, depth, trunc)
    if key in _level4_cache:
        return _level4_cache[key]
    s = (weight2 - 1) // 2
    i = 1 if s % 2 else 3
    W = (weight2 + i) // 2  # integer weight of the theta multiple
    residues = plus_residues(weight2)
    work = trunc + 12 * depth + i + 16
    theta_inv = theta_series(work).invert() ** i
    delta4_inv = (eta_quotient({1: 24}, work // 4 + 2).v_op(4)) ** (-depth) if depth else None
    atoms = []
    for g in holomorphic_basis(4, W + 12 * depth, work):
        a = g * theta_inv
        if depth:
            a = a * delta4_inv
        atoms.append(a)
    rows = _plus_nullspace(atoms, residues, -4 * depth)
    if depth == 0:
        expect = _plus_dim(4, weight2)
        if len(rows) != expect:
            raise RuntimeError(
                "level 4 plus space of weight2 %d came out %d-dimensional, expected %d"
                % (weight2, len(rows), expect)
            )
    out = tuple(rows)
    _level4_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# levels 4p: holomorphic bases by seed + climb, weak families by descent
# ---------------------------------------------------------------------------

_holo_cache: dict = {}
_weak_cache: dict = {}


def _top_by_residue(rows) -> list[QSeries]:
    best: dict[int, QSeries] = {}
    for r in rows:
        cls = r.lead % 4
        if cls not in best or r.lead > best[cls].lead:
            best[cls] = r
    return [best[c] for c in sorted(best)]


def _holo_plus_rows(level: int, weight2: int, config: Config | None) -> tuple[QSeries, ...]:
    """Row-reduced holomorphic plus basis at the full available truncation."""
    key = (level, weight2, _seed_dir(config))
    if key in _holo_cache:
        return _holo_cache[key]
    lo, hi = SEED_RANGE[level]
    if weight2 < lo:
        raise ValueError("no holomorphic construction below weight2 %d at level %d" % (lo, level))
    if weight2 <= hi:
        out = _load_seeds(level, weight2, config)
        _holo_cache[key] = out
        return out
    p = level // 4
    step = _CLIMB_STEP[p]
    base = _holo_plus_rows(level, weight2 - step, config)
    trunc = min(r.trunc for r in base)
    mult = _climb_form(p, trunc)
    psi = _psi_4z(p, trunc)
    rows = []
    for b in _top_by_residue(base):
        f = b * mult
        while f.lead >= 0:
            rows.append(f)
            f = f * psi
    window = min(r.trunc for r in rows)
    ech = Echelon(window)
    for r in sorted(rows, key=lambda r: r.lead):
        ech.insert(r)
    out = tuple(ech.rows())
    expect = _plus_dim(level, weight2)
    if len(out) != expect:
        raise RuntimeError(
            "climb to weight2 %d at level %d gave %d forms, expected %d"
            % (weight2, level, len(out), expect)
        )
    _holo_cache[key] = out
    return out


def _assert_coverage(rows, residues, floor: int, what: str) -> None:
    leads = {r.lead for r in rows}
    top = max(leads)
    for n in range(floor, top + 1):
        if n % 4 in residues and n not in leads:
            raise RuntimeError("%s: missing family member with lead %d" % (what, n))


def _weak_plus_rows(level: int, weight2: int, min_lead: int, config: Config | None,
                    trunc: int = 72) -> tuple[QSeries, ...]:
    """Family rows with leading exponents down to ``min_lead`` at least."""
    if level == 4:
        depth = max(0, (-min_lead + 3) // 4) + 1
        rows = _level4_rows(weight2, depth, trunc)
        _assert_coverage(rows, plus_residues(weight2), min_lead, "level 4 weight2 %d" % weight2)
        return rows
    p = level // 4
    residues = plus_residues(weight2)
    lo, hi = SEED_RANGE[level]
    cache_key = (level, weight2, _seed_dir(config))
    got = _weak_cache.get(cache_key)
    if got is not None and got[1] <= min_lead:
        return got[0]

    if weight2 >= lo:
        holo = _holo_plus_rows(level, weight2, config)
        trunc = min(r.trunc for r in holo)
        psi = _psi_4z(p, trunc)
        rows = list(holo)
        for b in _top_by_residue(holo):
            f = b
            while f.lead - 4 >= min_lead:
                f = f * psi
                rows.append(f)
        window = min(r.trunc for r in rows)
        ech = Echelon(window)
        for r in sorted(rows, key=lambda r: -r.lead):
            ech.insert(r)
        out = tuple(ech.rows())
    else:
        step = _DESC_STEP[p]
        hops = (lo - weight2 + step - 1) // step
        up_w2 = weight2 + step * hops
        up_rows = _weak_plus_rows(level, up_w2, min_lead + _DESC_LEAD[p] * hops, config)
        trunc = min(r.trunc for r in up_rows)
        div = _descent_form(p, trunc) ** hops
        inv = div.invert()
        divided = [r * inv for r in up_rows]
        window = min(r.trunc for r in divided)
        ech = Echelon(window)
        for r in sorted(divided, key=lambda r: -r.lead):
            ech.insert(r)
        out = tuple(ech.rows())
    _assert_coverage(out, residues, min_lead, "level %d weight2 %d" % (level, weight2))
    _weak_cache[cache_key] = (out, min_lead)
    return out


# ---------------------------------------------------------------------------
# public accessors
# ---------------------------------------------------------------------------


def plus_family_rows(level: int, weight2: int, min_lead: int, trunc: int,
                     config: Config | None = None) -> tuple[QSeries, ...]:
    """All family members with leading exponent in ``[min_lead, top]``,
    truncated to ``trunc``."""
    _check_level(level)
    rows = _weak_plus_rows(level, weight2, min_lead, config, trunc)
    picked = [r for r in rows if r.lead >= min_lead]
    if not picked:
        raise ValueError("no family members with lead at or above %d" % min_lead)
    short = min(r.trunc for r in picked)
    if short < trunc:
        raise ValueError(
            "requested truncation %d exceeds the available window %d; "
            "regenerate deeper seed data" % (trunc, short)
        )
    return tuple(r.truncate(trunc) for r in sorted(picked, key=lambda r: r.lead))


def plus_family_element(level: int, weight2: int, m: int, trunc: int,
                        config: Config | None = None) -> QSeries:
    """The family member ``q**(-m) + O(...)`` of weight ``weight2/2``.

    ``m > 0`` selects a pole order, ``m <= 0`` a holomorphic member.  Raises
    ``ValueError`` when no member has that leading exponent.
    """
    _check_level(level)
    if (-m) % 4 not in plus_residues(weight2):
        raise ValueError("lead %d is not supported in this plus space" % (-m))
    rows = _weak_plus_rows(level, weight2, -m, config, trunc)
    for r in rows:
        if r.lead == -m:
            if r.trunc < trunc:
                raise ValueError("requested truncation %d exceeds the available window %d"
                                 % (trunc, r.trunc))
            return r.truncate(trunc)
    raise ValueError("no family member with lead %d at level %d weight2 %d"
                     % (-m, level, weight2))


def plus_top_lead(level: int, weight2: int, config: Config | None = None) -> int:
    """Largest leading exponent among holomorphic family members."""
    _check_level(level)
    if level == 4:
        rows = _level4_rows(weight2, 0, 72)
    else:
        rows = _holo_plus_rows(level, weight2, config)
    return max(r.lead for r in rows)


def _solve_overdetermined(rows: list[list[Fraction]],
                          rhs: list[Fraction]) -> list[Fraction]:
    """Solve an overdetermined exact linear system, insisting on consistency.

    Every equation beyond the first rank-many must be satisfied by the unique
    solution; a mismatch raises rather than returning a best fit.
    """
    m, n = len(rows), len(rows[0]) if rows else 0
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((i for i in range(row, m) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(m):
            if i != row and a[i][col]:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    if len(pivots) < n:
        raise RuntimeError("pairing system is underdetermined; add more rows")
    for i in range(row, m):
        if a[i][n]:
            raise RuntimeError("pairing conditions are inconsistent")
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = a[i][n]
    return sol


def plus_zero_rows(level: int, weight2: int, min_lead: int, trunc: int,
                   config: Config | None = None) -> tuple[QSeries, ...]:
    """Members of the subfamily vanishing at the cusp 0 and its class.

    Hauptmodul multiples of family members all vanish there, but they stop
    one rung short: the subfamily's largest leading exponent is pinned by the
    complementary-weight family, whose lead set partitions the admissible
    exponents with this one.  The members above the hauptmodul span are cut
    out of the full family by the constant-term pairing against
    complementary-weight members — an overdetermined exact solve, so any
    spurious candidate is rejected rather than fitted.
    """
    _check_level(level)
    if level == 4:
        raise ValueError("the vanishing-at-0 family is only set up for levels 4p")
    p = level // 4
    comp_w2 = 4 - weight2

    shallow = _weak_plus_rows(level, comp_w2, -8, config)
    top_c = max(r.lead for r in shallow if not r.is_zero())
    residues = plus_residues(weight2)
    targets = [n for n in range(-top_c - 1, min_lead - 1, -1) if n % 4 in residues]
    if not targets:
        return ()

    # one rung past what the hauptmodul products need, so that gap bases
    # sitting just above min_lead are still present
    fam = plus_family_rows(level, weight2, min_lead, trunc + 8, config)
    fam = sorted(fam, key=lambda r: -r.lead)
    psi = _psi_4z(p, trunc - min_lead + 16)
    prods = [r * psi for r in fam]
    span_top = max(r.lead for r in prods)
    gaps = [n for n in targets if n > span_top]

    gap_rows = []
    if gaps:
        deepest = min(gaps)
        if deepest > fam[0].lead:
            raise RuntimeError(
                "vanishing subfamily would start above the full family "
                "(lead %d vs %d)" % (deepest, fam[0].lead))
        most = len([r for r in fam if r.lead > deepest]) + 4
        comp = plus_family_rows(level, comp_w2, top_c - 4 * (most + 3),
                                -deepest + 8, config)
        comp = sorted(comp, key=lambda r: -r.lead)
        for g_lead in gaps:
            base = next(r for r in fam if r.lead == g_lead)
            frees = [r for r in fam if r.lead > g_lead]
            hs = comp[: len(frees) + 4]
            mat = [[(h * s).coef(0) for s in frees] for h in hs]
            rhs = [-(h * base).coef(0) for h in hs]
            sol = _solve_overdetermined(mat, rhs)
            g = base
            for c, s in zip(sol, frees):
                if c:
                    g = g + c * s
            gap_rows.append(g)

    every = gap_rows + prods
    window = min(r.trunc for r in every)
    ech = Echelon(window)
    for r in sorted(every, key=lambda r: -r.lead):
        ech.insert(r)
    out = [r for r in ech.rows() if r.lead >= min_lead]
    want = sorted(n for n in targets if n >= min_lead)
    if sorted(r.lead for r in out) != want:
        raise RuntimeError(
            "vanishing subfamily at level %d weight2 %d came out with leads %s, "
            "expected %s" % (level, weight2,
                             sorted(r.lead for r in out), want))
    short = min(r.trunc for r in out)
    if short < trunc:
        raise ValueError("requested truncation %d exceeds the available window %d" % (trunc, short))
    return tuple(r.truncate(trunc) for r in sorted(out, key=lambda r: r.lead))


def plus_zero_element(level: int, weight2: int, l: int, trunc: int,
                      config: Config | None = None) -> QSeries:
    """The vanishing-at-0 family member with leading term ``q**(-l)``."""
    for r in plus_zero_rows(level, weight2, -l, trunc, config):
        if r.lead == -l:
            return r
    raise ValueError("no vanishing-at-0 member with lead %d at level %d weight2 %d"
                     % (-l, level, weight2))


def _nullspace(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Kernel basis of an exact matrix whose rows are equations."""
    m, n = len(mat), len(mat[0]) if mat else 0
    a = [list(r) for r in mat]
    row = 0
    pivots: list[int] = []
    for col in range(n):
        piv = next((i for i in range(row, m) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(m):
            if i != row and a[i][col]:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    out = []
    for fc in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        out.append(v)
    return out


def plus_cusp_rows(level: int, weight2: int, trunc: int,
                   config: Config | None = None) -> tuple[QSeries, ...]:
    """Row-reduced cusp forms inside the holomorphic plus space.

    Vanishing at the infinity class is visible (leading exponent past q^0);
    vanishing at the 0-class is cut out by the constant-term pairing against
    the complementary-weight family, solved as an exact kernel.  The kernel
    dimension must agree with the cusp dimension carried over from the
    integer-weight side of the correspondence.
    """
    _check_level(level)
    if level == 4:
        raise ValueError("plus cusp rows are set up for levels 4p")
    if weight2 < 5 or weight2 % 2 == 0:
        raise ValueError("need an odd weight2 >= 5")
    p = level // 4
    want = dim_cusp(p, weight2 - 1)
    work = max(trunc, 80)
    holo = plus_family_rows(level, weight2, 0, work, config)
    cand = [r for r in holo if r.lead >= 1]
    if want > len(cand):
        raise RuntimeError("not enough holomorphic members to carry the "
                           "cusp space at level %d weight2 %d" % (level, weight2))
    rounds = len(cand) + 4
    comp = plus_family_rows(level, 4 - weight2, -4 * (rounds + 4), 4, config)
    hs = sorted(comp, key=lambda r: -r.lead)[:rounds]
    if any(-h.lead >= work for h in hs):
        raise ValueError("truncation %d too small for the pairing depth" % trunc)
    mat = [[(h * r).coef(0) for r in cand] for h in hs]
    kern = _nullspace(mat)
    if len(kern) != want:
        raise RuntimeError(
            "cusp kernel at level %d weight2 %d has dimension %d, expected %d"
            % (level, weight2, len(kern), want))
    ech = Echelon(work)
    for v in kern:
        row = QSeries.zero(work)
        for c, r in zip(v, cand):
            if c:
                row = row + c * r
        ech.insert(row)
    return tuple(r.truncate(trunc) for r in sorted(ech.rows(), key=lambda r: r.lead))


# ---------------------------------------------------------------------------
# integer weight families at odd prime level
# ---------------------------------------------------------------------------

_int_cache: dict = {}


def _integer_rows(p: int, weight2: int, min_lead: int, trunc: int) -> tuple[QSeries, ...]:
    if p not in GENUS_ZERO_PRIMES:
        raise ValueError("level must be one of %s" % (GENUS_ZERO_PRIMES,))
    if weight2 % 4:
        raise ValueError("integer weight families need weight2 divisible by 4 "
                         "(the weight itself must be even)")
    key = (p, weight2, min_lead, trunc)
    got = _int_cache.get(key)
    if got is not None:
        return got
    k = weight2 // 2
    _, w = ladder_form(p, 16)
    mu_h = {3: 2, 5: 2, 7: 4, 13: 14}[p]
    # Divide out just enough ladder powers to land in a nonzero holomorphic
    # space; deeper poles come from hauptmodul powers, which are weight 0 and
    # much cheaper than pushing the holomorphic weight up.
    hops = 0
    while dim_modular(p, k + w * hops) == 0:
        hops += 1
    floor = -hops * mu_h
    deep = max(0, floor - min_lead)
    work = trunc + deep + 3 * mu_h * hops + 16
    ladder = ladder_form(p, work)[0]
    inv = (ladder ** hops).invert() if hops else None
    ech = Echelon(trunc)
    base = [(h * inv if inv is not None else h) for h in holomorphic_basis(p, k + w * hops, work)]
    for h in base:
        ech.insert(h.truncate(trunc))
    if deep:
        bottom = min(base, key=lambda r: r.lead)
        psi = psi_hauptmodul(p, work)
        step = psi
        for _ in range(deep):
            ech.insert((bottom * step).truncate(trunc))
            step = step * psi
    rows = tuple(sorted(ech.rows(), key=lambda r: r.lead))
    tops = {r.lead for r in rows}
    for n in range(floor - deep, max(tops) + 1):
        if n not in tops:
            raise RuntimeError("integer family at level %d weight2 %d misses lead %d"
                               % (p, weight2, n))
    _int_cache[key] = rows
    return rows


def integer_family_rows(p: int, weight2: int, min_lead: int, trunc: int) -> tuple[QSeries, ...]:
    """Members of the poles-only-at-infinity family with lead >= min_lead."""
    rows = [r for r in _integer_rows(p, weight2, min_lead, trunc) if r.lead >= min_lead]
    return tuple(r.truncate(trunc) for r in sorted(rows, key=lambda r: r.lead))


def integer_family_element(p: int, weight2: int, m: int, trunc: int) -> QSeries:
    """The member ``q**(-m) + O(...)``; ValueError when absent."""
    for r in _integer_rows(p, weight2, -m, trunc):
        if r.lead == -m:
            if r.trunc < trunc:
                raise ValueError("requested truncation beyond computed window")
            return r.truncate(trunc)
    raise ValueError("no integer weight member with lead %d at level %d weight2 %d"
                     % (-m, p, weight2))


def integer_zero_rows(p: int, weight2: int, min_lead: int, trunc: int) -> tuple[QSeries, ...]:
    """Row-reduced members of the subspace vanishing at the cusp 0."""
    base = _integer_rows(p, weight2, min_lead + 1, trunc + 2)
    deepest = min(r.lead for r in base)
    psi = psi_hauptmodul(p, trunc + max(0, -deepest) + 4)
    prods = [r * psi for r in base]
    ech = Echelon(min(r.trunc for r in prods))
    for r in sorted(prods, key=lambda r: -r.lead):
        ech.insert(r)
    rows = [r for r in ech.rows() if r.lead >= min_lead]
    return tuple(r.truncate(trunc) for r in sorted(rows, key=lambda r: r.lead))


def integer_zero_element(p: int, weight2: int, l: int, trunc: int) -> QSeries:
    for r in integer_zero_rows(p, weight2, -l, trunc):
        if r.lead == -l:
            return r
    raise ValueError("no vanishing-at-0 member with lead %d at level %d weight2 %d"
                     % (-l, p, weight2))


def _check_level(level: int) -> None:
    if level != 4 and level not in SEED_RANGE:
        raise ValueError("level must be 4 or one of %s" % sorted(SEED_RANGE))


def clear_caches() -> None:
    """Drop all family caches (mainly useful in tests)."""
    _seed_cache.clear()
    _level4_cache.clear()
    _holo_cache.clear()
    _weak_cache.clear()
    _int_cache.clear()

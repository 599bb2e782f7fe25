"""Lifts between integer and half integral weight families, plus verifiers.

The central objects are the two discriminant-indexed lifts taking a weakly
holomorphic form of weight ``2 - 2s`` on Gamma_0(p) to a half integral
weight form on Gamma_0(4p).  Their images are assembled exactly as rational
combinations of the family members from :mod:`weakforms.spaces`; a member
whose would-be leading exponent sits above the family's top does not exist,
and its share of the principal part must emerge from the tails of the
deeper members.  Every assembly therefore ends with a certificate pass that
compares the full principal part of the image against the defining double
sum and refuses to return on any mismatch.

In the positive-weight case the image also carries a holomorphic correction
term.  No closed formula is available for it at these levels, so it is
pinned numerically: CM-point traces of the input supply the first
holomorphic coefficients, the values are rounded to the integrality class
the lift guarantees, an exact linear solve recovers the correction in the
holomorphic plus basis, and held-out traces beyond the matching window
guard the rounding.

Also here: the twisted Shimura-style lift back down to integer weight
(with a Sturm-bound membership check of the image), and the two coefficient
pairing verifiers used throughout the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from mpmath import mp

from .arith import divisors, is_fundamental_discriminant, kronecker
from .config import Config
from .modforms import cusp_basis, sturm_bound
from .qseries import QSeries
from .spaces import (
    GENUS_ZERO_PRIMES,
    integer_family_rows,
    integer_zero_rows,
    plus_family_rows,
    plus_residues,
    plus_zero_rows,
    _solve_overdetermined,
)
from .traces import normalized_trace

__all__ = [
    "LiftTerm",
    "LiftResult",
    "zagier_principal_part",
    "zagier_lift_neg_weight_image",
    "zagier_lift_pos_weight_image",
    "shimura_lift",
    "DualityReport",
    "duality_check",
    "window_failures",
    "ConstantTermReport",
    "constant_term_check",
]

ROUND_MARGIN = 1e-5


@dataclass(frozen=True)
class LiftTerm:
    """One referenced family member: ``multiplier * (q**-index + tail)``."""

    level: int
    weight2: int
    index: int
    multiplier: Fraction


@dataclass
class LiftResult:
    image: QSeries
    decomposition: list[LiftTerm]
    correction: QSeries | None = None

    def resummed(self, config: Config | None = None) -> QSeries:
        """Re-fetch every referenced member and re-add; equals ``image``."""
        total = QSeries.zero(self.image.trunc)
        for t in self.decomposition:
            rows = plus_family_rows(t.level, t.weight2, -t.index,
                                    self.image.trunc, config)
            row = next(r for r in rows if r.lead == -t.index)
            total = total + t.multiplier * row
        if self.correction is not None:
            total = total + self.correction.truncate(total.trunc)
        return total


def _require_fundamental(D: int) -> None:
    if not is_fundamental_discriminant(D):
        raise ValueError("%d is not a fundamental discriminant" % D)


def _principal_depth(f: QSeries) -> int:
    if f.is_zero() or f.lead >= 0:
        return 0
    return -f.lead


def zagier_principal_part(f: QSeries, D: int, s: int, s_hat: int) -> QSeries:
    """The formal principal part of the discriminant-D lift of ``f``.

    Shared by both parity cases: the weight of the image picks ``s_hat``
    (``s`` for image weight ``3/2 - s``, ``1 - s`` for ``s + 1/2``) and the
    sum runs over the principal exponents of ``f`` and the divisors of each.
    """
    acc: dict[int, Fraction] = {}
    for m in range(1, _principal_depth(f) + 1):
        am = f.coef(-m)
        if not am:
            continue
        for n in divisors(m):
            chi = kronecker(D, n)
            if not chi:
                continue
            e = -(m * m * abs(D)) // (n * n)
            c = am * m ** (s - s_hat) * chi * Fraction(n) ** (s_hat - 1)
            acc[e] = acc.get(e, Fraction(0)) + c
    return QSeries.from_terms({e: c for e, c in acc.items() if c}, 1)


def _formal_terms(f: QSeries, p: int, s: int, s_hat: int,
                  D: int) -> dict[tuple[int, int], Fraction]:
    """(level, index) -> multiplier over the lift's double sum.

    The level is 4p except when p divides the inner index n, where the
    member comes from the level-4 families instead.
    """
    acc: dict[tuple[int, int], Fraction] = {}
    for m in range(1, _principal_depth(f) + 1):
        am = f.coef(-m)
        if not am:
            continue
        for n in divisors(m):
            chi = kronecker(D, n)
            if not chi:
                continue
            level = 4 * p // gcd(n, p)
            idx = (m * m * abs(D)) // (n * n)
            c = am * m ** (s - s_hat) * chi * Fraction(n) ** (s_hat - 1)
            key = (level, idx)
            acc[key] = acc.get(key, Fraction(0)) + c
    return {k: v for k, v in acc.items() if v}


def _assemble(formal: dict[tuple[int, int], Fraction], weight2: int,
              trunc: int, config: Config | None) -> tuple[QSeries, list[LiftTerm]]:
    """Sum the existing family members named by ``formal`` and certify.

    Indices above a family's top simply have no member; the certificate
    pass at the end demands that the assembled series carries the full
    formal principal part anyway, tails included.
    """
    by_level: dict[int, dict[int, Fraction]] = {}
    for (level, idx), c in formal.items():
        by_level.setdefault(level, {})[idx] = c
    image = QSeries.zero(trunc)
    decomp: list[LiftTerm] = []
    for level in sorted(by_level, reverse=True):
        want = by_level[level]
        deepest = -max(want)
        try:
            rows = plus_family_rows(level, weight2, deepest, trunc, config)
        except Exception as exc:
            raise RuntimeError(
                "lift needs the half-integral family at level %d, weight2 %d "
                "down to lead %d (for index %d): %s"
                % (level, weight2, deepest, max(want), exc)) from None
        have = {-r.lead: r for r in rows}
        for idx in sorted(want, reverse=True):
            row = have.get(idx)
            if row is None:
                continue
            image = image + want[idx] * row
            decomp.append(LiftTerm(level, weight2, idx, want[idx]))
    expected: dict[int, Fraction] = {}
    for (level, idx), c in formal.items():
        expected[-idx] = expected.get(-idx, Fraction(0)) + c
    floor = min([image.lead] + list(expected)) if expected else 0
    for e in range(floor, 0):
        got = image.coef(e)
        want_c = expected.get(e, Fraction(0))
        if got != want_c:
            raise RuntimeError(
                "assembled principal part disagrees with the defining sum "
                "at q^%d: %s vs %s" % (e, got, want_c))
    return image, decomp


def zagier_lift_neg_weight_image(f: QSeries, p: int, s: int, D: int,
                                 trunc: int,
                                 config: Config | None = None) -> LiftResult:
    """Discriminant-D lift into weight ``3/2 - s`` (case ``(-1)**s * D > 0``).

    ``f`` is a weakly holomorphic weight ``2 - 2s`` form on Gamma_0(p),
    given by a q-expansion whose principal part drives the whole lift.  The
    image is an exact rational combination of level 4p (and, when p divides
    the divisor index, level 4) family members.
    """
    if s < 2:
        raise ValueError("need s >= 2")
    if (-1) ** s * D <= 0:
        raise ValueError("this parity case needs (-1)**s * D > 0")
    _require_fundamental(D)
    weight2 = 3 - 2 * s
    formal = _formal_terms(f, p, s, s, D)
    if not formal:
        return LiftResult(QSeries.zero(trunc), [])
    image, decomp = _assemble(formal, weight2, trunc, config)
    return LiftResult(image, decomp)


def _mpf(x: Fraction):
    return mp.mpf(x.numerator) / x.denominator


def _round_to_class(x, halves: bool, what: str) -> Fraction:
    scale = 2 if halves else 1
    y = x * scale
    r = mp.nint(y)
    if abs(y - r) > ROUND_MARGIN:
        raise RuntimeError("rounding margin violation at %s: %s is not close "
                           "to a %s" % (what, mp.nstr(x, 12),
                                        "half-integer" if halves else "integer"))
    return Fraction(int(r), scale)


def zagier_lift_pos_weight_image(f: QSeries, p: int, s: int, D: int,
                                 trunc: int, precision: int = 96,
                                 config: Config | None = None) -> LiftResult:
    """Discriminant-D lift into weight ``s + 1/2`` (case ``(-1)**s * D < 0``).

    The family combination no longer tells the whole story: a holomorphic
    correction rides along.  Its coefficients are traces of ``f`` over CM
    points, computed numerically to ``precision`` bits, rounded to the
    integrality class of the lift (integers, except that p = 7 images of
    weight 5/2 mod 6 may carry one power of 2 in denominators), and solved
    exactly against the holomorphic plus basis.  Extra traces beyond the
    matching window must then agree with the assembled image to ``1e-5``.
    """
    if s < 2:
        raise ValueError("need s >= 2")
    if (-1) ** s * D >= 0:
        raise ValueError("this parity case needs (-1)**s * D < 0")
    _require_fundamental(D)
    weight2 = 2 * s + 1
    level = 4 * p
    formal = _formal_terms(f, p, s, 1 - s, D)
    if not formal:
        zero = QSeries.zero(trunc)
        return LiftResult(zero, [], zero)
    base, decomp = _assemble(formal, weight2, trunc, config)

    holo = plus_family_rows(level, weight2, 0, trunc, config)
    residues = plus_residues(weight2)
    exps: list[int] = []
    n = 1
    while len(exps) < len(holo) + 2:
        if n % 4 in residues:
            if n >= trunc:
                raise ValueError("truncation %d too short for the correction "
                                 "window" % trunc)
            exps.append(n)
        n += 1
    halves = p == 7 and s % 6 == 2
    sign = -1 if D > 0 else 1
    targets: list[Fraction] = []
    for e in exps:
        tr = normalized_trace(f, s, sign * e, D, p, precision)
        targets.append(_round_to_class(tr - _mpf(base.coef(e)),
                                       halves, "q^%d" % e))
    fit = exps[:len(holo)]
    mat = [[r.coef(e) for r in holo] for e in fit]
    rhs = targets[:len(holo)]
    try:
        sol = _solve_overdetermined(mat, rhs)
    except RuntimeError as exc:
        raise RuntimeError("correction solve failed: %s" % exc) from None
    corr = QSeries.zero(trunc)
    for c, r in zip(sol, holo):
        if c:
            corr = corr + c * r
    for e, t in zip(exps[len(holo):], targets[len(holo):]):
        if corr.coef(e) != t:
            raise RuntimeError(
                "held-out trace at q^%d disagrees with the solved correction: "
                "%s vs %s" % (e, corr.coef(e), t))
    return LiftResult(base + corr, decomp, corr)


def shimura_lift(f: QSeries, p: int, s: int, D: int, trunc: int) -> QSeries:
    """Twisted lift of a cuspidal plus-space form down to weight ``2s``.

    Coefficient n of the image sums ``chi_D(d) * d**(s-1) * a(n**2|D|/d**2)``
    over divisors d of n prime to p.  The image must land in the cusp space
    of weight 2s on Gamma_0(p); that membership is verified through the
    Sturm bound and a failure raises (it signals an input that was not a
    cusp form in the plus space).
    """
    _require_fundamental(D)
    if (-1) ** s * D <= 0:
        raise ValueError("the twist needs (-1)**s * D > 0")
    if f.is_zero():
        return QSeries.zero(trunc)
    if f.lead < 1:
        raise ValueError("input must be cuspidal (positive leading exponent)")
    aD = abs(D)
    top = isqrt((f.trunc - 1) // aD) + 1 if f.trunc > aD else 1
    t = min(trunc, top)
    sb = sturm_bound(p, 4 * s)
    if t <= sb:
        raise ValueError("window %d too short to reach the Sturm bound %d; "
                         "extend the input past q^%d"
                         % (t, sb, aD * sb * sb))
    terms: dict[int, Fraction] = {}
    for n in range(1, t):
        tot = Fraction(0)
        for d in divisors(n):
            if gcd(d, p) > 1:
                continue
            chi = kronecker(D, d)
            if not chi:
                continue
            tot += chi * d ** (s - 1) * f.coef((n * n * aD) // (d * d))
        if tot:
            terms[n] = tot
    img = QSeries.from_terms(terms, t)
    rem = img
    for b in cusp_basis(p, 2 * s, t):
        c = rem.coef(b.lead) if b.lead < rem.trunc else 0
        if c:
            rem = rem - c * b
    for n in range(1, sb + 1):
        if rem.coef(n):
            raise RuntimeError(
                "image is not in the weight-%d cusp space at level %d "
                "(offending coefficient at q^%d); the input was not a "
                "cuspidal plus-space form" % (2 * s, p, n))
    return img


# ---------------------------------------------------------------------------
# pairing verifiers

@dataclass
class DualityReport:
    level: int
    weight2: int
    pairs: int
    failures: list[tuple[int, int, Fraction, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return ("duality at level %d, weight2 (%d, %d): %d pairs exact"
                    % (self.level, self.weight2, 4 - self.weight2, self.pairs))
        m, l, a, b = self.failures[0]
        return ("duality FAILED at level %d, weight2 (%d, %d): "
                "a(%d,%d) = %s but -b(%d,%d) = %s (%d failures of %d pairs)"
                % (self.level, self.weight2, 4 - self.weight2,
                   m, l, a, l, m, -b, len(self.failures), self.pairs))


def window_failures(fam_rows, zero_rows, ms, ls):
    """Check a(m,l) = -b(l,m) over explicit index lists; list mismatches."""
    f_by = {-r.lead: r for r in fam_rows}
    g_by = {-r.lead: r for r in zero_rows}
    failures = []
    for m in ms:
        for l in ls:
            a = f_by[m].coef(l)
            b = g_by[l].coef(m)
            if a != -b:
                failures.append((m, l, a, b))
    return failures


def duality_check(level: int, weight2: int, window: int,
                  config: Config | None = None) -> DualityReport:
    """Verify the coefficient pairing between a family and its partner.

    The first ``window`` pole indices on each side are paired; the integer
    weight flavour is used at odd prime levels and the half integral one at
    levels 4p.  All comparisons are exact.
    """
    comp = 4 - weight2
    integer = level in GENUS_ZERO_PRIMES

    def fam_at(floor: int, t: int):
        if integer:
            return integer_family_rows(level, weight2, floor, t)
        return plus_family_rows(level, weight2, floor, t, config)

    def zero_at(floor: int, t: int):
        if integer:
            return integer_zero_rows(level, comp, floor, t)
        return plus_zero_rows(level, comp, floor, t, config)

    floor_f, floor_g = -8, -8
    probe_t = 12
    while len(fam_at(floor_f, probe_t)) < window:
        floor_f -= 8
    while len(zero_at(floor_g, probe_t)) < window:
        floor_g -= 8
    ms = sorted(-r.lead for r in fam_at(floor_f, probe_t))[:window]
    ls = sorted(-r.lead for r in zero_at(floor_g, probe_t))[:window]
    fam = fam_at(-max(ms), max(ls) + 1)
    zero = zero_at(-max(ls), max(ms) + 1)
    failures = window_failures(fam, zero, ms, ls)
    return DualityReport(level, weight2, len(ms) * len(ls), failures)


@dataclass
class ConstantTermReport:
    constant: Fraction

    @property
    def ok(self) -> bool:
        return self.constant == 0

    def __str__(self) -> str:
        return ("constant term of the pairing product: %s (%s)"
                % (self.constant, "vanishes" if self.ok else "NONZERO"))


def constant_term_check(f: QSeries, g: QSeries, p: int) -> ConstantTermReport:
    """Constant term of ``f * g`` after U_4, as an exact convolution.

    The caller asserts both series live on Gamma_0(4p) with weights summing
    to 2 and that ``g`` vanishes at the cusp-0 class; the product then drops
    to a weakly holomorphic weight-2 form on Gamma_0(p) under U_4, where a
    vanishing constant term is forced.  ``p`` is documentation of that
    contract; the computation itself is the convolution.
    """
    prod = (f * g).u_op(4)
    return ConstantTermReport(prod.coef(0))

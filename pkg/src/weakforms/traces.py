"""Traces of weakly holomorphic forms over CM points.

A weight ``2 - 2s`` form can be raised to weight 0 by composing ``s - 1``
Maass raising operators.  The raised object is no longer holomorphic but can
be written as a polynomial in ``1/(4*pi*y)`` whose coefficients are ordinary
q-series; that representation is what :class:`RaisedSeries` stores, and it
can be evaluated to arbitrary precision at points in the upper half plane.

Summing the raised form over the CM points attached to a discriminant, with
genus-character weights, yields the traces that appear as Fourier
coefficients of half integral weight lifts.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, log, sqrt

from mpmath import mp

from .arith import divisors, is_fundamental_discriminant, kronecker, moebius
from .heegner import heegner_forms
from .qseries import QSeries

__all__ = [
    "RaisedSeries",
    "raised_power",
    "point_trace",
    "normalized_trace",
    "trace_identity_sides",
]

_LN2 = log(2.0)


def _log_abs(x: Fraction) -> float:
    """Rough natural log of |x|, safe for huge numerators."""
    if x == 0:
        return float("-inf")
    num, den = abs(x.numerator), x.denominator
    return (num.bit_length() - den.bit_length()) * _LN2


class RaisedSeries:
    """A finite sum ``sum_j g_j(z) * (4*pi*y)**(-j)`` with q-series parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("need at least one part")
        self.parts = parts

    @classmethod
    def from_form(cls, f: QSeries) -> "RaisedSeries":
        return cls((f,))

    def raise_weight(self, k: int) -> "RaisedSeries":
        """Apply the weight-``k`` raising operator.

        Acting on ``g * w**j`` with ``w = 1/(4*pi*y)`` the operator yields
        ``(q d/dq g) * w**j + (j - k) * g * w**(j+1)``.
        """
        n = len(self.parts)
        out = [None] * (n + 1)
        for j, g in enumerate(self.parts):
            d = g.d_op()
            out[j] = d if out[j] is None else out[j] + d
            extra = g * Fraction(j - k)
            out[j + 1] = extra if out[j + 1] is None else out[j + 1] + extra
        while len(out) > 1 and out[-1].is_zero():
            out.pop()
        return RaisedSeries(out)

    def scale(self, c) -> "RaisedSeries":
        return RaisedSeries(tuple(g * Fraction(c) for g in self.parts))

    def _check_tail(self, y: float, bits: int) -> None:
        """Raise if the available truncation cannot meet the error target.

        The coefficients of a weakly holomorphic form grow like
        ``exp(C*sqrt(n))``; we estimate ``C`` from the stored terms and
        require the first omitted term to be below ``2**-bits``, on the
        decreasing side of the exponent tradeoff.
        """
        rate = 2.0 * 3.141592653589793 * y
        for g in self.parts:
            growth = 0.5
            for n, a in g.terms():
                if n >= 4:
                    growth = max(growth, _log_abs(a) / sqrt(n))
            t = g.trunc
            if t < 1:
                raise ValueError("series truncated before q^1; nothing to sum")
            if rate <= growth / (2.0 * sqrt(t)) or growth * sqrt(t) - rate * t > -(bits + 8) * _LN2:
                need = (growth + sqrt(growth * growth + 8.0 * rate * (bits + 16) * _LN2)) / (2.0 * rate)
                raise ValueError(
                    "series truncation %d too short for evaluation at y=%.4f; "
                    "roughly %d terms needed" % (t, y, int(need * need) + 8)
                )

    def evaluate(self, re, im, prec: int = 256):
        """Numeric value at ``re + i*im`` as an mpmath complex number.

        ``re`` may be a Fraction; ``im`` may be a Fraction or mpmath float.
        """
        lead = min(g.lead for g in self.parts)
        guard = 48 + max(0, int(7 * float(im) * abs(lead)))
        with mp.workprec(prec + guard):
            y = mp.mpf(im.numerator) / im.denominator if isinstance(im, Fraction) else mp.mpf(im)
            self._check_tail(float(y), prec + 16)
            x = mp.mpf(re.numerator) / re.denominator if isinstance(re, Fraction) else mp.mpf(re)
            q = mp.exp(2j * mp.pi * (x + 1j * y))
            w = 1 / (4 * mp.pi * y)
            total = mp.mpc(0)
            wj = mp.mpf(1)
            for g in self.parts:
                acc = mp.mpc(0)
                qn = q ** g.lead
                n = g.lead
                for e, a in g.terms():
                    if e != n:
                        qn *= q ** (e - n)
                        n = e
                    acc += qn * mp.mpf(a.numerator) / a.denominator
                    qn *= q
                    n += 1
                total += acc * wj
                wj *= w
            return +total


def raised_power(f: QSeries, s: int) -> RaisedSeries:
    """Raise a weight ``2 - 2s`` form to weight 0.

    Composes the raising operators for weights ``2-2s, 4-2s, ..., -2`` and
    multiplies by ``(-1)**(s-1)``.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    out = RaisedSeries.from_form(f)
    for k in range(2 - 2 * s, 0, 2):
        out = out.raise_weight(k)
    if s % 2 == 0:
        out = out.scale(-1)
    return out


def point_trace(F: RaisedSeries, disc: int, char_disc: int, level: int, prec: int = 256):
    """Sum of ``F`` over Heegner forms of ``disc``, weighted by a genus
    character and inverse stabiliser orders.  Returns an mpmath complex."""
    if isinstance(F, QSeries):
        F = RaisedSeries.from_form(F)
    sq = mp.sqrt(abs(disc))
    total = mp.mpc(0)
    for q in heegner_forms(disc, level):
        chi = q.genus_character(char_disc)
        if chi == 0:
            continue
        re, t = q.cm_point()
        val = F.evaluate(re, sq * t.numerator / t.denominator, prec)
        total += (mp.mpf(chi) / q.stabilizer_order()) * val
    return total


def normalized_trace(f: QSeries, s: int, d: int, D: int, level: int, prec: int = 256,
                     with_margin: bool = False):
    """The normalized trace of a weight ``2 - 2s`` form.

    ``D`` must be a fundamental discriminant and ``d*D`` negative.  The raw
    trace of the raised form is scaled by
    ``(-1)**floor((t-1)/2) * |d|**(-t/2) * |D|**((t-1)/2)`` where ``t`` is
    ``s`` or ``1 - s`` according to the sign of ``(-1)**s * D``.  Returns a
    real mpmath float; raises ``ArithmeticError`` if the imaginary part of
    the computed sum is not negligible.  With ``with_margin`` the discarded
    imaginary magnitude is returned alongside the value.
    """
    if not is_fundamental_discriminant(D):
        raise ValueError("D must be a fundamental discriminant")
    if d * D >= 0:
        raise ValueError("need d*D < 0")
    if (d * D) % 4 not in (0, 1):
        return (mp.mpf(0), mp.mpf(0)) if with_margin else mp.mpf(0)
    shat = s if ((-1) ** s) * D > 0 else 1 - s
    F = raised_power(f, s)
    with mp.workprec(prec + 32):
        raw = point_trace(F, d * D, D, level, prec)
        sign = -1 if ((shat - 1) // 2) % 2 else 1
        pref = sign * mp.power(abs(d), mp.mpf(-shat) / 2) * mp.power(abs(D), mp.mpf(shat - 1) / 2)
        val = pref * raw
        tol = mp.mpf(2) ** (-(prec // 3))
        if abs(val.imag) > tol * (1 + abs(val.real)):
            raise ArithmeticError(
                "trace has non-negligible imaginary part %s" % mp.nstr(val.imag, 8)
            )
        if with_margin:
            return val.real, abs(val.imag)
        return val.real


def trace_identity_sides(f: QSeries, s: int, level: int, D: int, Dprime: int, m: int, prec: int = 256):
    """Both sides of the multiplicative identity relating raw traces with
    composite index ``m**2`` to traces of the partner discriminant.

    Requires fundamental ``D`` and ``Dprime`` of opposite signs.  Returns a
    pair of mpmath complex numbers that should agree.
    """
    if D * Dprime >= 0:
        raise ValueError("discriminants must have opposite signs")
    if m < 1:
        raise ValueError("m must be positive")
    F = raised_power(f, s)
    lhs = point_trace(F, m * m * Dprime * D, D, level, prec)
    rhs = mp.mpc(0)
    for a in divisors(m):
        mu = moebius(a)
        if mu == 0:
            continue
        ca = mu * kronecker(Dprime, a)
        if ca == 0:
            continue
        for b in divisors(m // a):
            cb = kronecker(D, b)
            if cb == 0:
                continue
            r = m // (a * b)
            rhs += ca * cb * point_trace(F, r * r * D * Dprime, Dprime, level, prec)
    return lhs, rhs

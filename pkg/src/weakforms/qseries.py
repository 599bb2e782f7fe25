"""Truncated Laurent series in q with exact rational coefficients.

A QSeries stores the coefficients of q^lead .. q^(trunc-1) as Fractions.
Everything at or beyond ``trunc`` is *unknown*, not zero, and every
operation propagates truncation pessimistically so that no stored
coefficient is ever wrong.  Instances are immutable; all arithmetic
returns new objects.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping

__all__ = ["QSeries", "qs_from_terms", "qs_zero", "qs_one", "qs_monomial"]

_INF = None  # sentinel could be used for exact polynomials; we keep finite truncs throughout


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an int or Fraction coefficient, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# integer convolution via Kronecker substitution
#
# Packing a coefficient list into one big integer lets CPython's subquadratic
# bignum multiplication do the convolution.  Coefficients may be negative, so
# each operand is split into its positive and negative parts and the four
# nonnegative products are recombined.

def _pack(vec: list[int], width: int) -> int:
    # little-endian fixed-width limbs
    buf = b"".join(c.to_bytes(width, "little") for c in vec)
    return int.from_bytes(buf, "little")


def _unpack(n: int, width: int, count: int) -> list[int]:
    buf = n.to_bytes(width * count, "little")
    return [int.from_bytes(buf[i * width:(i + 1) * width], "little") for i in range(count)]


def _conv_int(a: list[int], b: list[int]) -> list[int]:
    """Exact convolution of two integer lists."""
    if not a or not b:
        return []
    n_out = len(a) + len(b) - 1
    max_a = max(abs(x) for x in a)
    max_b = max(abs(x) for x in b)
    if max_a == 0 or max_b == 0:
        return [0] * n_out
    if min(len(a), len(b)) < 40:
        # schoolbook is faster for short operands
        out = [0] * n_out
        if len(a) > len(b):
            a, b = b, a
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out
    bound = max_a * max_b * min(len(a), len(b))
    width = (bound.bit_length() + 8) // 8 + 1  # bytes per limb, with sign headroom
    ap = [x if x > 0 else 0 for x in a]
    an = [-x if x < 0 else 0 for x in a]
    bp = [x if x > 0 else 0 for x in b]
    bn = [-x if x < 0 else 0 for x in b]
    pos = _pack(ap, width) * _pack(bp, width) + _pack(an, width) * _pack(bn, width)
    neg = _pack(ap, width) * _pack(bn, width) + _pack(an, width) * _pack(bp, width)
    return [p - n for p, n in zip(_unpack(pos, width, n_out), _unpack(neg, width, n_out))]


def _scale_to_int(vec: list[Fraction]) -> tuple[list[int], int]:
    """Return (integer list, common denominator)."""
    den = 1
    for c in vec:
        d = c.denominator
        den = den * d // gcd(den, d)
    if den == 1:
        return [c.numerator for c in vec], 1
    return [int(c * den) for c in vec], den


def _conv(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    ia, da = _scale_to_int(a)
    ib, db = _scale_to_int(b)
    dd = da * db
    if dd == 1:
        return [Fraction(x) for x in _conv_int(ia, ib)]
    return [Fraction(x, dd) for x in _conv_int(ia, ib)]


def _inv_unit(vec: list[Fraction], n: int) -> list[Fraction]:
    """Inverse of a power series with vec[0] != 0, to n terms (Newton iteration)."""
    if not vec or vec[0] == 0:
        raise ZeroDivisionError("cannot invert a series with zero constant term")
    out = [1 / vec[0]]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        t = _conv(vec[:prec], out)[:prec]
        # out <- out * (2 - vec*out)
        t = [-c for c in t]
        t[0] += 2
        out = _conv(out, t)[:prec]
    return out[:n]


class QSeries:
    """A truncated Laurent q-expansion with Fraction coefficients.

    ``lead`` is the exponent of the first stored coefficient, ``trunc`` the
    first unknown exponent (exclusive).  The zero-through-trunc series is
    stored with an empty coefficient list and lead == trunc.
    """

    __slots__ = ("lead", "coeffs", "trunc")

    def __init__(self, lead: int, coeffs: Iterable, trunc: int):
        coeffs = [_as_fraction(c) for c in coeffs]
        if len(coeffs) != trunc - lead:
            raise ValueError(
                f"coefficient list has {len(coeffs)} entries for window [{lead}, {trunc})"
            )
        # normalise away leading zeros so that `lead` is honest
        i = 0
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        if i:
            lead += i
            coeffs = coeffs[i:]
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("QSeries is immutable")

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        """True when every *known* coefficient vanishes."""
        return not self.coeffs

    def coef(self, n: int) -> Fraction:
        """Coefficient of q^n; raises if n is beyond the known window."""
        if n >= self.trunc:
            raise IndexError(f"coefficient of q^{n} unknown (trunc={self.trunc})")
        if n < self.lead:
            return Fraction(0)
        return self.coeffs[n - self.lead]

    def __getitem__(self, n: int) -> Fraction:
        return self.coef(n)

    def terms(self) -> Iterator[tuple[int, Fraction]]:
        """Yield (exponent, coefficient) for nonzero known coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lead + i, c

    def support(self) -> list[int]:
        return [n for n, _ in self.terms()]

    def principal_part(self) -> dict[int, Fraction]:
        """Coefficients at negative exponents, as {exponent: coefficient}."""
        return {n: c for n, c in self.terms() if n < 0}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def denominators_dividing(self, base: int) -> bool:
        """True if every denominator is a power of ``base``."""
        for c in self.coeffs:
            d = c.denominator
            while d % base == 0:
                d //= base
            if d != 1:
                return False
        return True

    # -- construction helpers ----------------------------------------------

    @staticmethod
    def from_terms(terms: Mapping[int, object], trunc: int) -> "QSeries":
        if not terms:
            return QSeries(trunc, [], trunc)
        lead = min(terms)
        if lead >= trunc:
            return QSeries(trunc, [], trunc)
        coeffs = [Fraction(0)] * (trunc - lead)
        for n, c in terms.items():
            if n < trunc:
                coeffs[n - lead] = _as_fraction(c)
        return QSeries(lead, coeffs, trunc)

    @staticmethod
    def zero(trunc: int) -> "QSeries":
        return QSeries(trunc, [], trunc)

    @staticmethod
    def one(trunc: int) -> "QSeries":
        return QSeries.from_terms({0: 1}, trunc)

    @staticmethod
    def monomial(exponent: int, coeff=1, trunc: int = 10) -> "QSeries":
        return QSeries.from_terms({exponent: coeff}, trunc)

    # -- window management ---------------------------------------------------

    def truncate(self, trunc: int) -> "QSeries":
        """Restrict the known window to exponents below ``trunc``."""
        if trunc > self.trunc:
            raise ValueError(f"cannot extend trunc from {self.trunc} to {trunc}")
        if trunc >= self.trunc:
            return self
        if trunc <= self.lead:
            return QSeries(trunc, [], trunc)
        return QSeries(self.lead, self.coeffs[: trunc - self.lead], trunc)

    def agrees_with(self, other: "QSeries", upto: int | None = None) -> bool:
        """Equality of known coefficients on the overlap of the two windows."""
        hi = min(self.trunc, other.trunc)
        if upto is not None:
            hi = min(hi, upto)
        lo = min(self.lead, other.lead)
        for n in range(lo, hi):
            if self.coef(n) != other.coef(n):
                return False
        return True

    # -- ring operations -----------------------------------------------------

    def _binop_window(self, other: "QSeries") -> tuple[int, int]:
        return min(self.lead, other.lead), min(self.trunc, other.trunc)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.from_terms({0: other}, self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        lead, trunc = self._binop_window(other)
        if lead >= trunc:
            return QSeries(trunc, [], trunc)
        coeffs = [self.coef(n) + other.coef(n) if n < trunc else Fraction(0)
                  for n in range(lead, trunc)]
        return QSeries(lead, coeffs, trunc)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.lead, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.from_terms({0: other}, self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return QSeries(self.trunc, [], self.trunc)
            return QSeries(self.lead, [c * x for x in self.coeffs], self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            # 0 * f is 0 wherever either factor window allows a statement
            trunc = min(self.lead + other.trunc, other.lead + self.trunc)
            return QSeries(trunc, [], trunc)
        trunc = min(self.lead + other.trunc, other.lead + self.trunc)
        lead = self.lead + other.lead
        n_keep = trunc - lead
        prod = _conv(list(self.coeffs)[:n_keep], list(other.coeffs)[:n_keep])[:n_keep]
        if len(prod) < n_keep:
            prod += [Fraction(0)] * (n_keep - len(prod))
        return QSeries(lead, prod, trunc)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k."""
        return QSeries(self.lead + k, self.coeffs, self.trunc + k)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            # the window of f^0 is as long as f*f^-1 could be known, but 1 is exact;
            # keep the operand's window length as a conservative choice
            return QSeries.one(self.trunc - self.lead)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the leading known coefficient must be nonzero."""
        if self.is_zero():
            raise ZeroDivisionError("cannot invert the zero series")
        n = self.trunc - self.lead
        inv = _inv_unit(list(self.coeffs), n)
        return QSeries(-self.lead, inv, self.trunc - 2 * self.lead)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    # -- the three operators -------------------------------------------------

    def u_op(self, m: int) -> "QSeries":
        """U_m: keep coefficients with m | n and send q^n to q^(n/m)."""
        if m <= 0:
            raise ValueError("U_m needs m >= 1")
        terms = {}
        for n, c in self.terms():
            if n % m == 0:
                terms[n // m] = c
        trunc = -((-self.trunc) // m)  # ceil(trunc / m)
        return QSeries.from_terms(terms, trunc)

    def v_op(self, m: int) -> "QSeries":
        """V_m: send q^n to q^(nm)."""
        if m <= 0:
            raise ValueError("V_m needs m >= 1")
        terms = {n * m: c for n, c in self.terms()}
        return QSeries.from_terms(terms, self.trunc * m)

    def d_op(self) -> "QSeries":
        """Ramanujan theta operator q d/dq: multiply the n-th coefficient by n."""
        return QSeries(self.lead, [Fraction(self.lead + i) * c for i, c in enumerate(self.coeffs)],
                       self.trunc)

    # -- comparisons / hashing -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.from_terms({0: other}, self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.trunc == other.trunc and self.lead == other.lead
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.lead, self.coeffs, self.trunc))

    # -- display / io ----------------------------------------------------------

    def __repr__(self):
        parts = []
        shown = 0
        for n, c in self.terms():
            if shown == 8:
                parts.append("...")
                break
            parts.append(_term_str(n, c, first=not parts))
            shown += 1
        if not parts:
            parts = ["0"]
        return " ".join(parts) + f" + O(q^{self.trunc})"

    def to_text(self, meta: Mapping[str, object] | None = None) -> str:
        lines = [f"#qseries lead={self.lead} trunc={self.trunc}"]
        if meta:
            lines.append("#meta " + " ".join(f"{k}={v}" for k, v in meta.items()))
        for n, c in self.terms():
            lines.append(f"{n} {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> tuple["QSeries", dict[str, str]]:
        lead = trunc = None
        meta: dict[str, str] = {}
        terms: dict[int, Fraction] = {}
        last_exp = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#qseries"):
                fields = dict(kv.split("=", 1) for kv in line.split()[1:])
                try:
                    lead = int(fields["lead"])
                    trunc = int(fields["trunc"])
                except (KeyError, ValueError) as exc:
                    raise ValueError(f"malformed series header: {line!r}") from exc
                continue
            if line.startswith("#meta"):
                meta.update(kv.split("=", 1) for kv in line.split()[1:])
                continue
            if line.startswith("#"):
                continue
            if lead is None:
                raise ValueError("coefficient line before '#qseries' header")
            try:
                exp_str, frac_str = line.split()
                n = int(exp_str)
                num_str, den_str = frac_str.split("/")
                num, den = int(num_str), int(den_str)
            except ValueError as exc:
                raise ValueError(f"malformed coefficient line: {line!r}") from exc
            if den < 1:
                raise ValueError(f"denominator must be >= 1 in line {line!r}")
            if gcd(num, den) != 1:
                raise ValueError(f"coefficient not in lowest terms: {line!r}")
            if last_exp is not None and n <= last_exp:
                raise ValueError(f"exponents must be strictly increasing at line {line!r}")
            last_exp = n
            if not (lead <= n < trunc):
                raise ValueError(f"exponent {n} outside declared window [{lead}, {trunc})")
            terms[n] = Fraction(num, den)
        if lead is None or trunc is None:
            raise ValueError("missing '#qseries' header")
        series = QSeries.from_terms(terms, trunc)
        if series.is_zero():
            series = QSeries(trunc, [], trunc)
        elif series.lead < lead:
            raise ValueError("stored exponent below declared lead")
        return series, meta


def _term_str(n: int, c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if n == 0:
        body = str(mag)
    else:
        qpow = "q" if n == 1 else f"q^{n}"
        body = qpow if mag == 1 else f"{mag}*{qpow}"
    return f"{sign}{body}" if first else f"{sign} {body}"


# convenience aliases used throughout the package
qs_from_terms = QSeries.from_terms
qs_zero = QSeries.zero
qs_one = QSeries.one
qs_monomial = QSeries.monomial

"""Exact linear algebra on q-expansions.

Spaces of modular forms are handled as lists of QSeries over a common
truncation window.  Everything is Fraction-exact; there is no numerical
rank estimation anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from weakforms.qseries import QSeries

__all__ = ["Echelon", "row_reduce", "rank_of", "express_in_basis", "in_span"]


class Echelon:
    """A growing row-echelon collection of q-expansions.

    Rows are kept fully reduced: each pivot exponent occurs in exactly one
    row, with coefficient 1.  All rows share the truncation ``trunc`` fixed
    at construction; candidates with longer windows are truncated on entry.
    """

    def __init__(self, trunc: int):
        self.trunc = trunc
        self.pivots: dict[int, QSeries] = {}  # pivot exponent -> row

    def __len__(self):
        return len(self.pivots)

    def reduce(self, f: QSeries) -> QSeries:
        """Reduce f against the current rows (no insertion)."""
        if f.trunc < self.trunc:
            raise ValueError(
                f"candidate known only to q^{f.trunc} but echelon needs q^{self.trunc}"
            )
        f = f.truncate(self.trunc)
        while not f.is_zero():
            row = self.pivots.get(f.lead)
            if row is None:
                break
            f = f - f.coeffs[0] * row
        return f

    def insert(self, f: QSeries) -> bool:
        """Try to add f as a new row; returns True if the rank grew."""
        f = self.reduce(f)
        if f.is_zero():
            return False
        f = f * (Fraction(1) / f.coeffs[0])
        # clear the newcomer at every existing pivot beyond its own lead, so
        # rows stay fully reduced no matter the insertion order
        for lead in sorted(k for k in self.pivots if k > f.lead):
            c = f.coef(lead)
            if c:
                f = f - c * self.pivots[lead]
        # back-substitute the new pivot into existing rows
        for lead, row in list(self.pivots.items()):
            c = row.coef(f.lead) if f.lead < row.trunc else Fraction(0)
            if c:
                self.pivots[lead] = row - c * f
        self.pivots[f.lead] = f
        return True

    def rows(self) -> list[QSeries]:
        """Rows sorted by leading exponent."""
        return [self.pivots[k] for k in sorted(self.pivots)]

    def coordinates(self, f: QSeries) -> list[Fraction] | None:
        """Write f in terms of rows(); None if f is not in the span.

        Membership is judged on the echelon's window, so callers must make
        sure the window is at least a Sturm bound when that matters.
        """
        coords = {}
        g = f.truncate(self.trunc) if f.trunc > self.trunc else f
        if g.trunc < self.trunc:
            raise ValueError("candidate window too short for this echelon")
        while not g.is_zero():
            row = self.pivots.get(g.lead)
            if row is None:
                return None
            coords[g.lead] = g.coeffs[0]
            g = g - g.coeffs[0] * row
        return [coords.get(k, Fraction(0)) for k in sorted(self.pivots)]


def row_reduce(series: list[QSeries], trunc: int | None = None) -> list[QSeries]:
    """Fully reduced echelon basis of the span of the given expansions."""
    if not series:
        return []
    if trunc is None:
        trunc = min(f.trunc for f in series)
    ech = Echelon(trunc)
    for f in series:
        ech.insert(f)
    return ech.rows()


def rank_of(series: list[QSeries], trunc: int | None = None) -> int:
    return len(row_reduce(series, trunc))


def express_in_basis(f: QSeries, basis: list[QSeries],
                     trunc: int | None = None) -> list[Fraction] | None:
    """Coordinates of f in the given (not necessarily reduced) basis.

    Returns None when f is outside the span.  Works by echelonizing the
    basis while tracking the transformation.
    """
    if not basis:
        return None if not f.is_zero() else []
    if trunc is None:
        trunc = min(min(b.trunc for b in basis), f.trunc)
    # track coordinates through the elimination
    rows = [(b.truncate(trunc), [Fraction(int(i == j)) for j in range(len(basis))])
            for i, b in enumerate(basis)]
    pivots: dict[int, tuple[QSeries, list[Fraction]]] = {}
    for g, coord in rows:
        while not g.is_zero():
            entry = pivots.get(g.lead)
            if entry is None:
                c = g.coeffs[0]
                g = g * (Fraction(1) / c)
                coord = [x / c for x in coord]
                pivots[g.lead] = (g, coord)
                break
            h, hc = entry
            c = g.coeffs[0]
            g = g - c * h
            coord = [x - c * y for x, y in zip(coord, hc)]
    target = f.truncate(trunc) if f.trunc > trunc else f
    if target.trunc < trunc:
        raise ValueError("f is known to fewer terms than the basis")
    out = [Fraction(0)] * len(basis)
    while not target.is_zero():
        entry = pivots.get(target.lead)
        if entry is None:
            return None
        h, hc = entry
        c = target.coeffs[0]
        target = target - c * h
        out = [x + c * y for x, y in zip(out, hc)]
    return out


def in_span(f: QSeries, basis: list[QSeries], trunc: int | None = None) -> bool:
    return express_in_basis(f, basis, trunc) is not None

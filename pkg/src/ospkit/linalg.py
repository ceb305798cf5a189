"""Exact sparse linear algebra over the rationals.

Rows are sparse maps from column index to coefficient.  Incoming rows are
cleared of denominators and content-reduced, so elimination runs on
arbitrary-precision integers (cross-multiplication followed by gcd removal)
rather than on fractions.  Pivot selection is by smallest column index,
which makes ranks, nullspaces and reduced bases deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

__all__ = ["Eliminator", "rank", "nullspace", "invert_dense", "in_row_span"]


def _normalize_int(row: dict[int, int]) -> dict[int, int]:
    """Divide an integer row by its content; make the leading entry positive."""
    if not row:
        return {}
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        return {j: v // g for j, v in row.items()}
    return row


def _integerize(row: dict) -> dict[int, int]:
    """Clear denominators, drop zeros and normalize the content."""
    if not row:
        return {}
    den = 1
    for c in row.values():
        d = c.denominator          # ints expose denominator == 1
        if d != 1:
            den = lcm(den, d)
    out = {}
    for j, c in row.items():
        v = int(c * den)
        if v:
            out[j] = v
    return _normalize_int(out)


def _combine(row: dict[int, int], piv: dict[int, int], a: int, b: int) -> dict[int, int]:
    """row * a - piv * b over the integers, content-normalized."""
    new = {}
    for j, v in row.items():
        w = v * a - piv.get(j, 0) * b
        if w:
            new[j] = w
    for j, v in piv.items():
        if j not in row:
            new[j] = -v * b
    return _normalize_int(new)


class Eliminator:
    """Online row echelon form keyed by pivot column."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict[int, int]:
        """Reduce a row against the current pivots; returns the residue."""
        row = _integerize(row)
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            row = _combine(row, piv, piv[lead], row[lead])
        return row

    def add_row(self, row: dict) -> bool:
        """Insert a row; True if it increased the rank."""
        residue = self.reduce(row)
        if not residue:
            return False
        self.pivots[min(residue)] = residue
        return True

    def back_reduce(self):
        """Eliminate every pivot column from the rows above it (RREF shape)."""
        for col in sorted(self.pivots, reverse=True):
            piv = self.pivots[col]
            for col2, row in self.pivots.items():
                if col2 >= col or col not in row:
                    continue
                self.pivots[col2] = _combine(row, piv, piv[col], row[col])

    def nullspace(self, ncols: int) -> list[list[Fraction]]:
        """Canonical rational basis of the right nullspace."""
        self.back_reduce()
        free = [j for j in range(ncols) if j not in self.pivots]
        basis = []
        for f in free:
            vec = [Fraction(0)] * ncols
            vec[f] = Fraction(1)
            for col, row in self.pivots.items():
                c = row.get(f)
                if c:
                    vec[col] = Fraction(-c, row[col])
            basis.append(_primitive(vec))
        return basis


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    """Scale to integer entries with content 1 and positive first entry."""
    den = 1
    for c in vec:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    first = next((v for v in ints if v), 0)
    if first < 0:
        g = -g
    if g not in (0, 1):
        ints = [v // g for v in ints]
    return [Fraction(v) for v in ints]


def rank(rows) -> int:
    elim = Eliminator()
    for row in rows:
        elim.add_row(row)
    return elim.rank


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    elim = Eliminator()
    for row in rows:
        elim.add_row(row)
    return elim.nullspace(ncols)


def in_row_span(rows, candidate: dict) -> bool:
    elim = Eliminator()
    for row in rows:
        elim.add_row(row)
    return not elim.reduce(candidate)


def invert_dense(matrix: list[list[Fraction]]) -> list[list[Fraction]] | None:
    """Gauss-Jordan inverse of a dense rational matrix, None if singular."""
    n = len(matrix)
    aug = [
        [Fraction(matrix[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]

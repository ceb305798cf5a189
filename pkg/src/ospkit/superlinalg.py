"""Z2-graded supermatrix calculus over the rationals or a Grassmann algebra.

A supermatrix carries explicit row/column parity vectors and a stored parity
tag (even, odd, or None for inhomogeneous).  Over a Grassmann ring each
nonzero entry of a homogeneous matrix must itself be homogeneous of parity
row + column + tag; over the rationals the complementary blocks must vanish.
The tag is stored rather than inferred because zero entries make inference
ambiguous.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InhomogeneousInput, ShapeMismatch
from .grassmann import GrassmannElt

__all__ = [
    "EVEN",
    "ODD",
    "RationalRing",
    "GrassmannRing",
    "RATIONAL",
    "SuperMatrix",
    "sm_mul",
    "supertranspose",
    "dagger",
    "split_pm",
    "omega",
    "omega_s",
    "in_S_plus",
    "in_S",
]

EVEN, ODD = 0, 1


class RationalRing:
    grassmann = False

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, GrassmannElt):
            raise ShapeMismatch("Grassmann entry in a rational matrix")
        return Fraction(x)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("Q")


class GrassmannRing:
    grassmann = True

    def __init__(self, degree_bound: int):
        self.degree_bound = degree_bound

    def zero(self):
        return GrassmannElt(self.degree_bound)

    def one(self):
        return GrassmannElt.scalar(self.degree_bound, 1)

    def coerce(self, x):
        if isinstance(x, GrassmannElt):
            if x.degree_bound != self.degree_bound:
                raise ShapeMismatch("Grassmann degree bounds differ")
            return x
        return GrassmannElt.scalar(self.degree_bound, x)

    def __repr__(self):
        return f"Lambda({self.degree_bound})"

    def __eq__(self, other):
        return isinstance(other, GrassmannRing) and other.degree_bound == self.degree_bound

    def __hash__(self):
        return hash(("L", self.degree_bound))


RATIONAL = RationalRing()


class SuperMatrix:
    """Sparse block matrix with parity bookkeeping."""

    __slots__ = ("row_parity", "col_parity", "ring", "parity", "entries")

    def __init__(self, row_parity, col_parity, entries=None, ring=RATIONAL,
                 parity: int | None = EVEN, validate: bool = True):
        self.row_parity = tuple(row_parity)
        self.col_parity = tuple(col_parity)
        self.ring = ring
        self.parity = parity
        self.entries = {}
        for (i, j), c in (entries or {}).items():
            c = ring.coerce(c)
            if c:
                self.entries[(i, j)] = c
        if validate:
            self._validate()

    def _validate(self):
        if self.parity is None:
            return
        for (i, j), c in self.entries.items():
            want = (self.row_parity[i] + self.col_parity[j] + self.parity) % 2
            if isinstance(c, GrassmannElt):
                if c.parity != want:
                    raise ShapeMismatch(
                        f"entry ({i},{j}) has Grassmann parity {c.parity}, expected {want}"
                    )
            elif want != EVEN:
                raise ShapeMismatch(
                    f"rational entry ({i},{j}) sits in an odd slot of an "
                    f"{'even' if self.parity == EVEN else 'odd'} matrix"
                )

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, parity_vec, ring=RATIONAL) -> "SuperMatrix":
        n = len(parity_vec)
        return cls(parity_vec, parity_vec,
                   {(i, i): ring.one() for i in range(n)}, ring=ring)

    @classmethod
    def zeros(cls, row_parity, col_parity, ring=RATIONAL, parity=EVEN) -> "SuperMatrix":
        return cls(row_parity, col_parity, {}, ring=ring, parity=parity)

    @classmethod
    def from_rows(cls, rows, row_parity, col_parity, ring=RATIONAL,
                  parity: int | None = EVEN) -> "SuperMatrix":
        entries = {}
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                entries[(i, j)] = c
        return cls(row_parity, col_parity, entries, ring=ring, parity=parity)

    @property
    def nrows(self) -> int:
        return len(self.row_parity)

    @property
    def ncols(self) -> int:
        return len(self.col_parity)

    def __getitem__(self, key):
        return self.entries.get(key, self.ring.zero())

    def to_lists(self):
        return [[self[(i, j)] for j in range(self.ncols)] for i in range(self.nrows)]

    def to_json(self):
        def fmt(c):
            return c.format() if isinstance(c, GrassmannElt) else str(c)
        return [[fmt(self[(i, j)]) for j in range(self.ncols)] for i in range(self.nrows)]

    # -- ring coercion ---------------------------------------------------

    def to_ring(self, ring) -> "SuperMatrix":
        if self.ring == ring:
            return self
        if not self.ring.grassmann and ring.grassmann:
            return SuperMatrix(self.row_parity, self.col_parity,
                               dict(self.entries), ring=ring, parity=self.parity,
                               validate=False)
        raise ShapeMismatch(f"cannot convert entries from {self.ring} to {ring}")

    @staticmethod
    def _common_ring(a: "SuperMatrix", b: "SuperMatrix"):
        if a.ring == b.ring:
            return a, b
        if a.ring.grassmann and not b.ring.grassmann:
            return a, b.to_ring(a.ring)
        if b.ring.grassmann and not a.ring.grassmann:
            return a.to_ring(b.ring), b
        raise ShapeMismatch(f"incompatible coefficient rings {a.ring} and {b.ring}")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        a, b = self._common_ring(self, other)
        if a.row_parity != b.row_parity or a.col_parity != b.col_parity:
            raise ShapeMismatch("shape or parity vectors differ")
        entries = dict(a.entries)
        for k, c in b.entries.items():
            v = entries.get(k, 0) + c
            if v:
                entries[k] = v
            else:
                entries.pop(k, None)
        if a.parity == b.parity:
            parity = a.parity
        elif not a.entries:          # zero operands keep the other side's tag
            parity = b.parity
        elif not b.entries:
            parity = a.parity
        else:
            parity = None
        return SuperMatrix(a.row_parity, a.col_parity, entries, ring=a.ring,
                           parity=parity, validate=False)

    def __neg__(self):
        return SuperMatrix(self.row_parity, self.col_parity,
                           {k: -c for k, c in self.entries.items()},
                           ring=self.ring, parity=self.parity, validate=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SuperMatrix":
        """Entrywise multiplication by an even rational scalar."""
        c = Fraction(c)
        return SuperMatrix(self.row_parity, self.col_parity,
                           {k: v * c for k, v in self.entries.items()},
                           ring=self.ring, parity=self.parity, validate=False)

    def lact(self, lam: GrassmannElt) -> "SuperMatrix":
        """Left bimodule action: signs follow the row parities."""
        if lam.parity is None:
            raise InhomogeneousInput("scalar must be homogeneous")
        ring = self.ring if self.ring.grassmann else GrassmannRing(lam.degree_bound)
        mat = self.to_ring(ring)
        entries = {}
        for (i, j), c in mat.entries.items():
            sign = -1 if (self.row_parity[i] and lam.parity) else 1
            v = lam * c * sign
            if v:
                entries[(i, j)] = v
        parity = None if self.parity is None else (self.parity + lam.parity) % 2
        return SuperMatrix(self.row_parity, self.col_parity, entries, ring=ring,
                           parity=parity, validate=False)

    def ract(self, lam: GrassmannElt) -> "SuperMatrix":
        """Right bimodule action: signs follow the column parities."""
        if lam.parity is None:
            raise InhomogeneousInput("scalar must be homogeneous")
        ring = self.ring if self.ring.grassmann else GrassmannRing(lam.degree_bound)
        mat = self.to_ring(ring)
        entries = {}
        for (i, j), c in mat.entries.items():
            sign = -1 if (self.col_parity[j] and lam.parity) else 1
            v = c * lam * sign
            if v:
                entries[(i, j)] = v
        parity = None if self.parity is None else (self.parity + lam.parity) % 2
        return SuperMatrix(self.row_parity, self.col_parity, entries, ring=ring,
                           parity=parity, validate=False)

    def __mul__(self, other: "SuperMatrix") -> "SuperMatrix":
        a, b = self._common_ring(self, other)
        if a.col_parity != b.row_parity:
            raise ShapeMismatch("inner dimensions or parities differ")
        bycol: dict[int, list] = {}
        for (i, j), c in a.entries.items():
            bycol.setdefault(j, []).append((i, c))
        entries: dict[tuple[int, int], object] = {}
        for (j, k), c in b.entries.items():
            for i, ac in bycol.get(j, ()):
                key = (i, k)
                v = entries.get(key, 0) + ac * c
                if v:
                    entries[key] = v
                else:
                    entries.pop(key, None)
        if a.parity is None or b.parity is None:
            parity = None
        else:
            parity = (a.parity + b.parity) % 2
        return SuperMatrix(a.row_parity, b.col_parity, entries, ring=a.ring,
                           parity=parity, validate=False)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        try:
            a, b = self._common_ring(self, other)
        except ShapeMismatch:
            return False
        return (a.row_parity == b.row_parity and a.col_parity == b.col_parity
                and a.entries == b.entries)

    def __hash__(self):
        return hash((self.row_parity, self.col_parity,
                     frozenset((k, v) for k, v in self.entries.items())))

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self):
        return (f"SuperMatrix({self.nrows}x{self.ncols}, ring={self.ring}, "
                f"parity={self.parity}, nnz={len(self.entries)})")

    # -- graded transposes -----------------------------------------------

    def supertranspose(self) -> "SuperMatrix":
        if self.parity is None:
            raise InhomogeneousInput("supertranspose needs a homogeneous matrix")
        entries = {}
        for (j, i), c in self.entries.items():
            # formal parity of entry (j, i) is row[j] + col[i] + tag
            epar = (self.row_parity[j] + self.col_parity[i] + self.parity) % 2
            entries[(i, j)] = -c if self.row_parity[j] and epar else c
        return SuperMatrix(self.col_parity, self.row_parity, entries,
                           ring=self.ring, parity=self.parity, validate=False)

    def transpose_plain(self) -> "SuperMatrix":
        return SuperMatrix(self.col_parity, self.row_parity,
                           {(j, i): c for (i, j), c in self.entries.items()},
                           ring=self.ring, parity=self.parity, validate=False)


def sm_mul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    return a * b


def supertranspose(a: SuperMatrix) -> SuperMatrix:
    return a.supertranspose()


def dagger(a: SuperMatrix, eta: SuperMatrix, eta_inv: SuperMatrix | None = None) -> SuperMatrix:
    """Adjoint with respect to the form matrix: eta^-1 A^st eta."""
    if eta_inv is None:
        eta_inv = eta.supertranspose()  # for the standard form, eta^st = eta^-1
    return eta_inv * a.supertranspose() * eta


def split_pm(a: SuperMatrix, eta: SuperMatrix) -> tuple[SuperMatrix, SuperMatrix]:
    """Self-adjoint / anti-self-adjoint parts of an even square matrix."""
    adj = dagger(a, eta)
    half = Fraction(1, 2)
    return (a + adj).scale(half), (a - adj).scale(half)


def omega(a: SuperMatrix, eta: SuperMatrix) -> SuperMatrix:
    return dagger(a, eta) * a


def omega_s(a: SuperMatrix, eta: SuperMatrix) -> SuperMatrix:
    return eta * omega(a, eta)


def _blocks(a: SuperMatrix):
    """Split a square matrix into even/odd index blocks (local indices)."""
    evens = [i for i, p in enumerate(a.row_parity) if p == EVEN]
    odds = [i for i, p in enumerate(a.row_parity) if p == ODD]
    pos = {}
    for loc, i in enumerate(evens):
        pos[i] = (0, loc)
    for loc, i in enumerate(odds):
        pos[i] = (1, loc)
    blocks = {(0, 0): {}, (0, 1): {}, (1, 0): {}, (1, 1): {}}
    for (i, j), c in a.entries.items():
        (bi, li), (bj, lj) = pos[i], pos[j]
        blocks[(bi, bj)][(li, lj)] = c
    return blocks, len(evens), len(odds)


def _bmul(x: dict, y: dict) -> dict:
    bycol = {}
    for (i, j), c in x.items():
        bycol.setdefault(j, []).append((i, c))
    out = {}
    for (j, k), c in y.items():
        for i, xc in bycol.get(j, ()):
            v = out.get((i, k), 0) + xc * c
            if v:
                out[(i, k)] = v
            else:
                out.pop((i, k), None)
    return out


def _bt(x: dict) -> dict:
    return {(j, i): c for (i, j), c in x.items()}


def _bneg(x: dict) -> dict:
    return {k: -c for k, c in x.items()}


def _J_block(n: int) -> dict:
    out = {}
    for j in range(n):
        out[(2 * j, 2 * j + 1)] = Fraction(-1)
        out[(2 * j + 1, 2 * j)] = Fraction(1)
    return out


def in_S_plus(a: SuperMatrix) -> bool:
    """Self-adjointness conditions on the four blocks of an even matrix."""
    if a.parity != EVEN or a.row_parity != a.col_parity:
        return False
    blocks, _, nodd = _blocks(a)
    J = _J_block(nodd // 2)
    a11, a12, a21, a22 = blocks[(0, 0)], blocks[(0, 1)], blocks[(1, 0)], blocks[(1, 1)]
    if _bt(a11) != a11:
        return False
    if _bt(a22) != _bneg(_bmul(J, _bmul(a22, J))):
        return False
    return a21 == _bneg(_bmul(J, _bt(a12)))


def in_S(b: SuperMatrix) -> bool:
    """Block symmetry conditions characterising eta * (self-adjoint)."""
    if b.parity != EVEN or b.row_parity != b.col_parity:
        return False
    blocks, _, _ = _blocks(b)
    b11, b12, b21, b22 = blocks[(0, 0)], blocks[(0, 1)], blocks[(1, 0)], blocks[(1, 1)]
    if _bt(b11) != b11:
        return False
    if _bt(b22) != _bneg(b22):
        return False
    return b21 == _bt(b12)

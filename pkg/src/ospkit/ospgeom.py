"""Orthosymplectic superspace: the standard form, its pairing, the
orthosymplectic Lie superalgebra, group-element generation and the graded
Gram-Schmidt recursion.

The form matrix is diag(I_m, J) with J built from 2x2 blocks
sigma = [[0,-1],[1,0]]; slots 1..m are even and the remaining 2n odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import linalg
from .errors import (
    NotNilpotent,
    NotNormalized,
    NotOrthosymplectic,
    ShapeMismatch,
    SingularCayley,
)
from .grassmann import GrassmannElt
from .superlinalg import (
    EVEN,
    ODD,
    RATIONAL,
    GrassmannRing,
    SuperMatrix,
    dagger,
)

__all__ = [
    "FormSpec",
    "SuperVector",
    "OspBasis",
    "pair",
    "gram_matrix",
    "osp_basis",
    "gl_basis",
    "diagonal_torus",
    "reflection",
    "exp_nilpotent",
    "cayley",
    "is_osp_group_element",
    "super_gram_schmidt",
    "basis_change",
]


@dataclass(frozen=True)
class FormSpec:
    """Superdimension (m|2n) together with the standard form."""

    m: int
    n: int

    @property
    def dim(self) -> int:
        return self.m + 2 * self.n

    @property
    def d(self) -> Fraction:
        return Fraction(self.m - 2 * self.n)

    @property
    def parities(self) -> tuple[int, ...]:
        return _parities(self.m, self.n)

    @property
    def eta(self) -> SuperMatrix:
        return _eta(self.m, self.n)

    @property
    def eta_inv(self) -> SuperMatrix:
        return _eta(self.m, self.n).supertranspose()

    def eta_pairs(self) -> tuple[tuple[int, int, Fraction], ...]:
        """Nonzero entries (i, j, eta_ij), 0-based."""
        return _eta_pairs(self.m, self.n)

    def eta_inv_pairs(self) -> tuple[tuple[int, int, Fraction], ...]:
        return _eta_inv_pairs(self.m, self.n)


@lru_cache(maxsize=None)
def _parities(m: int, n: int) -> tuple[int, ...]:
    return (EVEN,) * m + (ODD,) * (2 * n)


@lru_cache(maxsize=None)
def _eta_pairs(m: int, n: int):
    pairs = [(a, a, Fraction(1)) for a in range(m)]
    for j in range(n):
        pairs.append((m + 2 * j, m + 2 * j + 1, Fraction(-1)))
        pairs.append((m + 2 * j + 1, m + 2 * j, Fraction(1)))
    return tuple(pairs)


@lru_cache(maxsize=None)
def _eta_inv_pairs(m: int, n: int):
    pairs = [(a, a, Fraction(1)) for a in range(m)]
    for j in range(n):
        pairs.append((m + 2 * j, m + 2 * j + 1, Fraction(1)))
        pairs.append((m + 2 * j + 1, m + 2 * j, Fraction(-1)))
    return tuple(pairs)


@lru_cache(maxsize=None)
def _eta(m: int, n: int) -> SuperMatrix:
    par = _parities(m, n)
    return SuperMatrix(par, par, {(i, j): v for i, j, v in _eta_pairs(m, n)})


class SuperVector:
    """Column vector over the rationals or a Grassmann ring with a parity tag."""

    __slots__ = ("coords", "ring", "parity")

    def __init__(self, coords, ring=RATIONAL, parity: int | None = EVEN,
                 spec: FormSpec | None = None, validate: bool = True):
        self.coords = tuple(ring.coerce(c) for c in coords)
        self.ring = ring
        self.parity = parity
        if validate and parity is not None and spec is not None:
            for i, c in enumerate(self.coords):
                if not c:
                    continue
                want = (spec.parities[i] + parity) % 2
                if isinstance(c, GrassmannElt):
                    if c.parity != want:
                        raise ShapeMismatch(
                            f"coordinate {i} has parity {c.parity}, expected {want}")
                elif want != EVEN:
                    raise ShapeMismatch(f"rational coordinate {i} in an odd slot")

    @classmethod
    def basis_vector(cls, spec: FormSpec, a: int, ring=RATIONAL) -> "SuperVector":
        coords = [ring.zero()] * spec.dim
        coords[a] = ring.one()
        return cls(coords, ring=ring, parity=spec.parities[a], spec=spec)

    def promote(self, degree_bound: int) -> "SuperVector":
        ring = GrassmannRing(degree_bound)
        coords = [ring.coerce(c).promote(degree_bound) if isinstance(c, GrassmannElt)
                  else ring.coerce(c) for c in self.coords]
        return SuperVector(coords, ring=ring, parity=self.parity, validate=False)

    def grade(self, p: int) -> "SuperVector":
        assert self.ring.grassmann
        return SuperVector([c.grade(p) for c in self.coords], ring=self.ring,
                           parity=self.parity, validate=False)

    def max_grade(self) -> int:
        assert self.ring.grassmann
        return max((c.max_grade() for c in self.coords), default=0)

    def specialise(self) -> list[Fraction]:
        if self.ring.grassmann:
            return [c.specialise() for c in self.coords]
        return [Fraction(c) for c in self.coords]

    def __add__(self, other: "SuperVector") -> "SuperVector":
        assert self.ring == other.ring and len(self.coords) == len(other.coords)
        if self.parity == other.parity:
            parity = self.parity
        elif not any(self.coords):
            parity = other.parity
        elif not any(other.coords):
            parity = self.parity
        else:
            parity = None
        return SuperVector([a + b for a, b in zip(self.coords, other.coords)],
                           ring=self.ring, parity=parity, validate=False)

    def scale(self, c) -> "SuperVector":
        return SuperVector([x * Fraction(c) for x in self.coords], ring=self.ring,
                           parity=self.parity, validate=False)

    def ract(self, lam: GrassmannElt) -> "SuperVector":
        """Right multiplication v . lam (no signs on a column)."""
        ring = self.ring if self.ring.grassmann else GrassmannRing(lam.degree_bound)
        coords = [ring.coerce(c) * lam for c in self.coords]
        parity = None if self.parity is None or lam.parity is None else (
            self.parity + lam.parity) % 2
        return SuperVector(coords, ring=ring, parity=parity, validate=False)

    def lact(self, lam: GrassmannElt, spec: FormSpec) -> "SuperVector":
        """Left multiplication lam . v, with the row-parity signs."""
        ring = self.ring if self.ring.grassmann else GrassmannRing(lam.degree_bound)
        coords = []
        for i, c in enumerate(self.coords):
            v = lam * ring.coerce(c)
            coords.append(-v if (spec.parities[i] and lam.parity) else v)
        parity = None if self.parity is None or lam.parity is None else (
            self.parity + lam.parity) % 2
        return SuperVector(coords, ring=ring, parity=parity, validate=False)

    def __eq__(self, other):
        if not isinstance(other, SuperVector):
            return NotImplemented
        if self.ring.grassmann != other.ring.grassmann:
            a, b = (self, other.promote(self.ring.degree_bound)) \
                if self.ring.grassmann else (other, self.promote(other.ring.degree_bound))
            return a.coords == b.coords
        return self.coords == other.coords

    def __repr__(self):
        return f"SuperVector({list(self.coords)!r}, parity={self.parity})"


def _twist(c, slot_parity: int):
    """Coefficient with its odd part negated on odd slots (supertranspose sign)."""
    if not slot_parity:
        return c
    if isinstance(c, GrassmannElt):
        return c.z2_part(0) - c.z2_part(1)
    return c


def pair(v: SuperVector, w: SuperVector, spec: FormSpec):
    """The supersymmetric pairing M(v)^st eta M(w)."""
    if len(v.coords) != spec.dim or len(w.coords) != spec.dim:
        raise ShapeMismatch("coordinate length differs from m + 2n")
    if v.ring.grassmann or w.ring.grassmann:
        ring = v.ring if v.ring.grassmann else w.ring
    else:
        ring = RATIONAL
    total = ring.zero()
    for i, j, val in spec.eta_pairs():
        ci = v.coords[i] if v.ring == ring else ring.coerce(v.coords[i])
        cj = w.coords[j] if w.ring == ring else ring.coerce(w.coords[j])
        if not ci or not cj:
            continue
        total = total + _twist(ci, spec.parities[i]) * cj * val
    return total


def gram_matrix(basis: list[SuperVector], spec: FormSpec) -> SuperMatrix:
    ring = next((b.ring for b in basis if b.ring.grassmann), RATIONAL)
    entries = {}
    for a, va in enumerate(basis):
        for b, vb in enumerate(basis):
            c = pair(va, vb, spec)
            if c:
                entries[(a, b)] = c
    par = tuple(b.parity for b in basis)
    return SuperMatrix(par, par, entries, ring=ring, parity=EVEN, validate=False)


# -- Lie algebra bases -----------------------------------------------------


@dataclass(frozen=True)
class OspBasis:
    even_part: tuple[SuperMatrix, ...]
    odd_part: tuple[SuperMatrix, ...]

    def all(self) -> tuple[SuperMatrix, ...]:
        return self.even_part + self.odd_part


def _solve_osp_parity(spec: FormSpec, xpar: int) -> list[SuperMatrix]:
    """Basis of {X : X^T eta + (-1)^(xpar*[a]) eta X = 0} on the parity-xpar block."""
    par = spec.parities
    dim = spec.dim
    unknowns = [(i, j) for i in range(dim) for j in range(dim)
                if (par[i] + par[j]) % 2 == xpar]
    index = {u: k for k, u in enumerate(unknowns)}
    eta_by_row: dict[int, list] = {}
    eta_by_col: dict[int, list] = {}
    for i, j, val in spec.eta_pairs():
        eta_by_row.setdefault(i, []).append((j, val))
        eta_by_col.setdefault(j, []).append((i, val))
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j) in unknowns:
        k = index[(i, j)]
        for b, val in eta_by_row.get(i, ()):          # (X^T eta)_{j b} term
            rows.setdefault((j, b), {})[k] = rows.get((j, b), {}).get(k, 0) + val
        for a, val in eta_by_col.get(i, ()):          # (eta X)_{a j} term
            sgn = -1 if (xpar and par[a]) else 1
            row = rows.setdefault((a, j), {})
            row[k] = row.get(k, 0) + sgn * val
    basis_vecs = linalg.nullspace([rows[k] for k in sorted(rows)], len(unknowns))
    out = []
    for vec in basis_vecs:
        entries = {unknowns[k]: c for k, c in enumerate(vec) if c}
        out.append(SuperMatrix(par, par, entries, parity=xpar))
    return out


@lru_cache(maxsize=None)
def osp_basis(spec: FormSpec) -> OspBasis:
    """Exact rational basis of the orthosymplectic Lie superalgebra."""
    return OspBasis(tuple(_solve_osp_parity(spec, EVEN)),
                    tuple(_solve_osp_parity(spec, ODD)))


@lru_cache(maxsize=None)
def gl_basis(spec: FormSpec) -> tuple[SuperMatrix, ...]:
    """Matrix units E_ab, each homogeneous of parity [a] + [b]."""
    par = spec.parities
    out = []
    for a in range(spec.dim):
        for b in range(spec.dim):
            out.append(SuperMatrix(par, par, {(a, b): Fraction(1)},
                                   parity=(par[a] + par[b]) % 2))
    return tuple(out)


@lru_cache(maxsize=None)
def diagonal_torus(spec: FormSpec) -> tuple[SuperMatrix, ...]:
    """Diagonal Cartan elements diag(0^m; ..., 1, -1, ...) of the symplectic part."""
    par = spec.parities
    out = []
    for j in range(spec.n):
        i = spec.m + 2 * j
        out.append(SuperMatrix(par, par, {(i, i): Fraction(1), (i + 1, i + 1): Fraction(-1)}))
    return tuple(out)


def reflection(spec: FormSpec) -> SuperMatrix:
    """diag(-1, 1, ..., 1; I_2n), the disconnected component generator of O(m)."""
    if spec.m < 1:
        raise ShapeMismatch("reflection requires m >= 1")
    par = spec.parities
    entries = {(i, i): Fraction(1) for i in range(spec.dim)}
    entries[(0, 0)] = Fraction(-1)
    return SuperMatrix(par, par, entries)


# -- group-element generation ----------------------------------------------


def exp_nilpotent(x: SuperMatrix) -> SuperMatrix:
    """Terminating exponential series of a nilpotent even matrix."""
    if x.parity != EVEN or x.row_parity != x.col_parity:
        raise ShapeMismatch("exponential needs an even square matrix")
    if x.ring.grassmann:
        if any(c.specialise() != 0 for c in x.entries.values()):
            raise NotNilpotent("entries must have zero scalar part")
        cap = x.ring.degree_bound + 1
    else:
        power = x
        for _ in range(x.nrows):
            if power.is_zero():
                break
            power = power * x
        if not power.is_zero():
            raise NotNilpotent("matrix is not nilpotent")
        cap = x.nrows + 1
    out = SuperMatrix.identity(x.row_parity, ring=x.ring)
    term = out
    for k in range(1, cap + 1):
        term = (term * x).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
    return out


def cayley(x: SuperMatrix, spec: FormSpec) -> SuperMatrix:
    """(1-X)^-1 (1+X) for rational even anti-self-adjoint X."""
    if x.ring.grassmann or x.parity != EVEN:
        raise ShapeMismatch("Cayley transform expects a rational even matrix")
    if dagger(x, spec.eta) != -x:
        raise ShapeMismatch("Cayley transform expects an anti-self-adjoint matrix")
    one = SuperMatrix.identity(x.row_parity)
    inv = linalg.invert_dense((one - x).to_lists())
    if inv is None:
        raise SingularCayley("1 - X is singular")
    entries = {(i, j): c for i, row in enumerate(inv) for j, c in enumerate(row) if c}
    ginv = SuperMatrix(x.row_parity, x.col_parity, entries)
    g = ginv * (one + x)
    assert dagger(g, spec.eta) * g == one, "Cayley output failed the isometry check"
    return g


def is_osp_group_element(g: SuperMatrix, spec: FormSpec) -> bool:
    if g.parity != EVEN or g.row_parity != spec.parities or g.col_parity != spec.parities:
        return False
    one = SuperMatrix.identity(spec.parities, ring=g.ring)
    if dagger(g, spec.eta) * g != one:
        return False
    if g.ring.grassmann:
        body = [[c.specialise() if isinstance(c, GrassmannElt) else Fraction(c)
                 for c in row] for row in g.to_lists()]
    else:
        body = g.to_lists()
    return linalg.invert_dense(body) is not None


# -- graded Gram-Schmidt -----------------------------------------------------


def _householder_columns(a: list[Fraction]) -> list[list[Fraction]]:
    """Columns of a rational orthogonal matrix whose first column is a."""
    m = len(a)
    e1 = [Fraction(1 if i == 0 else 0) for i in range(m)]
    if a == e1:
        return [[Fraction(1 if i == j else 0) for i in range(m)] for j in range(m)]
    w = [ai - ei for ai, ei in zip(a, e1)]
    ww = sum(x * x for x in w)
    cols = []
    for j in range(m):
        wj2 = 2 * w[j] / ww
        cols.append([Fraction(1 if i == j else 0) - w[i] * wj2 for i in range(m)])
    return cols


def _symplectic_complement(vectors: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    """Rational basis of the J-orthogonal complement of the given vectors."""
    rows = []
    for v in vectors:
        row = {}
        for j in range(n):
            b1, b2 = 2 * j, 2 * j + 1
            # <v, x> = sum_j  v[b1] * (-x[b2]) + v[b2] * x[b1]
            if v[b2]:
                row[b1] = row.get(b1, 0) + v[b2]
            if v[b1]:
                row[b2] = row.get(b2, 0) - v[b1]
        rows.append(row)
    return [list(vec) for vec in linalg.nullspace(rows, 2 * n)]


def _sym_form(x: list[Fraction], y: list[Fraction]) -> Fraction:
    total = Fraction(0)
    for j in range(len(x) // 2):
        total += -x[2 * j] * y[2 * j + 1] + x[2 * j + 1] * y[2 * j]
    return total


def _symplectic_completion(b: list[Fraction], bp: list[Fraction], n: int) -> list[list[Fraction]]:
    """Rational sigma-block completion of the pair (b, bp) with <b, bp> = -1.

    The returned 2n-2 vectors span the J-complement of the pair and satisfy
    <d1, d2> = -1 within each consecutive pair, matching a sigma block.
    """
    space = _symplectic_complement([b, bp], n)
    out = []
    while space:
        d1 = space.pop(0)
        k = next((i for i, z in enumerate(space) if _sym_form(d1, z) != 0), None)
        assert k is not None, "degenerate symplectic complement"
        z = space.pop(k)
        c = _sym_form(d1, z)
        d2 = [x / (-c) for x in z]          # <d1, d2> = -1
        rest = []
        for y in space:
            alpha = _sym_form(d2, y)        # <d2, d1> = +1
            beta = -_sym_form(d1, y)
            rest.append([yi - d1i * alpha - d2i * beta
                         for yi, d1i, d2i in zip(y, d1, d2)])
        space = rest
        out.extend([d1, d2])
    return out


def _etap_inv_pairs(n_even: int, n_sigma: int):
    """Nonzeros of diag(I_k, -J) used to invert the reduced form."""
    pairs = [(c, c, Fraction(1)) for c in range(n_even)]
    for j in range(n_sigma):
        pairs.append((n_even + 2 * j, n_even + 2 * j + 1, Fraction(1)))
        pairs.append((n_even + 2 * j + 1, n_even + 2 * j, Fraction(-1)))
    return pairs


def _run_recursion(spec: FormSpec, ring: GrassmannRing, knowns: list[SuperVector],
                   seed_rules, comp0: list[SuperVector], etap_inv) -> list[SuperVector]:
    """Solve the order-by-order Gram conditions for the completion vectors.

    knowns: fully specified seed vectors.  Each rule (pair_seed, base, sign)
    contributes the degree-p update
        knowns0[base] . (sign * sum_{i=1..p} (seed[pair_seed]_i, w_{p-i}))
    on top of the symmetric-choice completion term comp0 . T_p, where
    (eta' T_p)_{ab} = -1/2 sum_{i=1..p-1} (w^{(a)}_i, w^{(b)}_{p-i}).
    """
    N = ring.degree_bound
    k = len(comp0)
    pieces = [[comp0[a]] + [None] * N for a in range(k)]
    seed_grades = [[s.grade(i) for i in range(N + 1)] for s in knowns]
    knowns0 = [grades[0] for grades in seed_grades]
    etainv_by_row: dict[int, list] = {}
    for r, c, val in etap_inv:
        etainv_by_row.setdefault(r, []).append((c, val))

    for p in range(1, N + 1):
        base_coeffs = []
        for pair_seed, base, sign in seed_rules:
            coeffs = []
            for a in range(k):
                total = ring.zero()
                for i in range(1, p + 1):
                    total = total + pair(seed_grades[pair_seed][i], pieces[a][p - i], spec)
                coeffs.append(total * sign)
            base_coeffs.append((base, coeffs))
        m_rows = []
        for a in range(k):
            row = []
            for b in range(k):
                total = ring.zero()
                for i in range(1, p):
                    total = total + pair(pieces[a][i], pieces[b][p - i], spec)
                row.append(total * Fraction(-1, 2))
            m_rows.append(row)
        for a in range(k):
            new = SuperVector([ring.zero()] * spec.dim, ring=ring, parity=None,
                              validate=False)
            for base, coeffs in base_coeffs:
                if coeffs[a]:
                    new = new + knowns0[base].ract(coeffs[a])
            for l in range(k):
                lam = ring.zero()
                for c, val in etainv_by_row.get(l, ()):
                    lam = lam + m_rows[c][a] * val
                if lam:
                    new = new + comp0[l].ract(lam)
            pieces[a][p] = new
    out = []
    for a in range(k):
        total = pieces[a][0]
        for p in range(1, N + 1):
            total = total + pieces[a][p]
        out.append(SuperVector(total.coords, ring=ring, parity=comp0[a].parity,
                               validate=False))
    return out


def super_gram_schmidt(seed, spec: FormSpec, degree_bound: int) -> list[SuperVector]:
    """Extend a normalized seed to a homogeneous basis with Gram matrix eta.

    seed is either an even vector u with (u, u) = 1, or a pair (v, v') of odd
    vectors with (v, v') = 1.  In the pair case the basis ends with (v, -v'),
    whose pairing -1 matches the final sigma block of eta.
    """
    ring = GrassmannRing(degree_bound)
    one = ring.one()
    if isinstance(seed, SuperVector):
        u = seed.promote(degree_bound)
        if u.parity != EVEN:
            raise NotNormalized("even-case seed must be an even vector")
        if pair(u, u, spec) != one:
            raise NotNormalized("(u, u) != 1")
        a = u.specialise()[: spec.m]
        hcols = _householder_columns(a)
        comp0 = []
        for j in range(1, spec.m):
            coords = [ring.coerce(c) for c in hcols[j]] + [ring.zero()] * (2 * spec.n)
            comp0.append(SuperVector(coords, ring=ring, parity=EVEN, validate=False))
        for i in range(2 * spec.n):
            comp0.append(SuperVector.basis_vector(spec, spec.m + i, ring=ring))
        etap_inv = _etap_inv_pairs(spec.m - 1, spec.n)
        completed = _run_recursion(spec, ring, [u], [(0, 0, Fraction(-1))],
                                   comp0, etap_inv)
        basis = [u] + completed
    else:
        v, vprime = seed
        v = v.promote(degree_bound)
        v2 = vprime.promote(degree_bound).scale(-1)
        if v.parity != ODD or v2.parity != ODD:
            raise NotNormalized("odd-case seed must be a pair of odd vectors")
        if pair(v, vprime.promote(degree_bound), spec) != one:
            raise NotNormalized("(v, v') != 1")
        b = v.specialise()[spec.m:]
        bp = v2.specialise()[spec.m:]
        sympl = _symplectic_completion(b, bp, spec.n)
        comp0 = []
        for i in range(spec.m):
            comp0.append(SuperVector.basis_vector(spec, i, ring=ring))
        for vec in sympl:
            coords = [ring.zero()] * spec.m + [ring.coerce(c) for c in vec]
            comp0.append(SuperVector(coords, ring=ring, parity=ODD, validate=False))
        etap_inv = _etap_inv_pairs(spec.m, spec.n - 1)
        # w_p picks up v0 . (-sum (v2_i, w)) and v2_0 . (+sum (v_i, w))
        completed = _run_recursion(
            spec, ring, [v, v2], [(1, 0, Fraction(-1)), (0, 1, Fraction(1))],
            comp0, etap_inv)
        basis = completed + [v, v2]
    assert gram_matrix(basis, spec) == spec.eta, "recursion failed to reach eta"
    return basis


def basis_change(basis: list[SuperVector], spec: FormSpec) -> SuperMatrix:
    """The group element carrying the standard basis onto the given one."""
    if len(basis) != spec.dim:
        raise NotOrthosymplectic("wrong number of basis vectors")
    if gram_matrix(basis, spec) != spec.eta:
        raise NotOrthosymplectic("Gram matrix differs from eta")
    ring = next((b.ring for b in basis if b.ring.grassmann), RATIONAL)
    entries = {}
    for a, vec in enumerate(basis):
        for i, c in enumerate(vec.coords):
            c = ring.coerce(c)
            if c:
                entries[(i, a)] = c
    g = SuperMatrix(spec.parities, spec.parities, entries, ring=ring)
    if not is_osp_group_element(g, spec):
        raise NotOrthosymplectic("column matrix is not a group element")
    return g

"""The supersymmetric algebra on (m+2n) x (p+q) variables, the derivation
action of the orthosymplectic algebra, invariant slices and the super
Pfaffian.

Variable x[a, j] (slot a of the superspace, column j) is even iff the slot
and column parities agree.  Odd variables carry exponents 0/1 and are
globally ordered by (column, slot), which fixes every Koszul sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg
from .errors import NoPfaffianFound, NotEvenPoint, ShapeMismatch, TooLarge
from .grassmann import GrassmannElt, merge_sign
from .ospgeom import FormSpec, SuperVector, osp_basis, diagonal_torus
from .superlinalg import EVEN, ODD, GrassmannRing, SuperMatrix

__all__ = [
    "PolyContext",
    "SuperPoly",
    "sp_mul",
    "sp_derivation_action",
    "quadratic_invariants",
    "sp_evaluate",
    "invariant_subspace",
    "super_pfaffian",
    "pfaffian_report",
    "pfaffian_leading_check",
    "determinant_poly",
    "reflect_poly",
]


@dataclass(frozen=True)
class PolyContext:
    p: int
    q: int
    spec: FormSpec

    @property
    def ncols(self) -> int:
        return self.p + self.q

    def col_parity(self, j: int) -> int:
        return EVEN if j < self.p else ODD

    def var_parity(self, a: int, j: int) -> int:
        return (self.spec.parities[a] + self.col_parity(j)) % 2


@lru_cache(maxsize=None)
def _vars(ctx: PolyContext):
    """(even variable list, odd variable list), each sorted by (column, slot)."""
    evens, odds = [], []
    for j in range(ctx.ncols):
        for a in range(ctx.spec.dim):
            (evens if ctx.var_parity(a, j) == EVEN else odds).append((a, j))
    return tuple(evens), tuple(odds)


class SuperPoly:
    """Sparse polynomial: monomial = (even exponents, odd-variable bitmask)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: PolyContext, terms=None):
        self.ctx = ctx
        self.terms: dict[tuple, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[mono] = c

    @classmethod
    def zero(cls, ctx: PolyContext) -> "SuperPoly":
        return cls(ctx)

    @classmethod
    def one(cls, ctx: PolyContext) -> "SuperPoly":
        evens, _ = _vars(ctx)
        return cls(ctx, {((0,) * len(evens), 0): Fraction(1)})

    @classmethod
    def variable(cls, ctx: PolyContext, a: int, j: int) -> "SuperPoly":
        evens, odds = _vars(ctx)
        if ctx.var_parity(a, j) == EVEN:
            exps = [0] * len(evens)
            exps[evens.index((a, j))] = 1
            return cls(ctx, {(tuple(exps), 0): Fraction(1)})
        return cls(ctx, {((0,) * len(evens), 1 << odds.index((a, j))): Fraction(1)})

    def degree_terms(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (exps, mask) in self.terms:
            d = sum(exps) + mask.bit_count()
            out[d] = out.get(d, 0) + 1
        return out

    def even_variable_part(self) -> "SuperPoly":
        return SuperPoly(self.ctx, {(e, m): c for (e, m), c in self.terms.items()
                                    if m == 0})

    def __add__(self, other: "SuperPoly") -> "SuperPoly":
        assert self.ctx == other.ctx
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            v = terms.get(mono, 0) + c
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
        return SuperPoly(self.ctx, terms)

    def __neg__(self):
        return SuperPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SuperPoly":
        c = Fraction(c)
        return SuperPoly(self.ctx, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other: "SuperPoly") -> "SuperPoly":
        assert self.ctx == other.ctx
        terms: dict[tuple, Fraction] = {}
        for (e1, m1), c1 in self.terms.items():
            for (e2, m2), c2 in other.terms.items():
                if m1 & m2:
                    continue
                sign = merge_sign(m1, m2)
                mono = (tuple(x + y for x, y in zip(e1, e2)), m1 | m2)
                v = terms.get(mono, 0) + sign * c1 * c2
                if v:
                    terms[mono] = v
                else:
                    terms.pop(mono, None)
        return SuperPoly(self.ctx, terms)

    def __pow__(self, k: int) -> "SuperPoly":
        out = SuperPoly.one(self.ctx)
        for _ in range(k):
            out = out * self
        return out

    def parity(self) -> int | None:
        if not self.terms:
            return 0
        parities = {mask.bit_count() & 1 for (_, mask) in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def __eq__(self, other):
        return (isinstance(other, SuperPoly) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def format(self) -> str:
        evens, odds = _vars(self.ctx)
        if not self.terms:
            return "0"
        parts = []
        for (exps, mask) in sorted(self.terms,
                                   key=lambda m: (sum(m[0]) + m[1].bit_count(), m)):
            c = self.terms[(exps, mask)]
            factors = []
            for v, e in zip(evens, exps):
                if e:
                    factors.append(f"x{list(v)}" + (f"^{e}" if e > 1 else ""))
            for b in range(mask.bit_length()):
                if mask >> b & 1:
                    factors.append(f"th{list(odds[b])}")
            parts.append(str(c) + ("*" + "*".join(factors) if factors else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"SuperPoly({self.format()})"


def sp_mul(f: SuperPoly, g: SuperPoly) -> SuperPoly:
    if f.ctx != g.ctx:
        raise ShapeMismatch("polynomial contexts differ")
    return f * g


def _var_image(x: SuperMatrix, ctx: PolyContext, a: int, j: int) -> SuperPoly:
    """Image of x[a, j] under the matrix acting on the superspace slot."""
    out = SuperPoly.zero(ctx)
    for (b, aa), c in x.entries.items():
        if aa == a:
            out = out + SuperPoly.variable(ctx, b, j).scale(c)
    return out


def sp_derivation_action(x: SuperMatrix, f: SuperPoly) -> SuperPoly:
    """Superderivation extending the slot action, with the Leibniz sign."""
    if x.parity is None:
        raise ShapeMismatch("derivation needs a homogeneous matrix")
    ctx = f.ctx
    evens, odds = _vars(ctx)
    out = SuperPoly.zero(ctx)
    for (exps, mask), coeff in f.terms.items():
        for vi, e in enumerate(exps):
            if not e:
                continue
            a, j = evens[vi]
            rem = list(exps)
            rem[vi] = e - 1
            rem_mono = SuperPoly(ctx, {(tuple(rem), mask): Fraction(1)})
            out = out + (_var_image(x, ctx, a, j) * rem_mono).scale(coeff * e)
        bits = [b for b in range(mask.bit_length()) if mask >> b & 1]
        for t, b in enumerate(bits):
            a, j = odds[b]
            sign = -1 if (x.parity and t % 2) else 1
            prefix = 0
            for bb in bits[:t]:
                prefix |= 1 << bb
            suffix = 0
            for bb in bits[t + 1:]:
                suffix |= 1 << bb
            pre = SuperPoly(ctx, {(exps, prefix): Fraction(1)})
            suf = SuperPoly(ctx, {((0,) * len(evens), suffix): Fraction(1)})
            out = out + (pre * _var_image(x, ctx, a, j) * suf).scale(coeff * sign)
    return out


def quadratic_invariants(p: int, q: int, spec: FormSpec) -> list[SuperPoly]:
    """The pairing quadratics f_ab(u) = (u_a, u_b) for columns a <= b."""
    ctx = PolyContext(p, q, spec)
    out = []
    for a in range(ctx.ncols):
        for b in range(a, ctx.ncols):
            f = SuperPoly.zero(ctx)
            for i, j, val in spec.eta_pairs():
                sign = Fraction(1)
                if spec.parities[i]:
                    sign = Fraction(-1) if ctx.col_parity(a) == EVEN else Fraction(1)
                f = f + (SuperPoly.variable(ctx, i, a)
                         * SuperPoly.variable(ctx, j, b)).scale(sign * val)
            out.append(f)
    return out


def sp_evaluate(f: SuperPoly, point: list[SuperVector]) -> GrassmannElt:
    """Substitute coordinates for variables; a parity-respecting ring map."""
    ctx = f.ctx
    if len(point) != ctx.ncols:
        raise NotEvenPoint(f"need {ctx.ncols} vectors")
    degree_bound = max((v.ring.degree_bound for v in point if v.ring.grassmann),
                       default=0)
    ring = GrassmannRing(degree_bound)
    vectors = [v if v.ring == ring else v.promote(degree_bound) for v in point]
    for j, v in enumerate(vectors):
        if v.parity != ctx.col_parity(j):
            raise NotEvenPoint(f"vector {j} has parity {v.parity}, "
                               f"expected {ctx.col_parity(j)}")
    evens, odds = _vars(ctx)
    total = ring.zero()
    for (exps, mask), coeff in f.terms.items():
        value = ring.one()
        for (a, j), e in zip(evens, exps):
            for _ in range(e):
                value = value * vectors[j].coords[a]
            if not value:
                break
        if value:
            for b in range(mask.bit_length()):
                if mask >> b & 1:
                    a, j = odds[b]
                    value = value * vectors[j].coords[a]
                    if not value:
                        break
        if value:
            total = total + value * coeff
    return total


def _monomials_of_degree(ctx: PolyContext, degree: int) -> list[tuple]:
    evens, odds = _vars(ctx)
    out = []

    def even_fills(remaining: int, nvars: int):
        if nvars == 0:
            if remaining == 0:
                yield ()
            return
        for e in range(remaining + 1):
            for rest in even_fills(remaining - e, nvars - 1):
                yield (e,) + rest

    for s in range(min(len(odds), degree) + 1):
        for subset in combinations(range(len(odds)), s):
            mask = 0
            for b in subset:
                mask |= 1 << b
            for exps in even_fills(degree - s, len(evens)):
                out.append((exps, mask))
    out.sort()
    return out


def _first_slot_count(ctx: PolyContext, mono: tuple) -> int:
    evens, odds = _vars(ctx)
    exps, mask = mono
    count = sum(e for (a, _), e in zip(evens, exps) if a == 0)
    count += sum(1 for b in range(mask.bit_length())
                 if mask >> b & 1 and odds[b][0] == 0)
    return count


def _torus_weight(ctx: PolyContext, mono: tuple) -> tuple:
    spec = ctx.spec
    evens, odds = _vars(ctx)
    exps, mask = mono
    weights = []
    for j in range(spec.n):
        up, down = spec.m + 2 * j, spec.m + 2 * j + 1
        w = sum(e for (a, _), e in zip(evens, exps) if a == up)
        w -= sum(e for (a, _), e in zip(evens, exps) if a == down)
        w += sum(1 for b in range(mask.bit_length())
                 if mask >> b & 1 and odds[b][0] == up)
        w -= sum(1 for b in range(mask.bit_length())
                 if mask >> b & 1 and odds[b][0] == down)
        weights.append(w)
    return tuple(weights)


def invariant_subspace(degree: int, p: int, q: int, spec: FormSpec,
                       group_refine: bool = False, twist: int = 1,
                       size_bound: int = 70000) -> list[SuperPoly]:
    """Joint kernel of the orthosymplectic derivations on a degree slice.

    With group_refine, monomials are restricted to the reflection character
    `twist` (+1 invariance, -1 the determinant character) when m >= 1.
    The diagonal symplectic torus is applied as a weight-zero presolve.
    """
    ctx = PolyContext(p, q, spec)
    monos = _monomials_of_degree(ctx, degree)
    if len(monos) > size_bound:
        raise TooLarge(f"{len(monos)} monomials exceed the size bound")
    zero_w = (0,) * spec.n
    keep = [m for m in monos if _torus_weight(ctx, m) == zero_w]
    if group_refine and spec.m >= 1:
        want = 0 if twist == 1 else 1
        keep = [m for m in keep if _first_slot_count(ctx, m) % 2 == want]
    if not keep:
        return []
    uindex = {m: t for t, m in enumerate(keep)}
    rows: dict[tuple, dict[int, Fraction]] = {}
    for gen_idx, x in enumerate(osp_basis(spec).all()):
        for mono in keep:
            image = sp_derivation_action(x, SuperPoly(ctx, {mono: Fraction(1)}))
            for mono2, c in image.terms.items():
                row = rows.setdefault((gen_idx, mono2), {})
                row[uindex[mono]] = row.get(uindex[mono], 0) + c
    elim = linalg.Eliminator()
    for key in sorted(rows, key=lambda key: (len(rows[key]), key[1])):
        elim.add_row(rows[key])
    out = []
    for vec in elim.nullspace(len(keep)):
        terms = {keep[t]: c for t, c in enumerate(vec) if c}
        out.append(SuperPoly(ctx, terms))
    return out


def determinant_poly(spec: FormSpec, p: int, q: int = 0) -> SuperPoly:
    """det of the even-slot matrix (x[a, j])_{a, j < m}."""
    ctx = PolyContext(p, q, spec)
    m = spec.m
    out = SuperPoly.zero(ctx)
    from itertools import permutations

    for sigma in permutations(range(m)):
        inv = sum(1 for i in range(m) for j in range(i + 1, m)
                  if sigma[i] > sigma[j])
        term = SuperPoly.one(ctx)
        for j in range(m):
            term = term * SuperPoly.variable(ctx, sigma[j], j)
        out = out + term.scale(Fraction(-1) ** inv)
    return out


def reflect_poly(f: SuperPoly) -> SuperPoly:
    """Action of diag(-1, 1, ..., 1): negate every slot-0 variable."""
    terms = {}
    for mono, c in f.terms.items():
        sign = -1 if _first_slot_count(f.ctx, mono) % 2 else 1
        terms[mono] = c * sign
    return SuperPoly(f.ctx, terms)


def _lead_monomial(ctx: PolyContext) -> tuple:
    """(prod_a x[a,a])^{2n+1}: the diagonal monomial of the leading power."""
    evens, _ = _vars(ctx)
    exps = [0] * len(evens)
    for a in range(ctx.spec.m):
        exps[evens.index((a, a))] = 2 * ctx.spec.n + 1
    return (tuple(exps), 0)


def _pfaffian_solve(spec: FormSpec, size_bound: int):
    if spec.m < 1:
        raise NoPfaffianFound("requires m >= 1")
    degree = spec.m * (2 * spec.n + 1)
    basis = invariant_subspace(degree, spec.m, 0, spec, group_refine=True,
                               twist=-1, size_bound=size_bound)
    ctx = PolyContext(spec.m, 0, spec)
    lead = _lead_monomial(ctx)
    omega = next((f for f in basis if f.terms.get(lead)), None)
    if omega is None:
        raise NoPfaffianFound("no invariant with a nonzero leading coefficient")
    omega = omega.scale(Fraction(1) / omega.terms[lead])
    return omega, len(basis), degree


def super_pfaffian(spec: FormSpec, size_bound: int = 70000) -> SuperPoly:
    """Generator of the determinant-twisted invariant slice, normalized so the
    diagonal leading monomial has coefficient 1."""
    omega, slice_dim, _ = _pfaffian_solve(spec, size_bound)
    assert slice_dim >= 1
    return omega

def pfaffian_report(spec: FormSpec, size_bound: int = 70000) -> dict:
    omega, slice_dim, degree = _pfaffian_solve(spec, size_bound)
    return {
        "degree": degree,
        "slice_dim": slice_dim,
        "leading_ok": pfaffian_leading_check(omega, spec),
        "reflection_twist_ok": reflect_poly(omega) == -omega,
        "omega": {SuperPoly(omega.ctx, {m: c}).format(): str(c)
                  for m, c in sorted(omega.terms.items())},
    }


def pfaffian_leading_check(omega: SuperPoly, spec: FormSpec) -> bool:
    """Purely even-variable part equals +/- det^(2n+1)."""
    even_part = omega.even_variable_part()
    delta_pow = determinant_poly(spec, spec.m) ** (2 * spec.n + 1)
    return even_part == delta_pow or even_part == -delta_pow

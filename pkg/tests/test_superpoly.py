from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from ospkit import linalg
from ospkit.errors import NotEvenPoint
from ospkit.grassmann import GrassmannElt
from ospkit.ospgeom import FormSpec, SuperVector, osp_basis, pair
from ospkit.sampling import make_rng, rand_fraction, rand_supervector
from ospkit.superlinalg import GrassmannRing
from ospkit.superpoly import (
    PolyContext,
    SuperPoly,
    determinant_poly,
    invariant_subspace,
    pfaffian_leading_check,
    pfaffian_report,
    quadratic_invariants,
    reflect_poly,
    sp_derivation_action,
    sp_evaluate,
    sp_mul,
    super_pfaffian,
)
from ospkit.superpoly import _monomials_of_degree

SPEC = FormSpec(1, 1)
CTX = PolyContext(1, 0, SPEC)


def var(a, j=0, ctx=CTX):
    return SuperPoly.variable(ctx, a, j)


def rand_poly(rng, ctx, deg=2, terms=4):
    monos = []
    for d in range(deg + 1):
        monos += _monomials_of_degree(ctx, d)
    out = SuperPoly.zero(ctx)
    for _ in range(terms):
        out = out + SuperPoly(ctx, {rng.choice(monos): rand_fraction(rng, 5, 3)})
    return out


def test_odd_variables_square_to_zero():
    th = var(1)
    assert not (th * th)


def test_graded_commutativity():
    rng = make_rng(0)
    for _ in range(30):
        f, g = rand_poly(rng, CTX), rand_poly(rng, CTX)
        for pf in (0, 1):
            for pg in (0, 1):
                fh = SuperPoly(CTX, {m: c for m, c in f.terms.items()
                                     if m[1].bit_count() % 2 == pf})
                gh = SuperPoly(CTX, {m: c for m, c in g.terms.items()
                                     if m[1].bit_count() % 2 == pg})
                prod = fh * gh
                back = gh * fh
                assert prod == (back if not (pf and pg) else -back)


def test_even_variables_commute():
    ctx = PolyContext(2, 0, FormSpec(2, 1))
    x, y = SuperPoly.variable(ctx, 0, 0), SuperPoly.variable(ctx, 1, 1)
    assert x * y == y * x


def test_derivation_on_generators_is_matrix_action():
    for x in osp_basis(SPEC).all():
        for a in range(SPEC.dim):
            image = sp_derivation_action(x, var(a))
            expected = SuperPoly.zero(CTX)
            for (b, aa), c in x.entries.items():
                if aa == a:
                    expected = expected + var(b).scale(c)
            assert image == expected


def test_leibniz_rule():
    rng = make_rng(1)
    for x in osp_basis(SPEC).all():
        for _ in range(5):
            f, g = rand_poly(rng, CTX), rand_poly(rng, CTX)
            for p in (0, 1):
                fh = SuperPoly(CTX, {m: c for m, c in f.terms.items()
                                     if m[1].bit_count() % 2 == p})
                sign = -1 if (x.parity and p) else 1
                assert sp_derivation_action(x, fh * g) == \
                    sp_derivation_action(x, fh) * g + \
                    (fh * sp_derivation_action(x, g)).scale(sign)


def test_bracket_action():
    rng = make_rng(2)
    from ospkit.superlinalg import SuperMatrix

    basis = osp_basis(SPEC).all()
    for _ in range(10):
        x, y = rng.choice(basis), rng.choice(basis)
        f = rand_poly(rng, CTX)
        sign = -1 if (x.parity and y.parity) else 1
        brk = SuperMatrix(x.row_parity, x.col_parity,
                          (x * y - (y * x).scale(sign)).entries,
                          parity=(x.parity + y.parity) % 2)
        assert sp_derivation_action(brk, f) == \
            sp_derivation_action(x, sp_derivation_action(y, f)) - \
            sp_derivation_action(y, sp_derivation_action(x, f)).scale(sign)


def test_quadratics_are_invariant():
    for (p, q) in [(1, 0), (2, 0), (1, 1)]:
        for f in quadratic_invariants(p, q, SPEC):
            for x in osp_basis(SPEC).all():
                assert not sp_derivation_action(x, f)


def test_quadratic_evaluation_matches_pair():
    rng = make_rng(3)
    for (p, q) in [(1, 0), (2, 0), (1, 1)]:
        quads = quadratic_invariants(p, q, SPEC)
        cols = [0] * p + [1] * q
        point = [rand_supervector(rng, SPEC, 4, cp) for cp in cols]
        idx = 0
        for a in range(p + q):
            for b in range(a, p + q):
                assert sp_evaluate(quads[idx], point) == pair(point[a], point[b], SPEC)
                idx += 1


def test_single_odd_column_pairing_vanishes():
    f11 = quadratic_invariants(0, 1, SPEC)[0]
    assert not f11


def test_evaluation_is_ring_homomorphism():
    rng = make_rng(4)
    ctx = PolyContext(2, 0, SPEC)
    for _ in range(10):
        f, g = rand_poly(rng, ctx), rand_poly(rng, ctx)
        point = [rand_supervector(rng, SPEC, 4, 0) for _ in range(2)]
        assert sp_evaluate(f * g, point) == \
            sp_evaluate(f, point) * sp_evaluate(g, point)


def test_evaluation_scaling_degree():
    rng = make_rng(5)
    ctx = PolyContext(2, 0, SPEC)
    monos = _monomials_of_degree(ctx, 3)
    f = SuperPoly(ctx, {rng.choice(monos): Fraction(2), rng.choice(monos): Fraction(-3)})
    point = [rand_supervector(rng, SPEC, 4, 0) for _ in range(2)]
    lam = GrassmannElt.scalar(4, Fraction(3)) + \
        GrassmannElt.from_indices(4, [1, 2], Fraction(1, 2))
    scaled = [SuperVector([c * lam for c in v.coords], ring=v.ring, parity=0,
                          validate=False) for v in point]
    assert sp_evaluate(f, scaled) == lam ** 3 * sp_evaluate(f, point)


def test_nonzero_poly_has_witness_point():
    rng = make_rng(6)
    ctx = PolyContext(1, 1, SPEC)
    ring = GrassmannRing(6)
    for _ in range(10):
        f = rand_poly(rng, ctx, deg=2, terms=2)
        if not f:
            continue
        found = False
        for attempt in range(40):
            # rational even coordinates, distinct generators for odd slots
            gen_pool = iter(range(1, 7))
            point = []
            for j in range(2):
                cp = ctx.col_parity(j)
                coords = []
                for i in range(SPEC.dim):
                    if (SPEC.parities[i] + cp) % 2 == 0:
                        coords.append(ring.coerce(rand_fraction(rng, 4, 2)))
                    else:
                        coords.append(GrassmannElt.generator(6, next(gen_pool)))
                point.append(SuperVector(coords, ring=ring, parity=cp, spec=SPEC))
            if sp_evaluate(f, point):
                found = True
                break
        assert found, f.format()


def test_evaluation_parity_check():
    ctx = PolyContext(1, 1, SPEC)
    f = SuperPoly.one(ctx)
    good = [rand_supervector(make_rng(7), SPEC, 4, 0),
            rand_supervector(make_rng(8), SPEC, 4, 1)]
    sp_evaluate(f, good)
    with pytest.raises(NotEvenPoint):
        sp_evaluate(f, list(reversed(good)))


def test_invariant_subspace_degree_examples():
    basis = invariant_subspace(2, 1, 0, SPEC, group_refine=True)
    assert len(basis) == 1
    f11 = quadratic_invariants(1, 0, SPEC)[0]
    lead = max(f11.terms.values())
    assert basis[0].scale(lead) == f11 or basis[0] == f11
    assert invariant_subspace(1, 1, 0, SPEC, group_refine=True) == []


def test_polynomial_fft_equalities():
    for (p, q) in [(1, 0), (2, 0), (1, 1)]:
        quads = quadratic_invariants(p, q, SPEC)
        for degree in (2, 4):
            inv_dim = len(invariant_subspace(degree, p, q, SPEC, group_refine=True))
            prods = []
            for combo in combinations_with_replacement(range(len(quads)), degree // 2):
                f = SuperPoly.one(PolyContext(p, q, SPEC))
                for i in combo:
                    f = f * quads[i]
                if f:
                    prods.append(f)
            keys = sorted({m for f in prods for m in f.terms})
            col = {m: i for i, m in enumerate(keys)}
            rank = linalg.rank([{col[m]: c for m, c in f.terms.items()}
                                for f in prods])
            assert inv_dim == rank, (p, q, degree)


def test_invariants_are_annihilated_after_solve():
    basis = invariant_subspace(4, 2, 0, SPEC, group_refine=True)
    for f in basis:
        for x in osp_basis(SPEC).all():
            assert not sp_derivation_action(x, f)


def test_super_pfaffian_1_1():
    omega = super_pfaffian(SPEC)
    x, th1, th2 = var(0), var(1), var(2)
    assert omega == x ** 3 + (x * th1 * th2).scale(3)
    info = pfaffian_report(SPEC)
    assert info["slice_dim"] == 1
    assert info["leading_ok"]
    assert info["reflection_twist_ok"]
    assert pfaffian_leading_check(omega, SPEC)
    assert reflect_poly(omega) == -omega
    assert reflect_poly(omega * omega) == omega * omega


def test_super_pfaffian_needs_even_slots():
    from ospkit.errors import NoPfaffianFound

    with pytest.raises(NoPfaffianFound):
        super_pfaffian(FormSpec(0, 1))


def test_super_pfaffian_2_1():
    spec = FormSpec(2, 1)
    omega = super_pfaffian(spec)
    info = pfaffian_report(spec)
    assert info["slice_dim"] == 1 and info["leading_ok"] and info["reflection_twist_ok"]
    delta = determinant_poly(spec, 2)
    assert omega.even_variable_part() in (delta ** 3, -(delta ** 3))
    # the even part of the square is det(X^t X)^(2n+1) = det(X)^6
    assert (omega * omega).even_variable_part() == delta ** 6

"""Acceptance suite: every criterion is an exact check (tolerance zero).

Each test prints one PASS line with its wall-clock time; run with -s to see
them live.  The (2,1) super-Pfaffian check runs under --slow.
"""

import time
from itertools import combinations_with_replacement

import pytest

from ospkit import linalg
from ospkit.grassmann import GrassmannElt
from ospkit.invariantsolver import (
    verify_fft,
    verify_gap,
    verify_gl_sw,
    verify_relations,
    verify_swb,
    verify_transfer,
)
from ospkit.ospgeom import (
    FormSpec,
    SuperVector,
    basis_change,
    gram_matrix,
    is_osp_group_element,
    super_gram_schmidt,
)
from ospkit.sampling import (
    make_rng,
    rand_diagram,
    rand_even_matrix,
    rand_grassmann,
    rand_homogeneous_matrix,
    rand_osp_lambda,
)
from ospkit.superlinalg import (
    EVEN,
    dagger,
    in_S,
    omega,
    omega_s,
    supertranspose,
)
from ospkit.superpoly import (
    PolyContext,
    SuperPoly,
    invariant_subspace,
    pfaffian_report,
    quadratic_invariants,
    reflect_poly,
    super_pfaffian,
)
from ospkit.tensorfunctor import F_diagram, F_diagram_via_top

MAIN_SPECS = [FormSpec(1, 1), FormSpec(2, 1), FormSpec(0, 1), FormSpec(2, 2)]


def announce(number, name, start, detail=""):
    elapsed = time.perf_counter() - start
    suffix = f" {detail}" if detail else ""
    print(f"\nACCEPTANCE {number} ({name}): PASS [{elapsed:.1f}s]{suffix}")


def test_criterion_1_functor_relations():
    start = time.perf_counter()
    values = {}
    for spec in MAIN_SPECS:
        reports = verify_relations(spec)
        assert all(r.verdict for r in reports), (spec, reports)
        values[(spec.m, spec.n)] = spec.d
    assert values[(1, 1)] == -1
    announce(1, "functor relations", start, f"cap.cup values {values}")


def test_criterion_2_functoriality_and_well_definedness():
    start = time.perf_counter()
    arities = [(0, 0), (0, 2), (2, 0), (1, 1), (2, 2), (1, 3), (3, 1), (3, 3)]
    for spec in MAIN_SPECS:
        rng = make_rng(20_000 + spec.m * 10 + spec.n)
        done = 0
        while done < 200:
            k, l = rng.choice(arities)
            l2 = rng.choice([b for (a, b) in arities if a == l])
            d2 = rand_diagram(rng, k, l, spec.d)
            d1 = rand_diagram(rng, l, l2, spec.d)
            if d1 is None or d2 is None:
                continue
            assert F_diagram(d1.compose(d2), spec) == \
                F_diagram(d1, spec).compose(F_diagram(d2, spec))
            if done % 10 == 0:
                assert F_diagram(d2, spec) == F_diagram_via_top(d2, spec)
            done += 1
    announce(2, "functoriality, 200 pairs per space", start)


def test_criterion_3_transfer_squares():
    start = time.perf_counter()
    reports = verify_transfer(FormSpec(1, 1), 5)
    assert reports and all(r.verdict for r in reports)
    announce(3, "transfer squares p+q+r <= 5", start, f"{len(reports)} triples")


def test_criterion_4_gl_schur_weyl():
    start = time.perf_counter()
    dims = {}
    for spec in [FormSpec(1, 1), FormSpec(2, 1), FormSpec(2, 2)]:
        reports = verify_gl_sw(spec, 3)
        assert all(r.verdict for r in reports), reports
        dims[(spec.m, spec.n)] = [r.dim_lie_invariants for r in reports]
    assert dims[(1, 1)] == [1, 2, 6]
    announce(4, "gl super Schur-Weyl", start, f"dims {dims}")


def test_criterion_5_fft_and_swb():
    start = time.perf_counter()
    plans = [(FormSpec(1, 1), 3), (FormSpec(2, 1), 2), (FormSpec(0, 1), 2)]
    for spec, d_max in plans:
        for rep in verify_fft(spec, d_max):
            assert rep.verdict, rep.params
    for spec, _ in plans:
        for rep in verify_swb(spec, 3):
            assert rep.verdict, rep.params
    announce(5, "FFT and Schur-Weyl-Brauer", start)


def test_criterion_6_pfaffian_gap():
    start = time.perf_counter()
    reports = verify_gap(FormSpec(2, 1), 3)
    assert all(r.verdict for r in reports)
    last = reports[-1]
    assert last.note == "gap expected"
    assert last.dim_lie_invariants > last.diagram_image_rank
    assert last.dim_group_invariants == last.diagram_image_rank
    for rep in verify_gap(FormSpec(1, 1), 3):
        assert rep.verdict and rep.dim_lie_invariants == rep.dim_group_invariants
    announce(6, "super-Pfaffian gap at r_c", start,
             f"(2,1) r=3: lie {last.dim_lie_invariants} > "
             f"group {last.dim_group_invariants} = rank {last.diagram_image_rank}")


def test_criterion_7_super_pfaffian_object():
    start = time.perf_counter()
    spec = FormSpec(1, 1)
    info = pfaffian_report(spec)
    assert info["slice_dim"] == 1
    assert info["leading_ok"] and info["reflection_twist_ok"]
    omega_poly = super_pfaffian(spec)
    assert reflect_poly(omega_poly * omega_poly) == omega_poly * omega_poly
    announce(7, "super Pfaffian at (1,1)", start, f"degree {info['degree']}")


@pytest.mark.slow
def test_criterion_7_super_pfaffian_slow():
    start = time.perf_counter()
    spec = FormSpec(2, 1)
    info = pfaffian_report(spec)
    assert info["slice_dim"] == 1
    assert info["leading_ok"] and info["reflection_twist_ok"]
    omega_poly = super_pfaffian(spec)
    assert reflect_poly(omega_poly * omega_poly) == omega_poly * omega_poly
    announce(7, "super Pfaffian at (2,1) [slow]", start, f"degree {info['degree']}")


def test_criterion_8_gram_schmidt():
    start = time.perf_counter()
    for spec in [FormSpec(1, 1), FormSpec(2, 1)]:
        rng = make_rng(80_000 + spec.m)
        for _ in range(50):
            g = rand_osp_lambda(rng, spec, 6)
            seed = SuperVector([g[(i, 0)] for i in range(spec.dim)],
                               ring=g.ring, parity=EVEN, spec=spec)
            basis = super_gram_schmidt(seed, spec, 6)
            assert gram_matrix(basis, spec) == spec.eta
            change = basis_change(basis, spec)
            assert is_osp_group_element(change, spec)
    announce(8, "graded Gram-Schmidt, 50 seeds per space", start)


def test_criterion_9_polynomial_fft():
    start = time.perf_counter()
    spec = FormSpec(1, 1)
    for (p, q) in [(1, 0), (2, 0), (1, 1)]:
        quads = quadratic_invariants(p, q, spec)
        for degree in (2, 4):
            inv_dim = len(invariant_subspace(degree, p, q, spec, group_refine=True))
            prods = []
            for combo in combinations_with_replacement(range(len(quads)), degree // 2):
                f = SuperPoly.one(PolyContext(p, q, spec))
                for i in combo:
                    f = f * quads[i]
                if f:
                    prods.append(f)
            keys = sorted({m for f in prods for m in f.terms})
            col = {m: i for i, m in enumerate(keys)}
            rank = linalg.rank([{col[m]: c for m, c in f.terms.items()}
                                for f in prods])
            assert inv_dim == rank, (p, q, degree)
    announce(9, "polynomial FFT", start)


def test_criterion_10_property_suites():
    start = time.perf_counter()
    cases = 500
    # Grassmann: graded commutativity, associativity, nilpotency
    rng = make_rng(100)
    for _ in range(cases):
        pa, pb = rng.randint(0, 1), rng.randint(0, 1)
        a = rand_grassmann(rng, 4, pa, 2)
        b = rand_grassmann(rng, 4, pb, 2)
        ab = a * b
        assert ab == (b * a if not (pa and pb) else -(b * a))
        c = rand_grassmann(rng, 4, None, 2)
        assert (a * b) * c == a * (b * c)
        nil = rand_grassmann(rng, 4, None, 2, nilpotent=True)
        assert nil ** 5 == GrassmannElt(4)

    spec = FormSpec(1, 1)
    # supertranspose anti-homomorphism
    rng = make_rng(101)
    for _ in range(cases):
        a = rand_even_matrix(rng, spec, 4, terms=1)
        b = rand_homogeneous_matrix(rng, spec, 4, rng.randint(0, 1), terms=1)
        assert supertranspose(a * b) == supertranspose(b) * supertranspose(a)

    # dagger is an involution on even matrices
    rng = make_rng(102)
    for _ in range(cases):
        a = rand_even_matrix(rng, spec, 4, terms=1)
        assert dagger(dagger(a, spec.eta), spec.eta) == a

    # omega is left-invariant under the group
    rng = make_rng(103)
    for _ in range(cases):
        a = rand_even_matrix(rng, spec, 4, terms=1)
        g = rand_osp_lambda(rng, spec, 4)
        assert omega(g * a, spec.eta) == omega(a, spec.eta)

    # omega_s always lands in the block-symmetry locus
    rng = make_rng(104)
    for _ in range(cases):
        a = rand_even_matrix(rng, spec, 4, terms=1)
        assert in_S(omega_s(a, spec.eta))

    # odd-total invariant spaces vanish
    from ospkit.invariantsolver import hom_space_group

    rng = make_rng(105)
    for _ in range(cases):
        m, n = rng.choice([(1, 0), (2, 0), (1, 1), (0, 1), (2, 1)])
        sp = FormSpec(m, n)
        k, l = rng.randint(0, 2), rng.randint(0, 2)
        if (k + l) % 2 == 0:
            k += 1
        assert hom_space_group(k, l, sp) == []
    announce(10, "property suites, 500 cases each", start)

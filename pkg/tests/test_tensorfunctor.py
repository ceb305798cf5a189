from fractions import Fraction
from itertools import permutations

import pytest

from ospkit.brauercat import BrauerDiagram, BrauerElt, enumerate_diagrams
from ospkit.errors import DeltaMismatch, InhomogeneousInput
from ospkit.ospgeom import FormSpec, gl_basis, osp_basis
from ospkit.sampling import make_rng, rand_diagram
from ospkit.tensorfunctor import (
    F_diagram,
    F_diagram_via_top,
    cap_op,
    cup_op,
    identity_op,
    kron,
    lie_action,
    perm_action,
    perm_action_direct,
    perm_op_from_word,
    tau_op,
)

SPECS = [FormSpec(1, 1), FormSpec(2, 1), FormSpec(0, 1), FormSpec(2, 2)]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.m}|{2*s.n}")
def test_generator_relations(spec):
    tau, cup, cap = tau_op(spec), cup_op(spec), cap_op(spec)
    id1, id2 = identity_op(1, spec), identity_op(2, spec)
    assert tau.compose(tau) == id2
    t1, t2 = kron(tau, id1), kron(id1, tau)
    assert t1.compose(t2).compose(t1) == t2.compose(t1).compose(t2)
    assert tau.compose(cup) == cup
    assert cap.compose(tau) == cap
    assert cap.compose(cup).entries.get(((), ()), Fraction(0)) == spec.d
    assert kron(cap, id1).compose(kron(id1, cup)) == id1
    assert kron(id1, cap).compose(kron(cup, id1)) == id1
    assert kron(cap, id1).compose(kron(id1, tau)) == \
        kron(id1, cap).compose(kron(tau, id1))
    assert kron(tau, id1).compose(kron(id1, cup)) == \
        kron(id1, tau).compose(kron(cup, id1))


def test_cup_state_at_1_1():
    spec = FormSpec(1, 1)
    assert cup_op(spec).entries == {
        ((0, 0), ()): Fraction(1),
        ((1, 2), ()): Fraction(1),
        ((2, 1), ()): Fraction(-1),
    }


def test_perm_action_is_permutation_matrix_when_even():
    spec = FormSpec(3, 0)
    op = perm_action((1, 0, 2), 3, spec)
    assert all(c == 1 for c in op.entries.values())
    assert len(op.entries) == 27


def test_tau_sign_on_odd_slots():
    spec = FormSpec(1, 1)
    tau = tau_op(spec)
    assert tau.entries[((2, 1), (1, 2))] == -1
    assert tau.entries[((0, 1), (1, 0))] == 1


def test_reduced_word_independence():
    spec = FormSpec(1, 1)
    assert perm_op_from_word([0, 1, 0], 3, spec) == perm_op_from_word([1, 0, 1], 3, spec)
    for r in (2, 3):
        for sigma in permutations(range(r)):
            assert perm_action(sigma, r, spec) == perm_action_direct(sigma, r, spec)


def test_perm_action_is_homomorphism():
    spec = FormSpec(2, 1)
    for s1 in permutations(range(3)):
        for s2 in permutations(range(3)):
            comp = tuple(s1[s2[i]] for i in range(3))
            assert perm_action(comp, 3, spec) == \
                perm_action(s1, 3, spec).compose(perm_action(s2, 3, spec))


def test_lie_action_rank_one():
    spec = FormSpec(1, 1)
    for x in gl_basis(spec):
        op = lie_action(x, 1, spec)
        assert op.entries == {((i,), (j,)): c for (i, j), c in x.entries.items()}


def test_lie_action_commutes_with_permutations():
    spec = FormSpec(1, 1)
    for x in gl_basis(spec):
        op = lie_action(x, 3, spec)
        for sigma in permutations(range(3)):
            p = perm_action(sigma, 3, spec)
            sign = 1  # permutation operators are even
            assert p.compose(op) == op.compose(p).scale(sign)


def test_cap_kills_lie_action():
    for spec in SPECS:
        cap = cap_op(spec)
        cup = cup_op(spec)
        for x in osp_basis(spec).all():
            op = lie_action(x, 2, spec)
            assert cap.compose(op).is_zero()
            assert op.compose(cup).is_zero()


def test_lie_action_needs_homogeneous_rational():
    spec = FormSpec(1, 1)
    from ospkit.superlinalg import SuperMatrix

    mixed = SuperMatrix(spec.parities, spec.parities,
                        {(0, 0): Fraction(1), (0, 1): Fraction(1)}, parity=None)
    with pytest.raises(InhomogeneousInput):
        lie_action(mixed, 2, spec)


def test_F_on_generators_and_identities():
    spec = FormSpec(1, 1)
    assert F_diagram(BrauerDiagram.identity(1), spec) == identity_op(1, spec)
    assert F_diagram(BrauerDiagram.identity(3), spec) == identity_op(3, spec)
    assert F_diagram(BrauerDiagram.transposition(2, 1), spec) == tau_op(spec)
    assert F_diagram(BrauerDiagram.cap_nest(1), spec) == cap_op(spec)
    assert F_diagram(BrauerDiagram.cup_nest(1), spec) == cup_op(spec)


def test_F_hook_squares_to_delta_hook():
    for spec in SPECS:
        fe = F_diagram(BrauerDiagram.hook(2, 1), spec)
        assert fe.compose(fe) == fe.scale(spec.d)


def test_delta_mismatch_raises():
    spec = FormSpec(1, 1)
    wrong = BrauerElt.from_diagram(BrauerDiagram.identity(1), Fraction(5))
    with pytest.raises(DeltaMismatch):
        F_diagram(wrong, spec)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.m}|{2*s.n}")
def test_functoriality_random_pairs(spec):
    rng = make_rng(42)
    arities = [(0, 0), (0, 2), (2, 0), (1, 1), (2, 2), (1, 3), (3, 1), (3, 3)]
    done = 0
    while done < 40:
        k, l = rng.choice(arities)
        l2 = rng.choice([b for (a, b) in arities if a == l])
        d2 = rand_diagram(rng, k, l, spec.d)
        d1 = rand_diagram(rng, l, l2, spec.d)
        if d1 is None or d2 is None:
            continue
        assert F_diagram(d1.compose(d2), spec) == \
            F_diagram(d1, spec).compose(F_diagram(d2, spec))
        done += 1


def test_two_decompositions_agree():
    rng = make_rng(43)
    for spec in SPECS:
        for _ in range(15):
            k, l = rng.choice([(0, 2), (2, 0), (1, 1), (2, 2), (3, 1)])
            d = rand_diagram(rng, k, l, spec.d)
            if d is None:
                continue
            assert F_diagram(d, spec) == F_diagram_via_top(d, spec)


def test_F_respects_tensor():
    spec = FormSpec(2, 1)
    rng = make_rng(44)
    arities = [(0, 2), (2, 0), (1, 1), (2, 2)]
    for _ in range(20):
        da = rand_diagram(rng, *rng.choice(arities), spec.d)
        db = rand_diagram(rng, *rng.choice(arities), spec.d)
        assert F_diagram(da.tensor(db), spec) == \
            kron(F_diagram(da, spec), F_diagram(db, spec))


def test_G_equivariance_of_images():
    rng = make_rng(45)
    for spec in [FormSpec(1, 1), FormSpec(2, 1)]:
        for _ in range(8):
            k, l = rng.choice([(1, 1), (2, 0), (0, 2), (2, 2)])
            d = rand_diagram(rng, k, l, spec.d)
            op = F_diagram(d, spec)
            for x in osp_basis(spec).all():
                assert lie_action(x, l, spec).compose(op) == \
                    op.compose(lie_action(x, k, spec))

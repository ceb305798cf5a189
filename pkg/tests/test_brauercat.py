from fractions import Fraction

import pytest

from ospkit.brauercat import (
    BrauerDiagram,
    BrauerElt,
    brauer_algebra,
    compose,
    enumerate_diagrams,
    tensor,
    transfer_A,
    transfer_U,
)
from ospkit.errors import ShapeMismatch
from ospkit.sampling import make_rng, rand_diagram

DELTA = Fraction(-1)


def elt(d, delta=DELTA):
    return BrauerElt.from_diagram(d, delta)


def test_enumeration_counts():
    assert len(enumerate_diagrams(4, 0)) == 3
    assert len(enumerate_diagrams(2, 2)) == 3
    assert enumerate_diagrams(3, 0) == []
    assert len(enumerate_diagrams(3, 3)) == 15
    assert len(enumerate_diagrams(4, 4)) == 105


def test_canonical_form_uniqueness():
    a = BrauerDiagram(2, 2, [(1, 3), (0, 2)])
    b = BrauerDiagram(2, 2, [(2, 0), (3, 1)])
    assert a == b and hash(a) == hash(b)
    with pytest.raises(ShapeMismatch):
        BrauerDiagram(2, 2, [(0, 1), (1, 2)])


def test_hook_and_transposition_relations():
    e1, e2 = elt(BrauerDiagram.hook(3, 1)), elt(BrauerDiagram.hook(3, 2))
    s1, s2 = elt(BrauerDiagram.transposition(3, 1)), elt(BrauerDiagram.transposition(3, 2))
    ident = elt(BrauerDiagram.identity(3))
    assert compose(e1, e1) == e1.scale(DELTA)
    assert compose(s1, s1) == ident
    assert compose(compose(s1, s2), s1) == compose(compose(s2, s1), s2)
    assert compose(compose(e1, e2), e1) == e1
    assert compose(compose(e2, e1), e2) == e2
    assert compose(s1, e1) == e1
    assert compose(e1, s1) == e1
    # distant generators commute
    s1_4, s3_4 = (elt(BrauerDiagram.transposition(4, i)) for i in (1, 3))
    assert compose(s1_4, s3_4) == compose(s3_4, s1_4)


def test_cap_after_cup_gives_delta():
    cap, cup = elt(BrauerDiagram.cap_nest(1)), elt(BrauerDiagram.cup_nest(1))
    prod = compose(cap, cup)
    assert prod.k == prod.l == 0
    assert list(prod.terms.values()) == [DELTA]


def test_double_cup_double_cap():
    cup2 = elt(BrauerDiagram.cup_nest(2))
    cap2 = elt(BrauerDiagram.cap_nest(2))
    prod = compose(cap2, cup2)
    assert list(prod.terms.values()) == [DELTA ** 2]


def test_composition_and_tensor_associativity():
    rng = make_rng(0)
    arities = [(0, 2), (2, 0), (1, 1), (2, 2)]
    for _ in range(40):
        k1, l1 = rng.choice(arities)
        a = rand_diagram(rng, k1, l1, DELTA)
        b = rand_diagram(rng, l1, l1 % 2 + rng.choice([0, 2]), DELTA)
        c = rand_diagram(rng, b.l, b.l % 2 + rng.choice([0, 2]), DELTA)
        assert compose(c, compose(b, a)) == compose(compose(c, b), a)
        d3 = rand_diagram(rng, *rng.choice(arities), DELTA)
        assert tensor(tensor(a, b), d3) == tensor(a, tensor(b, d3))


def test_interchange_law():
    rng = make_rng(1)
    arities = [(0, 2), (2, 0), (1, 1), (2, 2)]
    for _ in range(40):
        k1, l1 = rng.choice(arities)
        k2, l2 = rng.choice(arities)
        d = rand_diagram(rng, k1, l1, DELTA)
        dp = rand_diagram(rng, k2, l2, DELTA)
        e = rand_diagram(rng, l1, k1, DELTA)
        ep = rand_diagram(rng, l2, k2, DELTA)
        assert compose(tensor(e, ep), tensor(d, dp)) == \
            tensor(compose(e, d), compose(ep, dp))


def test_identity_tensor():
    i1 = elt(BrauerDiagram.identity(1))
    assert tensor(i1, i1) == elt(BrauerDiagram.identity(2))


def test_transfer_round_trip_on_B40():
    for d in enumerate_diagrams(4, 0):
        x = elt(d)
        assert transfer_A(2, transfer_U(2, 2, x)) == x


def test_transfer_of_identity_is_nested_cup():
    out = transfer_U(0, 2, elt(BrauerDiagram.identity(2)))
    [(d, c)] = list(out.terms.items())
    assert c == 1
    assert d.pairs == ((0, 3), (1, 2))


def test_transfer_trivial_when_q_zero():
    x = elt(BrauerDiagram.identity(2))
    assert transfer_U(2, 0, x) == x
    assert transfer_A(0, x) == x


def test_delta_mismatch():
    a = BrauerElt.from_diagram(BrauerDiagram.identity(1), Fraction(0))
    b = BrauerElt.from_diagram(BrauerDiagram.identity(1), Fraction(1))
    with pytest.raises(ShapeMismatch):
        compose(a, b)


def test_brauer_algebra_table():
    basis, table, gens = brauer_algebra(3, Fraction(0))
    assert len(basis) == 15
    index = {d: i for i, d in enumerate(basis)}
    # e_i s_i = e_i inside the table
    for s, e in zip(gens["s"], gens["e"]):
        prod = table[(index[e], index[s])]
        assert prod == {index[e]: Fraction(1)}
    # the transpositions generate the group algebra of the symmetric group
    seen = {BrauerDiagram.identity(3)}
    frontier = list(seen)
    while frontier:
        d = frontier.pop()
        for s in gens["s"]:
            prod = compose(elt(d, Fraction(0)), elt(s, Fraction(0)))
            [(nd, _)] = list(prod.terms.items())
            if nd not in seen:
                seen.add(nd)
                frontier.append(nd)
    assert len(seen) == 6

"""Brauer diagrams, their category structure, and the Brauer algebras.

A (k, l) diagram is a perfect matching on k bottom points (ids 0..k-1) and
l top points (ids k..k+l-1), stored as a sorted tuple of sorted pairs.
Composition glues along the middle row; every closed loop removed
contributes one factor of the loop parameter.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ShapeMismatch

__all__ = [
    "BrauerDiagram",
    "BrauerElt",
    "enumerate_diagrams",
    "compose",
    "tensor",
    "transfer_U",
    "transfer_A",
    "brauer_algebra",
    "sym_diagram",
]


class BrauerDiagram:
    __slots__ = ("k", "l", "pairs", "_hash")

    def __init__(self, k: int, l: int, pairs):
        self.k = k
        self.l = l
        canon = tuple(sorted(tuple(sorted(p)) for p in pairs))
        used = [pt for p in canon for pt in p]
        if sorted(used) != list(range(k + l)):
            raise ShapeMismatch("pairs must perfectly match the k + l points")
        self.pairs = canon
        self._hash = hash((k, l, canon))

    @classmethod
    def identity(cls, r: int) -> "BrauerDiagram":
        return cls(r, r, [(t, r + t) for t in range(r)])

    @classmethod
    def transposition(cls, r: int, i: int) -> "BrauerDiagram":
        """The diagram s_i crossing strands i, i+1 (1-based)."""
        pairs = [(t, r + t) for t in range(r) if t not in (i - 1, i)]
        pairs += [(i - 1, r + i), (i, r + i - 1)]
        return cls(r, r, pairs)

    @classmethod
    def hook(cls, r: int, i: int) -> "BrauerDiagram":
        """The diagram e_i capping strands i, i+1 and cupping them above."""
        pairs = [(t, r + t) for t in range(r) if t not in (i - 1, i)]
        pairs += [(i - 1, i), (r + i - 1, r + i)]
        return cls(r, r, pairs)

    @classmethod
    def cup_nest(cls, q: int) -> "BrauerDiagram":
        """U_q: the (0, 2q) diagram of nested cups pairing i with 2q-1-i."""
        return cls(0, 2 * q, [(i, 2 * q - 1 - i) for i in range(q)])

    @classmethod
    def cap_nest(cls, q: int) -> "BrauerDiagram":
        """A_q: the (2q, 0) diagram of nested caps pairing i with 2q-1-i."""
        return cls(2 * q, 0, [(i, 2 * q - 1 - i) for i in range(q)])

    def propagating(self) -> int:
        """Number of through strands."""
        return sum(1 for a, b in self.pairs if a < self.k <= b)

    def __eq__(self, other):
        return (isinstance(other, BrauerDiagram)
                and (self.k, self.l, self.pairs) == (other.k, other.l, other.pairs))

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.k, self.l, self.pairs) < (other.k, other.l, other.pairs)

    def __repr__(self):
        return f"BrauerDiagram({self.k},{self.l},{list(self.pairs)})"


def sym_diagram(perm, r: int) -> BrauerDiagram:
    """Permutation diagram joining bottom t to top perm[t] (0-based)."""
    return BrauerDiagram(r, r, [(t, r + perm[t]) for t in range(r)])


def _compose_diagrams(d2: BrauerDiagram, d1: BrauerDiagram):
    """Glue d1 (k -> l) under d2 (l -> p); returns (diagram, loop count)."""
    if d1.l != d2.k:
        raise ShapeMismatch(f"middle arities differ: {d1.l} vs {d2.k}")
    k, l, p = d1.k, d1.l, d2.l
    edges = []
    for a, b in d1.pairs:
        edges.append((("b", a) if a < k else ("m", a - k),
                      ("b", b) if b < k else ("m", b - k)))
    for a, b in d2.pairs:
        edges.append((("m", a) if a < l else ("t", a - l),
                      ("m", b) if b < l else ("t", b - l)))
    adj: dict[tuple, list[int]] = {}
    for idx, (x, y) in enumerate(edges):
        adj.setdefault(x, []).append(idx)
        adj.setdefault(y, []).append(idx)
    used = [False] * len(edges)

    def other_end(eidx, node):
        x, y = edges[eidx]
        return y if x == node else x

    result_pairs = []
    for start in adj:
        if start[0] == "m":
            continue
        eidx = next((e for e in adj[start] if not used[e]), None)
        if eidx is None:
            continue
        node = start
        while True:
            used[eidx] = True
            node = other_end(eidx, node)
            if node[0] != "m":
                break
            eidx = next(e for e in adj[node] if not used[e])
        a = start[1] if start[0] == "b" else k + start[1]
        b = node[1] if node[0] == "b" else k + node[1]
        result_pairs.append((a, b))
    loops = 0
    for eidx in range(len(edges)):
        if used[eidx]:
            continue
        node = edges[eidx][0]
        cur = eidx
        while True:
            used[cur] = True
            node = other_end(cur, node)
            nxt = next((e for e in adj[node] if not used[e]), None)
            if nxt is None:
                break
            cur = nxt
        loops += 1
    return BrauerDiagram(k, p, result_pairs), loops


def _tensor_diagrams(d: BrauerDiagram, dp: BrauerDiagram) -> BrauerDiagram:
    k, l = d.k + dp.k, d.l + dp.l
    pairs = []
    for a, b in d.pairs:
        pairs.append((a if a < d.k else k + (a - d.k),
                      b if b < d.k else k + (b - d.k)))
    for a, b in dp.pairs:
        pairs.append((d.k + a if a < dp.k else k + d.l + (a - dp.k),
                      d.k + b if b < dp.k else k + d.l + (b - dp.k)))
    return BrauerDiagram(k, l, pairs)


class BrauerElt:
    """Formal rational combination of (k, l) diagrams with a loop parameter."""

    __slots__ = ("k", "l", "delta", "terms")

    def __init__(self, k: int, l: int, delta, terms=None):
        self.k = k
        self.l = l
        self.delta = Fraction(delta)
        self.terms: dict[BrauerDiagram, Fraction] = {}
        for d, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if (d.k, d.l) != (k, l):
                    raise ShapeMismatch("diagram arity differs from the element's")
                self.terms[d] = c

    @classmethod
    def from_diagram(cls, d: BrauerDiagram, delta, coeff=1) -> "BrauerElt":
        return cls(d.k, d.l, delta, {d: Fraction(coeff)})

    def _check(self, other: "BrauerElt"):
        if self.delta != other.delta:
            raise ShapeMismatch("loop parameters differ")

    def __add__(self, other: "BrauerElt") -> "BrauerElt":
        self._check(other)
        if (self.k, self.l) != (other.k, other.l):
            raise ShapeMismatch("arities differ")
        terms = dict(self.terms)
        for d, c in other.terms.items():
            v = terms.get(d, 0) + c
            if v:
                terms[d] = v
            else:
                terms.pop(d, None)
        return BrauerElt(self.k, self.l, self.delta, terms)

    def __neg__(self):
        return BrauerElt(self.k, self.l, self.delta,
                         {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BrauerElt":
        c = Fraction(c)
        return BrauerElt(self.k, self.l, self.delta,
                         {d: v * c for d, v in self.terms.items()})

    def compose(self, other: "BrauerElt") -> "BrauerElt":
        """self o other, applying other first."""
        self._check(other)
        if other.l != self.k:
            raise ShapeMismatch("middle arities differ")
        out: dict[BrauerDiagram, Fraction] = {}
        for d2, c2 in self.terms.items():
            for d1, c1 in other.terms.items():
                d, loops = _compose_diagrams(d2, d1)
                v = out.get(d, 0) + c1 * c2 * self.delta**loops
                if v:
                    out[d] = v
                else:
                    out.pop(d, None)
        return BrauerElt(other.k, self.l, self.delta, out)

    def tensor(self, other: "BrauerElt") -> "BrauerElt":
        self._check(other)
        out: dict[BrauerDiagram, Fraction] = {}
        for d, c in self.terms.items():
            for dp, cp in other.terms.items():
                t = _tensor_diagrams(d, dp)
                v = out.get(t, 0) + c * cp
                if v:
                    out[t] = v
        return BrauerElt(self.k + other.k, self.l + other.l, self.delta, out)

    def __eq__(self, other):
        return (isinstance(other, BrauerElt)
                and (self.k, self.l, self.delta) == (other.k, other.l, other.delta)
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.k, self.l, self.delta, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{c}*{d!r}" for d, c in sorted(self.terms.items(),
                                                          key=lambda t: t[0]))
        return f"BrauerElt({self.k}->{self.l}; {body or '0'})"


def enumerate_diagrams(k: int, l: int) -> list[BrauerDiagram]:
    """All perfect matchings of the k + l points; empty for odd totals."""
    total = k + l
    if total % 2:
        return []
    out = []

    def rec(free: list[int], acc: list[tuple[int, int]]):
        if not free:
            out.append(BrauerDiagram(k, l, list(acc)))
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            acc.append((a, b))
            rec(free[1:idx] + free[idx + 1:], acc)
            acc.pop()

    rec(list(range(total)), [])
    out.sort()
    return out


def compose(d2: BrauerElt, d1: BrauerElt) -> BrauerElt:
    return d2.compose(d1)


def tensor(d: BrauerElt, dp: BrauerElt) -> BrauerElt:
    return d.tensor(dp)


def identity_elt(r: int, delta) -> BrauerElt:
    return BrauerElt.from_diagram(BrauerDiagram.identity(r), delta)


def transfer_U(p: int, q: int, x: BrauerElt) -> BrauerElt:
    """(x tensor I_q) o (I_p tensor U_q): sends (p+q -> r) to (p -> r+q)."""
    if x.k != p + q:
        raise ShapeMismatch("bottom arity must be p + q")
    if q == 0:
        return x
    iq = identity_elt(q, x.delta)
    ip = identity_elt(p, x.delta)
    uq = BrauerElt.from_diagram(BrauerDiagram.cup_nest(q), x.delta)
    return x.tensor(iq).compose(ip.tensor(uq))


def transfer_A(q: int, y: BrauerElt) -> BrauerElt:
    """(I_r tensor A_q) o (y tensor I_q): sends (p -> r+q) to (p+q -> r)."""
    if y.l < q:
        raise ShapeMismatch("top arity must be at least q")
    if q == 0:
        return y
    r = y.l - q
    iq = identity_elt(q, y.delta)
    ir = identity_elt(r, y.delta)
    aq = BrauerElt.from_diagram(BrauerDiagram.cap_nest(q), y.delta)
    return ir.tensor(aq).compose(y.tensor(iq))


def brauer_algebra(r: int, delta):
    """Diagram basis, multiplication table and generators of B_r(delta).

    The table maps basis-index pairs (i, j) to {index: coefficient} for the
    product basis[i] o basis[j].
    """
    basis = enumerate_diagrams(r, r)
    index = {d: i for i, d in enumerate(basis)}
    table = {}
    for i, di in enumerate(basis):
        ei = BrauerElt.from_diagram(di, delta)
        for j, dj in enumerate(basis):
            prod = ei.compose(BrauerElt.from_diagram(dj, delta))
            table[(i, j)] = {index[d]: c for d, c in prod.terms.items()}
    gens = {
        "s": [BrauerDiagram.transposition(r, i) for i in range(1, r)],
        "e": [BrauerDiagram.hook(r, i) for i in range(1, r)],
    }
    return basis, table, gens

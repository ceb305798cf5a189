"""Tensor operators on powers of the standard superspace and the functor
from Brauer diagrams to such operators.

Operators are sparse rational matrices between tensor powers, indexed by
multi-indices in the standard basis.  The functor is evaluated through the
pairing-functional route: a diagram is transferred to a (k+l, 0) pairing,
realized as the product-of-pairings functional with the Koszul sign of the
shuffle bringing paired slots adjacent (pairs ordered by smallest point,
lower point first), and transferred back at the operator level.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .brauercat import BrauerDiagram, BrauerElt, transfer_A
from .errors import DeltaMismatch, InhomogeneousInput, ShapeMismatch
from .ospgeom import FormSpec
from .superlinalg import EVEN, SuperMatrix

__all__ = [
    "TensorOp",
    "identity_op",
    "tau_op",
    "cup_op",
    "cap_op",
    "perm_action",
    "perm_op_from_word",
    "perm_action_direct",
    "lie_action",
    "F_diagram",
    "F_diagram_via_top",
    "transfer_op_U",
    "transfer_op_A",
    "kron",
]


class TensorOp:
    """Sparse linear map V^(tensor k) -> V^(tensor l) in the standard basis."""

    __slots__ = ("k", "l", "parities", "parity", "entries")

    def __init__(self, k: int, l: int, parities, parity: int | None = EVEN,
                 entries=None):
        self.k = k
        self.l = l
        self.parities = tuple(parities)
        self.parity = parity
        self.entries: dict[tuple, Fraction] = {}
        for key, c in (entries or {}).items():
            c = Fraction(c)
            if c:
                self.entries[key] = c

    @property
    def dim(self) -> int:
        return len(self.parities)

    def key_parity(self, key) -> int:
        out, inp = key
        return (sum(self.parities[i] for i in out)
                + sum(self.parities[i] for i in inp)) % 2

    def __add__(self, other: "TensorOp") -> "TensorOp":
        assert (self.k, self.l, self.parities) == (other.k, other.l, other.parities)
        entries = dict(self.entries)
        for key, c in other.entries.items():
            v = entries.get(key, 0) + c
            if v:
                entries[key] = v
            else:
                entries.pop(key, None)
        parity = self.parity if self.parity == other.parity else None
        return TensorOp(self.k, self.l, self.parities, parity, entries)

    def __neg__(self):
        return TensorOp(self.k, self.l, self.parities, self.parity,
                        {k: -c for k, c in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorOp":
        c = Fraction(c)
        return TensorOp(self.k, self.l, self.parities, self.parity,
                        {k: v * c for k, v in self.entries.items()})

    def compose(self, other: "TensorOp") -> "TensorOp":
        """self o other (other applied first)."""
        if other.l != self.k or self.parities != other.parities:
            raise ShapeMismatch("inner arities differ")
        bymid: dict[tuple, list] = {}
        for (out, mid), c in self.entries.items():
            bymid.setdefault(mid, []).append((out, c))
        entries: dict[tuple, Fraction] = {}
        for (mid, inp), c in other.entries.items():
            for out, c2 in bymid.get(mid, ()):
                key = (out, inp)
                v = entries.get(key, 0) + c2 * c
                if v:
                    entries[key] = v
                else:
                    entries.pop(key, None)
        if self.parity is None or other.parity is None:
            parity = None
        else:
            parity = (self.parity + other.parity) % 2
        return TensorOp(other.k, self.l, self.parities, parity, entries)

    def __eq__(self, other):
        return (isinstance(other, TensorOp)
                and (self.k, self.l, self.parities) == (other.k, other.l, other.parities)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.k, self.l, frozenset(self.entries.items())))

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self):
        return (f"TensorOp({self.k}->{self.l}, dim={self.dim}, "
                f"parity={self.parity}, nnz={len(self.entries)})")


def kron(a: TensorOp, b: TensorOp) -> TensorOp:
    """Graded tensor product; the only sign is (-1)^{[b] * parity(in_a)}."""
    assert a.parities == b.parities
    if b.parity is None:
        raise InhomogeneousInput("kron needs a homogeneous right factor")
    entries = {}
    for (oa, ia), ca in a.entries.items():
        ipar = sum(a.parities[i] for i in ia) % 2
        sign = -1 if (b.parity and ipar) else 1
        for (ob, ib), cb in b.entries.items():
            entries[(oa + ob, ia + ib)] = ca * cb * sign
    parity = None if a.parity is None else (a.parity + b.parity) % 2
    return TensorOp(a.k + b.k, a.l + b.l, a.parities, parity, entries)


def identity_op(r: int, spec: FormSpec) -> TensorOp:
    entries = {(w, w): Fraction(1) for w in product(range(spec.dim), repeat=r)}
    return TensorOp(r, r, spec.parities, EVEN, entries)


def tau_op(spec: FormSpec) -> TensorOp:
    """Signed swap on two tensor factors."""
    par = spec.parities
    entries = {}
    for a in range(spec.dim):
        for b in range(spec.dim):
            sign = -1 if (par[a] and par[b]) else 1
            entries[((b, a), (a, b))] = Fraction(sign)
    return TensorOp(2, 2, par, EVEN, entries)


def cup_op(spec: FormSpec) -> TensorOp:
    """1 -> sum_ab e_a (x) eta^{ab} e_b."""
    entries = {((a, b), ()): v for a, b, v in spec.eta_inv_pairs()}
    return TensorOp(0, 2, spec.parities, EVEN, entries)


def cap_op(spec: FormSpec) -> TensorOp:
    """e_a (x) e_b -> eta_ab."""
    entries = {((), (a, b)): v for a, b, v in spec.eta_pairs()}
    return TensorOp(2, 0, spec.parities, EVEN, entries)


def _adjacent_op(i: int, r: int, spec: FormSpec) -> TensorOp:
    """The swap acting on slots i, i+1 (0-based)."""
    par = spec.parities
    entries = {}
    for w in product(range(spec.dim), repeat=r):
        out = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
        sign = -1 if (par[w[i]] and par[w[i + 1]]) else 1
        entries[(out, w)] = Fraction(sign)
    return TensorOp(r, r, par, EVEN, entries)


def _reduced_word(sigma) -> list[int]:
    """Adjacent-transposition word (0-based positions) with sigma = s_w1 ... s_wk."""
    lst = list(sigma)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(lst) - 1):
            if lst[i] > lst[i + 1]:
                lst[i], lst[i + 1] = lst[i + 1], lst[i]
                word.append(i)
                changed = True
    word.reverse()
    return word


def perm_op_from_word(word, r: int, spec: FormSpec) -> TensorOp:
    out = identity_op(r, spec)
    for i in word:
        out = out.compose(_adjacent_op(i, r, spec))
    return out


def perm_action(sigma, r: int, spec: FormSpec) -> TensorOp:
    """Operator of a permutation: input slot t lands at output slot sigma[t]."""
    if tuple(sigma) == tuple(range(r)):
        return identity_op(r, spec)
    return perm_op_from_word(_reduced_word(sigma), r, spec)


def perm_action_direct(sigma, r: int, spec: FormSpec) -> TensorOp:
    """Same operator built in one pass from the Koszul inversion sign."""
    par = spec.parities
    sigma = tuple(sigma)
    inversions = [(t, s) for t in range(r) for s in range(t + 1, r)
                  if sigma[t] > sigma[s]]
    entries = {}
    for w in product(range(spec.dim), repeat=r):
        out = [0] * r
        for t in range(r):
            out[sigma[t]] = w[t]
        sign = 1
        for t, s in inversions:
            if par[w[t]] and par[w[s]]:
                sign = -sign
        entries[(tuple(out), w)] = Fraction(sign)
    return TensorOp(r, r, par, EVEN, entries)


def lie_action(x: SuperMatrix, r: int, spec: FormSpec, algebra: str = "osp") -> TensorOp:
    """Derivation action on the r-th tensor power with the odd-prefix sign.

    The gl and osp forms coincide; the `algebra` tag is informational.
    """
    if x.parity is None:
        raise InhomogeneousInput("lie_action needs a homogeneous matrix")
    if x.ring.grassmann:
        raise ShapeMismatch("lie_action expects a rational matrix")
    par = spec.parities
    entries: dict[tuple, Fraction] = {}
    for (a, b), c in x.entries.items():
        for pos in range(r):
            for ctx in product(range(spec.dim), repeat=r - 1):
                w_in = ctx[:pos] + (b,) + ctx[pos:]
                w_out = ctx[:pos] + (a,) + ctx[pos:]
                sign = 1
                if x.parity:
                    pref = sum(par[i] for i in w_in[:pos]) % 2
                    sign = -1 if pref else 1
                key = (w_out, w_in)
                v = entries.get(key, 0) + c * sign
                if v:
                    entries[key] = v
                else:
                    entries.pop(key, None)
    return TensorOp(r, r, par, x.parity, entries)


# -- pairing functionals and the functor -------------------------------------

_FUNCTIONAL_CACHE: dict = {}
_STATE_CACHE: dict = {}
_F_CACHE: dict = {}


def _shuffle(pairs):
    """Positions -> sorted-pair positions permutation and its inversions."""
    pairs = tuple(sorted(tuple(sorted(p)) for p in pairs))
    npts = 2 * len(pairs)
    sigma = [0] * npts
    for j, (p, q) in enumerate(pairs):
        sigma[p] = 2 * j
        sigma[q] = 2 * j + 1
    inversions = [(t, s) for t in range(npts) for s in range(t + 1, npts)
                  if sigma[t] > sigma[s]]
    return pairs, inversions


def pairing_functional(pairs, spec: FormSpec) -> TensorOp:
    """F of the (2d, 0) diagram with the given pairing."""
    key = (spec, tuple(sorted(tuple(sorted(p)) for p in pairs)))
    cached = _FUNCTIONAL_CACHE.get(key)
    if cached is not None:
        return cached
    pairs, inversions = _shuffle(key[1])
    d = len(pairs)
    par = spec.parities
    eta = spec.eta_pairs()
    entries = {}
    for choice in product(eta, repeat=d):
        w = [0] * (2 * d)
        val = Fraction(1)
        for (p, q), (a, b, v) in zip(pairs, choice):
            w[p], w[q] = a, b
            val *= v
        for t, s in inversions:
            if par[w[t]] and par[w[s]]:
                val = -val
        key2 = ((), tuple(w))
        cur = entries.get(key2, 0) + val
        if cur:
            entries[key2] = cur
        else:
            entries.pop(key2, None)
    op = TensorOp(2 * d, 0, par, EVEN, entries)
    _FUNCTIONAL_CACHE[key] = op
    return op


def pairing_state(pairs, spec: FormSpec) -> TensorOp:
    """F of the (0, 2d) diagram with the given pairing."""
    key = (spec, tuple(sorted(tuple(sorted(p)) for p in pairs)))
    cached = _STATE_CACHE.get(key)
    if cached is not None:
        return cached
    pairs, sigma_inv_pairs = _shuffle(key[1])
    d = len(pairs)
    par = spec.parities
    npts = 2 * d
    sigma = [0] * npts
    for j, (p, q) in enumerate(pairs):
        sigma[p] = 2 * j
        sigma[q] = 2 * j + 1
    rho = [0] * npts                      # rho = sigma^{-1}
    for t, v in enumerate(sigma):
        rho[v] = t
    inversions = [(t, s) for t in range(npts) for s in range(t + 1, npts)
                  if rho[t] > rho[s]]
    entries = {}
    for choice in product(spec.eta_inv_pairs(), repeat=d):
        u = [0] * npts                    # cup output in sorted-pair positions
        val = Fraction(1)
        for j, (a, b, v) in enumerate(choice):
            u[2 * j], u[2 * j + 1] = a, b
            val *= v
        for t, s in inversions:
            if par[u[t]] and par[u[s]]:
                val = -val
        w = tuple(u[sigma[t]] for t in range(npts))
        key2 = (w, ())
        cur = entries.get(key2, 0) + val
        if cur:
            entries[key2] = cur
        else:
            entries.pop(key2, None)
    op = TensorOp(0, 2 * d, par, EVEN, entries)
    _STATE_CACHE[key] = op
    return op


def F_U_op(q: int, spec: FormSpec) -> TensorOp:
    """Image of the nested cup U_q."""
    return pairing_state(BrauerDiagram.cup_nest(q).pairs, spec)


def F_A_op(q: int, spec: FormSpec) -> TensorOp:
    """Image of the nested cap A_q."""
    return pairing_functional(BrauerDiagram.cap_nest(q).pairs, spec)


def transfer_op_U(p: int, q: int, phi: TensorOp, spec: FormSpec) -> TensorOp:
    """(phi (x) id^q) o (id^p (x) F(U_q)): Hom(p+q, r) -> Hom(p, r+q)."""
    if q == 0:
        return phi
    idq = identity_op(q, spec)
    idp = identity_op(p, spec)
    return kron(phi, idq).compose(kron(idp, F_U_op(q, spec)))


def transfer_op_A(q: int, phi: TensorOp, spec: FormSpec) -> TensorOp:
    """(id^r (x) F(A_q)) o (phi (x) id^q): Hom(p, r+q) -> Hom(p+q, r)."""
    if q == 0:
        return phi
    r = phi.l - q
    idq = identity_op(q, spec)
    idr = identity_op(r, spec)
    return kron(idr, F_A_op(q, spec)).compose(kron(phi, idq))


def _F_single(diagram: BrauerDiagram, spec: FormSpec) -> TensorOp:
    key = (spec, diagram)
    cached = _F_CACHE.get(key)
    if cached is not None:
        return cached
    k, l = diagram.k, diagram.l
    if (k + l) % 2:
        raise ShapeMismatch("diagrams need an even total arity")
    moved = transfer_A(l, BrauerElt.from_diagram(diagram, spec.d))
    [(flat, coeff)] = list(moved.terms.items())
    functional = pairing_functional(flat.pairs, spec)
    op = transfer_op_U(k, l, functional, spec).scale(coeff)
    _F_CACHE[key] = op
    return op


def F_diagram(x, spec: FormSpec) -> TensorOp:
    """Linear extension of the functor to diagram combinations."""
    if isinstance(x, BrauerDiagram):
        x = BrauerElt.from_diagram(x, spec.d)
    if x.delta != spec.d:
        raise DeltaMismatch(f"loop parameter {x.delta} != {spec.d}")
    out = TensorOp(x.k, x.l, spec.parities, EVEN, {})
    for diagram, coeff in x.terms.items():
        out = out + _F_single(diagram, spec).scale(coeff)
    return out


def F_diagram_via_top(x, spec: FormSpec) -> TensorOp:
    """Alternative evaluation through a (0, k+l) transfer; agrees with F_diagram."""
    from .brauercat import transfer_U

    if isinstance(x, BrauerDiagram):
        x = BrauerElt.from_diagram(x, spec.d)
    if x.delta != spec.d:
        raise DeltaMismatch(f"loop parameter {x.delta} != {spec.d}")
    out = TensorOp(x.k, x.l, spec.parities, EVEN, {})
    for diagram, coeff in x.terms.items():
        moved = transfer_U(0, diagram.k, BrauerElt.from_diagram(diagram, spec.d))
        [(flat, c2)] = list(moved.terms.items())
        state = pairing_state(flat.pairs, spec)
        op = transfer_op_A(diagram.k, state, spec)
        out = out + op.scale(coeff * c2)
    return out

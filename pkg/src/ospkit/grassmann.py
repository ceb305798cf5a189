"""Exact arithmetic in the finite-degree Grassmann algebra.

An element of the algebra on generators t1, ..., tN is stored as a sparse
map from index subsets (bitmasks over the generators) to nonzero rationals.
Subsets are kept in the canonical strictly-increasing order, so the sign of
a product is the parity of the merge permutation, computed by counting
inversions between the two bitmasks.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeBoundMismatch, NotInvertible

__all__ = [
    "GrassmannElt",
    "ga_mul",
    "ga_specialise",
    "ga_invert",
    "ga_promote",
    "merge_sign",
]


def merge_sign(s: int, t: int) -> int:
    """Sign (+1/-1) of sorting the concatenation of two disjoint masks."""
    sign = 1
    m = t
    while m:
        low = m & -m
        bit = low.bit_length() - 1
        if (s >> (bit + 1)).bit_count() & 1:
            sign = -sign
        m ^= low
    return sign


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational scalar, got {type(x).__name__}")


class GrassmannElt:
    """Element of the degree-N Grassmann algebra with rational coefficients."""

    __slots__ = ("degree_bound", "terms", "_hash")

    def __init__(self, degree_bound: int, terms: dict[int, Fraction] | None = None):
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.degree_bound = degree_bound
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def scalar(cls, degree_bound: int, value) -> "GrassmannElt":
        value = _as_fraction(value)
        return cls(degree_bound, {0: value} if value else {})

    @classmethod
    def generator(cls, degree_bound: int, i: int) -> "GrassmannElt":
        """The generator t_i, 1-indexed."""
        if not 1 <= i <= degree_bound:
            raise ValueError(f"generator index {i} outside 1..{degree_bound}")
        return cls(degree_bound, {1 << (i - 1): Fraction(1)})

    @classmethod
    def from_indices(cls, degree_bound: int, indices, coeff=1) -> "GrassmannElt":
        """Monomial t_{i1} t_{i2} ... for strictly increasing indices."""
        mask = 0
        last = 0
        for i in indices:
            if not last < i <= degree_bound:
                raise ValueError("indices must be strictly increasing and within bound")
            mask |= 1 << (i - 1)
            last = i
        return cls(degree_bound, {mask: _as_fraction(coeff)})

    # -- structure ----------------------------------------------------

    def specialise(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def promote(self, degree_bound: int) -> "GrassmannElt":
        """Re-tag with a larger degree bound; terms are unchanged."""
        if degree_bound < self.degree_bound:
            raise ValueError("cannot demote the degree bound")
        return GrassmannElt(degree_bound, dict(self.terms))

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements (zero counts as even), None for mixed."""
        if not self.terms:
            return 0
        parities = {m.bit_count() & 1 for m in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.parity is not None

    def grade(self, k: int) -> "GrassmannElt":
        """The Z+-degree-k component."""
        return GrassmannElt(
            self.degree_bound,
            {m: c for m, c in self.terms.items() if m.bit_count() == k},
        )

    def z2_part(self, p: int) -> "GrassmannElt":
        """The even (p=0) or odd (p=1) component."""
        return GrassmannElt(
            self.degree_bound,
            {m: c for m, c in self.terms.items() if m.bit_count() & 1 == p},
        )

    def max_grade(self) -> int:
        return max((m.bit_count() for m in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------

    def _check_bound(self, other: "GrassmannElt"):
        if self.degree_bound != other.degree_bound:
            raise DegreeBoundMismatch(
                f"degree bounds {self.degree_bound} != {other.degree_bound}"
            )

    def __add__(self, other):
        if not isinstance(other, GrassmannElt):
            other = GrassmannElt.scalar(self.degree_bound, other)
        self._check_bound(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return GrassmannElt(self.degree_bound, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElt(self.degree_bound, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GrassmannElt):
            other = GrassmannElt.scalar(self.degree_bound, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GrassmannElt):
            c = _as_fraction(other)
            return GrassmannElt(
                self.degree_bound, {m: v * c for m, v in self.terms.items()}
            )
        self._check_bound(other)
        terms: dict[int, Fraction] = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                if s & t:
                    continue
                m = s | t
                v = terms.get(m, 0) + merge_sign(s, t) * a * b
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return GrassmannElt(self.degree_bound, terms)

    def __rmul__(self, other):
        # scalars are even, so left and right multiplication agree
        c = _as_fraction(other)
        return GrassmannElt(self.degree_bound, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = GrassmannElt.scalar(self.degree_bound, 1)
        for _ in range(n):
            out = out * self
        return out

    def invert(self) -> "GrassmannElt":
        """Inverse via the terminating geometric series in the nilpotent part."""
        c0 = self.specialise()
        if c0 == 0:
            raise NotInvertible("zero scalar part")
        inv0 = Fraction(1) / c0
        nil = (self - c0) * (-inv0)  # nilpotent: no scalar term
        out = GrassmannElt.scalar(self.degree_bound, 1)
        power = GrassmannElt.scalar(self.degree_bound, 1)
        while True:
            power = power * nil
            if not power.terms:
                break
            out = out + power
        return out * inv0

    # -- comparisons / hashing ----------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrassmannElt.scalar(self.degree_bound, other)
        if not isinstance(other, GrassmannElt):
            return NotImplemented
        return self.degree_bound == other.degree_bound and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree_bound, frozenset(self.terms.items())))
        return self._hash

    # -- text round trip ----------------------------------------------

    def format(self) -> str:
        """Render as a sum of `c*t{i,j,...}` terms with rationals in lowest terms."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            c = self.terms[m]
            if m == 0:
                parts.append(str(c))
            else:
                idx = ",".join(str(b + 1) for b in range(m.bit_length()) if m >> b & 1)
                parts.append(f"{c}*t{{{idx}}}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, degree_bound: int, text: str) -> "GrassmannElt":
        out = cls(degree_bound)
        text = text.strip()
        if text == "0":
            return out
        for part in text.split(" + "):
            part = part.strip()
            if "*t{" in part:
                cstr, rest = part.split("*t{", 1)
                indices = [int(tok) for tok in rest.rstrip("}").split(",") if tok]
                out = out + cls.from_indices(degree_bound, indices, Fraction(cstr))
            else:
                out = out + cls.scalar(degree_bound, Fraction(part))
        return out

    def __repr__(self):
        return f"GrassmannElt({self.degree_bound}, {self.format()!r})"


def ga_mul(a: GrassmannElt, b: GrassmannElt) -> GrassmannElt:
    return a * b


def ga_specialise(a: GrassmannElt) -> Fraction:
    return a.specialise()


def ga_invert(a: GrassmannElt) -> GrassmannElt:
    return a.invert()


def ga_promote(a: GrassmannElt, degree_bound: int) -> GrassmannElt:
    return a.promote(degree_bound)

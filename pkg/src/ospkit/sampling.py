"""Seeded random generators shared by the tests and the CLI.

Numerators and denominators are kept small (|num| <= 9, den <= 9) so exact
arithmetic stays cheap and runs reproduce bit-identically from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .brauercat import BrauerDiagram, BrauerElt, enumerate_diagrams
from .errors import SingularCayley
from .grassmann import GrassmannElt
from .ospgeom import FormSpec, SuperVector, cayley, exp_nilpotent, osp_basis, reflection
from .superlinalg import EVEN, GrassmannRing, SuperMatrix, dagger

__all__ = [
    "make_rng",
    "rand_fraction",
    "rand_grassmann",
    "rand_even_matrix",
    "rand_homogeneous_matrix",
    "rand_anti_self_adjoint",
    "rand_osp_rational",
    "rand_osp_nilpotent",
    "rand_osp_lambda",
    "rand_supervector",
    "rand_diagram",
]


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def rand_fraction(rng: random.Random, max_num: int = 9, max_den: int = 9) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def rand_grassmann(rng: random.Random, degree_bound: int, parity: int | None = None,
                   terms: int = 2, nilpotent: bool = False) -> GrassmannElt:
    """Random element; optionally homogeneous of the given parity."""
    masks = list(range(1 if nilpotent else 0, 1 << degree_bound))
    if parity is not None:
        masks = [m for m in masks if m.bit_count() % 2 == parity]
    out = GrassmannElt(degree_bound)
    for _ in range(terms):
        out = out + GrassmannElt(degree_bound, {rng.choice(masks): rand_fraction(rng)})
    return out


def rand_even_matrix(rng: random.Random, spec: FormSpec, degree_bound: int,
                     terms: int = 2) -> SuperMatrix:
    """Random even supermatrix over the Grassmann ring."""
    return rand_homogeneous_matrix(rng, spec, degree_bound, EVEN, terms)


def rand_homogeneous_matrix(rng: random.Random, spec: FormSpec, degree_bound: int,
                            parity: int, terms: int = 2) -> SuperMatrix:
    ring = GrassmannRing(degree_bound)
    entries = {}
    for i in range(spec.dim):
        for j in range(spec.dim):
            want = (spec.parities[i] + spec.parities[j] + parity) % 2
            entries[(i, j)] = rand_grassmann(rng, degree_bound, want, terms)
    return SuperMatrix(spec.parities, spec.parities, entries, ring=ring, parity=parity)


def rand_anti_self_adjoint(rng: random.Random, spec: FormSpec) -> SuperMatrix:
    """Random rational even matrix with dagger(X) = -X."""
    entries = {}
    for i in range(spec.dim):
        for j in range(spec.dim):
            if (spec.parities[i] + spec.parities[j]) % 2 == 0:
                entries[(i, j)] = rand_fraction(rng, 3, 3)
    m = SuperMatrix(spec.parities, spec.parities, entries)
    return (m - dagger(m, spec.eta)).scale(Fraction(1, 2))


def rand_osp_rational(rng: random.Random, spec: FormSpec,
                      allow_reflection: bool = True) -> SuperMatrix:
    """Rational group element: a Cayley transform, sometimes reflected."""
    while True:
        try:
            g = cayley(rand_anti_self_adjoint(rng, spec), spec)
            break
        except SingularCayley:
            continue
    if allow_reflection and spec.m >= 1 and rng.random() < 0.5:
        g = g * reflection(spec)
    return g


def rand_osp_nilpotent(rng: random.Random, spec: FormSpec,
                       degree_bound: int) -> SuperMatrix:
    """Element of the Lie algebra tensored with the augmentation ideal."""
    ring = GrassmannRing(degree_bound)
    basis = osp_basis(spec)
    out = SuperMatrix.zeros(spec.parities, spec.parities, ring=ring)
    for x in basis.even_part:
        out = out + x.lact(rand_grassmann(rng, degree_bound, EVEN, 1, nilpotent=True))
    for x in basis.odd_part:
        out = out + x.lact(rand_grassmann(rng, degree_bound, 1, 1, nilpotent=True))
    return out


def rand_osp_lambda(rng: random.Random, spec: FormSpec,
                    degree_bound: int) -> SuperMatrix:
    """Group element over the Grassmann ring: cayley composed with exp."""
    g0 = rand_osp_rational(rng, spec)
    ring = GrassmannRing(degree_bound)
    return g0.to_ring(ring) * exp_nilpotent(rand_osp_nilpotent(rng, spec, degree_bound))


def rand_supervector(rng: random.Random, spec: FormSpec, degree_bound: int,
                     parity: int, terms: int = 2) -> SuperVector:
    ring = GrassmannRing(degree_bound)
    coords = [rand_grassmann(rng, degree_bound, (spec.parities[i] + parity) % 2, terms)
              for i in range(spec.dim)]
    return SuperVector(coords, ring=ring, parity=parity, spec=spec)


def rand_diagram(rng: random.Random, k: int, l: int, delta) -> BrauerElt | None:
    diagrams = enumerate_diagrams(k, l)
    if not diagrams:
        return None
    return BrauerElt.from_diagram(rng.choice(diagrams), delta)

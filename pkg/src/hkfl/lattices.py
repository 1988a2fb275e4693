"""Even integral lattices, their discriminant groups and forms.

A lattice is a free Z-module with an even symmetric Gram matrix G.
The dual embeds in the rational span, and the discriminant group
A = L*/L is computed through the Smith normal form of G: if
left*G*right = diag(d_1..d_r) then A is the direct sum of Z/d_i for
the d_i > 1, and the i-th generator lifts to the rational vector
G^-1 * left^-1 * e_i written in the lattice basis.

The induced quadratic form q takes values in Q/2Z; values are kept as
exact fractions normalized to [0, 2).  The Milgram check compares the
Gauss sum of q against sqrt(|A|) * exp(2*pi*i*sig/8); it is the one
floating-point computation in this module.

Gram convention for E8: the basis of simple roots of the bifurcated
diagram, nodes numbered 1,3,4,5,6,7,8 along the chain with node 2
attached to node 4 (so the matrix has 2 on the diagonal and -1 at the
adjacent pairs (1,3),(3,4),(4,5),(5,6),(6,7),(7,8),(2,4)).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import intlinalg
from .errors import (BadParameter, CheckFailed, Degenerate, NotEven,
                     NotSymmetric, ZeroVector)

_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


@dataclass(frozen=True)
class QModTwoZ:
    """A rational number modulo 2Z, reduced and normalized to [0, 2)."""

    numerator: int
    denominator: int

    @classmethod
    def from_fraction(cls, value) -> "QModTwoZ":
        f = Fraction(value) % 2
        return cls(f.numerator, f.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __add__(self, other):
        return QModTwoZ.from_fraction(self.as_fraction() + other.as_fraction())

    def __neg__(self):
        return QModTwoZ.from_fraction(-self.as_fraction())

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class Lattice:
    """An even integral lattice given by its Gram matrix."""

    gram: tuple
    rank: int
    label: str | None = None

    def pair(self, u, v) -> int:
        """Inner product <u, v> of integer coordinate vectors."""
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, v) -> int:
        return self.pair(v, v)

    def determinant(self) -> int:
        return intlinalg.det(self.gram)

    def signature(self):
        """(positive, negative) inertia indices of the form over Q."""
        return intlinalg.rational_signature(self.gram)

    def __repr__(self):
        tag = self.label or "?"
        return f"Lattice({tag}, rank={self.rank})"


def make_lattice(gram, label=None) -> Lattice:
    """Validate a Gram matrix and wrap it.

    Raises NotSymmetric / NotEven / Degenerate, naming the violated
    precondition.
    """
    rows = [tuple(int(x) for x in row) for row in gram]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSymmetric("gram matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"gram[{i}][{j}] != gram[{j}][{i}]")
    for i in range(n):
        if rows[i][i] % 2 != 0:
            raise NotEven(f"diagonal entry gram[{i}][{i}] = {rows[i][i]} is odd")
    if n > 0 and intlinalg.det(rows) == 0:
        raise Degenerate("gram matrix has determinant 0")
    return Lattice(gram=tuple(rows), rank=n, label=label)


def _e8_gram():
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return g


def direct_sum(*lattices) -> Lattice:
    """Orthogonal direct sum; Gram matrices stacked block-diagonally."""
    total = sum(l.rank for l in lattices)
    g = [[0] * total for _ in range(total)]
    offset = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                g[offset + i][offset + j] = l.gram[i][j]
        offset += l.rank
    labels = [l.label for l in lattices]
    label = "+".join(labels) if all(labels) else None
    return make_lattice(g, label=label)


def rescale(lattice: Lattice, k: int) -> Lattice:
    """Multiply the form by a nonzero integer (evenness is preserved)."""
    if k == 0:
        raise BadParameter("rescale factor must be nonzero")
    g = [[k * x for x in row] for row in lattice.gram]
    if k == 1:
        label = lattice.label
    else:
        label = f"{lattice.label}({k})" if lattice.label else None
    return make_lattice(g, label=label)


def named_lattice(name: str, param: int | None = None) -> Lattice:
    """Constructors for the standard lattices.

    U            hyperbolic plane, Gram [[0,1],[1,0]]
    E8           positive definite even unimodular of rank 8
    E8(k)        E8 rescaled by k != 0        (pass param=k)
    A1(k)        rank one, Gram [[2k]], k != 0 (pass param=k)
    Ln(n)        U^3 + E8(-1)^2 + <-2n+2>, n >= 2, rank 23
    Mukai        U^4 + E8(-1)^2, rank 24, unimodular
    MukaiKummer  U^4, rank 8, unimodular
    """
    if name == "U":
        return make_lattice([[0, 1], [1, 0]], label="U")
    if name == "E8":
        if param is None or param == 1:
            return make_lattice(_e8_gram(), label="E8")
        if param == 0:
            raise BadParameter("E8(k) requires k != 0")
        return rescale(make_lattice(_e8_gram(), label="E8"), param)
    if name == "A1":
        k = 1 if param is None else param
        if k == 0:
            raise BadParameter("A1(k) requires k != 0")
        return make_lattice([[2 * k]], label=f"A1({k})")
    if name == "Ln":
        if param is None or param < 2:
            raise BadParameter("Ln(n) requires n >= 2")
        u = named_lattice("U")
        e8m1 = named_lattice("E8", -1)
        tail = make_lattice([[-2 * param + 2]], label=f"<{-2 * param + 2}>")
        l = direct_sum(u, u, u, e8m1, e8m1, tail)
        return Lattice(gram=l.gram, rank=l.rank, label=f"Ln({param})")
    if name == "Mukai":
        u = named_lattice("U")
        e8m1 = named_lattice("E8", -1)
        l = direct_sum(u, u, u, u, e8m1, e8m1)
        return Lattice(gram=l.gram, rank=l.rank, label="Mukai")
    if name == "MukaiKummer":
        u = named_lattice("U")
        l = direct_sum(u, u, u, u)
        return Lattice(gram=l.gram, rank=l.rank, label="MukaiKummer")
    raise BadParameter(f"unknown lattice name {name!r}")


smith_normal_form = intlinalg.smith_normal_form
SnfResult = intlinalg.SnfResult


@dataclass(frozen=True)
class DiscriminantProfile:
    """The finite group A = L*/L with generator lifts and form values.

    orders           cyclic orders d_1 | d_2 | ... (all > 1)
    generator_lifts  rational coordinates of each generator in the
                     lattice basis (an element of the dual lattice)
    q_on_generators  matrix of Q/2Z values: diagonal q(g_i),
                     off-diagonal the doubled pairing 2*b(g_i, g_j)
    length           minimal number of generators, len(orders)
    """

    lattice: Lattice
    orders: tuple
    generator_lifts: tuple
    q_on_generators: tuple
    length: int
    pairings: tuple = field(repr=False, default=())  # exact g_i . g_j values

    def group_order(self) -> int:
        return math.prod(self.orders)

    def elements(self):
        """All coefficient tuples, one per group element."""
        return itertools.product(*[range(d) for d in self.orders])


def discriminant_profile(lattice: Lattice) -> DiscriminantProfile:
    """Compute A_L from the Smith normal form of the Gram matrix."""
    n = lattice.rank
    snf = smith_normal_form(lattice.gram)
    left_inv = intlinalg.int_inverse([list(r) for r in snf.left])
    gram_inv = intlinalg.inverse(lattice.gram) if n else []
    orders = []
    lifts = []
    for i, d in enumerate(snf.diag):
        if d > 1:
            orders.append(d)
            z = [left_inv[r][i] for r in range(n)]
            lifts.append(tuple(sum(gram_inv[r][c] * z[c] for c in range(n))
                               for r in range(n)))
    pairings = tuple(tuple(_dual_pair(lattice, a, b) for b in lifts) for a in lifts)
    qmat = tuple(tuple(QModTwoZ.from_fraction(pairings[i][j] if i == j
                                              else 2 * pairings[i][j])
                       for j in range(len(lifts))) for i in range(len(lifts)))
    return DiscriminantProfile(lattice=lattice, orders=tuple(orders),
                               generator_lifts=tuple(lifts),
                               q_on_generators=qmat, length=len(orders),
                               pairings=pairings)


def _dual_pair(lattice, x, y) -> Fraction:
    return sum(x[i] * lattice.gram[i][j] * y[j]
               for i in range(lattice.rank) for j in range(lattice.rank))


def q_value(profile: DiscriminantProfile, element) -> QModTwoZ:
    """q of the class with the given generator coefficients, in Q/2Z."""
    c = list(element)
    total = Fraction(0)
    for i in range(profile.length):
        if c[i] == 0:
            continue
        total += c[i] * c[i] * profile.pairings[i][i]
        for j in range(i + 1, profile.length):
            if c[j]:
                total += 2 * c[i] * c[j] * profile.pairings[i][j]
    return QModTwoZ.from_fraction(total)


def b_value(profile: DiscriminantProfile, e1, e2) -> Fraction:
    """Induced bilinear pairing b(e1, e2), a rational modulo Z in [0, 1)."""
    total = Fraction(0)
    for i in range(profile.length):
        for j in range(profile.length):
            if e1[i] and e2[j]:
                total += e1[i] * e2[j] * profile.pairings[i][j]
    return total % 1


def divisibility(lattice: Lattice, v) -> int:
    """gcd of the pairings of v with a lattice basis."""
    if all(x == 0 for x in v):
        raise ZeroVector("divisibility of the zero vector is undefined")
    pair_with_basis = [sum(lattice.gram[i][j] * v[j] for j in range(lattice.rank))
                       for i in range(lattice.rank)]
    return math.gcd(*pair_with_basis)


@dataclass(frozen=True)
class MilgramReport:
    """Both sides of the Gauss-sum identity for one lattice."""

    label: str | None
    group_order: int
    signature: int
    gauss_sum: complex
    expected: complex
    error: float


def milgram_check(lattice: Lattice, tolerance: float = 1e-9) -> MilgramReport:
    """Verify sum_x exp(pi*i*q(x)) == sqrt(|A|) * exp(2*pi*i*sig/8).

    The sum runs over the whole discriminant group; raises CheckFailed
    (carrying both sides) if the identity misses the tolerance.
    """
    profile = discriminant_profile(lattice)
    pos, neg = lattice.signature()
    sig = pos - neg
    total = 0j
    for element in profile.elements():
        total += cmath.exp(1j * math.pi * float(q_value(profile, element).as_fraction()))
    order = profile.group_order()
    expected = math.sqrt(order) * cmath.exp(2j * math.pi * sig / 8)
    err = abs(total - expected)
    report = MilgramReport(label=lattice.label, group_order=order, signature=sig,
                           gauss_sum=total, expected=expected, error=err)
    if err > tolerance:
        raise CheckFailed(f"Gauss sum identity failed for {lattice.label!r}: "
                          f"{total} != {expected}", lhs=total, rhs=expected)
    return report


@lru_cache(maxsize=None)
def _cached_named(name: str, param: int | None):
    return named_lattice(name, param)


@lru_cache(maxsize=None)
def cached_profile(name: str, param: int | None = None) -> DiscriminantProfile:
    """Memoized discriminant profile of a named lattice."""
    return discriminant_profile(_cached_named(name, param))

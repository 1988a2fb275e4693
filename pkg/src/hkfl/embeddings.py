"""Gluing data for primitive embeddings and the wall criterion.

The classification of primitive embeddings of the (-2)-rescaled E8
into the rank-23 lattice L_n reduces to bookkeeping on discriminant
groups: a subgroup on each side plus an anti-isometry between them
(an isomorphism negating the Q/2Z form).  This module mechanizes that
bookkeeping, decides "up to isometry" by an explicit orbit computation
of the root-reflection action on the 256 classes of E8/2E8, and
implements the numerical wall criterion for divisibility-two classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import e8
from .errors import BadParameter, BadParity, OutOfScope, TooLarge
from .lattices import (DiscriminantProfile, QModTwoZ, cached_profile,
                       direct_sum, divisibility, named_lattice, q_value)

_SUBGROUP_CAP = 2**10


def element_order(profile: DiscriminantProfile, coeffs) -> int:
    return math.lcm(*(d // math.gcd(d, c) for d, c in zip(profile.orders, coeffs))) \
        if profile.orders else 1


def order_two_elements(profile: DiscriminantProfile):
    """All elements of exact order 2, with their q values."""
    out = []
    for coeffs in profile.elements():
        if any(coeffs) and all((2 * c) % d == 0 for c, d in zip(coeffs, profile.orders)):
            out.append((coeffs, q_value(profile, coeffs)))
    return out


@dataclass(frozen=True)
class ProfileSubgroup:
    """A subgroup of a discriminant group, given by generator coefficients."""

    profile: DiscriminantProfile
    generators: tuple

    def elements(self):
        """Closure of the generators under addition, as sorted tuples."""
        orders = self.profile.orders
        span = {tuple([0] * len(orders))}
        frontier = list(span)
        while frontier:
            new = []
            for x in frontier:
                for g in self.generators:
                    y = tuple((a + b) % d for a, b, d in zip(x, g, orders))
                    if y not in span:
                        span.add(y)
                        new.append(y)
            frontier = new
        return sorted(span)

    def order(self) -> int:
        return len(self.elements())


def trivial_subgroup(profile) -> ProfileSubgroup:
    return ProfileSubgroup(profile=profile, generators=())


def full_subgroup(profile) -> ProfileSubgroup:
    gens = []
    for i in range(profile.length):
        g = [0] * profile.length
        g[i] = 1
        gens.append(tuple(g))
    return ProfileSubgroup(profile=profile, generators=tuple(gens))


@dataclass(frozen=True)
class AntiIsometrySearch:
    """Result of the exhaustive anti-isometry search between two subgroups."""

    found: bool
    witness: tuple | None       # pairs (element_of_a, element_of_b)
    count: int | None = None    # filled when collecting all of them
    all_witnesses: tuple = ()


def _minimal_generators(profile, elements):
    """Greedy generating set: largest order first, lexicographic ties."""
    chosen = []
    span = {tuple([0] * profile.length)}
    for elt in sorted(elements, key=lambda e: (-element_order(profile, e), e)):
        if elt in span:
            continue
        chosen.append(elt)
        og = element_order(profile, elt)
        span = {_add(profile, x, _scaled(profile, elt, k))
                for x in span for k in range(og)}
        if len(span) == len(elements):
            break
    return chosen


def _scaled(profile, elt, k):
    return tuple((k * c) % d for c, d in zip(elt, profile.orders))


def _add(profile, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, profile.orders))


def anti_isometry_exists(a: ProfileSubgroup, b: ProfileSubgroup,
                         find_all: bool = False) -> AntiIsometrySearch:
    """Search for group isomorphisms f: a -> b with q(f(x)) = -q(x).

    Exhaustive over generator images with span pruning: a partial map
    is extended only while the anti-isometry identity holds on the
    whole subgroup spanned so far, so every reported witness is checked
    on all elements.  Raises TooLarge above the order cap.
    """
    elems_a = a.elements()
    elems_b = b.elements()
    if len(elems_a) > _SUBGROUP_CAP or len(elems_b) > _SUBGROUP_CAP:
        raise TooLarge(f"subgroup order exceeds cap {_SUBGROUP_CAP}")
    if len(elems_a) != len(elems_b):
        return AntiIsometrySearch(found=False, witness=None,
                                  count=0 if find_all else None)

    pa, pb = a.profile, b.profile
    qa = {e: q_value(pa, e).as_fraction() for e in elems_a}
    qb = {e: q_value(pb, e).as_fraction() for e in elems_b}
    ord_b = {}
    for e in elems_b:
        ord_b.setdefault(element_order(pb, e), []).append(e)

    gens = _minimal_generators(pa, elems_a)
    zero_a = tuple([0] * pa.length)
    zero_b = tuple([0] * pb.length)
    solutions = []

    def extend(idx, mapping):
        # mapping is a homomorphism on a subgroup of A, already verified
        # to negate q; returns True to stop the search early.
        if idx == len(gens):
            if len(set(mapping.values())) == len(elems_a):
                solutions.append(tuple(sorted(mapping.items())))
                return not find_all
            return False
        g = gens[idx]
        og = element_order(pa, g)
        k0 = next(k for k in range(1, og + 1) if _scaled(pa, g, k) in mapping)
        anchor = mapping[_scaled(pa, g, k0)]
        for h in sorted(ord_b.get(og, ())):
            if _scaled(pb, h, k0) != anchor:
                continue
            new_map = dict(mapping)
            ok = True
            for s, t in mapping.items():
                for k in range(1, k0):
                    src = _add(pa, s, _scaled(pa, g, k))
                    dst = _add(pb, t, _scaled(pb, h, k))
                    if qb[dst] != (-qa[src]) % 2:
                        ok = False
                        break
                    new_map[src] = dst
                if not ok:
                    break
            if ok and len(set(new_map.values())) == len(new_map):
                if extend(idx + 1, new_map):
                    return True
        return False

    extend(0, {zero_a: zero_b})
    uniq = sorted(set(solutions))
    if find_all:
        return AntiIsometrySearch(found=bool(uniq),
                                  witness=uniq[0] if uniq else None,
                                  count=len(uniq), all_witnesses=tuple(uniq))
    return AntiIsometrySearch(found=bool(uniq),
                              witness=uniq[0] if uniq else None)


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbits of the mod-2 root reflections acting on E8/2E8."""

    orbits: tuple        # tuple of sorted tuples of 8-bit classes
    q_values: tuple      # q (0/1) per orbit, constant by construction

    def sizes(self):
        return tuple(len(o) for o in self.orbits)


@lru_cache(maxsize=1)
def discriminant_class_orbits() -> OrbitDecomposition:
    """Orbits on the 256 classes under all 240 root reflections mod 2.

    The reflection in a root r sends x to x + <x,r>r; mod 2 it is the
    transvection x -> x ^ (parity(x & Gr) ? r : 0) on bit vectors.
    """
    lat = e8.e8_lattice()
    gens = set()
    for r in e8.roots():
        r2 = sum((r[i] % 2) << i for i in range(8))
        gr = sum((sum(lat.gram[i][j] * r[j] for j in range(8)) % 2) << i
                 for i in range(8))
        gens.add((r2, gr))

    def act(gen, x):
        r2, gr = gen
        return x ^ r2 if (x & gr).bit_count() % 2 else x

    seen = set()
    orbits = []
    for start in range(256):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            new = []
            for x in frontier:
                for gen in gens:
                    y = act(gen, x)
                    if y not in orbit:
                        orbit.add(y)
                        new.append(y)
            frontier = new
        seen |= orbit
        orbits.append(tuple(sorted(tuple((x >> i) & 1 for i in range(8))
                                   for x in orbit)))
    orbits.sort(key=lambda o: (len(o), o))
    qs = []
    for orbit in orbits:
        vals = {e8.class_q(c) for c in orbit}
        if len(vals) != 1:
            raise AssertionError("q is not constant on an orbit")
        qs.append(vals.pop())
    return OrbitDecomposition(orbits=tuple(orbits), q_values=tuple(qs))


@dataclass(frozen=True)
class GluingDatum:
    """(H_S, H_N, gamma) bookkeeping for one embedding class."""

    h_s_generators: tuple    # 8-bit classes of E8/2E8; empty = trivial
    h_n_generators: tuple    # coefficient tuples in the target profile
    gamma: tuple             # pairs (source class, target coefficients)

    def is_trivial(self) -> bool:
        return not self.h_s_generators


@dataclass(frozen=True)
class EmbeddingWitness:
    """A concrete vector certifying a non-trivial gluing class."""

    vector: tuple            # coordinates in the rank-8 lattice
    square: int              # self-pairing in the (-2)-rescaled lattice
    divisibility: int


@dataclass(frozen=True)
class EmbeddingClass:
    n: int
    datum: GluingDatum
    witness: EmbeddingWitness | None
    orbit_size: int = 0
    orbit_q: int | None = None
    orbit_best_square: int | None = None   # least negative over the orbit
    square_bound: int = 0                  # -6-2n from the wall criterion
    bound_satisfied: bool | None = None


def classify_embeddings(n: int):
    """Embedding classes of the (-2)-rescaled E8 into L_n, up to isometry.

    The target-side subgroup is trivial or the unique order-2 subgroup;
    the source-side order-2 subgroups are classified by the orbit
    computation.  Non-trivial classes carry the minimal-norm witness of
    the worst class in the orbit (the one with the most negative
    minimal square), so the attached bound comparison is the binding
    one for every representative.
    """
    if n < 2:
        raise BadParameter("n must be >= 2")
    profile = cached_profile("Ln", n)
    classes = [EmbeddingClass(n=n,
                              datum=GluingDatum(h_s_generators=(), h_n_generators=(),
                                                gamma=()),
                              witness=None, square_bound=-6 - 2 * n)]
    two = order_two_elements(profile)
    if len(two) != 1:
        raise AssertionError(f"expected one order-2 element in A_Ln, got {len(two)}")
    beta, q_beta = two[0]
    target = (-q_beta.as_fraction()) % 2
    if target.denominator != 1:
        return classes  # no class of A_S can glue: its q values are integers
    target_q = int(target) % 2

    orbits = discriminant_class_orbits()
    coverage = e8.class_coverage(8)
    e8m2 = e8.e8_minus_two()
    for orbit, q in zip(orbits.orbits, orbits.q_values):
        if len(orbit) == 1 or q != target_q:
            continue
        norms = {cls: coverage.per_class[cls][0] for cls in orbit}
        worst_norm = max(norms.values())
        rep = min(cls for cls, norm in norms.items() if norm == worst_norm)
        witness_vec = coverage.per_class[rep][1]
        square = -2 * worst_norm
        witness = EmbeddingWitness(vector=witness_vec, square=square,
                                   divisibility=divisibility(e8m2, witness_vec))
        bound = -6 - 2 * n
        classes.append(EmbeddingClass(
            n=n,
            datum=GluingDatum(h_s_generators=(rep,), h_n_generators=(beta,),
                              gamma=((rep, beta),)),
            witness=witness,
            orbit_size=len(orbit),
            orbit_q=q,
            orbit_best_square=-2 * min(norms.values()),
            square_bound=bound,
            bound_satisfied=square >= bound))
    return classes


@dataclass(frozen=True)
class WallVerdict:
    """Outcome of the wall criterion for a negative class of divisibility 2."""

    n: int
    a_square: int
    a_div: int
    v_square: int
    s: int                   # square of the glued half-vector
    lower: int               # the -2 floor from the criterion
    upper: Fraction          # v^2/4 ceiling
    boundary_square: int     # -6-2n
    verdict: str             # WALL | NOT-WALL | BOUNDARY


def wall_check(n: int, a_square: int, a_div: int = 2) -> WallVerdict:
    """Evaluate s = (v^2 + a^2)/4 with v^2 = 2n-2 and compare against -2.

    WALL for a_square strictly above -6-2n, BOUNDARY exactly there,
    NOT-WALL below.  Only divisibility two is in scope, and the parity
    (v^2 + a^2) % 4 == 0 is required for the input to be realizable.
    """
    if n < 3 or n % 2 == 0:
        raise BadParameter("wall criterion applies to odd n >= 3")
    if a_div != 2:
        raise OutOfScope("only divisibility 2 is supported")
    if a_square >= 0:
        raise BadParameter("a_square must be negative")
    v_square = 2 * n - 2
    if (v_square + a_square) % 4 != 0:
        raise BadParity(f"(v^2 + a^2) = {v_square + a_square} is not divisible by 4; "
                        "impossible for a divisibility-2 class")
    s = (v_square + a_square) // 4
    boundary = -6 - 2 * n
    if a_square == boundary:
        verdict = "BOUNDARY"
    elif a_square > boundary:
        verdict = "WALL"
    else:
        verdict = "NOT-WALL"
    return WallVerdict(n=n, a_square=a_square, a_div=a_div, v_square=v_square,
                       s=s, lower=-2, upper=Fraction(v_square, 4),
                       boundary_square=boundary, verdict=verdict)


@dataclass(frozen=True)
class GluingReport:
    """Anti-isometries between A_{H^2} and A_<v> for one Mukai extension."""

    kind: str
    n: int
    group_order: int
    q_h2: QModTwoZ
    q_v: QModTwoZ
    count: int
    witnesses: tuple     # each a tuple of (source, target) coefficient pairs


def mukai_gluing_check(n: int, kind: str) -> GluingReport:
    """Exhaustively list anti-isometries between the two cyclic groups.

    For the rank-23 family the second cohomology contributes a cyclic
    group of order 2n-2 with q = -1/(2n-2) on a generator; the Kummer
    family uses U^3 + <-2n-2> of order 2n+2.  The orthogonal direction
    contributes the same order with q = +1/order.
    """
    if n < 2:
        raise BadParameter("n must be >= 2")
    if kind == "k3n":
        h2 = cached_profile("Ln", n)
        v = cached_profile("A1", n - 1)
    elif kind == "kummer":
        h2 = _kummer_h2_profile(n)
        v = cached_profile("A1", n + 1)
    else:
        raise BadParameter(f"unknown kind {kind!r}")
    result = anti_isometry_exists(full_subgroup(h2), full_subgroup(v), find_all=True)
    gen_h2 = (1,) * h2.length
    gen_v = (1,) * v.length
    return GluingReport(kind=kind, n=n, group_order=h2.group_order(),
                        q_h2=q_value(h2, gen_h2) if h2.length else QModTwoZ(0, 1),
                        q_v=q_value(v, gen_v) if v.length else QModTwoZ(0, 1),
                        count=result.count, witnesses=result.all_witnesses)


@lru_cache(maxsize=None)
def _kummer_h2_profile(n: int):
    from .lattices import discriminant_profile, make_lattice
    u = named_lattice("U")
    tail = make_lattice([[-2 * n - 2]], label=f"<{-2 * n - 2}>")
    return discriminant_profile(direct_sum(u, u, u, tail))

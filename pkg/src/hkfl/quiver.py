"""Affine-A1 root combinatorics and the local fixed-point model.

The fixed locus of the sign involution on length-n subschemes of the
plane decomposes by the splitting of the n-dimensional quotient space
into even and odd parts.  The pieces are framed quiver varieties for
the doubled two-vertex affine quiver; only their numerical invariants
(root admissibility and dimension) are kept here, plus the partition
statistic d that separates the two components for odd n.

Conventions: framing vector w = (1, 0); Young diagram boxes are
0-indexed pairs (i, j), row i, column j.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParameter, CheckFailed, TooLarge

PARTITION_CAP = 60


@dataclass(frozen=True)
class DimVector:
    v1: int
    v2: int

    def as_tuple(self):
        return (self.v1, self.v2)


@dataclass(frozen=True)
class LocalComponent:
    """One component of the local fixed locus: dimension and sign tag."""

    v: DimVector
    dim: int
    sign: str | None  # '+', '-' for odd n, None for even n


@dataclass(frozen=True)
class PartitionProfile:
    parts: tuple
    d: int


def is_positive_root(v: DimVector) -> bool:
    """Roots of the affine A1 system: n*delta, e1+n*delta, e2+n*delta."""
    if v.v1 < 0 or v.v2 < 0 or (v.v1 == 0 and v.v2 == 0):
        return False
    return abs(v.v1 - v.v2) <= 1


def quiver_dim(v: DimVector, w: DimVector) -> int:
    """2 v.w - v^T C v with C the affine A1 Cartan matrix [[2,-2],[-2,2]]."""
    vw = v.v1 * w.v1 + v.v2 * w.v2
    vcv = 2 * (v.v1 - v.v2) ** 2
    return 2 * vw - vcv


def local_fixed_components(n: int):
    """Components of the involution-fixed locus of n points on the plane.

    Even n: a single component of dimension n.  Odd n: a plus
    component of dimension n-1 and a minus component of dimension n-3;
    the minus one is empty for n = 1 and omitted.
    """
    if n < 1:
        raise BadParameter("n must be >= 1")
    w = DimVector(1, 0)
    if n % 2 == 0:
        v = DimVector(n // 2, n // 2)
        return [LocalComponent(v=v, dim=quiver_dim(v, w), sign=None)]
    plus = DimVector((n + 1) // 2, (n - 1) // 2)
    out = [LocalComponent(v=plus, dim=quiver_dim(plus, w), sign="+")]
    if n >= 3:
        minus = DimVector((n - 1) // 2, (n + 1) // 2)
        out.append(LocalComponent(v=minus, dim=quiver_dim(minus, w), sign="-"))
    return out


def d_invariant(parts) -> int:
    """Number of boxes (i, j) of the Young diagram with i + j even."""
    total = 0
    for i, length in enumerate(parts):
        # row i contributes ceil(length/2) boxes if i is even, floor otherwise
        total += (length + 1) // 2 if i % 2 == 0 else length // 2
    return total


def _partitions(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def partitions(n: int):
    """All partitions of n in reverse-lexicographic order, with d values."""
    if n < 1:
        raise BadParameter("n must be >= 1")
    if n > PARTITION_CAP:
        raise TooLarge(f"partition enumeration capped at n = {PARTITION_CAP}")
    return [PartitionProfile(parts=p, d=d_invariant(p)) for p in _partitions(n, n)]


def transpose(parts):
    if not parts:
        return ()
    out = [0] * parts[0]
    for length in parts:
        for j in range(length):
            out[j] += 1
    return tuple(out)


@dataclass(frozen=True)
class DRangeReport:
    n: int
    expected: tuple          # the admissible d values
    histogram: dict          # d value -> number of partitions
    total_partitions: int


def verify_d_range(n: int) -> DRangeReport:
    """Check the d statistic against the two-component picture.

    Even n: every partition of n has d = n/2.  Odd n: d takes exactly
    the values (n-1)/2 and (n+1)/2, and both occur once n >= 3.
    Raises CheckFailed with a counterexample partition otherwise.
    """
    profiles = partitions(n)
    histogram = {}
    for p in profiles:
        histogram[p.d] = histogram.get(p.d, 0) + 1
    if n % 2 == 0:
        expected = (n // 2,)
        for p in profiles:
            if p.d != n // 2:
                raise CheckFailed(f"partition {p.parts} of even n={n} has d={p.d}, "
                                  f"expected {n // 2}", lhs=p.parts, rhs=n // 2)
    else:
        expected = ((n - 1) // 2, (n + 1) // 2)
        for p in profiles:
            if p.d not in expected:
                raise CheckFailed(f"partition {p.parts} of odd n={n} has d={p.d}, "
                                  f"expected one of {expected}", lhs=p.parts,
                                  rhs=expected)
        if n >= 3 and set(histogram) != set(expected):
            raise CheckFailed(f"odd n={n}: d values {sorted(histogram)} do not "
                              f"attain both of {expected}", lhs=sorted(histogram),
                              rhs=expected)
    return DRangeReport(n=n, expected=expected, histogram=dict(sorted(histogram.items())),
                        total_partitions=len(profiles))

"""E8 root system enumeration and discriminant-class coverage.

Vectors are integer coordinate rows in the fixed simple-root basis
(see hkfl.lattices for the Gram convention).  Norms are E8 norms; in
the (-2)-rescaled lattice a vector of E8 norm n has square -2n, so the
discriminant class [v/2] carries q = n/2 mod 2.

Classes of the order-2 quotient are 8-tuples of coordinates mod 2.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import kernels
from .errors import BadParameter
from .intlinalg import smith_normal_form
from .lattices import named_lattice

_CACHE_FORMAT = "hkfl-e8-short-vectors"
_CACHE_VERSION = 1


@lru_cache(maxsize=1)
def e8_lattice():
    return named_lattice("E8")


@lru_cache(maxsize=1)
def e8_minus_two():
    return named_lattice("E8", -2)


@dataclass(frozen=True)
class ShortVectorTable:
    """All nonzero E8 vectors up to an inclusive norm bound, by norm."""

    bound: int
    by_norm: dict

    def counts(self) -> dict:
        return {n: len(vs) for n, vs in sorted(self.by_norm.items())}

    def total(self) -> int:
        return sum(len(vs) for vs in self.by_norm.values())

    def all_vectors(self):
        for n in sorted(self.by_norm):
            yield from self.by_norm[n]


@dataclass(frozen=True)
class ClassCoverage:
    """Minimal-norm representative per discriminant class of E8/2E8."""

    bound: int
    per_class: dict  # 8-bit tuple -> (min_norm, witness vector)

    def covered(self):
        return set(self.per_class)

    def min_norm_histogram(self) -> dict:
        hist = {}
        for norm, _ in self.per_class.values():
            hist[norm] = hist.get(norm, 0) + 1
        return dict(sorted(hist.items()))

    def max_min_norm(self) -> int:
        return max(norm for norm, _ in self.per_class.values())


@lru_cache(maxsize=None)
def _compute_table(bound: int) -> ShortVectorTable:
    gram = [list(r) for r in e8_lattice().gram]
    by_norm = {}
    for vec, norm in kernels.short_vectors(gram, bound):
        by_norm.setdefault(norm, []).append(vec)
    return ShortVectorTable(bound=bound,
                            by_norm={n: tuple(vs) for n, vs in by_norm.items()})


def cache_directory(cache_dir=None) -> Path:
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get("HKFL_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hkfl"


def _cache_path(bound, cache_dir) -> Path:
    return cache_directory(cache_dir) / f"e8-short-vectors-v{_CACHE_VERSION}-bound{bound}.json"


def _load_cache(bound, cache_dir):
    path = _cache_path(bound, cache_dir)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError):
        return None
    if doc.get("format") != _CACHE_FORMAT or doc.get("version") != _CACHE_VERSION \
            or doc.get("bound") != bound:
        return None
    by_norm = {int(n): tuple(tuple(v) for v in vs)
               for n, vs in doc["by_norm"].items()}
    return ShortVectorTable(bound=bound, by_norm=by_norm)


def _save_cache(table, cache_dir):
    path = _cache_path(table.bound, cache_dir)
    doc = {"format": _CACHE_FORMAT, "version": _CACHE_VERSION, "bound": table.bound,
           "by_norm": {str(n): [list(v) for v in vs]
                       for n, vs in sorted(table.by_norm.items())}}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
        tmp.replace(path)
    except OSError:
        pass  # cache is an optimization only


def enumerate_short_vectors(bound: int, use_cache: bool = True,
                            cache_dir=None, count_cap: int = 10**7) -> ShortVectorTable:
    """Complete table of nonzero vectors of E8 norm <= bound.

    bound must be an even integer >= 2.  The enumeration is padded
    float branch-and-bound with exact integer acceptance (see
    hkfl.kernels); the optional JSON cache never changes results.
    """
    if bound < 2 or bound % 2 != 0:
        raise BadParameter("bound must be an even integer >= 2")
    if use_cache:
        cached = _load_cache(bound, cache_dir)
        if cached is not None:
            return cached
    table = _compute_table(bound)
    if use_cache:
        _save_cache(table, cache_dir)
    return table


@lru_cache(maxsize=1)
def roots() -> tuple:
    """The 240 roots (norm-2 vectors), lex-sorted; checked to span E8 over Z."""
    table = _compute_table(2)
    rs = table.by_norm.get(2, ())
    if len(rs) != 240:
        raise AssertionError(f"expected 240 roots, enumerated {len(rs)}")
    snf = smith_normal_form([list(r) for r in rs])
    if list(snf.diag) != [1] * 8:
        raise AssertionError("roots do not generate the lattice")
    return rs


def class_of(v) -> tuple:
    """Discriminant class of [v/2]: coordinates mod 2."""
    return tuple(c % 2 for c in v)


def class_q(cls) -> int:
    """q value (0 or 1) of a class in the (-2)-rescaled normalization."""
    lift = list(cls)
    norm = e8_lattice().norm(lift)
    return (norm // 2) % 2


def class_coverage(bound: int, use_cache: bool = True, cache_dir=None) -> ClassCoverage:
    """Reduce all vectors of norm <= bound mod 2E8, keep the minimum per class."""
    table = enumerate_short_vectors(bound, use_cache=use_cache, cache_dir=cache_dir)
    per_class = {(0,) * 8: (0, (0,) * 8)}
    for norm in sorted(table.by_norm):
        for v in table.by_norm[norm]:
            cls = class_of(v)
            if cls not in per_class:
                per_class[cls] = (norm, v)
    return ClassCoverage(bound=bound, per_class=per_class)


@dataclass(frozen=True)
class RootSumWitness:
    """A class representative as a sum of pairwise-orthogonal roots."""

    cls: tuple
    roots: tuple          # the orthogonal roots used, possibly empty
    vector: tuple
    norm: int
    orthogonal_decomposition: bool


@lru_cache(maxsize=1)
def _roots_by_class():
    table = {}
    for r in roots():
        table.setdefault(class_of(r), []).append(r)
    return {c: tuple(vs) for c, vs in table.items()}


def _xor_class(a, b):
    return tuple((x + y) % 2 for x, y in zip(a, b))


def sum_of_roots_witness(cls, max_roots: int = 4) -> RootSumWitness:
    """Search for <= max_roots pairwise-orthogonal roots summing into cls.

    Falls back to the minimal-norm coverage witness if no orthogonal
    decomposition is found within the size limit.
    """
    cls = tuple(int(c) % 2 for c in cls)
    lat = e8_lattice()
    zero = (0,) * 8
    if cls == zero:
        return RootSumWitness(cls=cls, roots=(), vector=zero, norm=0,
                              orthogonal_decomposition=True)
    by_class = _roots_by_class()

    def finish(chosen):
        vec = tuple(sum(r[i] for r in chosen) for i in range(8))
        return RootSumWitness(cls=cls, roots=tuple(chosen), vector=vec,
                              norm=lat.norm(vec), orthogonal_decomposition=True)

    def extend(chosen, target, budget):
        if target == zero:
            return chosen if chosen else None
        if budget == 0:
            return None
        floor_root = chosen[-1] if chosen else None
        for r in by_class.get(target, ()):
            if (floor_root is None or r > floor_root) \
                    and all(lat.pair(r, p) == 0 for p in chosen):
                return chosen + [r]
        if budget == 1:
            return None
        for r in all_roots:
            if floor_root is not None and r <= floor_root:
                continue
            if any(lat.pair(r, p) != 0 for p in chosen):
                continue
            got = extend(chosen + [r], _xor_class(target, class_of(r)), budget - 1)
            if got is not None:
                return got
        return None

    all_roots = roots()
    for budget in range(1, max_roots + 1):
        got = extend([], cls, budget)
        if got is not None:
            return finish(got)
    cov = class_coverage(max(2, 2 * max_roots))
    norm, witness = cov.per_class[cls]
    return RootSumWitness(cls=cls, roots=(), vector=witness, norm=norm,
                          orthogonal_decomposition=False)

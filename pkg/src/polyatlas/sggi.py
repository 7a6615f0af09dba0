"""String groups generated by involutions and the intersection property."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .perm import DEFAULT_ENUM_BOUND, PermGroup, Permutation, TooLargeError
from .table import GroupTable


class SchlafliType(tuple):
    """Orders ``(p1, ..., p_{n-1})`` of products of consecutive generators."""

    def dual(self) -> SchlafliType:
        return SchlafliType(reversed(self))

    def normalized(self) -> SchlafliType:
        return min(self, self.dual())

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class GeneratorTuple:
    """An ordered tuple of group elements, stored as indices into ``table``."""

    table: GroupTable
    gens: tuple[int, ...]

    @classmethod
    def from_perms(cls, table: GroupTable, perms: Iterable[Permutation]) -> GeneratorTuple:
        return cls(table, tuple(table.index(p) for p in perms))

    @property
    def ambient(self) -> PermGroup:
        return self.table.group

    @property
    def rank(self) -> int:
        return len(self.gens)

    @property
    def perms(self) -> list[Permutation]:
        return self.table.perms(self.gens)

    @cached_property
    def pair_orders(self) -> np.ndarray:
        g = np.asarray(self.gens, dtype=np.int64)
        return self.table.orders[self.table.mul(g[:, None], g[None, :])]

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorTuple) and self.table is other.table and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        return f"GeneratorTuple({self.perms!r})"


def dual(t: GeneratorTuple) -> GeneratorTuple:
    return GeneratorTuple(t.table, t.gens[::-1])


def is_string(t: GeneratorTuple) -> bool:
    """Distinct involutions with non-adjacent generators commuting."""
    if any(t.table.orders[g] != 2 for g in t.gens) or len(set(t.gens)) != t.rank:
        return False
    p = t.pair_orders
    return all(p[i, j] == 2 for i in range(t.rank) for j in range(i + 2, t.rank))


def schlafli(t: GeneratorTuple) -> SchlafliType:
    p = t.pair_orders
    return SchlafliType(int(p[i - 1, i]) for i in range(1, t.rank))


def parabolic_indices(t: GeneratorTuple, omit: Iterable[int] = ()) -> np.ndarray:
    omit = set(omit)
    return t.table.subgroup([g for i, g in enumerate(t.gens) if i not in omit])


def parabolic(t: GeneratorTuple, omit: Iterable[int] = ()) -> PermGroup:
    """The subgroup generated by the generators whose position is not in ``omit``."""
    omit = set(omit)
    kept = [p for i, p in enumerate(t.perms) if i not in omit]
    return PermGroup(kept, t.table.degree, order=int(parabolic_indices(t, omit).size))


def _c_group(table: GroupTable, gens: tuple[int, ...], memo: dict) -> bool:
    n = len(gens)
    if n <= 1:
        return all(table.orders[g] == 2 for g in gens)
    if n == 2:
        return gens[0] != gens[1]
    hit = memo.get(gens)
    if hit is not None:
        return hit
    ok = _c_group(table, gens[1:], memo) and _c_group(table, gens[:-1], memo)
    if ok:
        # the middle parabolic lies in both ends by construction
        left = table.subgroup(gens[1:])
        right = table.subgroup(gens[:-1])
        middle = table.subgroup(gens[1:-1])
        ok = np.intersect1d(left, right, assume_unique=True).size == middle.size
    memo[gens] = ok
    return ok


def is_string_c_group(t: GeneratorTuple) -> bool:
    """Intersection property of a string tuple, by recursion on the two end parabolics."""
    memo = t.table.__dict__.setdefault("_c_group_memo", {})
    return _c_group(t.table, t.gens, memo)


def _closure_py(gens: Sequence[tuple[int, ...]], degree: int, bound: int) -> frozenset:
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = tuple(g[k] for k in x)
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        if len(seen) > bound:
            raise TooLargeError(f"subgroup exceeds the enumeration bound {bound}")
        frontier = fresh
    return frozenset(seen)


def check_c2_bruteforce(t: GeneratorTuple, bound: int = 200_000, cache: dict | None = None) -> bool:
    """Check the intersection property on every pair of index subsets.

    Works on plain image tuples, independently of the element table, so it
    can serve as a reference for :func:`is_string_c_group`.  ``cache`` may
    be shared between calls to reuse closures of equal generator sets.
    """
    images = [p.images for p in t.perms]
    n = len(images)
    cache = {} if cache is None else cache

    def close(s):
        key = frozenset(images[i] for i in s)
        if key not in cache:
            cache[key] = _closure_py(sorted(key), t.table.degree, bound)
        return cache[key]

    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
    groups = {s: close(s) for s in subsets}
    return all(groups[a] & groups[b] == groups[a & b] for a in subsets for b in subsets)


@dataclass
class Polytope:
    """Faces of each rank as right cosets of ``G_i`` and incidence between consecutive ranks."""

    face_counts: tuple[int, ...]
    incidences: list[np.ndarray]   # incidences[i]: rows (face of rank i, face of rank i + 1)
    face_of: np.ndarray            # face_of[i, y]: face of rank i containing the flag of element y

    def flag_count(self) -> int:
        """Chains of faces, one per rank, with consecutive faces incident."""
        counts = np.ones(self.face_counts[0], dtype=np.int64)
        for i, pairs in enumerate(self.incidences):
            nxt = np.zeros(self.face_counts[i + 1], dtype=np.int64)
            np.add.at(nxt, pairs[:, 1], counts[pairs[:, 0]])
            counts = nxt
        return int(counts.sum())


def _right_coset_labels(table: GroupTable, sub: np.ndarray, members: np.ndarray) -> np.ndarray:
    labels = np.empty(members.size, dtype=np.int64)
    step = max(1, 2_000_000 // max(1, sub.size))
    for lo in range(0, members.size, step):
        ys = members[lo:lo + step]
        labels[lo:lo + step] = table.mul(sub[:, None], ys[None, :]).min(axis=0)
    return np.unique(labels, return_inverse=True)[1]


def build_polytope(t: GeneratorTuple, bound: int = DEFAULT_ENUM_BOUND) -> Polytope:
    """Coset construction: ``i``-faces are right cosets ``G_i y``, incident when they meet."""
    group = parabolic_indices(t)
    if group.size > bound:
        raise TooLargeError(f"group of order {group.size} exceeds the enumeration bound {bound}")
    face_of = np.stack([_right_coset_labels(t.table, parabolic_indices(t, {i}), group) for i in range(t.rank)])
    counts = tuple(int(row.max()) + 1 for row in face_of)
    incidences = [np.unique(face_of[i:i + 2].T, axis=0) for i in range(t.rank - 1)]
    return Polytope(counts, incidences, face_of)

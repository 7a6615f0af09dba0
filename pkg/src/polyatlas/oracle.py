"""Exhaustive reference classification for small groups.

Nothing here uses element tables, conjugacy classes or the dedup module.
Elements are plain image tuples, subgroups are closures computed in pure
Python, the intersection property is checked on every pair of index
subsets, and isomorphism classes are orbits of the full automorphism
group (found by brute force) together with reversal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .perm import PermGroup, TooLargeError

ORACLE_BOUND = 2000

Images = tuple[int, ...]


def _mul(p: Images, q: Images) -> Images:
    # apply p first
    return tuple(q[i] for i in p)


def _order(p: Images) -> int:
    seen = [False] * len(p)
    out = 1
    for s in range(len(p)):
        n = 0
        k = s
        while not seen[k]:
            seen[k] = True
            k = p[k]
            n += 1
        if n:
            out = lcm(out, n)
    return out


class _Closures:
    def __init__(self, degree: int):
        self.degree = degree
        self.cache: dict[frozenset, frozenset] = {}

    def __call__(self, gens) -> frozenset:
        key = frozenset(gens)
        hit = self.cache.get(key)
        if hit is None:
            ident = tuple(range(self.degree))
            seen = {ident}
            frontier = [ident]
            while frontier:
                fresh = []
                for x in frontier:
                    for g in key:
                        y = _mul(x, g)
                        if y not in seen:
                            seen.add(y)
                            fresh.append(y)
                frontier = fresh
            hit = self.cache[key] = frozenset(seen)
        return hit


def _has_intersection_property(gens: list[Images], close: _Closures) -> bool:
    n = len(gens)
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
    groups = {s: close([gens[i] for i in s]) for s in subsets}
    return all(groups[a] & groups[b] == groups[a & b] for a in subsets for b in subsets)


def oracle_tuples(G: PermGroup, max_rank: int, min_rank: int = 3, bound: int = ORACLE_BOUND) -> list[tuple[Images, ...]]:
    """Every string C-group tuple generating ``G`` with rank in ``[min_rank, max_rank]``."""
    if G.order() > bound:
        raise TooLargeError(f"oracle is limited to groups of order at most {bound}")
    close = _Closures(G.degree)
    whole = close([g.images for g in G.generators])
    invs = sorted(x for x in whole if _order(x) == 2)
    found = []

    def grow(prefix: list[Images]):
        span = close(prefix)
        if span == whole:
            if len(prefix) >= min_rank:
                found.append(tuple(prefix))
            # anything appended would lie in the span and break the intersection property
            return
        if len(prefix) == max_rank:
            return
        for c in invs:
            if c in prefix or any(_mul(c, x) != _mul(x, c) for x in prefix[:-1]):
                continue
            nxt = prefix + [c]
            if _has_intersection_property(nxt, close):
                grow(nxt)

    for r in invs:
        grow([r])
    return found


def automorphisms(G: PermGroup, bound: int = ORACLE_BOUND) -> list[dict[Images, Images]]:
    """All automorphisms of ``G`` as element dictionaries."""
    if G.order() > bound:
        raise TooLargeError(f"oracle is limited to groups of order at most {bound}")
    close = _Closures(G.degree)
    elements = sorted(close([g.images for g in G.generators]))
    ident = tuple(range(G.degree))
    # greedy generating set
    xs: list[Images] = []
    span = close(xs)
    for x in sorted(elements, key=lambda e: -_order(e)):
        if len(span) == len(elements):
            break
        if x not in span:
            xs.append(x)
            span = close(xs)
    by_order: dict[int, list[Images]] = {}
    for e in elements:
        by_order.setdefault(_order(e), []).append(e)

    def extend(ys):
        phi = {ident: ident}
        frontier = [ident]
        while frontier:
            fresh = []
            for u in frontier:
                for x, y in zip(xs, ys):
                    v, w = _mul(u, x), _mul(phi[u], y)
                    if v in phi:
                        if phi[v] != w:
                            return None
                    else:
                        phi[v] = w
                        fresh.append(v)
            frontier = fresh
        return phi if len(set(phi.values())) == len(elements) else None

    out = []
    for ys in itertools.product(*(by_order[_order(x)] for x in xs)):
        phi = extend(ys)
        if phi is not None:
            out.append(phi)
    return out


def oracle_classes(G: PermGroup, max_rank: int, min_rank: int = 3, bound: int = ORACLE_BOUND) -> list[tuple[Images, ...]]:
    """One tuple per isomorphism-and-duality class: the least image rows in its orbit."""
    return [c.gens for c in oracle_catalog(G, max_rank, min_rank, bound)]


@dataclass(frozen=True)
class OracleClass:
    gens: tuple[Images, ...]
    self_dual: bool
    parabolic_orders: tuple[int, ...]


def oracle_catalog(G: PermGroup, max_rank: int, min_rank: int = 3, bound: int = ORACLE_BOUND) -> list[OracleClass]:
    tuples = oracle_tuples(G, max_rank, min_rank, bound)
    auts = automorphisms(G, bound)
    close = _Closures(G.degree)
    forms = {}
    for t in tuples:
        form = min(tuple(phi[g] for g in s) for phi in auts for s in (t, t[::-1]))
        if form in forms:
            continue
        orbit = {tuple(phi[g] for g in form) for phi in auts}
        forms[form] = OracleClass(
            gens=form,
            self_dual=form[::-1] in orbit,
            parabolic_orders=tuple(len(close(form[:i] + form[i + 1:])) for i in range(len(form))),
        )
    return [forms[f] for f in sorted(forms, key=lambda f: (len(f), f))]

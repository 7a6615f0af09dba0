"""Representations of rank four and higher, grown inside involution centralizers.

In a string tuple ``(r0, r1, ..., r_{n-1})`` every generator from ``r2`` on
commutes with ``r0``, so ``(r0, r2, ..., r_{n-1})`` lives in the centralizer
``H = C_G(r0)``.  For each class of involutions ``r0`` the search

1. builds the tail chains ``(r2, ..., r_k)`` inside ``H`` (on a smaller
   faithful orbit when there is one), one per ``H``-conjugacy class, keeping
   only chains whose tuple ``(r0, r2, ..., r_k)`` has the intersection
   property and whose group misses ``r0``;
2. completes each chain with every involution ``r1`` of ``G`` that commutes
   with ``r3, ..., r_k``, keeping completions that generate ``G`` and have
   the intersection property.

Two completions that are conjugate in ``G`` are conjugate by an element
fixing ``r0``, hence come from the same chain; leftover duplicates and
outer automorphisms are removed by the final isomorphism pass.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .analysis import involution_classes, reduce_degree, table_of
from .dedup import dedup_catalog
from .perm import PermGroup
from .sggi import GeneratorTuple, _c_group, is_string, is_string_c_group
from .table import GroupTable

log = logging.getLogger(__name__)


def _least_conjugate(table: GroupTable, chain: tuple[int, ...], conjugators: np.ndarray) -> tuple[int, ...]:
    """Lexicographically least conjugate of ``chain`` (as an index tuple) under ``conjugators``."""
    cand = conjugators
    out = []
    for x in chain:
        imgs = table.conj(x, cand)
        least = imgs.min()
        out.append(int(least))
        cand = cand[imgs == least]
    return tuple(out)


def enumerate_inner(H: GroupTable, r0: int, max_rank: int | None = None) -> list[GeneratorTuple]:
    """Tuples ``(r0, r2, ..., r_k)`` of ``H`` with ``k >= 3`` that can end a representation.

    ``r0`` must be a central involution of ``H``.  The tail ``(r2, ..., r_k)``
    is a string tuple, every prefix of ``(r0, r2, ..., r_k)`` has the
    intersection property and ``r0`` lies outside ``<r2, ..., r_k>``.  One
    tuple is returned per conjugacy class under ``H``.  ``max_rank`` bounds
    the rank of the completed representation, ``k + 1``.
    """
    everything = np.arange(H.order)
    invs = H.involutions
    invs = invs[invs != r0]
    memo = H.__dict__.setdefault("_c_group_memo", {})
    frontier = sorted({_least_conjugate(H, (int(x),), everything) for x in invs})
    out: list[GeneratorTuple] = []
    length = 1
    while frontier and (max_rank is None or length + 2 < max_rank):
        grown: set[tuple[int, ...]] = set()
        for chain in frontier:
            cand = invs
            for x in chain[:-1]:
                cand = cand[H.commutes(x, cand)]
            cand = cand[~np.isin(cand, chain)]
            for c in cand:
                tail = chain + (int(c),)
                if not _c_group(H, (r0,) + tail, memo):
                    continue
                span = H.subgroup(tail)
                # every extension strictly grows the chain's group, which bounds the depth
                assert span.size > H.subgroup(chain).size
                if np.searchsorted(span, r0) < span.size and span[np.searchsorted(span, r0)] == r0:
                    continue
                grown.add(_least_conjugate(H, tail, everything))
        frontier = sorted(grown)
        length += 1
        out.extend(GeneratorTuple(H, (r0,) + chain) for chain in frontier)
    return out


def insert_rho1(G: GroupTable, partial: tuple[int, ...]) -> list[GeneratorTuple]:
    """Representations ``(r0, r1, r2, ...)`` of ``G`` extending ``partial = (r0, r2, ...)``.

    One completion is returned for each orbit of candidate ``r1`` under the
    centralizer of ``partial``.
    """
    r0, tail = partial[0], partial[1:]
    cand = G.involutions
    for x in tail[1:]:
        cand = cand[G.commutes(x, cand)]
    cand = cand[~np.isin(cand, partial)]
    # completions differing by an element that centralizes all of partial are conjugate
    fix = G.centralizer(r0)
    for x in tail:
        fix = fix[G.commutes(x, fix)]
    if fix.size > 1 and cand.size:
        cand = np.unique(G.conj(cand[:, None], fix[None, :]).min(axis=1))
    found = []
    for c in cand:
        t = GeneratorTuple(G, (r0, int(c)) + tuple(tail))
        if not is_string(t) or not G.generates(t.gens):
            continue
        if is_string_c_group(t):
            found.append(t)
    return found


class _CentralizerSearch:
    """Tail chains for one involution class, computed on a reduced copy of ``C_G(r0)``."""

    def __init__(self, G: GroupTable, r0: int):
        self.G = G
        self.r0 = r0
        members = G.centralizer(r0)
        group = G.to_group(members)
        reduced, self.reduction = reduce_degree(group)
        self.H = GroupTable(reduced)
        points = np.asarray(self.reduction.points)
        relabel = np.full(G.degree, -1, dtype=np.int64)
        relabel[points] = np.arange(points.size)
        # lift[i] = index in G of the element with index i in H
        rows = relabel[G.rows[members][:, points]]
        self.lift = np.empty(self.H.order, dtype=np.int64)
        self.lift[self.H.index_rows(rows)] = members
        self.r0_local = int(self.H.index_rows(relabel[G.rows[r0][points]])[0])

    def partials(self, max_rank: int | None = None) -> list[tuple[int, ...]]:
        chains = enumerate_inner(self.H, self.r0_local, max_rank)
        return [tuple(int(self.lift[g]) for g in t.gens) for t in chains]


def high_representations(G: PermGroup | GroupTable, threads: int = 1, max_rank: int | None = None) -> list[GeneratorTuple]:
    """Representations of rank at least four before the isomorphism pass."""
    table = table_of(G)
    partials: list[tuple[int, ...]] = []
    for cls in involution_classes(table):
        search = _CentralizerSearch(table, cls.rep_index)
        got = search.partials(max_rank)
        log.info("rank>3: involution class of size %d, centralizer of order %d on %d points, %d tail chains",
                 cls.member_indices.size, search.H.order, search.H.degree, len(got))
        partials.extend(got)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            batches = list(pool.map(lambda p: insert_rho1(table, p), partials))
    else:
        batches = [insert_rho1(table, p) for p in partials]
    found = [t for batch in batches for t in batch if t.rank >= 4]
    log.info("rank>3: %d representations before isomorphism dedup", len(found))
    return found


def classify_high(G: PermGroup | GroupTable, threads: int = 1, max_rank: int | None = None) -> list[GeneratorTuple]:
    """All representations of rank at least four, up to isomorphism and duality."""
    return dedup_catalog(high_representations(G, threads, max_rank))

"""Rank-three string C-group representations from dihedral subgroups.

Every rank-three representation ``(r0, r1, r2)`` contains the dihedral
group ``<r0, r1>``.  Walking one dihedral subgroup per conjugacy class,
each generating pair ``(r0, r1)`` in both orders, and each involution
``r2`` commuting with ``r0`` therefore reaches every representation up to
conjugacy.  Candidates are moved into the frame where ``r0`` is its class
representative and reduced modulo the centralizer of that representative,
so each conjugacy class of triples is tested once.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .analysis import conjugacy_classes, dihedral_class_reps, involution_classes, table_of
from .dedup import dedup_catalog
from .perm import PermGroup
from .sggi import GeneratorTuple, is_string, is_string_c_group
from .table import GroupTable

log = logging.getLogger(__name__)


class _Frames:
    """Conjugation of tuples into the frame of their first entry's class representative."""

    def __init__(self, table: GroupTable):
        self.table = table
        self.cc = conjugacy_classes(table)
        self.classes = {int(self.cc.labels[c.rep_index]): c for c in involution_classes(table)}
        self._cent: dict[int, np.ndarray] = {}

    def centralizer(self, rep: int) -> np.ndarray:
        if rep not in self._cent:
            self._cent[rep] = self.table.centralizer(rep)
        return self._cent[rep]

    def to_rep(self, a: int, others) -> tuple[int, np.ndarray]:
        """Conjugate ``(a, *others)`` so that ``a`` becomes its class representative."""
        t = self.table
        rep = int(self.cc.reps[self.cc.labels[a]])
        back = t.inv[self.cc.witness[a]]
        return rep, t.conj(np.asarray(others, dtype=np.int64), back)

    def pair_key(self, rep: int, b: int) -> tuple[int, np.ndarray]:
        """Least conjugate of ``b`` under C(rep), and the centralizing elements attaining it."""
        cent = self.centralizer(rep)
        images = self.table.conj(b, cent)
        least = images.min()
        return int(least), cent[images == least]


def rank3_candidates(G: PermGroup | GroupTable) -> list[tuple[int, int, int]]:
    """Triples ``(r0, r1, r2)`` with ``<r0, r1>`` dihedral and ``r2`` commuting with ``r0``,
    one per conjugacy class and in canonical frame."""
    table = table_of(G)
    frames = _Frames(table)
    seen_pairs: set[tuple[int, int]] = set()
    triples: set[tuple[int, int, int]] = set()
    for D in dihedral_class_reps(table, include_klein=True):
        elements = D.element_indices
        invs = elements[table.orders[elements] == 2]
        m = int(table.orders[D.rotation_index])
        prods = table.orders[table.mul(invs[:, None], invs[None, :])]
        for i, j in zip(*np.nonzero(prods == m)):
            # both orders of each pair are visited, which covers swapping r0 and r1
            a, b = int(invs[i]), int(invs[j])
            if a == b:
                continue
            rep, (b0,) = frames.to_rep(a, [b])
            b_key, stab = frames.pair_key(rep, int(b0))
            if (rep, b_key) in seen_pairs:
                continue
            seen_pairs.add((rep, b_key))
            cls = frames.classes[int(frames.cc.labels[rep])]
            cs = cls.commuting_indices
            cs = cs[cs != b_key]
            if not cs.size:
                continue
            least = table.conj(cs[:, None], stab[None, :]).min(axis=1)
            for c in np.unique(least):
                triples.add((rep, b_key, int(c)))
    return sorted(triples)


def _accept(table: GroupTable, triple, skip_c2: bool) -> GeneratorTuple | None:
    t = GeneratorTuple(table, triple)
    if not is_string(t) or not table.generates(triple):
        return None
    if not skip_c2 and not is_string_c_group(t):
        return None
    return t


def rank3_representations(G: PermGroup | GroupTable, skip_c2: bool = False, threads: int = 1) -> list[GeneratorTuple]:
    """Rank-three representations, one per conjugacy class (not yet reduced by outer automorphisms or duality).

    ``skip_c2`` omits the intersection-property test.  That is sound when
    ``G`` has no nontrivial cyclic normal subgroup (for instance when ``G``
    is simple); the caller is responsible for the assumption.
    """
    table = table_of(G)
    triples = rank3_candidates(table)
    log.info("rank 3: %d candidate triples up to conjugacy", len(triples))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            accepted = list(pool.map(lambda tr: _accept(table, tr, skip_c2), triples))
    else:
        accepted = [_accept(table, tr, skip_c2) for tr in triples]
    found = [t for t in accepted if t is not None]
    log.info("rank 3: %d representations before isomorphism dedup", len(found))
    return found


def classify_rank3(G: PermGroup | GroupTable, skip_c2: bool = False, threads: int = 1) -> list[GeneratorTuple]:
    """All rank-three string C-group representations of ``G`` up to isomorphism and duality."""
    return dedup_catalog(rank3_representations(G, skip_c2, threads))

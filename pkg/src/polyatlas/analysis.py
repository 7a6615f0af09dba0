"""Conjugacy classes, centralizers, normalizers and dihedral subgroups.

Classes are orbits of the generator-conjugation action on the full element
table.  For each element we also keep a conjugating witness ``w`` with
``rep^w == x``, so data stored only for class representatives (such as the
involutions commuting with a representative) can be transported to any
class member.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .perm import DEFAULT_ENUM_BOUND, PermGroup, Permutation, TooLargeError, build_chain
from .table import GroupTable, small_generating_set

DEFAULT_ORBIT_BOUND = 2_000_000


def table_of(G: PermGroup | GroupTable, bound: int = DEFAULT_ENUM_BOUND) -> GroupTable:
    """The element table of ``G``, built once and cached on the group."""
    if isinstance(G, GroupTable):
        return G
    table = getattr(G, "_table", None)
    if table is None:
        table = GroupTable(G, bound)
        G._table = table
    return table


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass
class ConjugacyClasses:
    labels: np.ndarray      # class number of every element
    reps: np.ndarray        # representative index per class
    sizes: np.ndarray
    orders: np.ndarray      # element order per class
    witness: np.ndarray     # witness[x]: an element w with reps[labels[x]]^w == x

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.labels == c)

    def __len__(self) -> int:
        return len(self.reps)


def conjugation_maps(table: GroupTable, conjugators) -> list[np.ndarray]:
    everything = np.arange(table.order)
    return [table.conj(everything, g) for g in conjugators]


def conjugacy_classes(table: GroupTable) -> ConjugacyClasses:
    cached = getattr(table, "_classes", None)
    if cached is not None:
        return cached
    N = table.order
    maps = conjugation_maps(table, table.gens)
    if maps:
        src = np.concatenate([np.arange(N)] * len(maps))
        dst = np.concatenate(maps)
        graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(N, N))
        _, raw = connected_components(graph, directed=True, connection="weak")
    else:
        raw = np.arange(N)

    # representative: lexicographically least image row in its class
    lex = np.empty(N, dtype=np.int64)
    lex[np.lexsort(table.rows.T[::-1])] = np.arange(N)
    ncls = raw.max() + 1
    best = np.full(ncls, N, dtype=np.int64)
    np.minimum.at(best, raw, lex)
    rep_of_raw = np.empty(ncls, dtype=np.int64)
    rep_of_raw[raw[lex == best[raw]]] = np.flatnonzero(lex == best[raw])
    sizes_raw = np.bincount(raw, minlength=ncls)
    orders_raw = table.orders[rep_of_raw]
    perm = np.lexsort((lex[rep_of_raw], sizes_raw, orders_raw))
    relabel = np.empty(ncls, dtype=np.int64)
    relabel[perm] = np.arange(ncls)
    labels = relabel[raw]
    reps = rep_of_raw[perm]

    witness = np.full(N, -1, dtype=np.int64)
    witness[reps] = table.identity
    frontier = reps.copy()
    while frontier.size:
        fresh = []
        for g, sigma in zip(table.gens, maps):
            ys = sigma[frontier]
            new = witness[ys] < 0
            if not new.any():
                continue
            ys, parents = ys[new], frontier[new]
            ys, first = np.unique(ys, return_index=True)
            witness[ys] = table.mul(witness[parents[first]], g)
            fresh.append(ys)
        frontier = np.concatenate(fresh) if fresh else np.empty(0, np.int64)

    classes = ConjugacyClasses(labels, reps, sizes_raw[perm], orders_raw[perm], witness)
    table._classes = classes
    return classes


def element_class_reps(G: PermGroup | GroupTable) -> list[tuple[Permutation, int]]:
    table = table_of(G)
    cc = conjugacy_classes(table)
    return [(table.perm(r), int(o)) for r, o in zip(cc.reps, cc.orders)]


@dataclass
class InvolutionClass:
    """One class of involutions with the involutions commuting with its representative."""

    table: GroupTable = field(repr=False)
    rep_index: int
    member_indices: np.ndarray = field(repr=False)
    commuting_indices: np.ndarray = field(repr=False)

    @property
    def representative(self) -> Permutation:
        return self.table.perm(self.rep_index)

    @property
    def all_members(self) -> set[Permutation]:
        return set(self.table.perms(self.member_indices))

    @property
    def commuting_involutions(self) -> set[Permutation]:
        return set(self.table.perms(self.commuting_indices))

    def commuting_with(self, x: int) -> np.ndarray:
        """Involutions other than ``x`` commuting with the class member ``x``."""
        w = conjugacy_classes(self.table).witness[x]
        return self.table.conj(self.commuting_indices, w)


def involution_classes(G: PermGroup | GroupTable) -> list[InvolutionClass]:
    table = table_of(G)
    cached = getattr(table, "_involution_classes", None)
    if cached is not None:
        return cached
    cc = conjugacy_classes(table)
    invs = table.involutions
    out = []
    for c in np.flatnonzero(cc.orders == 2):
        rep = int(cc.reps[c])
        commuting = invs[table.commutes(rep, invs) & (invs != rep)]
        out.append(InvolutionClass(table, rep, cc.members(c), commuting))
    table._involution_classes = out
    return out


# ---------------------------------------------------------------------------
# orbit-stabilizer on PermGroups


def _stabilizer(G: PermGroup, start, act, key, bound: int) -> PermGroup:
    """Stabilizer of ``start`` under ``act(point, g)`` from Schreier generators.

    ``key`` turns a point into a hashable label.  The orbit is walked
    breadth first with a transversal; the stabilizer order is known from
    the orbit length, which lets chain building stop as soon as it is hit.
    """
    gens = G.generators
    seen = {key(start): 0}
    orbit = [start]
    trans = [G.identity()]
    for pt, t in zip(orbit, trans):
        for g in gens:
            img = act(pt, g)
            k = key(img)
            if k not in seen:
                seen[k] = len(orbit)
                orbit.append(img)
                trans.append(t * g)
                if len(orbit) > bound:
                    raise TooLargeError(f"orbit exceeds the bound of {bound} points")
    target = G.order() // len(orbit)

    schreier = []
    for pt, t in zip(orbit, trans):
        for g in gens:
            back = trans[seen[key(act(pt, g))]]
            s = t * g * back.inverse()
            if not s.is_identity():
                schreier.append(s)
    schreier = sorted(set(schreier))
    rng = random.Random(0)
    chosen: list[Permutation] = []
    pool = schreier[:]
    rng.shuffle(pool)
    while True:
        if target == 1:
            return PermGroup([], G.degree, order=1)
        H = PermGroup(chosen, G.degree) if chosen else None
        if H is not None:
            chain = build_chain([c.to_array() for c in chosen], G.degree, known_order=target)
            H._chain = chain
            if chain.order() == target:
                return H
        batch = [s for s in pool[:8] if H is None or s not in H]
        pool = pool[8:]
        if not batch and not pool:
            raise RuntimeError("Schreier generators do not reach the stabilizer order")
        chosen.extend(batch)


def centralizer(G: PermGroup, x: Permutation, bound: int = DEFAULT_ORBIT_BOUND) -> PermGroup:
    """C_G(x) as the stabilizer of ``x`` under conjugation."""
    if x not in G:
        raise ValueError("element is not in the group")
    return _stabilizer(G, x, lambda p, g: p.conjugate(g), lambda p: p, bound)


def cyclic_elements(g: Permutation) -> frozenset[Permutation]:
    out = {Permutation.identity(g.degree)}
    p = g
    while not p.is_identity():
        out.add(p)
        p = p * g
    return frozenset(out)


def normalizer_of_cyclic(G: PermGroup, g: Permutation, bound: int = DEFAULT_ORBIT_BOUND) -> PermGroup:
    """N_G(<g>) as the stabilizer of the element set of ``<g>`` under conjugation."""
    if g not in G:
        raise ValueError("element is not in the group")
    return _stabilizer(
        G,
        cyclic_elements(g),
        lambda s, h: frozenset(p.conjugate(h) for p in s),
        lambda s: tuple(sorted(p.images for p in s)),
        bound,
    )


def inverting_involutions(N: PermGroup | np.ndarray, g, table: GroupTable | None = None):
    """Involutions ``h`` of ``N`` with ``g^h == g^-1``.

    With a table, ``N`` is an index array and ``g`` an index; the result is
    an index array.  Otherwise ``N`` is a group and Permutations are returned.
    """
    if table is not None:
        N = np.asarray(N, dtype=np.int64)
        h = N[table.orders[N] == 2]
        return h[table.conj(g, h) == table.inv[g]]
    g_inv = g.inverse()
    return [h for h in N.elements() if h.order() == 2 and g.conjugate(h) == g_inv]


def normalizer_indices(table: GroupTable, g: int) -> np.ndarray:
    cyc = table.subgroup([g])
    conj = table.conj(g, np.arange(table.order))
    return np.flatnonzero(np.isin(conj, cyc))


# ---------------------------------------------------------------------------
# dihedral subgroups


@dataclass
class DihedralRep:
    """A dihedral subgroup ``<g, h>`` with ``g^h == g^-1``."""

    table: GroupTable = field(repr=False)
    rotation_index: int
    reflection_index: int
    element_indices: np.ndarray = field(repr=False)

    @property
    def rotation(self) -> Permutation:
        return self.table.perm(self.rotation_index)

    @property
    def reflection(self) -> Permutation:
        return self.table.perm(self.reflection_index)

    @property
    def subgroup(self) -> PermGroup:
        return PermGroup([self.rotation, self.reflection], self.table.degree, order=len(self))

    @property
    def reflections(self) -> np.ndarray:
        rot = self.table.subgroup([self.rotation_index])
        return np.sort(self.table.mul(rot, self.reflection_index))

    def __len__(self) -> int:
        return int(self.element_indices.size)


def dihedral_class_reps(G: PermGroup | GroupTable, include_klein: bool = False) -> list[DihedralRep]:
    """One dihedral subgroup per conjugacy class, rotation order at least 3.

    For each class representative ``g`` the inverting involutions of
    ``N_G(<g>)`` give the candidates ``<g, h>``; two candidates are
    conjugate exactly when an element of ``N_G(<g>)`` carries one onto the
    other.  Classes whose elements generate an already treated cyclic
    subgroup are skipped.  ``include_klein`` adds four-groups ``<g, h>`` of
    commuting involutions, which are not deduplicated across ``g``.
    """
    table = table_of(G)
    cc = conjugacy_classes(table)
    covered: set[int] = set()
    out: list[DihedralRep] = []
    lowest = 2 if include_klein else 3
    for c in range(len(cc)):
        m = int(cc.orders[c])
        if m < lowest or c in covered:
            continue
        g = int(cc.reps[c])
        for k in range(1, m):
            if math.gcd(k, m) == 1:
                covered.add(int(cc.labels[table.power(g, k)]))
        N = normalizer_indices(table, g)
        hs = inverting_involutions(N, g, table=table)
        if m == 2:
            hs = hs[hs != g]
        if not hs.size:
            continue
        rot = table.subgroup([g])
        # coset label of h: least index in h<g>
        coset = table.mul(hs[:, None], rot[None, :]).min(axis=1)
        labels, ids = np.unique(coset, return_inverse=True)
        src, dst = [], []
        for y in small_generating_set(table, N):
            moved = table.mul(table.conj(hs, y)[:, None], rot[None, :]).min(axis=1)
            src.append(ids)
            dst.append(np.searchsorted(labels, moved))
        if src:
            src, dst = np.concatenate(src), np.concatenate(dst)
            graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(labels.size,) * 2)
            _, orbit = connected_components(graph, directed=True, connection="weak")
        else:
            orbit = np.arange(labels.size)
        for o in range(orbit.max() + 1):
            h = int(labels[np.flatnonzero(orbit == o)[0]])
            elements = np.sort(np.concatenate([rot, table.mul(rot, h)]))
            out.append(DihedralRep(table, g, h, elements))
    return out


# ---------------------------------------------------------------------------
# degree reduction


@dataclass
class DegreeReduction:
    """Relabelling between a group and its restriction to ``points``."""

    original: PermGroup
    reduced: PermGroup
    points: list[int]
    _lift: dict | None = field(default=None, repr=False)

    def to_reduced(self, p: Permutation) -> Permutation:
        where = {pt: i for i, pt in enumerate(self.points)}
        return Permutation._trusted([where[p.images[pt]] for pt in self.points])

    def to_original(self, p: Permutation) -> Permutation:
        if self.reduced is self.original:
            return p
        if self._lift is None:
            self._lift = {self.to_reduced(x): x for x in self.original.elements()}
        return self._lift[p]


def reduce_degree(H: PermGroup) -> tuple[PermGroup, DegreeReduction]:
    """Restrict ``H`` to its smallest orbit on which it still acts faithfully."""
    order = H.order()
    for orbit in sorted(H.orbits(), key=len):
        if len(orbit) == H.degree:
            break
        if len(orbit) == 1 and order > 1:
            continue
        where = {pt: i for i, pt in enumerate(orbit)}
        gens = [Permutation._trusted([where[g.images[pt]] for pt in orbit]) for g in H.generators]
        K = PermGroup(gens, len(orbit))
        if K.order() == order:
            return K, DegreeReduction(H, K, list(orbit))
    return H, DegreeReduction(H, H, list(range(H.degree)))

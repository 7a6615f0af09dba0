"""Isomorphism and duality classes of generator tuples.

Two tuples of the same group are isomorphic when some automorphism of the
group maps one onto the other.  The test extends the generator map along
the Cayley graph and checks every edge, which covers outer automorphisms
without ever computing the automorphism group.

Catalog representatives are canonical: the lexicographically least tuple
of image rows over the whole class, obtained by minimizing over inner
automorphisms for each outer-automorphism coset and each orientation.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .analysis import conjugacy_classes
from .sggi import GeneratorTuple, SchlafliType, dual, parabolic_indices, schlafli
from .table import GroupTable, small_generating_set

__all__ = [
    "Fingerprint",
    "are_isomorphic",
    "canonical_form",
    "canonical_tuple",
    "dedup_catalog",
    "dual",
    "extend_to_automorphism",
    "fingerprint",
    "outer_automorphisms",
]


def extend_to_automorphism(table: GroupTable, xs, ys) -> np.ndarray | None:
    """Extend ``xs[i] -> ys[i]`` to an automorphism, as an index map, or ``None``.

    Walks the Cayley graph of ``<xs>`` breadth first, assigning
    ``phi(u * x) = phi(u) * y`` and rejecting on the first conflicting edge.
    Every edge is visited, so a completed map is a homomorphism; it is an
    automorphism when ``xs`` generate the group and the map is onto.
    """
    N = table.order
    phi = np.full(N, -1, dtype=np.int64)
    phi[table.identity] = table.identity
    frontier = np.array([table.identity], dtype=np.int64)
    while frontier.size:
        fresh = []
        for x, y in zip(xs, ys):
            kids = table.mul(frontier, x)
            imgs = table.mul(phi[frontier], y)
            known = phi[kids]
            done = known >= 0
            if np.any(known[done] != imgs[done]):
                return None
            kids, imgs = kids[~done], imgs[~done]
            if not kids.size:
                continue
            order = np.argsort(kids, kind="stable")
            kids, imgs = kids[order], imgs[order]
            dup = kids[1:] == kids[:-1]
            if np.any(imgs[1:][dup] != imgs[:-1][dup]):
                return None
            keep = np.concatenate([[True], ~dup])
            phi[kids[keep]] = imgs[keep]
            fresh.append(kids[keep])
        frontier = np.concatenate(fresh) if fresh else np.empty(0, np.int64)
    if np.any(phi < 0) or np.unique(phi).size != N:
        return None
    return phi


def are_isomorphic(a: GeneratorTuple, b: GeneratorTuple) -> bool:
    """Whether ``a[i] -> b[i]`` extends to an automorphism of the ambient group."""
    if a.table is not b.table:
        raise ValueError("tuples live in different groups")
    if a.rank != b.rank:
        return False
    if not np.array_equal(a.pair_orders, b.pair_orders):
        return False
    if a.table.orders[list(a.gens)].tolist() != b.table.orders[list(b.gens)].tolist():
        return False
    for t in (a, b):
        if not t.table.generates(t.gens):
            raise ValueError("tuple does not generate the ambient group")
    return extend_to_automorphism(a.table, a.gens, b.gens) is not None


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True, order=True)
class Fingerprint:
    """Isomorphism and duality invariants used to bucket tuples before pairwise tests.

    Besides rank, type, maximal parabolic orders and group order this records
    the order of the product of all generators (reversal inverts it) and the
    class sizes of the generators in a duality-normalized orientation.
    """

    rank: int
    schlafli: SchlafliType
    parabolic_orders: tuple[int, ...]
    group_order: int
    product_order: int
    class_sizes: tuple[int, ...]


def fingerprint(t: GeneratorTuple) -> Fingerprint:
    table = t.table
    cc = conjugacy_classes(table)
    sizes = tuple(int(cc.sizes[cc.labels[g]]) for g in t.gens)
    prod = table.identity
    for g in t.gens:
        prod = table.mul(prod, g)
    return Fingerprint(
        rank=t.rank,
        schlafli=schlafli(t).normalized(),
        parabolic_orders=tuple(sorted(int(parabolic_indices(t, {i}).size) for i in range(t.rank))),
        group_order=table.generated_order(t.gens),
        product_order=int(table.orders[prod]),
        class_sizes=min(sizes, sizes[::-1]),
    )


# ---------------------------------------------------------------------------
# canonical forms


def outer_automorphisms(table: GroupTable) -> list[np.ndarray]:
    """Index maps of automorphisms, one per coset of the inner automorphisms.

    The first map is the identity.  Automorphisms are found by sending a
    small generating set ``x`` to every image tuple that agrees on element
    orders, class sizes and pairwise product orders, with ``x[0]`` sent only
    to class representatives, and keeping the maps that extend.
    """
    cached = getattr(table, "_outer", None)
    if cached is not None:
        return cached
    cc = conjugacy_classes(table)
    N = table.order
    everything = np.arange(N)
    class_size = cc.sizes[cc.labels]
    # start from a class of large size and high order to keep the search narrow
    order_key = np.lexsort((-table.orders[cc.reps], -cc.sizes))
    first = int(cc.reps[order_key[0]])
    rest = [x for x in small_generating_set(table, everything) if x != first]
    xs = [first]
    current = table.closure(xs)
    for x in rest:
        if current.size == N:
            break
        if not np.isin(x, current):
            xs.append(int(x))
            current = table.closure(xs)

    def matches(j, chosen):
        x = xs[j]
        cand = np.flatnonzero((table.orders == table.orders[x]) & (class_size == class_size[x]))
        for i, y in enumerate(chosen):
            want = _word_orders(table, xs[i], np.array([x]))[:, 0]
            for w, target in enumerate(want):
                cand = cand[_word_orders(table, y, cand, only=w) == target]
        return cand

    first_images = [int(r) for r, s, o in zip(cc.reps, cc.sizes, cc.orders)
                    if s == class_size[first] and o == table.orders[first]]
    found: list[tuple[int, np.ndarray]] = []

    def search(chosen):
        if len(chosen) == len(xs):
            phi = extend_to_automorphism(table, xs, chosen)
            if phi is not None:
                found.append((chosen[0], phi))
            return
        for y in matches(len(chosen), chosen):
            search(chosen + [int(y)])

    for y0 in first_images:
        search([y0])

    transversal: list[np.ndarray] = []
    kept: list[tuple[int, np.ndarray]] = []
    for y0, phi in found:
        inner = False
        for z0, psi in kept:
            if z0 != y0:
                continue
            # phi = psi followed by conjugation by some c centralizing y0
            cent = table.centralizer(y0)
            ok = np.ones(cent.size, dtype=bool)
            for x in xs[1:]:
                ok &= table.conj(psi[x], cent) == phi[x]
            if ok.any():
                inner = True
                break
        if not inner:
            kept.append((y0, phi))
            transversal.append(phi)
    ident = everything
    transversal.sort(key=lambda phi: not np.array_equal(phi, ident))
    if not transversal or not np.array_equal(transversal[0], ident):
        raise RuntimeError("identity automorphism not recovered")
    table._outer = transversal
    return transversal


_WORDS = 6


def _word_orders(table: GroupTable, a: int, bs: np.ndarray, only: int | None = None) -> np.ndarray:
    """Orders of short words in ``a`` and each ``b``: ab, ab^-1, a^2 b, a b^2, [a, b], a b a b^-1."""
    inv, mul, orders = table.inv, table.mul, table.orders

    def word(w):
        if w == 0:
            return mul(a, bs)
        if w == 1:
            return mul(a, inv[bs])
        if w == 2:
            return mul(mul(a, a), bs)
        if w == 3:
            return mul(a, mul(bs, bs))
        if w == 4:
            return mul(mul(inv[a], inv[bs]), mul(a, bs))
        return mul(mul(a, bs), mul(a, inv[bs]))

    if only is not None:
        return orders[word(only)]
    return np.stack([orders[word(w)] for w in range(_WORDS)])


def _inner_min(table: GroupTable, gens: tuple[int, ...]) -> tuple[tuple, tuple[int, ...]]:
    """Least conjugate of ``gens`` (compared as concatenated image rows)."""
    rows = table.rows
    cand = np.arange(table.order)
    inv = table.inv[cand]
    for x in gens:
        X = rows[x].astype(np.int64)
        for k in range(table.degree):
            if cand.size == 1:
                break
            vals = rows[cand, X[rows[inv, k]]]
            keep = vals == vals.min()
            cand, inv = cand[keep], inv[keep]
        if cand.size == 1:
            break
    conj = tuple(int(v) for v in table.conj(np.asarray(gens), cand[0]))
    return tuple(tuple(rows[g].tolist()) for g in conj), conj


def canonical_form(t: GeneratorTuple) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least image rows over the isomorphism-and-duality class of ``t``."""
    return _canonical(t)[0]


_DENSE_LIMIT = 100_000


def _lex_rank(table: GroupTable) -> np.ndarray:
    """Position of each element when rows are sorted lexicographically."""
    rank = getattr(table, "_lex_rank", None)
    if rank is None:
        order = np.lexsort(table.rows.T[::-1])
        rank = np.empty(table.order, dtype=np.int64)
        rank[order] = np.arange(table.order)
        table._lex_rank = rank
    return rank


def _canonical_dense(t: GeneratorTuple, outs: list[np.ndarray]):
    """Every automorphic image and orientation conjugated by every element, at once."""
    table = t.table
    gens = np.array([t.gens, t.gens[::-1]])
    images = np.concatenate([phi[gens] for phi in outs])                  # (2k, n)
    g = np.arange(table.order)
    conj = table.conj(images[:, None, :], g[None, :, None]).reshape(-1, t.rank)
    keys = _lex_rank(table)[conj]
    best = conj[np.lexsort(keys.T[::-1])[0]]
    gens = tuple(int(x) for x in best)
    return tuple(tuple(table.rows[x].tolist()) for x in gens), gens


def _canonical(t: GeneratorTuple):
    outs = outer_automorphisms(t.table)
    if 2 * len(outs) * t.table.order * t.rank <= _DENSE_LIMIT:
        return _canonical_dense(t, outs)
    best = None
    for phi in outs:
        for gens in (t.gens, t.gens[::-1]):
            cand = _inner_min(t.table, tuple(int(phi[g]) for g in gens))
            if best is None or cand[0] < best[0]:
                best = cand
    return best


def canonical_tuple(t: GeneratorTuple) -> GeneratorTuple:
    return GeneratorTuple(t.table, _canonical(t)[1])


def dedup_catalog(reps, canonical: bool = True, method: str = "canonical") -> list[GeneratorTuple]:
    """One tuple per class under isomorphism or dual isomorphism.

    With ``method="canonical"`` tuples are grouped by :func:`canonical_form`,
    a complete invariant.  With ``method="pairwise"`` they are bucketed by
    :class:`Fingerprint` and compared with :func:`are_isomorphic` against each
    class founder and its dual; this route does not depend on the
    outer-automorphism transversal and serves as a cross-check.

    The representative of a class is its canonical tuple (or, with
    ``canonical=False``, its least member by index), and the output is
    sorted by rank and canonical form.
    """
    reps = list(dict.fromkeys(reps))
    if method == "canonical":
        forms: dict[tuple, GeneratorTuple] = {}
        for t in reps:
            form, gens = _canonical(t)
            if form not in forms:
                forms[form] = t
            elif t.gens < forms[form].gens and not canonical:
                forms[form] = t
        if canonical:
            out = [GeneratorTuple(t.table, _canonical(t)[1]) for t in forms.values()]
        else:
            out = list(forms.values())
    elif method == "pairwise":
        buckets: dict[Fingerprint, list[GeneratorTuple]] = defaultdict(list)
        for t in reps:
            buckets[fingerprint(t)].append(t)
        out = []
        for key in sorted(buckets):
            classes: list[list[GeneratorTuple]] = []
            for t in sorted(buckets[key], key=lambda s: s.gens):
                for cls in classes:
                    if are_isomorphic(cls[0], t) or are_isomorphic(cls[0], dual(t)):
                        cls.append(t)
                        break
                else:
                    classes.append([t])
            for cls in classes:
                out.append(canonical_tuple(cls[0]) if canonical else cls[0])
    else:
        raise ValueError(f"unknown dedup method {method!r}")
    if canonical:
        keyed = [(t.rank, tuple(tuple(t.table.rows[g].tolist()) for g in t.gens), t) for t in out]
        return [t for _, _, t in sorted(keyed, key=lambda k: k[:2])]
    return sorted(out, key=lambda t: (t.rank, t.gens))

"""Element tables: every element of a group, addressed by integer index.

All search code works on indices into a :class:`GroupTable`.  Rows are
sorted by a key computed from the images of the base points, which
determine an element uniquely, so a product only needs ``len(base)``
gathers plus a dense prefix lookup to be located.
"""

from __future__ import annotations

import numpy as np

from .perm import DEFAULT_ENUM_BOUND, PermGroup, Permutation, TooLargeError

_HASH_WEIGHTS = np.random.default_rng(0x5EED).integers(1, 2**63, size=64, dtype=np.uint64) | np.uint64(1)


class GroupTable:
    """All elements of ``group`` as rows of an array, with vectorized arithmetic."""

    def __init__(self, group: PermGroup, bound: int = DEFAULT_ENUM_BOUND):
        order = group.order()
        if order > bound:
            raise TooLargeError(f"group of order {order} is too large to tabulate (bound {bound})")
        self.group = group
        self.degree = d = group.degree
        self.order = order
        base = group.chain.base or [0]
        if len(base) > len(_HASH_WEIGHTS):
            raise TooLargeError(f"base of length {len(base)} is too long")
        self.base = np.asarray(base, dtype=np.int64)
        b = len(base)
        self._exact = d**b < 2**63
        if self._exact:
            # first base image most significant, so equal prefixes are contiguous
            self._weights = np.array([d ** (b - 1 - j) for j in range(b)], dtype=np.uint64)
        else:
            self._weights = _HASH_WEIGHTS[:b]

        rows = group.element_array(bound)
        codes = self._codes(rows[:, self.base])
        perm = np.argsort(codes, kind="stable")
        self.codes = codes[perm]
        if np.any(self.codes[1:] == self.codes[:-1]):
            raise RuntimeError("element key collision")
        self.rows = np.ascontiguousarray(rows[perm])
        self._flat = self.rows.ravel()
        self.base_images = self.rows[:, self.base].astype(np.int64)
        self._build_prefix_index()
        self.identity = int(self.index(Permutation.identity(d)))
        self.gens = np.array([self.index(g) for g in group.generators], dtype=np.int64)
        self._inv = None
        self._orders = None
        self._subgroups: dict[tuple[int, ...], np.ndarray] = {}
        self._generating: dict[tuple[int, ...], bool] = {}

    def __len__(self) -> int:
        return self.order

    def _codes(self, base_imgs: np.ndarray) -> np.ndarray:
        return (base_imgs.astype(np.uint64) * self._weights).sum(axis=-1, dtype=np.uint64)

    def _build_prefix_index(self) -> None:
        """Dense table from a prefix of the base images to the first matching row.

        Rows sharing a prefix are contiguous; ``_run`` bounds how many there are.
        """
        self._start = None
        if not self._exact:
            return
        b = len(self.base)
        L = b
        while L > 1 and self.degree**L > 2**25:
            L -= 1
        if self.degree**L > 2**25:
            return
        self._div = np.uint64(self.degree ** (b - L))
        prefixes = self.codes // self._div
        start = np.zeros(self.degree**L, dtype=np.int32)
        first = np.concatenate([[True], prefixes[1:] != prefixes[:-1]])
        start[prefixes[first].astype(np.int64)] = np.flatnonzero(first)
        self._start = start
        bounds = np.append(np.flatnonzero(first), self.order)
        self._run = int(np.diff(bounds).max())

    def _lookup(self, codes: np.ndarray) -> np.ndarray:
        """Row index of each code, assuming every code is present."""
        if self._start is None:
            return np.searchsorted(self.codes, codes)
        idx = self._start[(codes // self._div).astype(np.int64)].astype(np.int64)
        for _ in range(self._run - 1):
            bump = self.codes[idx] != codes
            if not bump.any():
                break
            idx += bump
        return idx

    # --- lookup -----------------------------------------------------------

    def index_rows(self, rows: np.ndarray, strict: bool = True) -> np.ndarray:
        """Indices of full image rows; ``-1`` (or ``KeyError``) for non-members."""
        rows = np.atleast_2d(rows)
        codes = self._codes(rows[:, self.base].astype(np.int64))
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, self.order - 1)
        ok = (self.codes[idx] == codes) & (self.rows[idx] == rows).all(axis=1)
        if strict and not ok.all():
            raise KeyError("permutation is not an element of the group")
        return np.where(ok, idx, -1)

    def index(self, p: Permutation) -> int:
        return int(self.index_rows(np.asarray(p.images)[None, :])[0])

    def perm(self, i: int) -> Permutation:
        return Permutation._trusted(self.rows[i].tolist())

    def perms(self, indices) -> list[Permutation]:
        return [self.perm(int(i)) for i in np.asarray(indices).ravel()]

    # --- arithmetic -------------------------------------------------------

    def mul(self, a, b) -> np.ndarray:
        """Index of ``a * b`` (apply ``a`` first), broadcasting over arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape != b.shape:
            a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        imgs = self._flat[b.reshape(-1, 1) * self.degree + self.base_images[a.reshape(-1)]]
        return self._lookup(self._codes(imgs)).reshape(shape)

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            cols = np.stack([np.argmax(self.rows == b, axis=1) for b in self.base], axis=1)
            self._inv = self._lookup(self._codes(cols))
        return self._inv

    def conj(self, x, g) -> np.ndarray:
        """Index of ``g^-1 * x * g``, broadcasting."""
        g = np.asarray(g, dtype=np.int64)
        return self.mul(self.mul(self.inv[g], x), g)

    def power(self, x, n: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        out = np.full(x.shape, self.identity, dtype=np.int64)
        for _ in range(n):
            out = self.mul(out, x)
        return out

    @property
    def orders(self) -> np.ndarray:
        if self._orders is None:
            orders = np.zeros(self.order, dtype=np.int64)
            pending = np.arange(self.order)
            cur = pending.copy()
            k = 1
            while pending.size:
                hit = cur == self.identity
                orders[pending[hit]] = k
                pending, cur = pending[~hit], cur[~hit]
                cur = self.mul(cur, pending)
                k += 1
            self._orders = orders
        return self._orders

    @property
    def involutions(self) -> np.ndarray:
        return np.flatnonzero(self.orders == 2)

    def commutes(self, x, ys) -> np.ndarray:
        """Boolean mask: does ``x`` commute with each ``y``."""
        ys = np.asarray(ys, dtype=np.int64)
        return self.mul(x, ys) == self.mul(ys, x)

    def centralizer(self, x: int) -> np.ndarray:
        """Sorted indices of all elements commuting with ``x``."""
        return np.flatnonzero(self.commutes(x, np.arange(self.order)))

    # --- subgroups --------------------------------------------------------

    def closure(self, gens, limit: int | None = None) -> np.ndarray | None:
        """Sorted indices of the subgroup generated by ``gens``.

        Returns ``None`` as soon as more than ``limit`` elements are found.
        """
        gens = np.unique(np.asarray(gens, dtype=np.int64))
        gens = gens[gens != self.identity]
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int64)
        found = [frontier]
        count = 1
        while frontier.size and gens.size:
            prods = np.unique(self.mul(frontier[:, None], gens[None, :]))
            new = prods[~mask[prods]]
            if not new.size:
                break
            mask[new] = True
            count += new.size
            if limit is not None and count > limit:
                return None
            found.append(new)
            frontier = new
        return np.sort(np.concatenate(found))

    def subgroup(self, gens) -> np.ndarray:
        """Memoized :meth:`closure`; the result must not be modified."""
        key = tuple(sorted(set(int(g) for g in gens)))
        hit = self._subgroups.get(key)
        if hit is None:
            hit = self.closure(key)
            hit.setflags(write=False)
            self._subgroups[key] = hit
        return hit

    def generates(self, gens) -> bool:
        """Whether ``gens`` generate the whole group (by Lagrange, more than half suffices)."""
        key = tuple(sorted(set(int(g) for g in gens)))
        hit = self._generating.get(key)
        if hit is None:
            hit = self._subgroups.get(key) is not None and self._subgroups[key].size == self.order
            hit = hit or self.closure(key, limit=self.order // 2) is None
            self._generating[key] = hit
        return hit

    def generated_order(self, gens) -> int:
        """Order of ``<gens>``, without enumerating it when it is the whole group."""
        return self.order if self.generates(gens) else int(self.subgroup(gens).size)

    def to_group(self, indices) -> PermGroup:
        """A :class:`PermGroup` for a subgroup given by its element indices."""
        indices = np.asarray(indices, dtype=np.int64)
        gens = small_generating_set(self, indices)
        return PermGroup(self.perms(gens), self.degree, order=int(indices.size))


def small_generating_set(table: GroupTable, subgroup: np.ndarray) -> list[int]:
    """Greedy generators for a subgroup, scanning elements by decreasing order."""
    subgroup = np.asarray(subgroup, dtype=np.int64)
    target = subgroup.size
    candidates = subgroup[np.argsort(-table.orders[subgroup], kind="stable")]
    gens: list[int] = []
    current = np.array([table.identity])
    for x in candidates:
        if current.size == target:
            break
        if np.searchsorted(current, x) < current.size and current[np.searchsorted(current, x)] == x:
            continue
        gens.append(int(x))
        current = table.closure(gens)
    return gens

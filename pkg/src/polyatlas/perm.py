"""Permutations and permutation groups.

Points are ``0..d-1`` and products are read left to right, so
``(p * q)(k) == q(p(k))``: apply ``p`` first, then ``q``.  Every order,
commutation and conjugation check in the package relies on this.

A :class:`PermGroup` builds its stabilizer chain on first use.  The chain
comes from a seeded random Schreier-Sims pass followed by an exact
Schreier-generator test, so base, transversals and order are identical on
every run.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_ENUM_BOUND = 20_000_000


class TooLargeError(RuntimeError):
    """A computation would have to enumerate more elements than allowed."""


class Permutation:
    """An immutable permutation of ``0..d-1`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images) -> Permutation:
        p = object.__new__(cls)
        p.images = tuple(int(i) for i in images)
        p._hash = hash(p.images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(range(degree))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> Permutation:
        return cls._trusted(arr.tolist())

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        images = list(range(degree))
        body = text.replace(" ", "").replace(",", " ") if "," in text else text
        for cycle in re.findall(r"\(([^()]*)\)", body):
            pts = [int(x) for x in cycle.replace(",", " ").split()]
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle ({cycle})")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} out of range for degree {degree}")
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for k, v in enumerate(self.images):
            inv[v] = k
        return Permutation._trusted(inv)

    def conjugate(self, g: Permutation) -> Permutation:
        """``g^-1 * self * g``, i.e. relabel the points of ``self`` by ``g``."""
        return g.inverse() * self * g

    def commutes_with(self, other: Permutation) -> bool:
        return self * other == other * self

    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self.images))

    def order(self) -> int:
        return order_of_element(self)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            k = self.images[start]
            while k != start:
                cyc.append(k)
                seen.add(k)
                k = self.images[k]
            out.append(tuple(cyc))
        return out

    def support(self) -> list[int]:
        return [k for k, v in enumerate(self.images) if k != v]

    def to_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation({cyc or '()'}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation._trusted([qi[k] for k in p.images])


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def order_of_element(p: Permutation) -> int:
    """Least common multiple of the cycle lengths."""
    return math.lcm(1, *(len(c) for c in p.cycles()))


# ---------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("point", "gens", "orbit", "pos", "tinv")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.orbit = np.array([point], dtype=np.int64)
        self.pos = np.full(degree, -1, dtype=np.int64)
        self.pos[point] = 0
        self.tinv = np.arange(degree, dtype=np.int32)[None, :]

    def rebuild(self, degree: int) -> None:
        """Breadth-first orbit of the base point with inverse transversals.

        ``tinv[j]`` maps ``orbit[j]`` back to the base point.
        """
        pos = np.full(degree, -1, dtype=np.int64)
        pos[self.point] = 0
        inverses = [np.argsort(s).astype(np.int32) for s in self.gens]
        frontier = np.array([0], dtype=np.int64)
        count = 1
        orbit_flat = np.array([self.point], dtype=np.int64)
        tinv_flat = np.arange(degree, dtype=np.int32)[None, :]
        while frontier.size:
            new_rows = []
            for s, sinv in zip(self.gens, inverses):
                pts = s[orbit_flat[frontier]]
                fresh = pos[pts] < 0
                if not fresh.any():
                    continue
                pts, parents = pts[fresh], frontier[fresh]
                _, first = np.unique(pts, return_index=True)
                first.sort()
                pts, parents = pts[first], parents[first]
                idx = np.arange(count, count + pts.size)
                pos[pts] = idx
                count += pts.size
                orbit_flat = np.concatenate([orbit_flat, pts])
                tinv_flat = np.concatenate([tinv_flat, tinv_flat[parents][:, sinv]])
                new_rows.append(idx)
            frontier = np.concatenate(new_rows) if new_rows else np.empty(0, np.int64)
        self.orbit = orbit_flat
        self.pos = pos
        self.tinv = tinv_flat


class StabChain:
    """Base, strong generators and transversals of a permutation group."""

    def __init__(self, degree: int, levels: list[_Level]):
        self.degree = degree
        self.levels = levels

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    @property
    def orbit_sizes(self) -> list[int]:
        return [int(lvl.orbit.size) for lvl in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes)

    def strong_generators(self) -> list[np.ndarray]:
        return list(self.levels[0].gens) if self.levels else []

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Strip ``g`` through the chain; return the residue and the level reached."""
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            j = lvl.pos[g[lvl.point]]
            if j < 0:
                return g, i
            g = lvl.tinv[j][g]
        return g, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        residue, _ = self.sift(np.asarray(g))
        return bool((residue == np.arange(self.degree)).all())

    def transversal(self, i: int) -> np.ndarray:
        """Forward coset representatives of level ``i``: row ``j`` maps the base point to ``orbit[j]``."""
        tinv = self.levels[i].tinv
        fwd = np.empty_like(tinv)
        np.put_along_axis(fwd, tinv.astype(np.int64), np.arange(self.degree, dtype=tinv.dtype)[None, :], axis=1)
        return fwd


def _product_replacement(gens: list[np.ndarray], rng: random.Random):
    slots = [g.copy() for g in gens]
    while len(slots) < 10:
        slots.extend(g.copy() for g in gens)
    acc = np.arange(gens[0].size, dtype=np.int32)

    def step():
        nonlocal acc
        i, j = rng.sample(range(len(slots)), 2)
        if rng.random() < 0.5:
            slots[i] = slots[j][slots[i]]
        else:
            slots[i] = slots[i][slots[j]]
        acc = slots[i][acc]
        return acc

    for _ in range(40):
        step()
    return step


def build_chain(
    generators: Sequence[np.ndarray],
    degree: int,
    known_order: int | None = None,
    seed: int = 0,
    stable_rounds: int = 30,
) -> StabChain:
    """Schreier-Sims with a seeded random phase and exact verification.

    When ``known_order`` is given and reached by the random phase the chain
    is complete and the verification pass is skipped.
    """
    ident = np.arange(degree, dtype=np.int32)
    gens = [np.asarray(g, dtype=np.int32) for g in generators]
    gens = [g for g in gens if not (g == ident).all()]
    levels: list[_Level] = []
    chain = StabChain(degree, levels)
    if not gens:
        return chain

    def add(h: np.ndarray, lo: int, hi: int) -> None:
        if hi == len(levels):
            moved = np.flatnonzero(h != ident)
            levels.append(_Level(int(moved[0]), degree))
        for i in range(lo, hi + 1):
            levels[i].gens.append(h)
            levels[i].rebuild(degree)

    # deterministic seeding with the given generators, in order
    for g in gens:
        h, j = chain.sift(g)
        if not (h == ident).all():
            add(h, 0, j)

    rng = random.Random(seed)
    rand = _product_replacement(gens, rng)
    quiet = 0
    while quiet < stable_rounds:
        if known_order is not None and chain.order() == known_order:
            return chain
        h, j = chain.sift(rand())
        if (h == ident).all():
            quiet += 1
        else:
            quiet = 0
            add(h, 0, j)
    if known_order is not None and chain.order() == known_order:
        return chain

    _verify(chain, add, ident)
    return chain


def _verify(chain: StabChain, add, ident: np.ndarray) -> None:
    levels = chain.levels
    i = len(levels) - 1
    while i >= 0:
        lvl = levels[i]
        fwd = chain.transversal(i).astype(np.int64)
        failed = None
        for s in list(lvl.gens):
            targets = lvl.pos[s[lvl.orbit]]
            for lo in range(0, fwd.shape[0], 256):
                rows = fwd[lo:lo + 256]
                sg = np.take_along_axis(lvl.tinv[targets[lo:lo + 256]], s[rows].astype(np.int64), axis=1)
                for r in np.flatnonzero((sg != ident).any(axis=1)):
                    h, j = chain.sift(sg[r], i + 1)
                    if not (h == ident).all():
                        failed = (h, j)
                        break
                if failed:
                    break
            if failed:
                break
        if failed:
            h, j = failed
            add(h, i + 1, j)
            i = min(j, len(levels) - 1)
        else:
            i -= 1


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built lazily; pass ``order`` when the order is
    already known to let construction stop early.
    """

    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        *,
        order: int | None = None,
        name: str | None = None,
    ):
        self.generators = list(generators)
        if degree is None:
            if not self.generators:
                raise ValueError("degree required for a group without generators")
            degree = self.generators[0].degree
        for g in self.generators:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.name = name
        self._known_order = order
        self._chain: StabChain | None = None

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls([], degree)

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            arrays = [g.to_array() for g in self.generators]
            self._chain = build_chain(arrays, self.degree, known_order=self._known_order)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return self.chain.contains(p.to_array())

    def elements(self, bound: int = DEFAULT_ENUM_BOUND) -> Iterator[Permutation]:
        """Every element once, lexicographic in the transversal index tuple.

        The tuple ``(i0, i1, ...)`` gives ``u_k[ik] * ... * u_1[i1] * u_0[i0]``
        where ``u_l`` is the transversal of level ``l``.
        """
        if self.order() > bound:
            raise TooLargeError(f"group of order {self.order()} is too large to enumerate (bound {bound})")
        chain = self.chain
        fwd = [chain.transversal(i).astype(np.int64) for i in range(len(chain.levels))]
        if not fwd:
            yield self.identity()
            return
        for idx in itertools.product(*(range(t.shape[0]) for t in fwd)):
            g = fwd[-1][idx[-1]]
            for level in range(len(fwd) - 2, -1, -1):
                g = fwd[level][idx[level]][g]
            yield Permutation._trusted(g.tolist())

    def element_array(self, bound: int = DEFAULT_ENUM_BOUND) -> np.ndarray:
        """All elements as rows of an array, same order as :meth:`elements`."""
        if self.order() > bound:
            raise TooLargeError(f"group of order {self.order()} is too large to enumerate (bound {bound})")
        chain = self.chain
        dtype = np.uint8 if self.degree <= 256 else (np.uint16 if self.degree <= 65536 else np.int32)
        if not chain.levels:
            return np.arange(self.degree, dtype=dtype)[None, :]
        levels = [chain.transversal(i).astype(dtype) for i in range(len(chain.levels))]
        acc = levels[-1]
        for t in reversed(levels[:-1]):
            # row (u, a) is acc[a] * t[u], with the shallower level index most significant
            acc = t[:, acc].reshape(-1, self.degree)
        return np.ascontiguousarray(acc)

    def subgroup(self, gens: Iterable[Permutation], check: bool = True, order: int | None = None) -> PermGroup:
        gens = list(gens)
        if check:
            for g in gens:
                if g not in self:
                    raise ValueError(f"{g!r} is not an element of the ambient group")
        return PermGroup(gens, self.degree, order=order)

    def intersection(self, other: PermGroup, bound: int = DEFAULT_ENUM_BOUND) -> PermGroup:
        """Enumerate the smaller factor and keep members of the larger."""
        if other.degree != self.degree:
            raise ValueError("groups act on different degrees")
        small, large = (self, other) if self.order() <= other.order() else (other, self)
        if small.order() > bound:
            raise TooLargeError(
                f"intersection needs to enumerate a group of order {small.order()} (bound {bound})"
            )
        rows = small.element_array(bound).astype(np.int64)
        keep = [r for r in rows if large.chain.contains(r)]
        return group_from_elements([Permutation._trusted(r.tolist()) for r in keep], self.degree)

    def equals(self, other: PermGroup) -> bool:
        return (
            self.order() == other.order()
            and all(g in other for g in self.generators)
            and all(g in self for g in other.generators)
        )

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orb = [start]
            seen[start] = True
            for k in orb:
                for g in self.generators:
                    img = g.images[k]
                    if not seen[img]:
                        seen[img] = True
                        orb.append(img)
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} gens={len(self.generators)}>"


def group_from_elements(elements: Sequence[Permutation], degree: int) -> PermGroup:
    """The group generated by ``elements``, keeping only generators that enlarge it."""
    gens: list[Permutation] = []
    group = PermGroup([], degree)
    for x in elements:
        if not group.contains(x):
            gens.append(x)
            group = PermGroup(gens, degree)
    return group

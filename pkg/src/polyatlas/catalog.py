"""Catalog entries and their JSON-lines serialization."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable

from .dedup import are_isomorphic
from .perm import PermGroup, Permutation
from .sggi import GeneratorTuple, dual, is_string, is_string_c_group, parabolic_indices, schlafli
from .table import GroupTable


@dataclass(frozen=True)
class CatalogEntry:
    group_name: str
    rank: int
    schlafli: list[int]
    generators: list[list[int]]
    self_dual: bool
    parabolic_orders: list[int]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> CatalogEntry:
        d = json.loads(line)
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})

    def sort_key(self):
        return (self.rank, self.generators)


def entry_from_tuple(name: str, t: GeneratorTuple) -> CatalogEntry:
    return CatalogEntry(
        group_name=name,
        rank=t.rank,
        schlafli=list(schlafli(t)),
        generators=[list(p.images) for p in t.perms],
        self_dual=are_isomorphic(t, dual(t)),
        parabolic_orders=[int(parabolic_indices(t, {i}).size) for i in range(t.rank)],
    )


def entries_from_oracle(name: str, classes) -> list[CatalogEntry]:
    out = []
    for c in classes:
        t = [Permutation(g) for g in c.gens]
        out.append(CatalogEntry(
            group_name=name,
            rank=len(t),
            schlafli=[(a * b).order() for a, b in zip(t, t[1:])],
            generators=[list(g) for g in c.gens],
            self_dual=c.self_dual,
            parabolic_orders=list(c.parabolic_orders),
        ))
    return sorted(out, key=CatalogEntry.sort_key)


def dumps(entries: Iterable[CatalogEntry]) -> str:
    return "".join(e.to_json() + "\n" for e in sorted(entries, key=CatalogEntry.sort_key))


def write_catalog(entries: Iterable[CatalogEntry], path: str | Path) -> None:
    Path(path).write_text(dumps(entries))


def read_catalog(path: str | Path) -> list[CatalogEntry]:
    return [CatalogEntry.from_json(line) for line in Path(path).read_text().splitlines() if line.strip()]


def verify_entry(entry: CatalogEntry, table: GroupTable) -> bool:
    """Re-check a parsed entry: string property, generation, intersection property and recorded data."""
    try:
        t = GeneratorTuple.from_perms(table, [Permutation(g) for g in entry.generators])
    except KeyError:
        return False
    return (
        is_string(t)
        and table.generates(t.gens)
        and is_string_c_group(t)
        and list(schlafli(t)) == entry.schlafli
        and entry.rank == t.rank
        and [int(parabolic_indices(t, {i}).size) for i in range(t.rank)] == entry.parabolic_orders
    )

"""Command-line front end: classify a group and write its catalog.

Examples::

    polyatlas --group M12 --ranks all --out m12.jsonl
    polyatlas --group A5 --oracle --max-rank 4
    polyatlas --group J1 --dump-classes
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import catalog
from .analysis import conjugacy_classes, involution_classes, table_of
from .dedup import dedup_catalog, outer_automorphisms
from .fixtures import FixtureError, resolve_group
from .oracle import ORACLE_BOUND, oracle_catalog
from .perm import DEFAULT_ENUM_BOUND, TooLargeError
from .rank3 import rank3_representations
from .rank_high import high_representations

EXIT_PARSE = 2
EXIT_TOO_LARGE = 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyatlas", description=__doc__.split("\n\n")[0])
    p.add_argument("--group", required=True, help="group file, or the name of a shipped fixture (M12, J1, A5, ...)")
    p.add_argument("--ranks", choices=["3", "high", "all"], default="all")
    p.add_argument("--skip-c2", action="store_true",
                   help="skip the rank-3 intersection test; asserts the group has no nontrivial cyclic normal subgroup")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=Path, help="write the JSONL catalog here (default: standard output)")
    p.add_argument("--max-enum", type=int, default=DEFAULT_ENUM_BOUND, help="element enumeration bound")
    p.add_argument("--dump-classes", action="store_true", help="print the conjugacy class table and exit")
    p.add_argument("--oracle", action="store_true", help="use the exhaustive reference search (order <= %d)" % ORACLE_BOUND)
    p.add_argument("--max-rank", type=int, default=None, help="largest rank to search")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def dump_classes(table, out) -> None:
    cc = conjugacy_classes(table)
    out.write(f"{'class':>5} {'order':>5} {'size':>10} {'centralizer':>12}\n")
    for c in range(len(cc)):
        out.write(f"{c:>5} {cc.orders[c]:>5} {cc.sizes[c]:>10} {table.order // cc.sizes[c]:>12}\n")
    for k, cls in enumerate(involution_classes(table)):
        out.write(f"involution class {k}: size {cls.member_indices.size}, "
                  f"commuting involutions of the representative {cls.commuting_indices.size}\n")


def run_classify(args, G, out_text) -> list[catalog.CatalogEntry]:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    table = table_of(G, args.max_enum)
    conjugacy_classes(table)
    involution_classes(table)
    outer_automorphisms(table)
    timings["classes"] = time.perf_counter() - t0

    found3, found_high = [], []
    if args.ranks in ("3", "all") and (args.max_rank is None or args.max_rank >= 3):
        t0 = time.perf_counter()
        found3 = rank3_representations(table, skip_c2=args.skip_c2, threads=args.threads)
        timings["rank-3"] = time.perf_counter() - t0
    if args.ranks in ("high", "all") and (args.max_rank is None or args.max_rank >= 4):
        t0 = time.perf_counter()
        found_high = high_representations(table, threads=args.threads, max_rank=args.max_rank)
        timings["rank-high"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    reps = dedup_catalog(found3) + dedup_catalog(found_high)
    name = G.name or "G"
    entries = [catalog.entry_from_tuple(name, t) for t in reps]
    timings["dedup"] = time.perf_counter() - t0

    n3 = sum(e.rank == 3 for e in entries)
    nhigh = sum(e.rank > 3 for e in entries)
    out_text.write(f"{'group':<10} {'order':>16} {'# rank>3':>9} {'# rank3':>8}\n")
    out_text.write(f"{name:<10} {table.order:>16} {nhigh:>9} {n3:>8}\n")
    out_text.write(f"rank>3: {nhigh}, rank3: {n3}\n")
    for phase, secs in timings.items():
        out_text.write(f"  {phase:<10} {secs:9.2f}s\n")
    return entries


def run_oracle(args, G) -> list[catalog.CatalogEntry]:
    max_rank = args.max_rank or 4
    classes = oracle_catalog(G, max_rank=max_rank, min_rank=3)
    return catalog.entries_from_oracle(G.name or "G", classes)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    # the summary goes to stderr when the catalog itself is written to stdout
    summary = sys.stdout if args.out else sys.stderr
    try:
        G = resolve_group(args.group)
        if args.dump_classes:
            dump_classes(table_of(G, args.max_enum), sys.stdout)
            return 0
        if args.oracle:
            entries = run_oracle(args, G)
            summary.write(f"oracle: {sum(e.rank == 3 for e in entries)} of rank 3, "
                          f"{sum(e.rank > 3 for e in entries)} of rank > 3\n")
        else:
            entries = run_classify(args, G, summary)
    except FixtureError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLargeError as exc:
        print(f"error: too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    text = catalog.dumps(entries)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

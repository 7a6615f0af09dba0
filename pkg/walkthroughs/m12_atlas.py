"""Classify every regular polytope of the Mathieu group M12.

Runs both searches, groups the result by rank and Schlafli type, and
writes the catalog as JSON lines if --out is given.
"""

import argparse
import time
from collections import Counter

from polyatlas import (
    classify_high,
    classify_rank3,
    entry_from_tuple,
    load_fixture,
    schlafli,
    table_of,
    write_catalog,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="M12")
    ap.add_argument("--out")
    args = ap.parse_args()

    t0 = time.perf_counter()
    G = load_fixture(args.group)
    tab = table_of(G)
    print(f"{args.group}: order {G.order()}, degree {G.degree}, table built in {time.perf_counter() - t0:.1f}s")

    r3 = classify_rank3(tab)
    high = classify_high(tab)
    print(f"rank 3: {len(r3)}, rank > 3: {len(high)}, total {time.perf_counter() - t0:.1f}s")

    types = Counter((t.rank, str(schlafli(t))) for t in r3 + high)
    for (rank, typ), n in sorted(types.items()):
        print(f"  rank {rank}  {typ:<14} x{n}")

    if args.out:
        write_catalog([entry_from_tuple(args.group, t) for t in r3 + high], args.out)
        print("wrote", args.out)


if __name__ == "__main__":
    main()

"""Compare the fast searches with brute force on a small group.

The oracle tries every tuple of involutions, keeps the string C-groups,
and merges them under the full automorphism group and reversal. The fast
path has to land on exactly the same set of canonical forms.
"""

import argparse

from polyatlas import canonical_form, classify_high, classify_rank3, load_fixture, table_of
from polyatlas.oracle import oracle_classes


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="S5")
    ap.add_argument("--max-rank", type=int, default=5)
    args = ap.parse_args()

    tab = table_of(load_fixture(args.group))
    fast = {canonical_form(t) for t in classify_rank3(tab) + classify_high(tab)}
    slow = set(oracle_classes(tab.group, max_rank=args.max_rank, min_rank=3))
    fast = {f for f in fast if len(f) <= args.max_rank}
    print(f"{args.group}: fast {len(fast)}, oracle {len(slow)}, equal: {fast == slow}")
    for f in sorted(slow - fast):
        print("  missed", f)
    for f in sorted(fast - slow):
        print("  extra ", f)


if __name__ == "__main__":
    main()

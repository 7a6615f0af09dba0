"""The tetrahedron and the hemicube inside S4.

S4 acts on four points. Its rank-three string C-group representations are
the tetrahedron {3,3} and the hemi-octahedron {3,4}_3, which is listed
in place of its dual, the hemicube.
This script finds both, prints face counts, and checks duality by hand.
"""

import argparse

from polyatlas import (
    GeneratorTuple,
    Permutation,
    build_polytope,
    classify_rank3,
    dual,
    is_string_c_group,
    load_fixture,
    schlafli,
    table_of,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.parse_args()

    tab = table_of(load_fixture("S4"))
    print(f"S4 has order {tab.order} and {tab.involutions.size} involutions")

    # the Coxeter generators of the tetrahedron, written directly
    rho = [Permutation.from_cycles(c, 4) for c in ["(0 1)", "(1 2)", "(2 3)"]]
    tet = GeneratorTuple.from_perms(tab, rho)
    print("hand-built tuple:", schlafli(tet), "string C-group:", is_string_c_group(tet))

    for t in classify_rank3(tab):
        poly = build_polytope(t)
        print(f"type {schlafli(t)}: faces {poly.face_counts}, flags {poly.flag_count()}, "
              f"dual type {schlafli(dual(t))}")


if __name__ == "__main__":
    main()

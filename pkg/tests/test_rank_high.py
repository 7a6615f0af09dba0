import itertools

import numpy as np
import pytest

from conftest import SMALL, cyc, high_catalog, table
from polyatlas.analysis import involution_classes
from polyatlas.dedup import are_isomorphic, canonical_form, dual, fingerprint
from polyatlas.oracle import oracle_classes
from polyatlas.perm import PermGroup
from polyatlas.rank_high import classify_high, enumerate_inner, insert_rho1
from polyatlas.sggi import GeneratorTuple, check_c2_bruteforce, is_string, parabolic_indices, schlafli
from polyatlas.table import GroupTable


def contains(sorted_indices, x):
    i = np.searchsorted(sorted_indices, x)
    return i < sorted_indices.size and sorted_indices[i] == x


def brute_inner(H, r0, max_len):
    """All tails (r2, ..., rk), k >= 3, meeting the inner conditions, as least conjugates under H."""
    invs = [int(x) for x in H.involutions if x != r0]
    out = set()
    everything = np.arange(H.order)
    for k in range(2, max_len + 1):
        for tail in itertools.permutations(invs, k):
            t = GeneratorTuple(H, (r0,) + tail)
            if not is_string(t) or contains(H.subgroup(tail), r0):
                continue
            if not check_c2_bruteforce(t):
                continue
            conj = H.conj(np.array(tail)[None, :], everything[:, None])
            out.add(min(tuple(int(v) for v in row) for row in conj))
    return out


@pytest.mark.parametrize("name", SMALL)
def test_matches_oracle(name):
    tab = table(name)
    got = {canonical_form(t) for t in classify_high(tab)}
    want = set(oracle_classes(tab.group, max_rank=6, min_rank=4))
    assert got == want


def test_s5_has_only_the_simplex():
    reps = classify_high(table("S5"))
    assert [tuple(schlafli(t)) for t in reps] == [(3, 3, 3)]


def test_inner_without_other_involutions_is_empty():
    H = GroupTable(PermGroup([cyc("(0 1)", 5), cyc("(2 3 4)", 5)]))
    r0 = H.index(cyc("(0 1)", 5))
    assert enumerate_inner(H, r0) == []


@pytest.mark.parametrize("name,which", [("C2xC2xC2", 0), ("S5", 0), ("S5", 1), ("S4", 0), ("S4", 1)])
def test_inner_matches_brute_force(name, which):
    G = table(name)
    cls = involution_classes(G)[which]
    H = GroupTable(G.to_group(G.centralizer(cls.rep_index)))
    r0 = H.index(G.perm(cls.rep_index))
    got = {t.gens[1:] for t in enumerate_inner(H, r0)}
    assert got == brute_inner(H, r0, max_len=4)


def test_insert_rho1_on_s5():
    G = table("S5")
    partial = tuple(G.index(cyc(c, 5)) for c in ["(3 4)", "(0 1)", "(1 2)"])
    done = insert_rho1(G, partial)
    assert done
    for t in done:
        assert schlafli(t) == (3, 3, 3)
        assert t.gens[0] == partial[0] and t.gens[2:] == partial[1:]


def test_insert_rho1_rejects_non_generating():
    G = table("S5")
    # everything commuting with (3 4) that could complete this lives in a proper subgroup
    partial = tuple(G.index(cyc(c, 5)) for c in ["(0 1)", "(2 3)", "(0 1)(2 3)"])
    for t in insert_rho1(G, partial):
        assert G.generates(t.gens)


@pytest.mark.parametrize("name", ["S5", "M12"])
def test_outputs_factor_through_the_centralizer(name):
    tab = table(name)
    for t in high_catalog(name):
        r0, tail = t.gens[0], t.gens[2:]
        G1 = parabolic_indices(t, {1})
        K = tab.subgroup(tail)
        # <r0, r2, ...> is the direct product <r0> x <r2, ...>
        assert 2 * K.size == G1.size
        assert not contains(K, r0)
        assert np.all(tab.commutes(r0, K))
        assert tab.generates(t.gens)
        if tab.order <= 2000:
            assert check_c2_bruteforce(t)


def test_chain_groups_grow_monotonically():
    tab = table("M12")
    for t in high_catalog("M12"):
        sizes = [tab.subgroup(t.gens[2:k]).size for k in range(3, t.rank + 1)]
        assert sizes == sorted(set(sizes))


def test_no_representation_appears_twice():
    reps = high_catalog("M12")
    assert len(reps) == 14
    for i, s in enumerate(reps):
        for t in reps[i + 1:]:
            if fingerprint(s) == fingerprint(t):
                assert not are_isomorphic(s, t) and not are_isomorphic(s, dual(t))


def test_max_rank_bounds_the_search():
    tab = table("S5")
    assert classify_high(tab, max_rank=3) == []
    assert len(classify_high(tab, max_rank=4)) == 1


def test_thread_count_does_not_change_output():
    tab = table("M12")
    assert classify_high(tab, threads=3) == high_catalog("M12")


def test_m11_has_none():
    assert classify_high(table("M11")) == []

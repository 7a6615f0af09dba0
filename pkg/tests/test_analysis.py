import itertools

import numpy as np
import pytest

from conftest import SMALL, SPORADIC, cyc, group, table
from polyatlas.analysis import (
    centralizer,
    conjugacy_classes,
    dihedral_class_reps,
    element_class_reps,
    inverting_involutions,
    involution_classes,
    normalizer_of_cyclic,
    reduce_degree,
)
from polyatlas.perm import PermGroup, Permutation


def brute_classes(G):
    """Conjugacy classes by direct conjugation of every element by every element."""
    elems = list(G.elements())
    left = set(elems)
    out = []
    while left:
        x = min(left)
        cls = {x.conjugate(g) for g in elems}
        out.append(cls)
        left -= cls
    return out


def brute_dihedral_subgroups(G):
    """Every subgroup generated by two involutions whose product has order at least 3."""
    invs = [x for x in G.elements() if x.order() == 2]
    subs = set()
    for a, b in itertools.combinations(invs, 2):
        if (a * b).order() >= 3:
            subs.add(frozenset(G.subgroup([a, b]).elements()))
    return subs


# --- classes ---------------------------------------------------------------


def test_involution_classes_examples():
    C3 = PermGroup([cyc("(0 1 2)", 3)])
    assert involution_classes(C3) == []
    assert len(involution_classes(group("S4"))) == 2
    assert len(involution_classes(group("M12"))) == 2
    assert sorted(c.member_indices.size for c in involution_classes(group("S4"))) == [3, 6]


def test_element_class_reps_examples():
    assert element_class_reps(PermGroup.trivial(3)) == [(Permutation.identity(3), 1)]
    reps = element_class_reps(group("S4"))
    assert len(reps) == 5
    big = [p for p, o in reps if o >= 3]
    assert sorted(len(p.support()) for p in big) == [3, 4]


@pytest.mark.parametrize("name", ["S3", "S4", "S5", "A5", "D8", "PSL27"])
def test_classes_match_brute_force(name):
    G = group(name)
    tab = table(name)
    cc = conjugacy_classes(tab)
    got = sorted(sorted(tab.perms(cc.members(c))) for c in range(len(cc)))
    want = sorted(sorted(cls) for cls in brute_classes(G))
    assert got == want
    # the class reps are listed by element order
    reps = element_class_reps(G)
    assert [o for _, o in reps] == sorted(o for _, o in reps)


@pytest.mark.parametrize("name", SMALL + SPORADIC)
def test_class_equation_and_centralizer_orders(name):
    tab = table(name)
    cc = conjugacy_classes(tab)
    assert cc.sizes.sum() == tab.order
    for c in range(len(cc)):
        rep = int(cc.reps[c])
        # centralizer counted directly, by commutation with every element
        assert cc.sizes[c] * tab.centralizer(rep).size == tab.order
    invs = sum(c.member_indices.size for c in involution_classes(tab))
    assert invs == tab.involutions.size


@pytest.mark.parametrize("name", ["S4", "A5", "PSL27", "M11"])
def test_orbit_stabilizer_centralizer_agrees(name):
    G = group(name)
    tab = table(name)
    cc = conjugacy_classes(tab)
    for c in range(len(cc)):
        x = tab.perm(int(cc.reps[c]))
        C = centralizer(G, x)
        assert C.order() * cc.sizes[c] == G.order()
        assert all(x.commutes_with(g) for g in C.generators)


def test_witnesses_conjugate_reps_to_members():
    tab = table("M12")
    cc = conjugacy_classes(tab)
    rng = np.random.default_rng(0)
    xs = rng.integers(0, tab.order, size=500)
    reps = cc.reps[cc.labels[xs]]
    assert np.array_equal(tab.conj(reps, cc.witness[xs]), xs)


def test_involution_class_invariants():
    for name in ["S5", "PSL27", "M12"]:
        tab = table(name)
        for cls in involution_classes(tab):
            members = cls.member_indices
            assert np.all(tab.orders[members] == 2)
            for g in tab.gens:
                assert np.array_equal(np.sort(tab.conj(members, g)), np.sort(members))
            com = cls.commuting_indices
            assert np.all(tab.orders[com] == 2)
            assert np.all(tab.commutes(cls.rep_index, com))
            assert cls.rep_index not in com


def test_commuting_sets_transport_to_any_member():
    tab = table("M12")
    for cls in involution_classes(tab):
        for x in cls.member_indices[::37]:
            x = int(x)
            got = np.sort(cls.commuting_with(x))
            invs = tab.involutions
            want = invs[tab.commutes(x, invs) & (invs != x)]
            assert np.array_equal(got, want)


# --- centralizers and normalizers ------------------------------------------


def test_centralizer_examples():
    S4 = group("S4")
    assert centralizer(S4, Permutation.identity(4)).order() == 24
    assert centralizer(S4, cyc("(0 1)", 4)).order() == 4
    assert centralizer(S4, cyc("(0 1)(2 3)", 4)).order() == 8


def test_normalizer_examples():
    S4 = group("S4")
    assert normalizer_of_cyclic(S4, cyc("(0 1 2)", 4)).order() == 6
    assert normalizer_of_cyclic(S4, cyc("(0 1 2 3)", 4)).order() == 8
    C5 = group("C5")
    assert normalizer_of_cyclic(C5, C5.generators[0]).order() == 5


def test_inverting_involutions_examples():
    S3 = group("S3")
    g = cyc("(0 1 2)", 3)
    hs = inverting_involutions(S3, g)
    assert sorted(hs) == sorted([cyc("(0 1)", 3), cyc("(1 2)", 3), cyc("(0 2)", 3)])
    C7 = PermGroup([cyc("(0 1 2 3 4 5 6)", 7)])
    assert inverting_involutions(C7, C7.generators[0]) == []
    S4 = group("S4")
    g = cyc("(0 1 2 3)", 4)
    N = normalizer_of_cyclic(S4, g)
    hs = inverting_involutions(N, g)
    assert len(hs) == 4
    for h in hs:
        assert h.order() == 2 and g.conjugate(h) == g.inverse()
    assert sorted(len(h.support()) for h in hs) == [2, 2, 4, 4]


# --- dihedral subgroups ----------------------------------------------------


def test_dihedral_examples():
    assert dihedral_class_reps(group("C5")) == []
    assert len(dihedral_class_reps(group("S3"))) == 1
    reps = dihedral_class_reps(group("S4"))
    # one class of S3's fixing a point and one class of D8's
    assert sorted(len(D) for D in reps) == [6, 8]
    for D in reps:
        assert D.rotation.conjugate(D.reflection) == D.rotation.inverse()
        assert len(D) == 2 * D.rotation.order()
        assert D.subgroup.order() == len(D)


@pytest.mark.parametrize("name", ["S4", "S5", "A5", "PSL27", "D8"])
def test_dihedral_reps_cover_all_dihedral_subgroups(name):
    G = group(name)
    tab = table(name)
    elems = list(G.elements())
    got = set()
    for D in dihedral_class_reps(tab):
        sub = D.subgroup.elements()
        sub = list(sub)
        for g in elems:
            got.add(frozenset(x.conjugate(g) for x in sub))
    assert got == brute_dihedral_subgroups(G)


@pytest.mark.parametrize("name", ["S4", "S5", "A5", "PSL27"])
def test_one_dihedral_rep_per_class(name):
    G = group(name)
    elems = list(G.elements())
    subs = brute_dihedral_subgroups(G)
    classes = {frozenset(frozenset(x.conjugate(g) for x in sub) for g in elems) for sub in subs}
    reps = dihedral_class_reps(table(name))
    assert len(reps) == len(classes)


# --- degree reduction ------------------------------------------------------


def test_reduce_degree_transitive_is_identity():
    G = group("M12")
    K, red = reduce_degree(G)
    assert K is G


def test_reduce_degree_to_faithful_orbit():
    H = PermGroup([cyc("(0 1 2)", 6), cyc("(0 1)", 6)])
    K, red = reduce_degree(H)
    assert K.degree == 3 and K.order() == 6
    a, b = H.generators
    assert red.to_reduced(a * b) == red.to_reduced(a) * red.to_reduced(b)
    for x in H.elements():
        assert red.to_original(red.to_reduced(x)) == x


def test_reduce_degree_on_m12_involution_centralizer():
    tab = table("M12")
    for cls in involution_classes(tab):
        H = tab.to_group(tab.centralizer(cls.rep_index))
        K, red = reduce_degree(H)
        assert K.order() == H.order()
        assert K.degree <= 12
        gens = H.generators
        for a, b in itertools.product(gens, gens):
            assert red.to_reduced(a * b) == red.to_reduced(a) * red.to_reduced(b)
    orders = sorted(tab.centralizer(c.rep_index).size for c in involution_classes(tab))
    assert orders == [192, 240]

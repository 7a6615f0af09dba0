import pytest

from conftest import SMALL, rank3_catalog, table
from polyatlas.analysis import conjugacy_classes
from polyatlas.dedup import canonical_form, dual
from polyatlas.oracle import oracle_classes
from polyatlas.rank3 import classify_rank3, rank3_candidates
from polyatlas.sggi import check_c2_bruteforce, is_string, is_string_c_group


@pytest.mark.parametrize("name", SMALL)
def test_matches_oracle(name):
    tab = table(name)
    got = {canonical_form(t) for t in classify_rank3(tab)}
    want = set(oracle_classes(tab.group, max_rank=3, min_rank=3))
    assert got == want


def test_a5_count():
    reps = classify_rank3(table("A5"))
    assert len(reps) == 2 == len(oracle_classes(table("A5").group, max_rank=3))
    assert sorted(tuple(sorted(t.pair_orders[[0, 1], [1, 2]])) for t in reps) == [(3, 5), (5, 5)]


@pytest.mark.parametrize("name", SMALL)
def test_outputs_are_generating_string_c_groups(name):
    tab = table(name)
    for t in classify_rank3(tab):
        assert t.rank == 3
        assert is_string(t)
        assert tab.generates(t.gens)
        assert is_string_c_group(t) and check_c2_bruteforce(t)


@pytest.mark.parametrize("name", ["A5", "PSL27", "M11", "M12"])
def test_skip_c2_agrees_on_simple_groups(name):
    tab = table(name)
    assert classify_rank3(tab, skip_c2=True) == rank3_catalog(name)


def test_skip_c2_overcounts_with_a_cyclic_normal_subgroup():
    # the hexagon group has a central involution, so the shortcut does not apply
    tab = table("D12")
    assert len(classify_rank3(tab)) == len(oracle_classes(tab.group, max_rank=3)) == 1
    assert len(classify_rank3(tab, skip_c2=True)) > 1


def test_candidates_are_in_canonical_frame():
    tab = table("M12")
    triples = rank3_candidates(tab)
    assert triples == sorted(set(triples))
    cc = conjugacy_classes(tab)
    assert all(cc.reps[cc.labels[a]] == a for a, _, _ in triples)


def test_no_output_is_the_dual_of_another():
    reps = rank3_catalog("M12")
    forms = [canonical_form(t) for t in reps]
    assert len(set(forms)) == len(forms)
    assert all(canonical_form(dual(t)) == f for t, f in zip(reps, forms))


def test_thread_count_does_not_change_output():
    tab = table("M12")
    assert classify_rank3(tab, threads=4) == rank3_catalog("M12")


def test_published_counts():
    assert len(classify_rank3(table("M11"))) == 0
    assert len(rank3_catalog("M12")) == 23

import sys
from functools import lru_cache

import numpy as np
import pytest

from polyatlas.analysis import table_of
from polyatlas.fixtures import load_fixture
from polyatlas.perm import Permutation
from polyatlas.sggi import GeneratorTuple

SMALL = ["S3", "S4", "S5", "A5", "D8", "D12", "C2xC2xC2", "PSL27", "C5"]
SPORADIC = ["M11", "M12", "M22", "J1"]


@lru_cache(maxsize=None)
def group(name):
    return load_fixture(name)


@lru_cache(maxsize=None)
def table(name):
    return table_of(group(name))


@lru_cache(maxsize=None)
def high_catalog(name):
    from polyatlas.rank_high import classify_high
    return classify_high(table(name))


@lru_cache(maxsize=None)
def rank3_catalog(name):
    from polyatlas.rank3 import classify_rank3
    return classify_rank3(table(name))


def cyc(text, degree):
    return Permutation.from_cycles(text, degree)


def tup(tab, *cycles):
    return GeneratorTuple.from_perms(tab, [cyc(c, tab.degree) for c in cycles])


def random_string_tuple(tab, rank, rng):
    """A random string tuple of involutions, or None when the walk gets stuck."""
    invs = tab.involutions
    gens = [int(rng.choice(invs))]
    while len(gens) < rank:
        cand = invs
        for x in gens[:-1]:
            cand = cand[tab.commutes(x, cand)]
        cand = cand[~np.isin(cand, gens)]
        if not cand.size:
            return None
        gens.append(int(rng.choice(cand)))
    return GeneratorTuple(tab, tuple(gens))


@pytest.fixture
def S4():
    return table("S4")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])

import numpy as np
import pytest

from solvlin import families, grp, oracles
from solvlin.errors import ResourceError, UsageError

SMALL = ["S3", "S4", "SL23", "GL22", "GL23", "Q8", "D8", "G24", "G024", "G32", "Z11_5", "Z7_3", "WR"]


@pytest.mark.parametrize("key", SMALL)
def test_classes_partition_and_divide_order(group, key):
    G = group(key)
    sizes = [len(c) for c in G.classes]
    assert sum(sizes) == G.order
    assert all(G.order % s == 0 for s in sizes)
    assert sorted(np.concatenate(G.classes).tolist()) == list(range(G.order))


@pytest.mark.parametrize("key", SMALL)
def test_normal_subgroups_match_brute_force(group, key):
    G = group(key)
    ours = sorted(N.tolist() for N in grp.normal_subgroups(G))
    brute = sorted(N.tolist() for N in oracles.normal_subgroups_brute(G))
    assert ours == brute


@pytest.mark.parametrize("key", SMALL)
def test_p_core_matches_sylow_intersection(group, key):
    G = group(key)
    for p in grp.factorize(G.order):
        assert sorted(grp.p_core(G, p).tolist()) == oracles.p_core_by_sylows(G, p).tolist()


@pytest.mark.parametrize("key", SMALL)
def test_fitting_series_is_nilpotent_and_normal(group, key):
    G = group(key)
    series = grp.fitting_series(G)
    assert len(series[-1]) == G.order
    for lo, hi in zip(series, series[1:]):
        assert grp.is_normal(G, hi)
        Q = grp.quotient(G, lo)
        assert grp.is_nilpotent(Q.group.subgroup_group(np.unique(Q.proj[hi])))


def test_known_invariants(group):
    assert grp.derived_length(group("S4")) == 3
    assert grp.derived_length(group("SL23")) == 3
    assert len(grp.fitting(group("S4"))) == 4
    assert len(grp.fitting(group("SL23"))) == 8
    assert grp.fitting_height(group("S4")) == 3
    assert len(grp.center(group("SL23"))) == 2
    assert grp.is_nilpotent(group("Q8"))
    assert not grp.is_nilpotent(group("S3"))


def test_sylow_orders(group):
    G = group("GL23")
    assert len(grp.sylow(G, 2)) == 16
    assert len(grp.sylow(G, 3)) == 3


def test_census_counts(group):
    G = group("S4")
    c = grp.census(G)
    assert c.nep == {2: 9, 3: 8}
    assert c.nsp == {2: 9, 3: 4}
    assert c.non_prime == 6 and c.identity == 1


def test_quotient_orders(group):
    G = group("SL23")
    Q = grp.quotient(G, grp.center(G))
    assert Q.group.order == 12
    with pytest.raises(UsageError):
        grp.quotient(group("S4"), [0, int(np.nonzero(group("S4").orders == 2)[0][0])])


def test_spec_roundtrip(group):
    for key in ["SL23", "Z11_5", "MIXED"]:
        G = group(key)
        H = grp.group_from_spec(grp.group_to_spec(G))
        assert H.order == G.order


def test_order_cap():
    with pytest.raises(ResourceError):
        families.gl(3, 3).group(cap=1000)


def test_solvability():
    assert grp.is_solvable(families.symmetric(4).group())
    assert not grp.is_solvable(families.symmetric(5).group())

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvlin import action, families, oracles
from solvlin.action import ModuleAction
from solvlin.errors import ResourceError, UsageError

MATRIX = ["SL23", "GL22", "GL23", "Q8", "D8", "G24", "G024", "G32", "G25", "WR", "E3_648", "MIXED"]


@pytest.mark.parametrize("key", MATRIX)
def test_orbit_count_three_ways(group, key):
    A = ModuleAction(group(key))
    assert len(A.orbits) == A.burnside_count() == oracles.orbit_count_brute(A)
    assert int(A.orbits.sizes.sum()) == A.size


@pytest.mark.parametrize("key", MATRIX)
def test_orbit_stabilizer(group, key):
    A = ModuleAction(group(key))
    for v, size in zip(A.orbits.reps, A.orbits.sizes):
        assert len(A.stabilizer(int(v))) * int(size) == A.G.order


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(MATRIX), st.integers(0, 10**6))
def test_fixed_count_matches_direct_application(key, seed):
    from conftest import cached_group

    A = ModuleAction(cached_group(key))
    g = seed % A.G.order
    codes = np.arange(A.size)
    assert A.fixed_count(g) == int(np.count_nonzero(A.apply(g, codes) == codes))


def test_known_orbits(group):
    A = ModuleAction(group("G24"))
    assert len(A.orbits) == 2
    assert len(A.stabilizer(1)) == 4
    B = ModuleAction(group("SL23"))
    assert sorted(B.orbits.sizes.tolist()) == [1, 8]


def test_faithful_and_irreducible(group):
    for key in ["SL23", "G24", "G32", "E3_648", "Q8"]:
        A = ModuleAction(group(key))
        assert A.is_faithful() and A.is_irreducible()
    W = ModuleAction(group("WR"))
    assert not W.is_irreducible() or W.is_completely_reducible()


def test_complete_reducibility(group):
    assert ModuleAction(group("MIXED")).is_completely_reducible()
    G = families.Construction("unipotent", {}, families.gl(2, 3).rep,
                              [np.array([[1, 1], [0, 1]]).reshape(-1)], 3).group()
    assert not ModuleAction(G).is_completely_reducible()


def test_large_regular():
    G = families.extraspecial_rep(5, 1, 11, scalars=True, torus=True).group()
    A = ModuleAction(G)
    assert len(A.orbits) == A.burnside_count() == 206
    reps = A.large_regular_mod_K([0])
    assert len(reps) == 201
    big = [g for g in range(G.order) if int(G.orders[g]) in (5, 11)]
    for v in reps:
        assert not set(A.stabilizer(v).tolist()) & set(big)


def test_subset_search():
    assert action.subset_search(families.cyclic(5).group()) == ([0], 5) or \
        action.subset_search(families.cyclic(5).group())[0] == [0]
    assert action.subset_search(families.symmetric(4).group()) == ([0], 6)
    assert action.subset_search(families.metacyclic(7, 3).group()) == ([0], 3)


def test_subset_stabilizer_is_23_group():
    for c in [families.symmetric(4), families.metacyclic(11, 5), families.metacyclic(13, 6)]:
        G = c.group()
        subset, st_order = action.subset_search(G)
        assert len(action.set_stabilizer(G, subset)) == st_order
        n = st_order
        for p in (2, 3):
            while n % p == 0:
                n //= p
        assert n == 1


def test_action_errors(group):
    with pytest.raises(UsageError):
        ModuleAction(group("S4"))
    with pytest.raises(ResourceError):
        ModuleAction(group("E5"), cap=1000)

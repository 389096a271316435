import dataclasses

import numpy as np
import pytest

from solvlin import families, grp, verify
from solvlin.action import ModuleAction
from solvlin.errors import Alarm, UsageError

ACTIONS = ["G24", "G024", "SL23", "GL23", "E3_648", "E5", "D10", "WR", "Q8", "G32"]


def test_two_orbit_witness_on_gamma(group):
    A = ModuleAction(group("G24"))
    w = verify.verify_two_orbit(A)
    assert len(w.K) == 5 and (w.v_a, w.v_b) == (0, 1)
    assert all(w.checks.values())


@pytest.mark.parametrize("key", ACTIONS)
def test_two_orbit_witness_replays(group, key):
    A = ModuleAction(group(key))
    w = verify.verify_two_orbit(A)
    checks = verify.replay_two_orbit(A, w)
    assert set(checks) == {"K_normal", "K_in_F2", "distinct_orbits", "centralizers_in_K",
                           "large_KF_over_F_abelian", "large_K_cap_F_abelian", "trivial_intersection"}
    assert all(checks.values())
    assert grp.is_normal(A.G, np.array(w.K))


def test_tampered_two_orbit_witness_raises(group):
    A = ModuleAction(group("G24"))
    w = verify.verify_two_orbit(A)
    same_orbit = int(A.images(w.v_a)[-1])
    with pytest.raises(Alarm):
        verify.replay_two_orbit(A, dataclasses.replace(w, v_b=same_orbit))
    # a non-normal subset cannot serve as K
    G = A.G
    with pytest.raises(Alarm):
        verify.replay_two_orbit(A, dataclasses.replace(w, K=[0, G.order - 1]))


@pytest.mark.parametrize("key", ACTIONS)
@pytest.mark.parametrize("p", [5, 7])
def test_single_prime_witness(group, key, p):
    A = ModuleAction(group(key))
    w = verify.verify_single_prime(A, p)
    assert w.centralizer ** 2 <= w.core
    assert all(verify.replay_single_prime(A, w).values())


def test_tampered_single_prime_witness_raises(group):
    A = ModuleAction(group("E5"))
    w = verify.verify_single_prime(A, 5)
    with pytest.raises(Alarm):
        verify.replay_single_prime(A, dataclasses.replace(w, core=w.core + 1))


def test_usage_errors(group):
    A = ModuleAction(group("SL23"))
    with pytest.raises(UsageError):
        verify.verify_single_prime(A, 3)
    with pytest.raises(UsageError):
        verify.verify_defect_bound(group("SL23"), 3)
    with pytest.raises(UsageError):
        verify.verify_defect_bound(group("G24"), 5)  # normal Sylow 5
    with pytest.raises(UsageError):
        verify.verify_defect_bound(group("Z11_5"), 11)
    with pytest.raises(UsageError):
        verify.verify_defect_bound(families.symmetric(5).group(), 5)
    with pytest.raises(UsageError):
        verify.verify_degree_bounds(group("SL23"), 2)


@pytest.mark.parametrize("key,p,degrees", [("AFF_G024", 5, [15]), ("Z11_5", 5, [5]), ("Z31_5", 5, [5]),
                                           ("D10", 5, [5]), ("GL23", 5, [1])])
def test_defect_bound_blocks(group, key, p, degrees):
    out = verify.verify_defect_bound(group(key), p)
    assert out["min_defect"] <= out["bound"] == (3 * out["n"]) // 5
    assert out["block_degrees"] == degrees
    assert all(out["replay"].values())


def test_tampered_block_witness_raises(group):
    G = group("Z11_5")
    out = verify.verify_defect_bound(G, 5)
    with pytest.raises(Alarm):
        verify.replay_defect_bound(G, 5, out | {"block_degrees": [1, 5]})


@pytest.mark.parametrize("key,p", [("AFF_G024", 5), ("Z11_5", 5), ("D10", 5), ("GL23", 5),
                                   ("E3_648", 7), ("Z31_5", 5), ("S4", 5)])
def test_degree_and_class_bounds(group, key, p):
    out = verify.verify_degree_bounds(group(key), p)
    assert all(out["checks"].values()) and all(out["replay"].values())


def test_divisibility_witness_values(group):
    out = verify.verify_degree_bounds(group("AFF_G024"), 5)
    assert out["large_index"] == 5
    assert out["degree_triple"] == [1, 1, 15] and out["class_triple"] == [1, 1, 15]


def test_triples():
    assert verify._triple_search([2, 3, 5, 7], 35, distinct=True) == (0, 2, 3)
    assert verify._triple_search([5, 1], 125, distinct=False) == (0, 0, 0)
    assert verify._triple_search([5, 1], 125, distinct=True) is None


def test_log2_bound_is_exact():
    assert verify._log2_bound_holds(7, 1)
    assert not verify._log2_bound_holds(8, 1)
    assert verify._log2_bound_holds(8, 2)
    assert not verify._log2_bound_holds(10, 7) and verify._log2_bound_holds(10, 8)


@pytest.mark.parametrize("key", ["S3", "S4", "SL23", "GL23", "Z11_5", "D10", "E3_648", "AFF_G024"])
def test_prime_count_bounds(group, key):
    out = verify.verify_prime_counts(group(key))
    assert all(out["checks"].values())
    assert len(out["rho"]) <= 3 * out["sigma"] + 2


def test_prime_counts_values(group):
    out = verify.verify_prime_counts(group("GL23"))
    assert (out["rho"], out["sigma"], out["rho*"], out["sigma*"]) == ([2, 3], 1, [2, 3], 2)

"""Acceptance suite: one test per criterion, each printing a single pass/fail line with its timing."""

import functools
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

import conftest
from solvlin.action import ModuleAction
from solvlin import bounds, chartab, corpus, families, gf, grp, oracles, qp, verify


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time the body; record one line whether it passes or fails, then enforce the time limit."""
    t0 = time.perf_counter()
    status, detail = "PASS", ""
    try:
        yield
    except BaseException as exc:
        status, detail = "FAIL", f" ({type(exc).__name__}: {str(exc).splitlines()[0][:100] if str(exc) else ''})"
        raise
    finally:
        dt = time.perf_counter() - t0
        if status == "PASS" and dt >= limit:
            status, detail = "FAIL", f" (over the {limit:g}s limit)"
        line = f"[{status}] criterion {number:2d}: {title} ({dt:.2f}s / {limit:g}s){detail}"
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
    assert dt < limit, line


@functools.lru_cache(maxsize=None)
def _entries() -> dict[str, corpus.Entry]:
    cfg = corpus.load_config(None)
    return {e["name"]: corpus.Entry(e, cfg.get("seed", 0), grp.ORDER_CAP, 10**6) for e in cfg["entries"]}


def _with_check(name: str) -> list[tuple[corpus.Entry, dict]]:
    return [(e, c) for e in _entries().values() for c in e.spec["checks"] if c["check"] == name]


def _tabulated() -> list[corpus.Entry]:
    """Every corpus group small enough for a multiplication table."""
    return [e for e in _entries().values() if e.group.order <= grp.TABLE_CAP]


def test_criterion_01_construction_orders():
    with criterion(1, "construction orders", 5):
        cases = [(families.gamma(2, 4), 60), (families.gamma0(2, 4), 15), (families.sp(2, 2), 6),
                 (families.sl2(3), 24), (families.sp(4, 3), 51840)]
        got = [c.group().order for c, _ in cases]
        assert got == [n for _, n in cases], got


def test_criterion_02_census_in_sp43():
    with criterion(2, "NEP_5 <= 64, no prime order >= 7 in (D8*Q8).F10 < Sp(4,3)", 60):
        c, _ = families.sp43_extraspecial_d10()
        G = c.group()
        cen = grp.census(G)
        assert G.order == 320  # 32 * |F10| / |shared centre|
        assert cen.nep.get(5, 0) <= 64, cen.nep
        assert all(p < 7 for p in cen.nep), cen.nep


def test_criterion_03_decomposition():
    with criterion(3, "QP decomposition of SL(2,3) and Gamma(2^4)", 5):
        for c, expect, order in [(families.sl2(3), (2, 2, 8, 3, 3, 1), 24),
                                 (families.gamma(2, 4), (1, 15, 15, 1, 16, 1), 60)]:
            D = qp.decompose(ModuleAction(c.group()))
            s = D.summary()
            assert (s["e"], s["U"], s["F"], s["A/F"], s["W"], s["b"]) == expect, s
            clauses = set(qp.STRUCTURE_CHECKS) - {"abelian_normal_cyclic"}
            assert len(clauses) == 9 and clauses <= set(D.checks) and all(D.checks.values()), D.checks
            assert qp.order_bound(D) == D.G.order == order
            assert qp.order_divides_bound(D)


def test_criterion_04_fixed_point_law():
    with criterion(4, "fixed points of prime-order elements outside A", 30):
        seen = 0
        for e, _ in _with_check("fixed_point_law"):
            D = e.decomposition
            eb = D.e * D.b
            for pt in qp.fixed_point_data(D):
                # fixed = |W|^(eb/s), compared without fractional powers
                assert pt["fixed"] ** pt["order"] == D.W_size ** eb, (e.name, pt)
                seen += 1
        assert len(_with_check("fixed_point_law")) >= 8 and seen > 0


def test_criterion_05_fixed_ratio_table():
    with criterion(5, "fixed-space ratio table", 10):
        assert bounds.fixed_ratio(5, 4).ratio == Fraction(1, 4)
        qks = bounds.prime_powers(10**4)
        n = 0
        for s in range(5, 101):
            if not gf.is_prime(s):
                continue
            for qk in qks:
                if (qk - 1) % s == 0 or (qk + 1) % s == 0:
                    assert bounds.fixed_ratio(s, qk).ratio <= Fraction(1, 3), (s, qk)
                    n += 1
        assert n > 1000


def test_criterion_06_count_sweep():
    with criterion(6, "counting inequality sweep |W| <= 2^30, b <= 8, dim W <= 64", 300):
        out = bounds.count_sweep(bounds.SweepConfig(W_max=2**30, b_max=8, dim_max=64))
        assert set(out["worst"]) == set(bounds.COUNT_CASES)
        assert out["violations"] == [], out["violations"][:3]
        assert all(v < 1 for v in out["worst"].values()), out["worst"]


def test_criterion_07_character_tables():
    with criterion(7, "character tables and exact orthogonality", 60):
        known = {"S3": [1, 1, 2], "sl-2-3": [1, 1, 1, 2, 2, 2, 3], "Z11:Z5": [1, 1, 1, 1, 1, 5, 5]}
        groups = _tabulated()
        assert len(groups) == len(_entries()) - 1  # only Sp(4,3) lacks a table
        for e in groups:
            T = e.table  # construction runs the exact orthogonality check
            chartab.check_orthogonality(T)
            assert int(np.sum(T.degrees ** 2)) == e.group.order, e.name
            if e.name in known:
                assert sorted(T.degrees.tolist()) == known[e.name], e.name


def test_criterion_08_blocks():
    with criterion(8, "p-blocks and defect-zero counts", 30):
        E = _entries()
        assert chartab.p_blocks(E["sl-2-3"].table, 3).defect_zero_blocks == 1
        assert chartab.p_blocks(E["Z11:Z5"].table, 5).defect_zero_blocks == 2
        for e, c in _with_check("blocks"):
            B = chartab.p_blocks(e.table, c["p"])
            inv = corpus.block_invariants(e.table, B)
            assert all(inv.values()), (e.name, c, inv)


def test_criterion_09_defect_bound_blocks():
    with criterion(9, "min block defect <= floor(3n/5) at p = 5", 120):
        names = []
        for e, c in _with_check("defect_bound"):
            G = e.group
            assert G.order % 5 == 0 and len(grp.p_core(G, 5)) == 1 and grp.is_solvable(G)
            out = verify.verify_defect_bound(G, c["p"], e.table)
            assert out["min_defect"] <= (3 * out["n"]) // 5
            names.append(e.name)
        assert len(names) >= 5
        assert {"Z11:Z5", "Z31:Z5", "affine-gamma0-2^4"} <= set(names), names


def test_criterion_10_orbit_witnesses():
    with criterion(10, "two-orbit and single-prime witnesses replayed", 600):
        names = []
        for e, _ in _with_check("two_orbit"):
            A = e.action
            w = verify.verify_two_orbit(A)
            assert all(verify.replay_two_orbit(A, w).values())
            w34 = verify.verify_single_prime(A, 5)
            assert all(verify.replay_single_prime(A, w34).values())
            names.append(e.name)
        assert len(names) >= 8
        assert "sl23+gamma24-mixed" in names
        E5 = _entries()["extraspecial-5-gf11"]
        assert E5.action.size == 11**5 and E5.decomposition.e == 5 and E5.name in names


def test_criterion_11_degree_and_prime_counts():
    with criterion(11, "degree, class-size and prime-count bounds on the corpus", 120):
        n = 0
        for e in _tabulated():
            G = e.group
            if not grp.is_solvable(G):
                continue
            primes = {5} | {c["p"] for c in e.spec["checks"] if c["check"] == "degree_bounds"}
            for p in sorted(primes):
                out = verify.verify_degree_bounds(G, p, e.table)
                assert all(out["checks"].values()) and all(out["replay"].values()), (e.name, p)
            out = verify.verify_prime_counts(G, e.table)
            assert all(out["checks"].values()), e.name
            n += 1
        assert n == len(_entries()) - 1


def test_criterion_12_oracle_equivalences():
    with criterion(12, "oracle equivalences", 600):
        small = [e for e in _tabulated() if e.group.order <= oracles.BRUTE_CAP]
        assert len(small) >= 8
        for e in small:
            G = e.group
            for p in gf.factorize(G.order):
                assert np.array_equal(np.sort(grp.p_core(G, p)), oracles.p_core_by_sylows(G, p)), (e.name, p)
            fast = sorted(tuple(np.sort(N).tolist()) for N in grp.normal_subgroups(G, cap=10**6))
            slow = sorted(tuple(N.tolist()) for N in oracles.normal_subgroups_brute(G))
            assert fast == slow, e.name
        modules = {e.name: e for e, _ in _with_check("orbits") + _with_check("two_orbit")}
        assert len(modules) >= 8
        for e in modules.values():
            A = e.action
            assert len(A.orbits) == A.burnside_count() == oracles.orbit_count_brute(A), e.name
        for e in _tabulated():
            T = e.table
            if len(T) > oracles.LINK_CAP:
                continue
            for p in gf.factorize(e.group.order):
                assert sorted(chartab.p_blocks(T, p).blocks) == oracles.blocks_by_linking(T, p), (e.name, p)

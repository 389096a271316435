from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvlin import bounds, families, qp
from solvlin.action import ModuleAction
from solvlin.errors import DomainError


def test_fixed_ratio_values():
    assert bounds.fixed_ratio(5, 4).ratio == Fraction(1, 4)
    assert bounds.fixed_ratio(5, 11).ratio == Fraction(3, 11)
    assert bounds.fixed_ratio(7, 8).ratio == Fraction(1, 4)
    with pytest.raises(DomainError):
        bounds.fixed_ratio(5, 7)
    with pytest.raises(DomainError):
        bounds.fixed_ratio(4, 9)


def test_fixed_ratio_at_most_one_third_everywhere():
    qks = bounds.prime_powers(10**4)
    for s in [p for p in range(5, 101) if bounds.gf.is_prime(p)]:
        for qk in qks:
            if (qk - 1) % s == 0 or (qk + 1) % s == 0:
                assert bounds.fixed_ratio(s, qk).ratio <= Fraction(1, 3)


@given(st.integers(0, 10**40), st.integers(1, 12))
def test_integer_roots(n, k):
    r = bounds.floor_root(n, k)
    assert r**k <= n < (r + 1) ** k
    c = bounds.ceil_root(n, k)
    assert c**k >= n and (c == 0 or (c - 1) ** k < n)


@given(st.integers(1, 10**9))
def test_ilog(n):
    k = bounds.ilog(n, 5)
    assert 5**k <= n < 5 ** (k + 1)


def _true_lhs(case, W, b, d):
    """The counting inequality's left side in 100-digit floating point."""
    mpmath.mp.dps = 100
    c = bounds.COUNT_CASES[case]
    den = mpmath.mpf(W) ** (c.e * b)
    total = mpmath.mpf(c.order_bound(W, d)) / den
    for a, t in c.terms:
        v = a(W, d)
        total += mpmath.mpf(v.numerator) / v.denominator * mpmath.power(W, mpmath.mpf(t.numerator * b) / t.denominator) / den
    return total


def _admissible_points():
    cfg = bounds.SweepConfig(explicit_max=2**12, b_max=3, dim_max=20)
    return list(bounds.sweep_points(cfg))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(_admissible_points()))
def test_count_upper_bound_is_sound_and_tight(pt):
    case, W, b, d = pt
    upper = bounds.count_evaluate(case, W, b, d).lhs_upper
    true = _true_lhs(case, W, b, d)
    up = mpmath.mpf(upper.numerator) / upper.denominator
    # equality cases (exact roots) may differ only by oracle rounding
    assert up >= true * (1 - mpmath.mpf(10) ** -90)
    assert up <= true * (1 + mpmath.mpf(W) ** (-1) * 8) + mpmath.mpf(10) ** -40


def test_count_e16_smallest_field():
    r = bounds.count_evaluate("e16", 3, 1, 1)
    assert r.lhs_upper == Fraction(67072, 177147)
    assert float(_true_lhs("e16", 3, 1, 1)) == pytest.approx(float(r.lhs_upper), rel=1e-12)
    assert r.holds


def test_count_side_conditions():
    with pytest.raises(DomainError):
        bounds.count_evaluate("e9_inner", 8, 1, 3)  # 3 does not divide 7
    with pytest.raises(DomainError):
        bounds.count_evaluate("e3", 4**5, 1, 4)  # no prime >= 5 divides dim W
    assert bounds.count_evaluate("e3", 4**5, 1, 5).holds


def test_count_interval_dominates_points():
    for case, lo, hi, b, d in [("e2", 2**17, 2**18, 1, 5), ("e16", 2**20, 2**21, 2, 3)]:
        bound = bounds.count_interval(case, lo, hi, b, d)
        for W in (lo, (lo + hi) // 2 | 1, hi):
            if bounds.COUNT_CASES[case].admissible(W, d):
                assert bounds.count_evaluate(case, W, b, d).lhs_upper <= bound


def test_small_sweep_has_no_violations():
    out = bounds.count_sweep(bounds.SweepConfig(W_max=2**20, explicit_max=2**10, b_max=3, dim_max=12))
    assert out["violations"] == []
    assert out["points"] > 0 and out["intervals"] > 0


def test_counting_checks(group):
    for key, p, refined in [("SL23", 3, "8"), ("D10", 5, "64"), ("E5", 2, "50"), ("E3_648", 2, "9")]:
        r = bounds.counting_check(qp.decompose(ModuleAction(group(key))), p)
        assert r["holds"]
        assert r["refined_bound"] == refined
        assert str(r["nep_outside"]) == refined


def test_top_counting():
    G = families.semilinear(2, 10, 33, 10).group()
    D = qp.decompose(ModuleAction(G))
    r = bounds.top_counting_check(G, D.A)
    assert r == {"index": 10, "nsp_large_outside": 11, "bound": 33, "holds": True}


def test_symplectic_audits(group):
    c, _ = families.sp43_extraspecial_d10()
    r = bounds.symplectic_audit(group("D10"), 4, 3, c.meta["gram"])
    assert r["holds"] and r["census"]["nep"]["5"] == 64
    assert bounds.symplectic_audit(group("SL23"), 2, 3)["holds"]
    assert bounds.symplectic_audit(families.sp(2, 2).group(), 2, 2)["holds"]

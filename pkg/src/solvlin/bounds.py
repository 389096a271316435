"""Exact auditors for the fixed-point estimates, the counting bounds and the counting inequality.

All arithmetic is on integers and :class:`fractions.Fraction`.  Fractional
powers are replaced by integer ceilings of roots, so every reported
left-hand side is an upper bound of the true real value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import gf, grp
from .errors import DomainError, UsageError
from .grp import LARGE_PRIMES, EnumeratedGroup

# -- fixed-space ratio ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class FixedRatio:
    s: int
    qk: int
    branch: str  # "divides_minus_one" or "divides_plus_one"
    t: int
    ratio: Fraction

    @property
    def fixed_dim_bound(self) -> int:
        """floor(ratio * q^k), the bound on a fixed-space dimension."""
        return math.floor(self.ratio * self.qk)


def fixed_ratio(s: int, qk: int) -> FixedRatio:
    if s < 5 or not gf.is_prime(s):
        raise DomainError(f"s = {s} must be a prime >= 5")
    gf.prime_power(qk)
    if (qk - 1) % s == 0:
        t = (qk - 1) // s
        out = FixedRatio(s, qk, "divides_minus_one", t, Fraction(t + 1, s * t + 1))
    elif (qk + 1) % s == 0:
        t = (qk + 1) // s
        out = FixedRatio(s, qk, "divides_plus_one", t, Fraction(t, s * t - 1))
    else:
        raise DomainError(f"{s} divides neither {qk} - 1 nor {qk} + 1")
    if out.ratio > Fraction(1, 3) or 3 * out.fixed_dim_bound > qk:
        raise AssertionError(f"fixed ratio for ({s}, {qk}) is {out.ratio}, exceeds 1/3")
    return out


# -- integer helpers -------------------------------------------------------------------------


def ilog(n: int, base: int) -> int:
    """floor(log_base(n)) for n >= 1, exactly."""
    if n < 1:
        raise DomainError("logarithm of a non-positive number")
    k, acc = 0, base
    while acc <= n:
        acc *= base
        k += 1
    return k


def floor_root(n: int, k: int) -> int:
    """Largest integer r with r**k <= n (integer Newton iteration)."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def ceil_root(n: int, k: int) -> int:
    """Smallest integer r with r**k >= n."""
    r = floor_root(n, k)
    return r if r**k == n else r + 1


def power_upper(W: int, exponent: Fraction) -> int:
    """An integer >= W**exponent for a non-negative rational exponent."""
    return ceil_root(W**exponent.numerator, exponent.denominator)


# -- counting bounds ----------------------------------------------------------------------------


def counting_check(D, p: int) -> dict:
    """Both counting bounds for p-elements of A \\ F against the census."""
    G = D.G
    outside = np.setdiff1d(D.A, D.F)
    lhs = grp.census(G, outside, {p}).nep.get(p, 0)
    Q = grp.quotient(G.subgroup_group(D.A), _positions(D.A, D.F))
    nep_top = grp.census(Q.group, None, {p}).nep.get(p, 0)
    bound1 = nep_top * len(D.F)
    others = math.prod(c.p for c in D.components if c.extraspecial and c.p != p)
    bound2 = Fraction(bound1, others)
    return {
        "p": p,
        "nep_outside": lhs,
        "nep_top": nep_top,
        "bound": bound1,
        "refined_bound": str(bound2),
        "holds": lhs <= bound1 and lhs <= bound2,
        "margin": str(bound2 - lhs),
    }


def _positions(S, T) -> np.ndarray:
    """Positions of the elements of T inside the sorted index array S."""
    return np.searchsorted(np.asarray(S), np.asarray(T))


def top_counting_check(G: EnumeratedGroup, A) -> dict:
    """Subgroups of prime order p >= 5 outside a normal A with cyclic quotient."""
    A = np.asarray(A)
    k = G.order // len(A)
    if k > 1:
        Q = grp.quotient(G, A).group
        if int(Q.orders.max()) != Q.order:
            raise UsageError("G/A is not cyclic")
    outside = np.setdiff1d(np.arange(G.order), A)
    lhs = grp.census(G, outside, LARGE_PRIMES).nsp_pi(LARGE_PRIMES)
    rhs = ilog(k, 5) * len(A)
    return {"index": k, "nsp_large_outside": lhs, "bound": rhs, "holds": lhs <= rhs}


# -- completely reducible subgroups of small symplectic groups -----------------------------------

SP_CASES = {(2, 2), (4, 2), (6, 2), (8, 2), (2, 3), (4, 3)}


def symplectic_audit(G: EnumeratedGroup, n: int, q: int, gram=None) -> dict:
    """Numeric bounds for completely reducible solvable subgroups of Sp(n, q)."""
    from . import families
    from .action import ModuleAction

    if (n, q) not in SP_CASES:
        raise UsageError(f"no bounds recorded for Sp({n},{q})")
    F, dim = G.rep.blocks[0]
    if dim != n or F.q != q or len(G.rep.blocks) != 1:
        raise UsageError("group does not act on the stated space")
    S = families.SymplecticSpace(F, n, families.standard_gram(F, n) if gram is None else np.asarray(gram))
    if not all(families.is_symplectic(G.element(g), S) for g in G.generators):
        raise UsageError("group does not preserve the symplectic form")
    if not grp.is_solvable(G) or not ModuleAction(G).is_completely_reducible():
        raise UsageError("group must be solvable and completely reducible")
    cen = grp.census(G)
    nep_large = cen.nep_pi(LARGE_PRIMES)
    N = G.order
    checks: dict[str, bool] = {}
    if (n, q) == (2, 2):
        checks["order_divides_6"] = 6 % N == 0
    elif (n, q) == (2, 3):
        checks["order_divides_24"] = 24 % N == 0
    elif (n, q) == (4, 2):
        checks["order_le_72"] = N <= 72
        checks["nep_large_le_4"] = nep_large <= 4
        checks["large_abelian_in_fitting"] = _large_abelian_in_fitting(G)
    elif (n, q) == (6, 2):
        checks["order_le_1296"] = N <= 6**4
        checks["nep_large_le_6"] = nep_large <= 6
        checks["large_abelian_in_fitting"] = _large_abelian_in_fitting(G)
    elif (n, q) == (8, 2):
        checks["order_le_31104"] = N <= 6**4 * 24
        checks["nep_large_le_24"] = nep_large <= 24
    else:
        checks["order_le_1152"] = N <= 24**2 * 2
        checks["nep5_le_64"] = cen.nep.get(5, 0) <= 64
        checks["no_prime_ge_7"] = all(p < 7 for p in cen.nep)
        checks["order_le_320_if_5"] = N % 5 != 0 or N <= 320
    return {"n": n, "q": q, "order": N, "census": cen.to_json(), "checks": checks,
            "holds": all(checks.values())}


def _large_abelian_in_fitting(G: EnumeratedGroup) -> bool:
    H = grp.hall_pi_elements(G, LARGE_PRIMES)
    if not np.isin(H, grp.fitting(G)).all():
        return False
    return bool(np.all(G.commutator(H[:, None], H[None, :]) == 0))


# -- the counting inequality --------------------------------------------------------------------------

Term = tuple[Callable[[int, int], Fraction], Fraction]


@dataclass(frozen=True)
class CountCase:
    """One case of the counting inequality.

    ``terms`` pairs a subgroup-count bound a(|W|, dim W) with an exponent t;
    ``order_bound`` bounds |G|.  ``top_prime`` marks the cases that need a
    prime p >= 5 dividing dim W, with |W| >= ``min_base`` ** p.
    """

    name: str
    e: int
    terms: tuple[Term, ...]
    order_bound: Callable[[int, int], int]
    unit_divisor: int  # must divide |W| - 1
    top_prime: bool
    min_base: int = 0

    def admissible(self, W: int, dimW: int) -> bool:
        if W < 2 or dimW < 1 or (W - 1) % self.unit_divisor:
            return False
        if not self.top_prime:
            return True
        return any(dimW % p == 0 and W >= self.min_base**p for p in gf.factorize(dimW) if p >= 5)


def _L(d: int) -> int:
    return ilog(d, 5)


COUNT_CASES: dict[str, CountCase] = {
    "e16": CountCase(
        "e16", 16,
        ((lambda W, d: Fraction(24 * 2**8 * (W - 1), 2 * 4), Fraction(5)),
         (lambda W, d: Fraction(_L(d) * 24 * 6**4 * 2**8 * (W - 1)), Fraction(8))),
        lambda W, d: d * 24 * 6**4 * 2**8 * (W - 1), 2, False),
    "e9_top": CountCase(
        "e9_top", 9,
        ((lambda W, d: Fraction(64 * 3**4 * (W - 1), 3 * 4), Fraction(3)),
         (lambda W, d: Fraction(_L(d) * 24**2 * 2 * 3**4 * (W - 1)), Fraction(9, 5))),
        lambda W, d: d * 24**2 * 2 * 3**4 * (W - 1), 3, True, 4),
    "e9_inner": CountCase(
        "e9_inner", 9,
        ((lambda W, d: Fraction(64 * 3**4 * (W - 1), 3 * 4), Fraction(3)),),
        lambda W, d: d * 320 * 3**4 * (W - 1), 3, False),
    "e8": CountCase(
        "e8", 8,
        ((lambda W, d: Fraction(6 * 2**6 * (W - 1), 2 * 4), Fraction(2)),
         (lambda W, d: Fraction(_L(d) * 6**4 * 2**6 * (W - 1)), Fraction(8, 5))),
        lambda W, d: d * 6**4 * 2**6 * (W - 1), 2, True, 3),
    "e4": CountCase(
        "e4", 4,
        ((lambda W, d: Fraction(4 * 2**4 * (W - 1), 2 * 4), Fraction(1)),
         (lambda W, d: Fraction(_L(d) * 6**2 * 2 * 2**4 * (W - 1)), Fraction(4, 5))),
        lambda W, d: d * 6**2 * 2 * 2**4 * (W - 1), 2, True, 3),
    "e3": CountCase(
        "e3", 3,
        ((lambda W, d: Fraction(_L(d) * 24 * 3**2 * (W - 1)), Fraction(3, 5)),),
        lambda W, d: d * 24 * 9 * (W - 1), 3, True, 4),
    "e2": CountCase(
        "e2", 2,
        ((lambda W, d: Fraction(_L(d) * 2**2 * (W - 1)), Fraction(2, 5)),),
        lambda W, d: d * 6 * 4 * (W - 1), 2, True, 3),
}


@dataclass(frozen=True)
class CountBound:
    case: str
    W: int
    b: int
    dimW: int
    lhs_upper: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs_upper < 1

    def to_json(self) -> dict:
        return {"case": self.case, "W": self.W, "b": self.b, "dimW": self.dimW,
                "lhs_num": str(self.lhs_upper.numerator), "lhs_den": str(self.lhs_upper.denominator),
                "holds": self.holds}


def count_evaluate(case: CountCase | str, W: int, b: int, dimW: int) -> CountBound:
    """Sound upper bound of sum a_i |W|^(t_i b) / |W|^(e b) + |G| / |W|^(e b)."""
    c = COUNT_CASES[case] if isinstance(case, str) else case
    if b < 1 or not c.admissible(W, dimW):
        raise DomainError(f"({W}, {dimW}, b={b}) violates the side conditions of {c.name}")
    den = W ** (c.e * b)
    total = Fraction(c.order_bound(W, dimW), den)
    for a, t in c.terms:
        total += a(W, dimW) * Fraction(power_upper(W, t * b), den)
    return CountBound(c.name, W, b, dimW, total)


def count_interval(case: CountCase | str, W_lo: int, W_hi: int, b: int, dimW: int) -> Fraction:
    """Upper bound of the left side valid for every real |W| in [W_lo, W_hi].

    Counts and the order bound grow with |W|, so they are taken at W_hi;
    the ratios |W|^(t b) / |W|^(e b) shrink with |W|, so they are taken at W_lo.
    """
    c = COUNT_CASES[case] if isinstance(case, str) else case
    den = W_lo ** (c.e * b)
    total = Fraction(c.order_bound(W_hi, dimW), den)
    for a, t in c.terms:
        # W^(t b - e b) is decreasing since t < e
        total += a(W_hi, dimW) * Fraction(power_upper(W_lo, t * b), den)
    return total


def prime_powers(limit: int) -> list[int]:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    out = []
    for p in np.nonzero(sieve)[0]:
        p = int(p)
        x = p
        while x <= limit:
            out.append(x)
            x *= p
    return sorted(out)


@dataclass
class SweepConfig:
    W_max: int = 2**30
    explicit_max: int = 2**16
    b_max: int = 8
    dim_max: int = 64
    ratio: Fraction = Fraction(2)


def sweep_points(cfg: SweepConfig) -> Iterator[tuple[str, int, int, int]]:
    """Explicit grid points (case, |W|, b, dim W) with |W| = f^dim W <= explicit_max."""
    fields = prime_powers(cfg.explicit_max)
    for name, c in COUNT_CASES.items():
        for d in range(1, cfg.dim_max + 1):
            for f in fields:
                W = f**d
                if W > cfg.explicit_max:
                    break
                if not c.admissible(W, d):
                    continue
                for b in range(1, cfg.b_max + 1):
                    yield name, W, b, d


def sweep_intervals(cfg: SweepConfig) -> Iterator[tuple[str, int, int, int, int]]:
    """Intervals (case, lo, hi, b, dim W) covering explicit_max < |W| <= W_max."""
    for name, c in COUNT_CASES.items():
        for d in range(1, cfg.dim_max + 1):
            if c.top_prime and not any(p >= 5 for p in gf.factorize(d)):
                continue
            lo = cfg.explicit_max + 1
            if c.top_prime:
                lo = max(lo, min(c.min_base**p for p in gf.factorize(d) if p >= 5))
            while lo <= cfg.W_max:
                hi = min(cfg.W_max, math.floor(lo * cfg.ratio))
                for b in range(1, cfg.b_max + 1):
                    yield name, lo, hi, b, d
                lo = hi + 1


def count_sweep(cfg: SweepConfig | None = None, record: Callable[[dict], None] | None = None) -> dict:
    """Check the counting inequality on the grid; returns counts and the largest bound seen per case."""
    cfg = cfg or SweepConfig()
    worst: dict[str, Fraction] = {}
    violations: list[dict] = []
    n_points = n_intervals = 0
    for name, W, b, d in sweep_points(cfg):
        r = count_evaluate(name, W, b, d)
        n_points += 1
        worst[name] = max(worst.get(name, Fraction(0)), r.lhs_upper)
        rec = r.to_json()
        if record:
            record(rec)
        if not r.holds:
            violations.append(rec)
    for name, lo, hi, b, d in sweep_intervals(cfg):
        val = count_interval(name, lo, hi, b, d)
        n_intervals += 1
        worst[name] = max(worst.get(name, Fraction(0)), val)
        rec = {"case": name, "W_lo": lo, "W_hi": hi, "b": b, "dimW": d,
               "lhs_num": str(val.numerator), "lhs_den": str(val.denominator), "holds": val < 1}
        if record:
            record(rec)
        if val >= 1:
            violations.append(rec)
    return {"points": n_points, "intervals": n_intervals, "violations": violations,
            "worst": {k: float(v) for k, v in worst.items()}}

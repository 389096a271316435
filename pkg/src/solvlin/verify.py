"""Theorem-level verifiers with independent witness replay.

Each ``verify_*`` function searches for a witness and then hands it to the
matching ``replay_*`` function, which re-derives every check from scratch
using direct stabiliser and subgroup computations.  A failed search or a
failed replay raises :class:`~solvlin.errors.Alarm`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import chartab, gf, grp
from .action import ModuleAction
from .errors import Alarm, UsageError
from .grp import LARGE_PRIMES, EnumeratedGroup

NORMAL_CAP = 120


def _coprime_to_6(n: int) -> bool:
    return all(p >= 5 for p in gf.factorize(n))


def _big_prime_mask(G: EnumeratedGroup) -> np.ndarray:
    """Elements of prime order at least 5."""
    return np.array([o >= 5 and gf.is_prime(int(o)) for o in G.orders], dtype=bool)


def _is_abelian(G: EnumeratedGroup, S) -> bool:
    S = np.asarray(S)
    gens = grp.generating_set(G, grp.generated(G, S)) if len(S) > 1 else []
    if not gens:
        return True
    g = np.asarray(gens)
    return bool(np.all(G.table[np.ix_(g, g)] == G.table[np.ix_(g, g)].T))


def hall_subgroup(G: EnumeratedGroup, primes, S=None) -> np.ndarray:
    """A Hall pi-subgroup of the solvable subgroup S.

    In a solvable group every pi-subgroup lies in a Hall pi-subgroup, so
    greedily adjoining pi-elements while the result stays a pi-group cannot
    stall before the full pi-part of |S| is reached.
    """
    S = np.arange(G.order) if S is None else np.asarray(S)
    target = grp.pi_part(len(S), primes)
    H = np.array([0])
    for x in grp.hall_pi_elements(G, primes, S):
        if len(H) == target:
            break
        if x in H:
            continue
        cand = grp.generated(G, np.append(H, x))
        if grp.is_pi_number(len(cand), primes):
            H = cand
    if len(H) != target:
        raise AssertionError("Hall subgroup search stalled; group not solvable?")
    return H


def _hall_abelian_mod(G: EnumeratedGroup, K, F, primes) -> bool:
    """Is a Hall pi-subgroup of KF/F abelian?"""
    Q = grp.quotient(G, F)
    image = np.unique(Q.proj[np.asarray(K)])
    return _is_abelian(Q.group, hall_subgroup(Q.group, primes, image))


def _require_module(A: ModuleAction) -> None:
    if not grp.is_solvable(A.G):
        raise UsageError("group is not solvable")
    if not A.is_faithful():
        raise UsageError("action is not faithful")
    if not A.is_completely_reducible():
        raise UsageError("module is not completely reducible")


def _candidates(G: EnumeratedGroup, F2: np.ndarray) -> list[np.ndarray]:
    inF2 = np.zeros(G.order, dtype=bool)
    inF2[F2] = True
    return [K for K in grp.normal_subgroups(G, cap=NORMAL_CAP) if inF2[K].all()]


def _membership(G: EnumeratedGroup, S) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[np.asarray(S)] = True
    return mask


# -- the two-orbit theorem -----------------------------------------------------------------


@dataclass
class TwoOrbitWitness:
    K: list[int]
    v_a: int
    v_b: int
    checks: dict

    def to_json(self) -> dict:
        d = asdict(self)
        d["K_order"] = len(self.K)
        d["K"] = self.K if len(self.K) <= 64 else f"{len(self.K)} elements"
        return d


def verify_two_orbit(A: ModuleAction) -> TwoOrbitWitness:
    """Normal K inside F_2(G) and two orbit representatives meeting all five conditions."""
    _require_module(A)
    G = A.G
    series = grp.fitting_series(G)
    F1 = series[min(1, len(series) - 1)]
    F2 = series[min(2, len(series) - 1)]
    orb = A.orbits
    big = _big_prime_mask(G)
    bad = [np.nonzero(big & (A.images(int(v)) == int(v)))[0] for v in orb.reps]
    all_codes = np.arange(A.size)
    for K in _candidates(G, F2):
        KF = grp.intersect(K, F1)
        if not _is_abelian(G, grp.hall_pi_elements(G, LARGE_PRIMES, KF)):
            continue
        if not _hall_abelian_mod(G, K, F1, LARGE_PRIMES):
            continue
        inK = _membership(G, K)
        good = [i for i, b in enumerate(bad) if inK[b].all()]
        if len(good) < 2:
            continue
        O = grp.hall_pi_elements(G, LARGE_PRIMES, KF)
        for i in good:
            va = int(orb.reps[i])
            Ca = O[A.images(va)[O] == va]
            movers = [int(x) for x in Ca if x != 0 and gf.is_prime(int(G.orders[x]))]
            blocked = np.zeros(A.size, dtype=bool)
            for x in movers:
                blocked |= A.apply(x, all_codes) == all_codes
            for j in good:
                if j == i:
                    continue
                members = np.nonzero((orb.orbit_of == j) & ~blocked)[0]
                if len(members) == 0:
                    continue
                w = TwoOrbitWitness([int(k) for k in K], va, int(members[0]), {})
                w.checks = replay_two_orbit(A, w)
                return w
    raise Alarm("no two-orbit witness found")


def replay_two_orbit(A: ModuleAction, w: TwoOrbitWitness) -> dict:
    G = A.G
    K = np.asarray(w.K, dtype=np.int64)
    series = grp.fitting_series(G)
    F1 = series[min(1, len(series) - 1)]
    F2 = series[min(2, len(series) - 1)]
    Sa, Sb = A.stabilizer(w.v_a), A.stabilizer(w.v_b)
    big = _big_prime_mask(G)
    KF = grp.intersect(K, F1)
    O = grp.hall_pi_elements(G, LARGE_PRIMES, KF)
    checks = {
        "K_normal": grp.is_subgroup(G, K) and grp.is_normal(G, K),
        "K_in_F2": bool(np.isin(K, F2).all()),
        "distinct_orbits": bool(w.v_b not in A.images(w.v_a)),
        "centralizers_in_K": bool(np.isin(np.union1d(Sa[big[Sa]], Sb[big[Sb]]), K).all()),
        "large_KF_over_F_abelian": _hall_abelian_mod(G, K, F1, LARGE_PRIMES),
        "large_K_cap_F_abelian": _is_abelian(G, O),
        "trivial_intersection": bool(np.array_equal(np.intersect1d(np.intersect1d(Sa, Sb), O), [0])),
    }
    if not all(checks.values()):
        raise Alarm(f"two-orbit witness failed replay: {checks}")
    return checks


# -- the single-prime version ----------------------------------------------------------------------


@dataclass
class PrimeWitness:
    p: int
    K: list[int]
    v: int
    centralizer: int
    core: int
    checks: dict

    def to_json(self) -> dict:
        d = asdict(self)
        d["K_order"] = len(self.K)
        d["K"] = self.K if len(self.K) <= 64 else f"{len(self.K)} elements"
        return d


def verify_single_prime(A: ModuleAction, p: int) -> PrimeWitness:
    if p < 5 or not gf.is_prime(p):
        raise UsageError("p must be a prime >= 5")
    _require_module(A)
    G = A.G
    series = grp.fitting_series(G)
    F1 = series[min(1, len(series) - 1)]
    F2 = series[min(2, len(series) - 1)]
    orb = A.orbits
    pel = _membership(G, grp.p_elements(G, p))
    stabs = [A.stabilizer(int(v)) for v in orb.reps]
    for K in _candidates(G, F2):
        KF = grp.intersect(K, F1)
        P1 = grp.hall_pi_elements(G, {p}, KF)
        if not _is_abelian(G, P1) or not _hall_abelian_mod(G, K, F1, {p}):
            continue
        inK = _membership(G, K)
        inP1 = _membership(G, P1)
        for v, st in zip(orb.reps, stabs):
            if not inK[st[pel[st]]].all():
                continue
            c = int(np.count_nonzero(inP1[st]))
            if c * c <= len(P1):
                w = PrimeWitness(p, [int(k) for k in K], int(v), c, len(P1), {})
                w.checks = replay_single_prime(A, w)
                return w
    raise Alarm(f"no single-orbit witness for p = {p}")


def replay_single_prime(A: ModuleAction, w: PrimeWitness) -> dict:
    G, p = A.G, w.p
    K = np.asarray(w.K, dtype=np.int64)
    series = grp.fitting_series(G)
    F1 = series[min(1, len(series) - 1)]
    F2 = series[min(2, len(series) - 1)]
    St = A.stabilizer(w.v)
    p_in_St = St[[grp.is_p_power(int(G.orders[x]), p) for x in St]]
    P1 = grp.p_core(G.subgroup_group(grp.intersect(K, F1)), p)
    core = len(P1)
    C = len(np.intersect1d(St, grp.hall_pi_elements(G, {p}, grp.intersect(K, F1))))
    checks = {
        "K_normal": grp.is_subgroup(G, K) and grp.is_normal(G, K),
        "K_in_F2": bool(np.isin(K, F2).all()),
        "p_centralizer_in_K": bool(np.isin(p_in_St, K).all()),
        "p_KF_over_F_abelian": _hall_abelian_mod(G, K, F1, {p}),
        "p_K_cap_F_abelian": _is_abelian(G, grp.hall_pi_elements(G, {p}, grp.intersect(K, F1))),
        "square_root_bound": C * C <= core and core == w.core and C == w.centralizer,
    }
    if not all(checks.values()):
        raise Alarm(f"single-orbit witness failed replay: {checks}")
    return checks


# -- block defect bound ------------------------------------------------------------------------


def verify_defect_bound(G: EnumeratedGroup, p: int, T: chartab.CharTable | None = None) -> dict:
    if p < 5 or not gf.is_prime(p):
        raise UsageError("p must be a prime >= 5")
    if not grp.is_solvable(G):
        raise UsageError("group is not solvable")
    if len(grp.p_core(G, p)) != 1:
        raise UsageError(f"O_{p}(G) is not trivial")
    T = chartab.char_table(G) if T is None else T
    B = chartab.p_blocks(T, p)
    bound = (3 * B.n) // 5
    k = int(np.argmin(B.block_defect))
    out = {"p": p, "n": B.n, "min_defect": B.min_defect, "bound": bound,
           "block_degrees": [int(T.degrees[i]) for i in B.blocks[k]],
           "blocks": len(B.blocks)}
    if B.min_defect > bound:
        raise Alarm(f"minimal {p}-defect {B.min_defect} exceeds {bound}")
    out["replay"] = replay_defect_bound(G, p, out)
    return out


def replay_defect_bound(G: EnumeratedGroup, p: int, w: dict) -> dict:
    n = grp.valuation(G.order, p)
    T = chartab.char_table(G, seed=1)
    B = chartab.p_blocks(T, p)
    degs = sorted(w["block_degrees"])
    found = any(sorted(int(T.degrees[i]) for i in blk) == degs and d == w["min_defect"]
                for blk, d in zip(B.blocks, B.block_defect))
    checks = {
        "n": n == w["n"],
        "block_present": found,
        "defect_from_degrees": w["min_defect"] == n - max(grp.valuation(d, p) for d in degs),
        "bound": w["min_defect"] <= (3 * n) // 5,
    }
    if not all(checks.values()):
        raise Alarm(f"block witness failed replay: {checks}")
    return checks


# -- degree and class-size consequences --------------------------------------------------------------


def _triple_search(values: list[int], target: int, distinct: bool) -> tuple[int, ...] | None:
    idx = range(len(values))
    combos = itertools.combinations(idx, 3) if distinct else itertools.combinations_with_replacement(idx, 3)
    for c in combos:
        if math.prod(values[i] for i in c) % target == 0:
            return c
    return None


def three_degree_witness(T: chartab.CharTable, target: int) -> tuple[int, ...] | None:
    """Three distinct irreducible characters whose degree product is divisible by target."""
    degs = [int(d) for d in T.degrees]
    if len(degs) < 3:
        return tuple(range(len(degs))) if target == 1 else None
    return _triple_search(degs, target, distinct=True)


def three_class_witness(T: chartab.CharTable, target: int) -> tuple[int, ...] | None:
    return _triple_search([int(s) for s in T.sizes], target, distinct=False)


def _log2_bound_holds(dl: int, a: int) -> bool:
    """dl <= log2(a) + 7, exactly, for a >= 1."""
    return dl <= 7 or a >= 2 ** (dl - 7)


def verify_degree_bounds(G: EnumeratedGroup, p: int, T: chartab.CharTable | None = None) -> dict:
    if p < 5 or not gf.is_prime(p):
        raise UsageError("p must be a prime >= 5")
    if not grp.is_solvable(G):
        raise UsageError("group is not solvable")
    T = chartab.char_table(G) if T is None else T
    st = chartab.degree_stats(G, T, p)
    F = grp.fitting(G)
    index = G.order // len(F)
    ip = grp.p_part(index, p)
    a = st.a
    a_cls = max(grp.valuation(int(s), p) for s in T.sizes)
    checks: dict[str, bool] = {
        "index_p_le_p^3a": ip <= p ** (3 * a),
        "b(P)_le_p^4a": st.b_P <= p ** (4 * a),
        "index_p_le_p^3a*": ip <= p ** (3 * a_cls),
        "b*(P)_le_p^4a*": st.bstar_P <= p ** (4 * a_cls),
        "P'_le_p^2a*(4a*+1)": st.P_derived <= p ** (2 * a_cls * (4 * a_cls + 1)),
    }
    if a == 0:
        checks["a_zero_p_coprime_to_index"] = index % p != 0
    else:
        checks["dl(P)_le_log2a+7"] = _log2_bound_holds(st.dl_P, a)
    target = grp.pi_part(index, LARGE_PRIMES)
    tri = three_degree_witness(T, target)
    tri_c = three_class_witness(T, target)
    checks["three_degree_witness"] = tri is not None
    checks["three_class_witness"] = tri_c is not None
    out = {"p": p, "a": a, "a_class": a_cls, "index_p": ip, "large_index": target,
           "stats": st.to_json(), "checks": checks,
           "degree_triple": None if tri is None else [int(T.degrees[i]) for i in tri],
           "class_triple": None if tri_c is None else [int(T.sizes[i]) for i in tri_c]}
    if not all(checks.values()):
        raise Alarm(f"degree/class bounds fail: {checks}")
    out["replay"] = replay_degree_bounds(G, out)
    return out


def replay_degree_bounds(G: EnumeratedGroup, w: dict) -> dict:
    """Re-derive the divisibility witnesses from class sizes and a fresh table."""
    index = G.order // len(grp.fitting(G))
    target = grp.pi_part(index, LARGE_PRIMES)
    sizes = sorted(len(c) for c in G.classes)
    degs = sorted(int(d) for d in chartab.char_table(G, seed=1).degrees)
    dt, ct = w["degree_triple"], w["class_triple"]
    pool = list(degs)
    avail = True
    for d in dt:
        if d in pool:
            pool.remove(d)
        else:
            avail = False
    checks = {
        "large_index": target == w["large_index"],
        "degree_triple_divisible": math.prod(dt) % target == 0,
        "degree_triple_from_distinct_characters": avail,
        "class_triple_divisible": math.prod(ct) % target == 0,
        "class_sizes_present": all(s in sizes for s in ct),
    }
    if not all(checks.values()):
        raise Alarm(f"divisibility witness failed replay: {checks}")
    return checks


def verify_prime_counts(G: EnumeratedGroup, T: chartab.CharTable | None = None) -> dict:
    if not grp.is_solvable(G):
        raise UsageError("group is not solvable")
    T = chartab.char_table(G) if T is None else T
    rho, sigma = chartab.rho_sigma(T.degrees)
    rho_s, sigma_s = chartab.rho_sigma(T.sizes)
    Z = grp.center(G)
    F = grp.fitting(G)
    ito = set(gf.factorize(G.order // len(F)))
    for r in gf.factorize(G.order):
        core = grp.p_core(G, r)
        if len(core) == grp.p_part(G.order, r) and not _is_abelian(G, core):
            ito.add(r)
    checks = {
        "rho_le_3sigma+2": len(rho) <= 3 * sigma + 2,
        "rho*_le_4sigma*+2": len(rho_s) <= 4 * sigma_s + 2,
        "rho*_is_pi(G/Z)": rho_s == set(gf.factorize(G.order // len(Z))),
        "rho_matches_ito": rho == ito,
    }
    out = {"rho": sorted(rho), "sigma": sigma, "rho*": sorted(rho_s), "sigma*": sigma_s, "checks": checks}
    if not all(checks.values()):
        raise Alarm(f"prime-count bounds fail: {checks}")
    return out

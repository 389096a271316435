"""Exact character tables by the class-algebra eigenvector method, p-blocks and degree statistics.

Character values are cyclotomic integers.  A value is stored as an integer
coefficient vector in the power basis 1, z, ..., z^(phi(m)-1) of Z[z],
where z is a primitive m-th root of unity and m is the exponent of G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy

from . import gf, grp
from .errors import ResourceError, UsageError
from .grp import EnumeratedGroup

CLASS_CAP = 128
ORDER_CAP = 10**5
_X = sympy.Symbol("x")
SPLIT_DRAWS = 40
PRIME_TRIES = 5


# -- cyclotomic arithmetic ----------------------------------------------------------------


def cyclotomic_poly(m: int) -> np.ndarray:
    """Integer coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    coeffs = sympy.Poly(sympy.cyclotomic_poly(m, _X), _X).all_coeffs()
    return np.array([int(c) for c in reversed(coeffs)], dtype=np.int64)


def residue_factor(m: int, p: int) -> np.ndarray:
    """Least irreducible factor mod p (by degree, then coefficients) of the m-th cyclotomic polynomial."""
    poly = sympy.Poly(sympy.cyclotomic_poly(m, _X), _X, modulus=p)
    facs = [[int(c) % p for c in reversed(f.all_coeffs())] for f, _ in poly.factor_list()[1]]
    return np.array(min(facs, key=lambda f: (len(f), f)), dtype=np.int64)


@dataclass(frozen=True)
class Cyclotomic:
    """Z[z] for z a primitive m-th root of unity, in the power basis."""

    m: int

    @cached_property
    def phi(self) -> np.ndarray:
        return cyclotomic_poly(self.m)

    @property
    def degree(self) -> int:
        return len(self.phi) - 1

    @cached_property
    def reduction(self) -> np.ndarray:
        """Row t = coordinates of z^t, for 0 <= t < m."""
        d = self.degree
        R = np.zeros((self.m, d), dtype=np.int64)
        cur = np.zeros(d, dtype=np.int64)
        cur[0] = 1
        for t in range(self.m):
            R[t] = cur
            top = cur[-1]
            cur = np.concatenate([[0], cur[:-1]]) - top * self.phi[:-1]
        return R

    def reduce(self, cyc: np.ndarray) -> np.ndarray:
        """Exponent-multiplicity vectors (last axis of length m) to coordinates."""
        return np.asarray(cyc, dtype=np.int64) @ self.reduction

    def conj_cyc(self, cyc: np.ndarray) -> np.ndarray:
        """z^t -> z^-t on exponent-multiplicity vectors."""
        idx = (-np.arange(self.m)) % self.m
        return np.asarray(cyc)[..., idx]

    def to_complex(self, coords: np.ndarray) -> np.ndarray:
        z = np.exp(2j * np.pi * np.arange(self.degree) / self.m)
        return np.asarray(coords) @ z


# -- class algebra ------------------------------------------------------------------------


def class_data(G: EnumeratedGroup) -> dict:
    classes = G.classes
    r = len(classes)
    if r > CLASS_CAP or G.order > ORDER_CAP:
        raise ResourceError(f"{r} classes / order {G.order} beyond the character table caps", r)
    reps = np.array([int(c[0]) for c in classes])
    sizes = np.array([len(c) for c in classes], dtype=np.int64)
    inv_class = G.class_of[G.inverse[reps]]
    return {"reps": reps, "sizes": sizes, "inverse": inv_class, "r": r}


def structure_constants(G: EnumeratedGroup) -> np.ndarray:
    """M[i, j, k] = #{x in C_i : x^-1 z_k in C_j} for a fixed z_k in C_k."""
    cd = class_data(G)
    r = cd["r"]
    cls = G.class_of
    allx = np.arange(G.order)
    M = np.zeros((r, r, r), dtype=np.int64)
    for k, z in enumerate(cd["reps"]):
        y = G.table[G.inverse[allx], z]
        np.add.at(M[:, :, k], (cls[allx], cls[y]), 1)
    return M


def _choose_prime(m: int, order: int, r: int, skip: int = 0) -> int:
    lo = max(2 * math.isqrt(order) + 1, r + 1)
    l = (lo // m + 1) * m + 1
    found = 0
    while True:
        if gf.is_prime(l):
            if found == skip:
                return l
            found += 1
        l += m


def _charpoly(F: gf.FiniteField, R: np.ndarray) -> np.ndarray:
    """Characteristic polynomial (lowest degree first) by Faddeev-LeVerrier; needs d < char."""
    d = len(R)
    p = F.p
    c = np.zeros(d + 1, dtype=np.int64)
    c[d] = 1
    M = np.zeros_like(R)
    I = gf.identity(d)
    for k in range(1, d + 1):
        M = (R @ M + c[d - k + 1] * I) % p
        tr = int(np.trace(R @ M % p)) % p
        c[d - k] = (-tr * pow(k, -1, p)) % p
    return c


def _roots(p: int, coeffs: np.ndarray) -> list[int]:
    x = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        val = (val * x + int(c)) % p
    return [int(v) for v in np.nonzero(val == 0)[0]]


def _common_eigenvectors(F: gf.FiniteField, mats: np.ndarray, rng: np.random.Generator) -> list[np.ndarray]:
    """Split GF(l)^r into one-dimensional common eigenspaces of commuting matrices."""
    r = mats.shape[1]
    p = F.p
    done: list[np.ndarray] = []
    todo = [gf.identity(r)]
    while todo:
        S = todo.pop()
        if len(S) == 1:
            done.append(S[0])
            continue
        _, piv = gf.rref(F, S)
        for attempt in range(len(mats) + SPLIT_DRAWS):
            if attempt < len(mats):
                B = mats[attempt]
            else:
                coef = rng.integers(0, p, size=len(mats))
                B = np.tensordot(coef, mats, axes=1) % p
            R = ((B @ S.T) % p)[piv, :]
            roots = _roots(p, _charpoly(F, R))
            if len(roots) <= 1:
                continue
            parts = []
            for lam in roots:
                ker = gf.nullspace(F, (R - lam * gf.identity(len(R))) % p)
                if len(ker):
                    parts.append(gf.row_space(F, gf.mat_mul(F, ker, S)))
            if sum(len(x) for x in parts) != len(S):
                raise ArithmeticError("class algebra not split over the chosen prime")
            todo.extend(parts)
            break
        else:
            raise ArithmeticError("eigenspace splitting did not converge")
    return done


@dataclass
class CharTable:
    group: EnumeratedGroup
    m: int
    reps: np.ndarray
    sizes: np.ndarray
    orders: np.ndarray
    inverse_class: np.ndarray
    values: np.ndarray  # (characters, classes, phi(m)) coordinates
    degrees: np.ndarray
    prime: int

    @cached_property
    def cyc(self) -> Cyclotomic:
        return Cyclotomic(self.m)

    def __len__(self) -> int:
        return len(self.degrees)

    def complex_values(self) -> np.ndarray:
        return self.cyc.to_complex(self.values)

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "exponent": self.m,
            "class_sizes": self.sizes.tolist(),
            "element_orders": self.orders.tolist(),
            "degrees": self.degrees.tolist(),
        }


def _lift(G: EnumeratedGroup, cd: dict, m: int, l: int, chi_mod: np.ndarray) -> np.ndarray:
    """Exponent multiplicities mu[chi, class, t] with chi(g) = sum_t mu_t z^t."""
    reps = cd["reps"]
    powers = np.empty((len(reps), m), dtype=np.int64)
    cur = np.zeros(len(reps), dtype=np.int64)
    for j in range(m):
        powers[:, j] = G.class_of[cur]
        cur = G.table[cur, reps]
    Fl = gf.field(l)
    z = Fl.root_of_unity(m)
    zinv = pow(z, -1, l)
    jt = np.outer(np.arange(m), np.arange(m)) % m
    zpow = np.array([pow(zinv, int(e), l) for e in range(m)], dtype=np.int64)[jt]
    minv = pow(m, -1, l)
    out = np.empty((len(chi_mod), len(reps), m), dtype=np.int64)
    for c, row in enumerate(chi_mod):
        X = row[powers]  # (classes, j)
        mu = (X @ zpow) % l
        out[c] = (mu * minv) % l
    return out


def char_table(G: EnumeratedGroup, seed: int = 0) -> CharTable:
    cd = class_data(G)
    M = structure_constants(G)
    m = G.exponent
    r = cd["r"]
    rng = np.random.default_rng(seed)
    last: Exception | None = None
    for attempt in range(PRIME_TRIES):
        l = _choose_prime(m, G.order, r, skip=attempt)
        try:
            table = _table_mod(G, cd, M, m, l, rng)
        except ArithmeticError as exc:
            last = exc
            continue
        return table
    raise ArithmeticError(f"character table computation failed: {last}")


def _table_mod(G, cd, M, m, l, rng) -> CharTable:
    Fl = gf.field(l)
    sizes = cd["sizes"]
    inv = cd["inverse"]
    vecs = _common_eigenvectors(Fl, M % l, rng)
    if len(vecs) != cd["r"]:
        raise ArithmeticError("wrong number of common eigenvectors")
    size_inv = np.array([pow(int(s), -1, l) for s in sizes], dtype=np.int64)
    chi_mod, degrees = [], []
    roots_of = (np.arange(1, math.isqrt(G.order) + 1, dtype=np.int64) ** 2) % l
    for w in vecs:
        w = (w * pow(int(w[0]), -1, l)) % l
        s = int(np.sum(w * w[inv] % l * size_inv % l) % l)
        d2 = G.order * pow(s, -1, l) % l
        hit = np.nonzero(roots_of == d2)[0]
        if len(hit) != 1:
            raise ArithmeticError("degree not recovered")
        d = int(hit[0]) + 1
        chi_mod.append((d * w % l) * size_inv % l)
        degrees.append(d)
    chi_mod = np.array(chi_mod)
    mu = _lift(G, cd, m, l, chi_mod)
    degrees = np.array(degrees, dtype=np.int64)
    if np.any(mu > degrees[:, None, None]) or np.any(mu.sum(axis=2) != degrees[:, None]):
        raise ArithmeticError("eigenvalue multiplicities out of range")
    cyc = Cyclotomic(m)
    values = cyc.reduce(mu)
    order = sorted(range(len(degrees)), key=lambda i: (int(degrees[i]), values[i].ravel().tolist()))
    T = CharTable(G, m, cd["reps"], sizes, G.orders[cd["reps"]], inv, values[order], degrees[order], l)
    T.__dict__["_mu"] = mu[order]
    check_orthogonality(T)
    return T


def _products(T: CharTable, weights: np.ndarray, axis: str) -> np.ndarray:
    """Sums of chi * conj(psi) over classes (rows) or over characters (columns).

    Products of exponent vectors are cyclic convolutions, done by FFT; the
    results are integers of modest size, and any rounding residue above
    1e-6 is treated as a failure rather than silently rounded.
    """
    mu = T.__dict__.get("_mu")
    if mu is None:
        raise UsageError("table lacks exponent data")
    X = mu.astype(np.float64)
    if axis == "cols":
        X = X.transpose(1, 0, 2)
        weights = np.ones(X.shape[1])
    f = np.fft.fft(X, axis=-1)  # (a, k, m)
    lhs = (f * weights[None, :, None]).transpose(2, 0, 1)  # (m, a, k)
    rhs = np.conj(f).transpose(2, 1, 0)  # (m, k, b); conj of fft is fft of the z -> 1/z image
    prod = np.fft.ifft(np.matmul(lhs, rhs).transpose(1, 2, 0), axis=-1).real
    out = np.rint(prod)
    if np.max(np.abs(prod - out), initial=0.0) > 1e-6:
        raise ArithmeticError("inexact convolution")
    return T.cyc.reduce(out.astype(np.int64))


def check_orthogonality(T: CharTable) -> None:
    N = T.group.order
    r = len(T)
    rows = _products(T, T.sizes, "rows")
    want = np.zeros_like(rows)
    want[np.arange(r), np.arange(r), 0] = N
    if not np.array_equal(rows, want):
        raise ArithmeticError("row orthogonality fails")
    cols = _products(T, T.sizes, "cols")
    want = np.zeros_like(cols)
    want[np.arange(r), np.arange(r), 0] = N // T.sizes
    if not np.array_equal(cols, want):
        raise ArithmeticError("column orthogonality fails")
    if int(np.sum(T.degrees**2)) != N or np.any(N % T.degrees):
        raise ArithmeticError("degree identities fail")


# -- blocks -------------------------------------------------------------------------------------


@dataclass
class BlockData:
    p: int
    n: int
    blocks: list[list[int]]  # character indices
    char_defect: list[int]
    block_defect: list[int]

    @property
    def min_defect(self) -> int:
        return min(self.block_defect)

    @property
    def defect_zero_blocks(self) -> int:
        return sum(1 for d in self.block_defect if d == 0)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "blocks": self.blocks, "defects": self.block_defect}


def central_characters(T: CharTable) -> np.ndarray:
    """omega_chi(K) = |K| chi(g_K) / chi(1) in coordinates; division is exact."""
    num = T.values * T.sizes[None, :, None]
    d = T.degrees[:, None, None]
    if np.any(num % d):
        raise ArithmeticError("central character is not an algebraic integer")
    return num // d


def p_blocks(T: CharTable, p: int) -> BlockData:
    N = T.group.order
    n = grp.valuation(N, p)
    vals = [grp.valuation(int(d), p) for d in T.degrees]
    cdef = [n - v for v in vals]
    if n == 0:
        blocks = [[i] for i in range(len(T))]
        return BlockData(p, 0, blocks, cdef, [0] * len(T))
    omega = central_characters(T)
    mp = T.m
    while mp % p == 0:
        mp //= p
    # residue field GF(p)[x]/(g); z_m maps to the class of x, a primitive mp-th root
    g = residue_factor(mp, p)
    f = len(g) - 1
    images = np.zeros((T.cyc.degree, f), dtype=np.int64)
    cur = np.zeros(f, dtype=np.int64)
    cur[0] = 1
    for t in range(T.cyc.degree):
        images[t] = cur
        top = cur[-1]
        cur = (np.concatenate([[0], cur[:-1]]) - top * g[:-1]) % p
    red = np.einsum("ckt,tf->ckf", omega % p, images) % p
    keys: dict[bytes, list[int]] = {}
    for i in range(len(T)):
        keys.setdefault(red[i].tobytes(), []).append(i)
    blocks = sorted(keys.values())
    bdef = [n - min(vals[i] for i in B) for B in blocks]
    return BlockData(p, n, blocks, cdef, bdef)


# -- degree statistics ---------------------------------------------------------------------------


@dataclass
class DegreeStats:
    p: int
    a: int
    b_P: int
    dl_P: int
    bstar_P: int
    P_derived: int
    rho: set[int] = field(default_factory=set)
    sigma: int = 0
    rho_star: set[int] = field(default_factory=set)
    sigma_star: int = 0

    def to_json(self) -> dict:
        return {"p": self.p, "a": self.a, "b(P)": self.b_P, "dl(P)": self.dl_P,
                "b*(P)": self.bstar_P, "|P'|": self.P_derived,
                "rho": sorted(self.rho), "sigma": self.sigma,
                "rho*": sorted(self.rho_star), "sigma*": self.sigma_star}


def rho_sigma(degrees) -> tuple[set[int], int]:
    primes = [set(gf.factorize(int(d))) for d in degrees]
    return set().union(*primes), max((len(s) for s in primes), default=0)


def degree_stats(G: EnumeratedGroup, T: CharTable, p: int) -> DegreeStats:
    a = max(grp.valuation(int(d), p) for d in T.degrees)
    P = grp.sylow(G, p)
    if len(P) != grp.p_part(G.order, p):
        raise AssertionError("Sylow subgroup has the wrong order")
    H = G.subgroup_group(P)
    abelian = bool(np.all(H.table == H.table.T))
    if abelian:
        bP, bstar, dl, Pd = 1, 1, (0 if H.order == 1 else 1), 1
    else:
        bP = int(char_table(H).degrees.max())
        bstar = max(len(c) for c in H.classes)
        dl = grp.derived_length(H)
        Pd = len(grp.derived_subgroup(H))
    rho, sigma = rho_sigma(T.degrees)
    rho_s, sigma_s = rho_sigma(T.sizes)
    return DegreeStats(p, a, bP, dl, bstar, Pd, rho, sigma, rho_s, sigma_s)

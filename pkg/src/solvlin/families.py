"""Explicit generators for the group families used throughout the package.

Every constructor returns a :class:`Construction`: generators in a fixed
representation plus the order the closure is expected to reach.  ``build``
turns a JSON recipe such as ``{"construct": "gamma", "q": 2, "n": 4}`` into
a construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import gf, grp
from .errors import DomainError, UsageError
from .gf import FiniteField
from .grp import EnumeratedGroup, MatrixRep, PermRep


@dataclass
class Construction:
    name: str
    params: dict
    rep: MatrixRep | PermRep
    generators: list[np.ndarray]
    predicted_order: int | None = None
    meta: dict = dc_field(default_factory=dict)

    def group(self, cap: int = grp.ORDER_CAP) -> EnumeratedGroup:
        G = grp.close(self.generators, self.rep, cap, name=self.name)
        if self.predicted_order is not None and G.order != self.predicted_order:
            raise AssertionError(
                f"{self.name}: closure order {G.order} != predicted {self.predicted_order}"
            )
        return G

    @property
    def field(self) -> FiniteField:
        if not isinstance(self.rep, MatrixRep) or len(self.rep.blocks) != 1:
            raise UsageError(f"{self.name} is not a single-field matrix group")
        return self.rep.blocks[0][0]

    @property
    def dim(self) -> int:
        return sum(self.rep.dims)

    def matrices(self) -> list[np.ndarray]:
        """Generators as square matrices (single-field constructions)."""
        n = self.dim
        _ = self.field
        return [g.reshape(n, n) for g in self.generators]


def _single(F: FiniteField, mats, name, params, order=None, **meta) -> Construction:
    mats = [np.asarray(m, dtype=np.int64) for m in mats]
    n = mats[0].shape[0]
    return Construction(name, params, MatrixRep([(F, n)]), [m.reshape(-1) for m in mats], order, meta)


# -- classical small groups ---------------------------------------------------


def gl(n: int, q: int) -> Construction:
    """GL(n, q) from an elementary-matrix generating set."""
    F = gf.gf(q)
    mats = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = gf.identity(n)
                m[i, j] = 1
                mats.append(m)
    if q > 2:
        d = gf.identity(n)
        d[0, 0] = F.primitive
        mats.append(d)
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return _single(F, mats, f"GL({n},{q})", {"n": n, "q": q}, order)


def sl2(q: int) -> Construction:
    F = gf.gf(q)
    mats = [np.array([[1, 1], [0, 1]]), np.array([[1, 0], [1, 1]])]
    if F.k > 1:
        mats.append(np.array([[1, F.primitive], [0, 1]]))
    return _single(F, mats, f"SL(2,{q})", {"q": q}, q * (q * q - 1))


def standard_gram(F: FiniteField, dim: int) -> np.ndarray:
    """Block diagonal of hyperbolic pairs [[0, 1], [-1, 0]]."""
    if dim % 2:
        raise DomainError("symplectic space needs even dimension")
    J = np.zeros((dim, dim), dtype=np.int64)
    for i in range(0, dim, 2):
        J[i, i + 1] = 1
        J[i + 1, i] = F.neg(1)
    return J


def transvection(F: FiniteField, gram: np.ndarray, v, c: int = 1) -> np.ndarray:
    """x -> x + c * B(x, v) * v, with B(x, v) = x^T gram v."""
    v = np.asarray(v, dtype=np.int64)
    w = gf.mat_vec(F, gram, v)
    outer = F.mul(F.mul(v[:, None], w[None, :]), c)
    return F.add(gf.identity(len(v)), outer)


def sp(dim: int, q: int) -> Construction:
    """Sp(dim, q) for the standard form, generated by transvections."""
    F = gf.gf(q)
    J = standard_gram(F, dim)
    vecs = [np.eye(dim, dtype=np.int64)[i] for i in range(dim)]
    vecs += [vecs[i] + vecs[i + 1] for i in range(dim - 1)]
    mats = [transvection(F, J, v) for v in vecs]
    if F.k > 1:
        mats.append(transvection(F, J, vecs[0], F.primitive))
    m = dim // 2
    order = q ** (m * m)
    for i in range(1, m + 1):
        order *= q ** (2 * i) - 1
    return _single(F, mats, f"Sp({dim},{q})", {"dim": dim, "q": q}, order, gram=J)


def q8_gf3() -> Construction:
    F = gf.field(3)
    return _single(F, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]], "Q8", {}, 8)


def d8_gf3() -> Construction:
    F = gf.field(3)
    return _single(F, [[[0, 1], [1, 0]], [[1, 0], [0, 2]]], "D8", {}, 8)


# -- semilinear groups ---------------------------------------------------------


def _mult_matrix(L: FiniteField, a: int) -> np.ndarray:
    """Matrix over GF(p) of x -> a*x on L, basis 1, x, x^2, ..."""
    base = gf.field(L.p)
    cols = [gf.decode(base, L.mul(a, L.p**i), L.k) for i in range(L.k)]
    return np.array(cols, dtype=np.int64).T


def _frob_matrix(L: FiniteField, e: int) -> np.ndarray:
    """Matrix of x -> x^(p^e)."""
    base = gf.field(L.p)
    cols = [gf.decode(base, L.pow(L.p**i, L.p**e), L.k) for i in range(L.k)]
    return np.array(cols, dtype=np.int64).T


def semilinear(q: int, n: int, cyclic: int | None = None, galois: int | None = None) -> Construction:
    """<x -> a x, x -> x^(q^(n/galois))> with a of order ``cyclic``, over GF(p).

    Defaults give the full semilinear group of GF(q^n).  Vector codes equal
    field element values, so the code of ``x`` in GF(q^n) is ``x`` itself.
    """
    p, k = gf.prime_power(q)
    L = gf.field(p, k * n)
    Q = q**n
    cyclic = Q - 1 if cyclic is None else cyclic
    galois = n if galois is None else galois
    if (Q - 1) % cyclic or n % galois:
        raise DomainError("cyclic part must divide q^n - 1 and galois part must divide n")
    a = L.root_of_unity(cyclic) if cyclic > 1 else 1
    mats = [_mult_matrix(L, a)]
    if galois > 1:
        mats.append(_frob_matrix(L, k * (n // galois)))
    name = "gamma" if (cyclic, galois) == (Q - 1, n) else "semilinear"
    return _single(
        gf.field(p), mats, f"{name}({q}^{n})",
        {"q": q, "n": n, "cyclic": cyclic, "galois": galois},
        cyclic * galois, big_field=L,
    )


def gamma(q: int, n: int) -> Construction:
    return semilinear(q, n)


def gamma0(q: int, n: int) -> Construction:
    c = semilinear(q, n, galois=1)
    c.name = f"gamma0({q}^{n})"
    return c


# -- extraspecial groups -------------------------------------------------------


def _clock_shift(F: FiniteField, p: int) -> tuple[np.ndarray, np.ndarray]:
    w = F.root_of_unity(p)
    Z = np.diag([F.pow(w, j) for j in range(p)]).astype(np.int64)
    X = np.zeros((p, p), dtype=np.int64)
    for j in range(p):
        X[(j + 1) % p, j] = 1
    return Z, X


def _kron(F: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n, m = A.shape[0], B.shape[0]
    out = F.mul(A[:, None, :, None], B[None, :, None, :])
    return np.asarray(out, dtype=np.int64).reshape(n * m, n * m)


def extraspecial_rep(p: int, m: int, r: int, *, scalars: bool = False, torus: bool = False,
                     fourier: bool = False, phase: bool = False, symplectic: bool = False) -> Construction:
    """Exponent-p extraspecial group p^(1+2m) by clock and shift matrices on GF(r)^(p^m).

    Optional normalising extras (m = 1 only for ``torus``/``symplectic``):
    all scalars of GF(r); the permutation e_j -> e_(t j) with t a primitive
    root mod p; the Fourier matrix; the quadratic-phase matrix.  Fourier and
    phase together induce SL(2, p) on E/Z(E); ``symplectic`` turns on both.
    With torus and Fourier the induced group is the quaternion group for p = 5.
    """
    if p == 2 or not gf.is_prime(p):
        raise DomainError("clock/shift construction needs an odd prime p")
    F = gf.gf(r)
    if (r - 1) % p:
        raise DomainError(f"{p} does not divide {r} - 1: no faithful degree-{p}^{m} representation")
    if p**m > 64:
        raise DomainError("p^m exceeds 64")
    Z, X = _clock_shift(F, p)
    dim = p**m
    mats = []
    for i in range(m):
        left = gf.identity(p**i)
        right = gf.identity(p ** (m - i - 1))
        for base in (Z, X):
            mats.append(_kron(F, _kron(F, left, base), right))
    order = p ** (1 + 2 * m)
    fourier = fourier or symplectic
    phase = phase or symplectic
    if (torus or fourier or phase) and m != 1:
        raise DomainError("normaliser extras implemented for m = 1")
    extra_scalar = 1
    if scalars and r - 1 > p:
        mats.append(np.diag([F.primitive] * dim).astype(np.int64))
        extra_scalar = (r - 1) // p
    top = 1
    if torus:
        t = gf._primitive_root(p)
        P = np.zeros((p, p), dtype=np.int64)
        for j in range(p):
            P[(t * j) % p, j] = 1
        mats.append(P)
        top = p - 1
    w = F.root_of_unity(p)
    if fourier:
        mats.append(np.array([[F.pow(w, (j * k) % p) for k in range(p)] for j in range(p)], dtype=np.int64))
        top = None
    if phase:
        half = pow(2, -1, p)
        mats.append(np.diag([F.pow(w, (half * j * j) % p) for j in range(p)]).astype(np.int64))
        top = None
    total = None if top is None else order * extra_scalar * top
    return _single(F, mats, f"extraspecial({p}^{1 + 2 * m} over GF({r}))",
                   {"p": p, "m": m, "r": r, "scalars": scalars, "torus": torus,
                    "fourier": fourier, "phase": phase}, total, e=p**m)


# -- combinations ---------------------------------------------------------------


def _blockdiag(mats: list[np.ndarray]) -> np.ndarray:
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.int64)
    o = 0
    for m in mats:
        k = m.shape[0]
        out[o : o + k, o : o + k] = m
        o += k
    return out


def direct_sum(*parts: Construction) -> Construction:
    """External direct product acting block-diagonally.

    Parts over one field give a single matrix group; parts over different
    fields give a block representation (mixed characteristic).
    """
    if any(not isinstance(c.rep, MatrixRep) for c in parts):
        raise UsageError("direct_sum needs matrix constructions")
    blocks = [b for c in parts for b in c.rep.blocks]
    gens: list[list[np.ndarray]] = []
    for idx, c in enumerate(parts):
        for g in c.generators:
            mats = []
            for jdx, d in enumerate(parts):
                if jdx == idx:
                    mats += c.rep.split(g)
                else:
                    mats += [gf.identity(n) for _, n in d.rep.blocks]
            gens.append(mats)
    order = None
    if all(c.predicted_order for c in parts):
        order = int(np.prod([c.predicted_order for c in parts]))
    name = " + ".join(c.name for c in parts)
    params = {"parts": [c.params for c in parts]}
    fields = {F for F, _ in blocks}
    if len(fields) == 1:
        F = blocks[0][0]
        mats = [_blockdiag(m) for m in gens]
        return _single(F, mats, name, params, order, summand_dims=[n for _, n in blocks])
    rep = MatrixRep(blocks)
    return Construction(name, params, rep, [rep.join(m) for m in gens], order,
                        {"summand_dims": [n for _, n in blocks]})


def tensor_embed(a: Construction, b: Construction) -> Construction:
    """Kronecker action of a x b; realises central products of extraspecials."""
    F = a.field
    if b.field != F:
        raise UsageError("tensor_embed needs a common field")
    Ia, Ib = gf.identity(a.dim), gf.identity(b.dim)
    mats = [_kron(F, m, Ib) for m in a.matrices()] + [_kron(F, Ia, m) for m in b.matrices()]
    meta = {}
    if "e" in a.meta and "e" in b.meta:
        meta["e"] = a.meta["e"] * b.meta["e"]
    return _single(F, mats, f"{a.name} (x) {b.name}", {"a": a.params, "b": b.params}, None, **meta)


def wreath_embed(h: Construction, top: list[list[int]], degree: int, top_order: int | None = None) -> Construction:
    """H wr S inside GL(k * dim H): block-diagonal base plus block permutations."""
    F = h.field
    d = h.dim
    I = gf.identity(d)
    mats = []
    for m in h.matrices():
        mats.append(_blockdiag([m] + [I] * (degree - 1)))
    for perm in top:
        P = np.zeros((d * degree, d * degree), dtype=np.int64)
        for src, dst in enumerate(perm):
            P[dst * d : (dst + 1) * d, src * d : (src + 1) * d] = I
        mats.append(P)
    order = None
    if h.predicted_order and top_order:
        order = h.predicted_order**degree * top_order
    return _single(F, mats, f"{h.name} wr S", {"h": h.params, "top": top}, order,
                   blocks=[d] * degree)


# -- permutation groups ---------------------------------------------------------


def symmetric(n: int) -> Construction:
    gens = [np.roll(np.arange(n), -1)]
    if n > 2:
        t = np.arange(n)
        t[[0, 1]] = [1, 0]
        gens.append(t)
    import math

    return Construction(f"S{n}", {"n": n}, PermRep(n), gens, math.factorial(n))


def cyclic(n: int) -> Construction:
    return Construction(f"Z{n}", {"n": n}, PermRep(n), [np.roll(np.arange(n), -1)], n)


def metacyclic(p: int, d: int) -> Construction:
    """Z_p x| Z_d on p points: x -> x + 1 and x -> r x with r of order d mod p."""
    if (p - 1) % d:
        raise DomainError(f"{d} does not divide {p} - 1")
    F = gf.field(p)
    r = F.root_of_unity(d) if d > 1 else 1
    pts = np.arange(p)
    return Construction(f"Z{p}:Z{d}", {"p": p, "d": d}, PermRep(p),
                        [(pts + 1) % p, (r * pts) % p], p * d)


def affine(h: Construction) -> Construction:
    """V x| H as permutations of the vectors of V (codes), for H <= GL(V)."""
    F = h.field
    n = h.dim
    V = gf.all_vectors(F, n)
    gens = []
    for m in h.matrices():
        gens.append(gf.encode(F, gf.mat_vec(F, m, V)))
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        gens.append(gf.encode(F, F.add(V, e)))
    order = F.q**n * h.predicted_order if h.predicted_order else None
    return Construction(f"affine({h.name})", {"h": h.params}, PermRep(F.q**n), gens, order)


# -- symplectic utilities --------------------------------------------------------


@dataclass(frozen=True)
class SymplecticSpace:
    F: FiniteField
    dim: int
    gram: np.ndarray

    @classmethod
    def standard(cls, F: FiniteField, dim: int) -> "SymplecticSpace":
        return cls(F, dim, standard_gram(F, dim))

    def form(self, x, y) -> int:
        return int(gf.mat_vec(self.F, np.asarray(x)[None, :], gf.mat_vec(self.F, self.gram, y))[0])


def is_symplectic(m: np.ndarray, S: SymplecticSpace) -> bool:
    F = S.F
    lhs = gf.mat_mul(F, gf.mat_mul(F, np.asarray(m).T, S.gram), m)
    return bool(np.array_equal(lhs, S.gram))


def isotropy_type(basis: np.ndarray, S: SymplecticSpace) -> str:
    """Classify the form restricted to span(basis): nonsingular, totally_isotropic or mixed."""
    F = S.F
    B = gf.row_space(F, np.asarray(basis, dtype=np.int64))
    R = gf.mat_mul(F, gf.mat_mul(F, B, S.gram), B.T)
    if not R.any():
        return "totally_isotropic"
    if gf.rank(F, R) == len(B):
        return "nonsingular"
    return "mixed"


# -- normaliser route inside an enumerated group -----------------------------------


def normalizer_elements(G: EnumeratedGroup, sub_gens: list[np.ndarray], inverses: np.ndarray) -> np.ndarray:
    """Indices g of G with g s g^-1 in <sub_gens> for every generator s.

    ``inverses`` holds the flattened inverse of every element of G, so the
    test needs no multiplication table.
    """
    rep = G.rep
    S = grp.close(sub_gens, rep)
    keys = set(rep.keys(S.data))
    ok = np.ones(G.order, dtype=bool)
    for s in sub_gens:
        gs = rep.mul(G.data, s)
        F, n = rep.blocks[0]
        conj = gf.mat_mul(F, gs.reshape(-1, n, n), inverses.reshape(-1, n, n)).reshape(G.order, -1)
        ok &= np.array([k in keys for k in rep.keys(conj)])
    return np.nonzero(ok)[0]


def symplectic_inverses(G: EnumeratedGroup, gram: np.ndarray) -> np.ndarray:
    """g^-1 = J^-1 g^T J for every element of a symplectic group."""
    F, n = G.rep.blocks[0]
    Jinv = gf.mat_inv(F, gram)
    M = G.data.reshape(-1, n, n)
    out = gf.mat_mul(F, gf.mat_mul(F, Jinv, np.transpose(M, (0, 2, 1))), gram)
    return out.reshape(G.order, -1)


def sp43_extraspecial_d10(cap: int = grp.ORDER_CAP) -> tuple[Construction, dict]:
    """(D8 o Q8).D10 inside Sp(4,3), found through normalisers.

    E = D8 (x) Q8 preserves the form I (x) J, the standard form on GF(3)^4.
    N = N_Sp(E) is E.A5; the result is the normaliser in N of E<x> for an
    element x of order 5, of order 32 * 10.
    """
    F = gf.field(3)
    spc = sp(4, 3)
    Sp = spc.group(cap)
    E = tensor_embed(d8_gf3(), q8_gf3())
    invs = symplectic_inverses(Sp, spc.meta["gram"])
    N_idx = normalizer_elements(Sp, E.generators, invs)
    Ngrp = grp.close([Sp.data[i] for i in N_idx], Sp.rep)
    orders5 = [i for i in range(Ngrp.order) if Ngrp.orders[i] == 5]
    x = Ngrp.data[orders5[0]]
    S_gens = list(E.generators) + [x]
    G_idx = normalizer_elements(Ngrp, S_gens, np.array([Ngrp.data[j] for j in Ngrp.inverse]))
    G_gens = grp.generating_set(Ngrp, G_idx)
    mats = [Ngrp.data[i].reshape(4, 4) for i in G_gens]
    c = _single(F, mats, "(D8oQ8).D10", {}, len(G_idx), gram=spc.meta["gram"])
    info = {"sp_order": Sp.order, "normalizer_order": Ngrp.order, "order": len(G_idx)}
    return c, info


# -- recipes ------------------------------------------------------------------------


def build(recipe: dict) -> Construction:
    """Construction from a JSON recipe."""
    kind = recipe.get("construct")
    r = {k: v for k, v in recipe.items() if k != "construct"}
    if kind == "gamma":
        return gamma(r["q"], r["n"])
    if kind == "gamma0":
        return gamma0(r["q"], r["n"])
    if kind == "semilinear":
        return semilinear(r["q"], r["n"], r.get("cyclic"), r.get("galois"))
    if kind == "gl":
        return gl(r["n"], r["q"])
    if kind == "sl2":
        return sl2(r["q"])
    if kind == "sp":
        return sp(r["dim"], r["q"])
    if kind == "q8":
        return q8_gf3()
    if kind == "d8":
        return d8_gf3()
    if kind == "extraspecial":
        flags = {k: bool(r.get(k, False)) for k in ("scalars", "torus", "fourier", "phase", "symplectic")}
        return extraspecial_rep(r["p"], r.get("m", 1), r["r"], **flags)
    if kind == "direct_sum":
        return direct_sum(*[build(x) for x in r["parts"]])
    if kind == "tensor":
        return tensor_embed(build(r["a"]), build(r["b"]))
    if kind == "wreath":
        return wreath_embed(build(r["h"]), r["top"], r["degree"], r.get("top_order"))
    if kind == "symmetric":
        return symmetric(r["n"])
    if kind == "cyclic":
        return cyclic(r["n"])
    if kind == "metacyclic":
        return metacyclic(r["p"], r["d"])
    if kind == "affine":
        return affine(build(r["h"]))
    if kind == "sp43_d10":
        return sp43_extraspecial_d10()[0]
    if kind == "group":
        spec = r["spec"]
        G = grp.group_from_spec(spec)
        return Construction(spec.get("name", "group"), {}, G.rep, [G.data[i] for i in G.generators], G.order)
    raise UsageError(f"unknown construction {kind!r}")

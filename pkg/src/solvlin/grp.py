"""Fully enumerated finite groups and their structural data.

A group is closed from generators by breadth-first search.  Elements are
numbered in discovery order (index 0 is the identity), and everything else
(multiplication table, classes, Fitting series, ...) is computed on those
indices.  Subgroups are sorted ``int64`` arrays of element indices.

Products follow the matrix convention ``(g*h)(v) = g(h(v))``; for
permutations ``(g*h)[i] = g[h[i]]``.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field as dc_field
from functools import cached_property, reduce

import numpy as np

from . import gf
from .errors import ResourceError, UsageError
from .gf import FiniteField, factorize

ORDER_CAP = 10**6
TABLE_CAP = 6000
CLASS_CAP = 40


# -- element representations ------------------------------------------------


class MatrixRep:
    """Block-diagonal matrices; each block lives over its own field.

    A single block is an ordinary matrix group.  Several blocks over fields
    of different characteristic model a mixed-characteristic direct sum.
    """

    kind = "matrix"

    def __init__(self, blocks: list[tuple[FiniteField, int]]):
        if not blocks:
            raise UsageError("need at least one block")
        self.blocks = [(F, int(n)) for F, n in blocks]
        self.offsets = np.cumsum([0] + [n * n for _, n in self.blocks])
        self.width = int(self.offsets[-1])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatrixRep) and self.blocks == other.blocks

    @property
    def dims(self) -> list[int]:
        return [n for _, n in self.blocks]

    def identity(self) -> np.ndarray:
        return self.join([gf.identity(n) for _, n in self.blocks])

    def join(self, mats) -> np.ndarray:
        return np.concatenate([np.asarray(m, dtype=np.int64).reshape(-1) for m in mats])

    def split(self, x: np.ndarray) -> list[np.ndarray]:
        x = np.asarray(x)
        lead = x.shape[:-1]
        return [
            x[..., self.offsets[b] : self.offsets[b + 1]].reshape(*lead, n, n)
            for b, (_, n) in enumerate(self.blocks)
        ]

    def mul(self, X: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Row-wise ``X[i] * g``."""
        out = [
            gf.mat_mul(F, a, b)
            for (F, _), a, b in zip(self.blocks, self.split(X), self.split(g))
        ]
        lead = np.asarray(X).shape[:-1]
        return np.concatenate([o.reshape(*lead, -1) for o in out], axis=-1)

    def key(self, x: np.ndarray) -> bytes:
        return np.asarray(x, dtype=np.int32).tobytes()

    def keys(self, X: np.ndarray) -> list[bytes]:
        X = np.ascontiguousarray(X, dtype=np.int32)
        return [row.tobytes() for row in X]

    def check_invertible(self, x: np.ndarray) -> None:
        for (F, _), m in zip(self.blocks, self.split(x)):
            if gf.det(F, m) == 0:
                raise UsageError("generator is singular")

    def describe(self) -> dict:
        if len(self.blocks) == 1:
            F, n = self.blocks[0]
            return {"kind": "matrix", "field": F.to_json(), "dim": n}
        return {
            "kind": "blockmatrix",
            "blocks": [{"field": F.to_json(), "dim": n} for F, n in self.blocks],
        }


class PermRep:
    kind = "perm"

    def __init__(self, degree: int):
        self.degree = int(degree)
        self.width = self.degree

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PermRep) and self.degree == other.degree

    def identity(self) -> np.ndarray:
        return np.arange(self.degree, dtype=np.int64)

    def mul(self, X: np.ndarray, g: np.ndarray) -> np.ndarray:
        return np.asarray(X)[..., np.asarray(g)]

    def key(self, x: np.ndarray) -> bytes:
        return np.asarray(x, dtype=np.int32).tobytes()

    def keys(self, X: np.ndarray) -> list[bytes]:
        X = np.ascontiguousarray(X, dtype=np.int32)
        return [row.tobytes() for row in X]

    def check_invertible(self, x: np.ndarray) -> None:
        if sorted(np.asarray(x).tolist()) != list(range(self.degree)):
            raise UsageError("generator is not a permutation")

    def describe(self) -> dict:
        return {"kind": "perm", "degree": self.degree}


# -- the group ---------------------------------------------------------------


class EnumeratedGroup:
    """A finite group with every element listed.

    Built either by :func:`close` (concrete elements plus the right Cayley
    graph) or from a multiplication table (quotients, abstract subgroups).
    """

    def __init__(
        self,
        order: int,
        *,
        rep=None,
        data: np.ndarray | None = None,
        gens: list[int] | None = None,
        cayley: np.ndarray | None = None,
        parent: np.ndarray | None = None,
        parent_gen: np.ndarray | None = None,
        table: np.ndarray | None = None,
        name: str = "",
    ):
        self.order = int(order)
        self.rep = rep
        self.data = data
        self.gens = list(gens) if gens is not None else None
        self.cayley = cayley
        self._parent = parent
        self._parent_gen = parent_gen
        self.name = name
        if table is not None:
            self.__dict__["table"] = table
        self._index: dict[bytes, int] | None = None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<EnumeratedGroup{label} order={self.order}>"

    @classmethod
    def from_table(cls, table: np.ndarray, name: str = "") -> "EnumeratedGroup":
        table = np.asarray(table, dtype=np.int64)
        if table.shape[0] == 0 or not np.array_equal(table[0], np.arange(len(table))):
            raise UsageError("index 0 must be the identity")
        return cls(len(table), table=table, name=name)

    # -- element access --

    def element(self, i: int):
        if self.data is None:
            raise UsageError("abstract group has no concrete elements")
        x = self.data[i]
        if isinstance(self.rep, MatrixRep):
            mats = self.rep.split(x)
            return mats[0] if len(mats) == 1 else mats
        return x

    def index(self, x) -> int:
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.rep.keys(self.data))}
        if isinstance(self.rep, MatrixRep) and not isinstance(x, np.ndarray):
            x = self.rep.join(x)
        elif isinstance(self.rep, MatrixRep) and x.ndim == 2:
            x = self.rep.join([x])
        return self._index[self.rep.key(x)]

    # -- multiplication data --

    @cached_property
    def table(self) -> np.ndarray:
        """Full multiplication table, ``table[i, j] = index(e_i * e_j)``."""
        N = self.order
        if N > TABLE_CAP:
            raise ResourceError(f"multiplication table for order {N} exceeds cap {TABLE_CAP}", N)
        if self.cayley is None:
            raise UsageError("no Cayley graph to build a table from")
        T = np.empty((N, N), dtype=np.int64)
        T[:, 0] = np.arange(N)
        for j in range(1, N):
            T[:, j] = self.cayley[T[:, self._parent[j]], self._parent_gen[j]]
        return T

    def mul(self, i, j):
        return self.table[i, j]

    @cached_property
    def inverse(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == 0)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        return inv

    @cached_property
    def generators(self) -> list[int]:
        if self.gens is not None:
            return [g for g in self.gens if g != 0] or [0]
        return generating_set(self, np.arange(self.order))

    @cached_property
    def orders(self) -> np.ndarray:
        """Element orders."""
        N = self.order
        out = np.zeros(N, dtype=np.int64)
        cur = np.arange(N)
        k = 1
        while (out == 0).any():
            hit = (cur == 0) & (out == 0)
            out[hit] = k
            cur = self.table[cur, np.arange(N)]
            k += 1
        return out

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (int(o) for o in np.unique(self.orders)), 1)

    def power(self, idx, e: int):
        """``x**e`` elementwise for an index array, e >= 0."""
        idx = np.asarray(idx)
        result = np.zeros_like(idx)
        base = idx.copy()
        while e:
            if e & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            e >>= 1
        return result

    def conj(self, g, x):
        """g x g^-1."""
        return self.table[self.table[g, x], self.inverse[g]]

    def commutator(self, x, y):
        """x^-1 y^-1 x y."""
        inv = self.inverse
        return self.table[self.table[inv[x], inv[y]], self.table[x, y]]

    # -- classes --

    @cached_property
    def _classes(self) -> tuple[list[np.ndarray], np.ndarray]:
        N = self.order
        class_of = np.full(N, -1, dtype=np.int64)
        raw: list[np.ndarray] = []
        allg = np.arange(N)
        for x in range(N):
            if class_of[x] >= 0:
                continue
            cl = np.unique(self.conj(allg, x))
            class_of[cl] = len(raw)
            raw.append(cl)
        orders = self.orders
        perm = sorted(range(len(raw)), key=lambda c: (int(orders[raw[c][0]]), len(raw[c]), int(raw[c][0])))
        classes = [raw[c] for c in perm]
        remap = np.empty(len(raw), dtype=np.int64)
        remap[perm] = np.arange(len(raw))
        return classes, remap[class_of]

    @property
    def classes(self) -> list[np.ndarray]:
        return self._classes[0]

    @property
    def class_of(self) -> np.ndarray:
        return self._classes[1]

    # -- restriction --

    def subgroup_group(self, S) -> "EnumeratedGroup":
        """``S`` as a group in its own right (indices renumbered, 0 = identity)."""
        S = np.asarray(S, dtype=np.int64)
        if S[0] != 0:
            S = np.sort(S)
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[S] = np.arange(len(S))
        sub = self.table[np.ix_(S, S)]
        H = EnumeratedGroup.from_table(pos[sub])
        H.embedding = S
        if self.data is not None:
            H.rep, H.data = self.rep, self.data[S]
        return H


# -- closure -----------------------------------------------------------------


def close(generators, rep, cap: int = ORDER_CAP, name: str = "") -> EnumeratedGroup:
    """Enumerate the group generated by ``generators`` in the given rep."""
    gens = [_flat(rep, g) for g in generators]
    for g in gens:
        if g.shape[0] != rep.width:
            raise UsageError("generator does not match the representation")
        rep.check_invertible(g)
    gens = sorted({rep.key(g): g for g in gens}.items())
    gens = [g for _, g in gens]
    ident = rep.identity()
    index = {rep.key(ident): 0}
    chunks = [ident[None, :]]
    parent, parent_gen = [0], [0]
    cay_rows: list[np.ndarray] = []
    frontier = np.array([0])
    frontier_data = ident[None, :]
    count = 1
    cay = defaultdict(list)
    while len(frontier):
        new_idx: list[int] = []
        new_data: list[np.ndarray] = []
        prod_all = [rep.mul(frontier_data, g) for g in gens]
        for gi, prods in enumerate(prod_all):
            keys = rep.keys(prods)
            targets = np.empty(len(frontier), dtype=np.int64)
            for r, k in enumerate(keys):
                t = index.get(k)
                if t is None:
                    t = count
                    index[k] = t
                    count += 1
                    if count > cap:
                        raise ResourceError(f"group order exceeds cap {cap}", count)
                    new_idx.append(t)
                    new_data.append(prods[r])
                    parent.append(int(frontier[r]))
                    parent_gen.append(gi)
                targets[r] = t
            cay[gi].append((frontier, targets))
        if new_data:
            frontier_data = np.array(new_data)
            chunks.append(frontier_data)
        else:
            frontier_data = np.zeros((0, rep.width), dtype=np.int64)
        frontier = np.array(new_idx, dtype=np.int64)
    data = np.concatenate(chunks)
    cayley = np.empty((count, max(len(gens), 1)), dtype=np.int64)
    if not gens:
        cayley[:, 0] = 0
    for gi, parts in cay.items():
        for src, dst in parts:
            cayley[src, gi] = dst
    G = EnumeratedGroup(
        count,
        rep=rep,
        data=data,
        gens=[int(cayley[0, gi]) for gi in range(len(gens))],
        cayley=cayley,
        parent=np.array(parent),
        parent_gen=np.array(parent_gen),
        name=name,
    )
    G._index = index
    return G


def _flat(rep, g) -> np.ndarray:
    if isinstance(rep, MatrixRep) and isinstance(g, (list, tuple)):
        return rep.join(g)
    return np.asarray(g, dtype=np.int64).reshape(-1)


def matrix_group(F: FiniteField, generators, cap: int = ORDER_CAP, name: str = "") -> EnumeratedGroup:
    n = np.asarray(generators[0]).shape[0]
    rep = MatrixRep([(F, n)])
    return close([np.asarray(g).reshape(-1) for g in generators], rep, cap, name)


def perm_group(degree: int, generators, cap: int = ORDER_CAP, name: str = "") -> EnumeratedGroup:
    return close([np.asarray(g) for g in generators], PermRep(degree), cap, name)


def group_from_spec(spec: dict, cap: int = ORDER_CAP) -> EnumeratedGroup:
    """Build a group from the JSON group spec format."""
    kind = spec.get("kind")
    if kind == "matrix":
        F = gf.field(spec["field"]["p"], spec["field"].get("k", 1))
        n = int(spec["dim"])
        gens = [np.asarray(g, dtype=np.int64) for g in spec["generators"]]
        for g in gens:
            if g.shape != (n, n) or g.min() < 0 or g.max() >= F.q:
                raise UsageError("generator shape or entries invalid")
        return matrix_group(F, gens, cap, spec.get("name", ""))
    if kind == "blockmatrix":
        blocks = [(gf.field(b["field"]["p"], b["field"].get("k", 1)), int(b["dim"])) for b in spec["blocks"]]
        rep = MatrixRep(blocks)
        gens = [rep.join([np.asarray(m) for m in g]) for g in spec["generators"]]
        return close(gens, rep, cap, spec.get("name", ""))
    if kind == "perm":
        d = int(spec["degree"])
        return perm_group(d, spec["generators"], cap, spec.get("name", ""))
    raise UsageError(f"unknown group kind {kind!r}")


def group_to_spec(G: EnumeratedGroup) -> dict:
    spec = G.rep.describe()
    if isinstance(G.rep, MatrixRep):
        gens = [G.rep.split(G.data[i]) for i in G.generators]
        if len(G.rep.blocks) == 1:
            spec["generators"] = [m[0].tolist() for m in gens]
        else:
            spec["generators"] = [[b.tolist() for b in m] for m in gens]
    else:
        spec["generators"] = [G.data[i].tolist() for i in G.generators]
    return spec


# -- subgroups ---------------------------------------------------------------


def generated(G: EnumeratedGroup, S) -> np.ndarray:
    """The subgroup generated by the index set S."""
    T = G.table
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    members = np.array([0])
    gens: list[int] = []
    for s in np.unique(np.asarray(S, dtype=np.int64)):
        if mask[s]:
            continue
        gens.append(int(s))
        frontier = members
        while len(frontier):
            nxt = np.unique(T[np.ix_(frontier, gens)].ravel())
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        members = np.nonzero(mask)[0]
    return np.nonzero(mask)[0]


def generating_set(G: EnumeratedGroup, S) -> list[int]:
    """A small generating set of the subgroup S (greedy)."""
    S = np.asarray(S, dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for s in S:
        if not mask[s]:
            gens.append(int(s))
            mask[:] = False
            mask[generated(G, gens)] = True
    return gens


def normal_closure(G: EnumeratedGroup, S, within=None) -> np.ndarray:
    """Smallest subgroup containing S and normalised by ``within`` (default G)."""
    conj_by = G.generators if within is None else generating_set(G, within)
    K = generated(G, S)
    while True:
        kg = generating_set(G, K)
        images = np.unique(G.conj(np.asarray(conj_by)[:, None], np.asarray(kg)[None, :]).ravel()) if kg else np.array([0])
        inK = np.isin(images, K)
        if inK.all():
            return K
        K = generated(G, np.concatenate([K, images[~inK]]))


def is_subgroup(G: EnumeratedGroup, S) -> bool:
    S = np.asarray(S)
    return 0 in S and np.isin(G.table[np.ix_(S, S)], S).all()


def is_normal(G: EnumeratedGroup, S) -> bool:
    """Normal iff S is a union of conjugacy classes."""
    S = np.asarray(S)
    counts = np.bincount(G.class_of[S], minlength=len(G.classes))
    sizes = np.array([len(c) for c in G.classes])
    return bool(np.all((counts == 0) | (counts == sizes)))


def intersect(A, B) -> np.ndarray:
    return np.intersect1d(A, B)


def product(G: EnumeratedGroup, A, B) -> np.ndarray:
    """The set AB (a subgroup when one factor normalises the other)."""
    return np.unique(G.table[np.ix_(np.asarray(A), np.asarray(B))].ravel())


def centralizer(G: EnumeratedGroup, S, within=None) -> np.ndarray:
    """Elements of ``within`` (default G) commuting with every element of S."""
    pool = np.arange(G.order) if within is None else np.asarray(within)
    gens = generating_set(G, generated(G, S)) if len(np.asarray(S)) else []
    ok = np.ones(len(pool), dtype=bool)
    for s in gens:
        ok &= G.table[pool, s] == G.table[s, pool]
    return pool[ok]


def center(G: EnumeratedGroup, S=None) -> np.ndarray:
    S = np.arange(G.order) if S is None else np.asarray(S)
    return centralizer(G, S, within=S)


def normalizer(G: EnumeratedGroup, S, within=None) -> np.ndarray:
    pool = np.arange(G.order) if within is None else np.asarray(within)
    gens = generating_set(G, S)
    inS = np.zeros(G.order, dtype=bool)
    inS[np.asarray(S)] = True
    ok = np.ones(len(pool), dtype=bool)
    for s in gens:
        ok &= inS[G.conj(pool, s)]
    return pool[ok]


def commutator_subgroup(G: EnumeratedGroup, X, Y) -> np.ndarray:
    """[X, Y] for subgroups X, Y where each normalises the other or Y = G."""
    gx = generating_set(G, X)
    gy = generating_set(G, Y)
    if not gx or not gy:
        return np.array([0])
    comms = G.commutator(np.asarray(gx)[:, None], np.asarray(gy)[None, :]).ravel()
    within = np.union1d(np.asarray(X), np.asarray(Y))
    return normal_closure(G, comms, within=generated(G, within))


def derived_subgroup(G: EnumeratedGroup, H=None) -> np.ndarray:
    H = np.arange(G.order) if H is None else np.asarray(H)
    return commutator_subgroup(G, H, H)


def derived_series(G: EnumeratedGroup, H=None) -> list[np.ndarray]:
    H = np.arange(G.order) if H is None else np.asarray(H)
    series = [H]
    while len(series[-1]) > 1:
        D = derived_subgroup(G, series[-1])
        if len(D) == len(series[-1]):
            break
        series.append(D)
    return series


def is_solvable(G: EnumeratedGroup, H=None) -> bool:
    return len(derived_series(G, H)[-1]) == 1


def derived_length(G: EnumeratedGroup, H=None) -> int:
    series = derived_series(G, H)
    if len(series[-1]) != 1:
        raise UsageError("group is not solvable")
    return len(series) - 1


# -- quotients ----------------------------------------------------------------


@dataclass
class Quotient:
    group: EnumeratedGroup
    proj: np.ndarray  # element index of G -> element index of G/N
    reps: np.ndarray  # quotient index -> a preimage in G

    def preimage(self, S) -> np.ndarray:
        return np.nonzero(np.isin(self.proj, np.asarray(S)))[0]


def quotient(G: EnumeratedGroup, N) -> Quotient:
    N = np.asarray(N)
    if not is_normal(G, N):
        raise UsageError("quotient by a non-normal subgroup")
    label = G.table[:, N].min(axis=1)
    reps, proj = np.unique(label, return_inverse=True)
    Q = proj[G.table[np.ix_(reps, reps)]]
    return Quotient(EnumeratedGroup.from_table(Q), proj, reps)


# -- primes and Fitting data ----------------------------------------------------


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def pi_part(n: int, primes) -> int:
    out = 1
    for r, e in factorize(n).items():
        if r in primes:
            out *= r**e
    return out


def p_part(n: int, p: int) -> int:
    return pi_part(n, {p})


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_pi_number(n: int, primes) -> bool:
    return pi_part(n, primes) == n


def p_elements(G: EnumeratedGroup, p: int) -> np.ndarray:
    ords = G.orders
    return np.array([i for i in range(G.order) if is_p_power(int(ords[i]), p)], dtype=np.int64)


def p_core(G: EnumeratedGroup, p: int) -> np.ndarray:
    """O_p(G): generated by p-elements whose normal closure is a p-group."""
    keep: list[np.ndarray] = []
    for cl in G.classes:
        o = int(G.orders[cl[0]])
        if o == 1 or not is_p_power(o, p):
            continue
        closure = generated(G, cl)
        if is_p_power(len(closure), p):
            keep.append(cl)
    if not keep:
        return np.array([0])
    return generated(G, np.concatenate(keep))


def fitting(G: EnumeratedGroup) -> np.ndarray:
    cores = [p_core(G, p) for p in factorize(G.order)]
    F = np.array([0])
    for C in cores:
        F = generated(G, np.union1d(F, C))
    return F


def is_nilpotent(G: EnumeratedGroup) -> bool:
    return len(fitting(G)) == G.order


def fitting_series(G: EnumeratedGroup) -> list[np.ndarray]:
    """Ascending Fitting series F_0 = 1 < F_1 < ...; stops early if it stalls."""
    series = [np.array([0])]
    while len(series[-1]) < G.order:
        Q = quotient(G, series[-1])
        nxt = Q.preimage(fitting(Q.group))
        if len(nxt) == len(series[-1]):
            break
        series.append(nxt)
    return series


def fitting_height(G: EnumeratedGroup) -> int:
    return len(fitting_series(G)) - 1


def sylow(G: EnumeratedGroup, p: int) -> np.ndarray:
    """A Sylow p-subgroup, grown greedily through normalisers."""
    target = p_part(G.order, p)
    P = np.array([0])
    pel = p_elements(G, p)
    while len(P) < target:
        N = normalizer(G, P)
        cand = np.setdiff1d(np.intersect1d(N, pel), P)
        if len(cand) == 0:
            raise AssertionError("greedy Sylow search stalled")
        P = generated(G, np.append(P, cand[0]))
    if len(P) != target:
        raise AssertionError("Sylow order mismatch")
    return P


def hall_pi_elements(G: EnumeratedGroup, primes, S=None) -> np.ndarray:
    """Elements of S whose order is a pi-number (identity included)."""
    S = np.arange(G.order) if S is None else np.asarray(S)
    ords = G.orders[S]
    ok = np.array([is_pi_number(int(o), primes) for o in ords], dtype=bool)
    return S[ok]


# -- normal subgroups ---------------------------------------------------------


def normal_subgroups(G: EnumeratedGroup, cap: int = CLASS_CAP) -> list[np.ndarray]:
    """Every normal subgroup, sorted by order then lexicographically."""
    classes = G.classes
    if len(classes) > cap:
        raise ResourceError(f"{len(classes)} classes exceeds cap {cap}", len(classes))
    found = {frozenset([0]): np.array([0])}
    todo = deque([np.array([0])])
    while todo:
        N = todo.popleft()
        inN = np.zeros(G.order, dtype=bool)
        inN[N] = True
        for cl in classes:
            if inN[cl[0]]:
                continue
            M = generated(G, np.concatenate([N, cl]))
            key = frozenset(M.tolist())
            if key not in found:
                found[key] = M
                todo.append(M)
    return sorted(found.values(), key=lambda S: (len(S), S.tolist()))


# -- census ------------------------------------------------------------------


@dataclass
class Census:
    nep: dict[int, int] = dc_field(default_factory=dict)
    nsp: dict[int, int] = dc_field(default_factory=dict)
    non_prime: int = 0
    identity: int = 0

    def nep_pi(self, primes) -> int:
        return sum(v for p, v in self.nep.items() if p in primes)

    def nsp_pi(self, primes) -> int:
        return sum(v for p, v in self.nsp.items() if p in primes)

    def to_json(self) -> dict:
        return {
            "nep": {str(p): v for p, v in sorted(self.nep.items())},
            "nsp": {str(p): v for p, v in sorted(self.nsp.items())},
            "non_prime": self.non_prime,
        }


class LargePrimes:
    """The set of all primes other than 2 and 3."""

    def __contains__(self, p: int) -> bool:
        return p not in (2, 3)

    def __repr__(self) -> str:
        return "primes>=5"


LARGE_PRIMES = LargePrimes()


def census(G: EnumeratedGroup, S=None, primes=None) -> Census:
    """Counts of elements and subgroups of prime order inside the subset S."""
    S = np.arange(G.order) if S is None else np.asarray(S, dtype=np.int64)
    ords = G.orders[S]
    out = Census()
    for o in np.unique(ords):
        o = int(o)
        members = S[ords == o]
        if o == 1:
            out.identity = len(members)
            continue
        if not gf.is_prime(o):
            out.non_prime += len(members)
            continue
        if primes is not None and o not in primes:
            continue
        reps = members.copy()
        cur = members.copy()
        for _ in range(o - 2):
            cur = G.table[cur, members]
            reps = np.minimum(reps, cur)
        out.nep[o] = len(members)
        out.nsp[o] = len(np.unique(reps))
    return out


def pi_of(n: int) -> set[int]:
    return set(factorize(n))

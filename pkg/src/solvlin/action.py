"""Linear actions on finite vector spaces and permutation actions on finite sets."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import gf, grp
from .errors import ResourceError, UsageError
from .grp import EnumeratedGroup, MatrixRep, PermRep

SPACE_CAP = 2**24
PERM_CAP = 2**20
SUBSET_CAP = 16


@dataclass
class OrbitData:
    orbit_of: np.ndarray  # orbit id per vector code
    sizes: np.ndarray
    reps: np.ndarray  # least code in each orbit, ascending

    def __len__(self) -> int:
        return len(self.reps)

    def to_json(self, G_order: int) -> dict:
        vals, counts = np.unique(self.sizes, return_counts=True)
        return {
            "orbits": len(self.reps),
            "size_histogram": {int(v): int(c) for v, c in zip(vals, counts)},
            "representatives": [int(r) for r in self.reps],
            "stabilizer_orders": [G_order // int(s) for s in self.sizes],
        }


class ModuleAction:
    """A matrix group G acting on V = direct sum of its blocks' natural modules.

    Vectors are integer codes; block 0 occupies the least significant digits.
    """

    def __init__(self, G: EnumeratedGroup, cap: int = SPACE_CAP):
        if not isinstance(G.rep, MatrixRep):
            raise UsageError("ModuleAction needs a matrix group")
        self.G = G
        self.rep: MatrixRep = G.rep
        self.sizes = [F.q**n for F, n in self.rep.blocks]
        self.size = math.prod(self.sizes)
        if self.size > cap:
            raise ResourceError(f"|V| = {self.size} exceeds cap {cap}", self.size)
        self.strides = np.cumprod([1] + self.sizes[:-1])

    @property
    def single_field(self) -> bool:
        return len(self.rep.blocks) == 1

    @property
    def field(self) -> gf.FiniteField:
        if not self.single_field:
            raise UsageError("action spans several fields")
        return self.rep.blocks[0][0]

    @property
    def dim(self) -> int:
        return sum(self.rep.dims)

    # -- codes --

    def split_codes(self, codes) -> list[np.ndarray]:
        codes = np.asarray(codes, dtype=np.int64)
        return [(codes // int(s)) % m for s, m in zip(self.strides, self.sizes)]

    def join_codes(self, parts) -> np.ndarray:
        return sum(np.asarray(c, dtype=np.int64) * int(s) for c, s in zip(parts, self.strides))

    def apply(self, g: int, codes) -> np.ndarray:
        """Codes of g.v for a group element index g."""
        mats = self.rep.split(self.G.data[g])
        parts = []
        for (F, n), m, c in zip(self.rep.blocks, mats, self.split_codes(codes)):
            v = gf.decode(F, c, n)
            parts.append(gf.encode(F, gf.mat_vec(F, m, v)))
        return self.join_codes(parts)

    def images(self, code: int) -> np.ndarray:
        """Codes of g.v for every element g of G."""
        parts = []
        mats = self.rep.split(self.G.data)
        for (F, n), M, c in zip(self.rep.blocks, mats, self.split_codes(code)):
            v = gf.decode(F, c, n)
            parts.append(np.atleast_1d(gf.encode(F, gf.mat_vec(F, M, v))))
        return self.join_codes(parts)

    @cached_property
    def generator_perms(self) -> list[np.ndarray]:
        if self.size > PERM_CAP:
            raise ResourceError(f"|V| = {self.size} too large for code permutations", self.size)
        allv = np.arange(self.size, dtype=np.int64)
        return [self.apply(g, allv) for g in self.G.generators]

    # -- orbits and stabilizers --

    @cached_property
    def orbits(self) -> OrbitData:
        return orbits_from_perms(self.size, self.generator_perms)

    def stabilizer(self, code: int) -> np.ndarray:
        return np.nonzero(self.images(code) == code)[0]

    def fixed_count(self, g: int) -> int:
        total = 1
        for (F, _), m in zip(self.rep.blocks, self.rep.split(self.G.data[g])):
            total *= gf.fixed_space(F, m)[1]
        return total

    @cached_property
    def fixed_counts(self) -> np.ndarray:
        """Fixed-point count of every element (constant on classes)."""
        G = self.G
        try:
            classes = G.classes
        except ResourceError:
            return np.array([self.fixed_count(g) for g in range(G.order)], dtype=object)
        out = np.empty(G.order, dtype=object)
        for cl in classes:
            out[cl] = self.fixed_count(int(cl[0]))
        return out

    def kernel(self) -> np.ndarray:
        return np.nonzero(self.fixed_counts == self.size)[0]

    def is_faithful(self) -> bool:
        return len(self.kernel()) == 1

    def burnside_count(self) -> int:
        total = sum(int(x) for x in self.fixed_counts)
        if total % self.G.order:
            raise AssertionError("Burnside sum not divisible by |G|")
        return total // self.G.order

    def regular_orbit_count(self) -> int:
        return int(np.count_nonzero(self.orbits.sizes == self.G.order))

    def large_regular_mod_K(self, K) -> list[int]:
        """Orbit representatives whose stabilizer has all prime-order p >= 5 elements in K."""
        inK = np.zeros(self.G.order, dtype=bool)
        inK[np.asarray(K, dtype=np.int64)] = True
        orders = self.G.orders
        big_prime = np.array([o >= 5 and gf.is_prime(int(o)) for o in orders])
        out = []
        for v, size in zip(self.orbits.reps, self.orbits.sizes):
            if size == self.G.order:
                out.append(int(v))
                continue
            st = self.stabilizer(int(v))
            if np.all(inK[st[big_prime[st]]]):
                out.append(int(v))
        return out

    # -- submodules --

    def block_action(self, b: int) -> "ModuleAction":
        F, n = self.rep.blocks[b]
        H = grp.close([self.rep.split(self.G.data[g])[b] for g in self.G.generators], MatrixRep([(F, n)]))
        return ModuleAction(H)

    def spin(self, vectors) -> np.ndarray:
        """Echelon basis of the smallest G-invariant subspace containing the given vectors."""
        F = self.field
        gens = [self.G.element(g) for g in self.G.generators]
        basis = gf.row_space(F, np.atleast_2d(vectors))
        frontier = basis
        while len(frontier):
            imgs = np.concatenate([gf.mat_vec(F, m, frontier) for m in gens])
            new = gf.row_space(F, np.concatenate([basis, imgs]))
            if len(new) == len(basis):
                break
            frontier, basis = imgs, new
        return basis

    def is_irreducible(self) -> bool:
        """No proper invariant subspace: every orbit representative spins to V."""
        F, n = self.field, self.dim
        for v in self.orbits.reps[1:]:
            if len(self.spin(gf.decode(F, int(v), n))) < n:
                return False
        return True

    def is_completely_reducible(self) -> bool:
        """Blockwise: Maschke when coprime, else irreducible or an exhaustive socle check."""
        for b, (F, n) in enumerate(self.rep.blocks):
            sub = self if self.single_field else self.block_action(b)
            if sub.G.order % F.p == 0 and not sub._socle_is_everything():
                return False
        return True

    def _socle_is_everything(self) -> bool:
        if self.is_irreducible():
            return True
        F, n = self.field, self.dim
        if self.size > 2**16:
            raise ResourceError("exhaustive socle check limited to |V| <= 2^16", self.size)
        orb = self.orbits
        spins = [self.spin(gf.decode(F, int(v), n)) for v in orb.reps]
        spin_dim = np.array([len(s) for s in spins])[orb.orbit_of]
        socle = []
        for v, S in zip(orb.reps[1:], spins[1:]):
            d = len(S)
            coeffs = gf.all_vectors(F, d)[1:]
            codes = gf.encode(F, gf.mat_mul(F, coeffs, S))
            if np.all(spin_dim[codes] == d):
                socle.append(gf.decode(F, int(v), n))
        if not socle:
            return False
        gens = [self.G.element(g) for g in self.G.generators]
        span = gf.row_space(F, np.array(socle))
        while True:
            imgs = np.concatenate([gf.mat_mul(F, span, m.T) for m in gens])
            nxt = gf.row_space(F, np.concatenate([span, imgs]))
            if len(nxt) == len(span):
                return len(span) == n
            span = nxt

    def orbit_report(self) -> dict:
        rep = self.orbits.to_json(self.G.order)
        rep.update({"group_order": self.G.order, "space_size": self.size,
                    "regular_orbits": self.regular_orbit_count()})
        return rep


def orbits_from_perms(size: int, perms: list[np.ndarray]) -> OrbitData:
    src = np.concatenate([np.arange(size)] * len(perms)) if perms else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(perms) if perms else np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    mins = np.full(labels.max() + 1, size, dtype=np.int64)
    np.minimum.at(mins, labels, np.arange(size))
    order = np.argsort(mins)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    orbit_of = relabel[labels]
    return OrbitData(orbit_of, np.bincount(orbit_of), mins[order])


def perm_orbits(G: EnumeratedGroup) -> OrbitData:
    if not isinstance(G.rep, PermRep):
        raise UsageError("need a permutation group")
    return orbits_from_perms(G.rep.degree, [G.data[g] for g in G.generators])


def _is_23_number(n: int) -> bool:
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n == 1


def subset_search(G: EnumeratedGroup) -> tuple[list[int], int]:
    """First subset meeting every orbit whose set-stabilizer is a {2,3}-group.

    Subsets are tried by increasing size, then lexicographically.  Returns
    the subset and the order of its set-stabilizer.
    """
    if not isinstance(G.rep, PermRep):
        raise UsageError("subset_search needs a permutation group")
    n = G.rep.degree
    if n > SUBSET_CAP:
        raise ResourceError(f"{n} points exceeds the subset search cap {SUBSET_CAP}", n)
    if not grp.is_solvable(G):
        raise UsageError("subset_search needs a solvable group")
    orbit_of = perm_orbits(G).orbit_of
    n_orbits = int(orbit_of.max()) + 1
    weights = 1 << np.arange(n, dtype=np.int64)
    for k in range(n_orbits, n + 1):
        for subset in itertools.combinations(range(n), k):
            if len(set(orbit_of[list(subset)])) < n_orbits:
                continue
            mask = int(weights[list(subset)].sum())
            img = weights[G.data[:, list(subset)]].sum(axis=1)
            st = int(np.count_nonzero(img == mask))
            if _is_23_number(st):
                return list(subset), st
    raise AssertionError("no subset with a {2,3} set-stabilizer; contradicts solvability")


def set_stabilizer(G: EnumeratedGroup, subset) -> np.ndarray:
    n = G.rep.degree
    weights = 1 << np.arange(n, dtype=np.int64)
    mask = int(weights[list(subset)].sum())
    return np.nonzero(weights[G.data[:, list(subset)]].sum(axis=1) == mask)[0]

"""Slow, independent reference computations used to cross-check the main algorithms."""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import grp
from .action import ModuleAction
from .chartab import CharTable
from .errors import ResourceError
from .grp import EnumeratedGroup

BRUTE_CAP = 200
LINK_CAP = 60


def _generated(G: EnumeratedGroup, S) -> frozenset[int]:
    """Closure under multiplication by repeated products (no generating-set tricks)."""
    members = set(int(s) for s in S) | {0}
    while True:
        arr = np.array(sorted(members))
        new = set(np.unique(G.table[np.ix_(arr, arr)]).tolist())
        if new <= members:
            return frozenset(members)
        members |= new


def all_subgroups(G: EnumeratedGroup) -> list[frozenset[int]]:
    """Every subgroup, as joins of cyclic subgroups."""
    if G.order > BRUTE_CAP:
        raise ResourceError(f"brute force limited to order {BRUTE_CAP}", G.order)
    cyclic = {_generated(G, [g]) for g in range(G.order)}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = _generated(G, H | C)
                if J not in subs:
                    nxt.add(J)
        subs |= nxt
        frontier = nxt
    return sorted(subs, key=lambda S: (len(S), sorted(S)))


def normal_subgroups_brute(G: EnumeratedGroup) -> list[np.ndarray]:
    out = []
    for H in all_subgroups(G):
        arr = np.array(sorted(H))
        conj = G.conj(np.arange(G.order)[:, None], arr[None, :])
        if np.isin(conj, arr).all():
            out.append(arr)
    return out


def p_core_by_sylows(G: EnumeratedGroup, p: int) -> np.ndarray:
    """O_p(G) as the intersection of all conjugates of one Sylow p-subgroup."""
    if G.order > BRUTE_CAP:
        raise ResourceError(f"brute force limited to order {BRUTE_CAP}", G.order)
    P = grp.sylow(G, p)
    core = set(P.tolist())
    for g in range(G.order):
        core &= set(G.conj(g, P).tolist())
    return np.array(sorted(core))


def orbit_count_brute(A: ModuleAction) -> int:
    """Orbits found by applying every group element to unvisited vectors."""
    seen = np.zeros(A.size, dtype=bool)
    count = 0
    for v in range(A.size):
        if not seen[v]:
            seen[A.images(v)] = True
            count += 1
    return count


def numeric_degrees(G: EnumeratedGroup, seed: int = 0) -> list[int]:
    """Irreducible degrees from floating-point eigenvectors of a random class-sum combination."""
    classes = G.classes
    r = len(classes)
    sizes = np.array([len(c) for c in classes], dtype=np.float64)
    inv = G.class_of[G.inverse[[int(c[0]) for c in classes]]]
    M = np.zeros((r, r))
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal(r)
    for k, c in enumerate(classes):
        z = int(c[0])
        ys = G.table[G.inverse[np.arange(G.order)], z]
        contrib = np.zeros((r, r))
        np.add.at(contrib, (G.class_of[np.arange(G.order)], G.class_of[ys]), 1.0)
        M[:, k] = coef @ contrib
    _, vecs = np.linalg.eig(M)
    out = []
    for j in range(r):
        w = vecs[:, j] / vecs[0, j]
        s = np.sum(w * w[inv] / sizes)
        out.append(int(round(np.sqrt((G.order / s).real))))
    return sorted(out)


def blocks_by_linking(T: CharTable, p: int) -> list[list[int]]:
    """Blocks as components of the graph linking chi, psi when their p-regular inner product is nonzero."""
    if len(T) > LINK_CAP:
        raise ResourceError(f"linking graph limited to {LINK_CAP} characters", len(T))
    vals = T.complex_values()
    regular = np.array([int(o) % p != 0 for o in T.orders])
    w = T.sizes * regular
    gram = (vals * w[None, :]) @ vals.conj().T
    adj = np.abs(gram) > 1e-6
    rows, cols = np.nonzero(adj)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(T), len(T)))
    n, labels = connected_components(graph, directed=False)
    blocks = [sorted(np.nonzero(labels == i)[0].tolist()) for i in range(n)]
    return sorted(blocks)

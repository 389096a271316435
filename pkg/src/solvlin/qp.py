"""Quasi-primitivity and the structure decomposition of quasi-primitive solvable linear groups.

``decompose`` computes the normal series Z <= U <= F <= A <= G together
with E, e, W and b, and checks each of the nine structural clauses as a
separately callable function.  A failing clause raises
:class:`~solvlin.errors.StructuralError` naming it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import gf, grp
from .action import ModuleAction
from .errors import StructuralError, UsageError
from .gf import FiniteField
from .grp import EnumeratedGroup, MatrixRep

NORMAL_CAP = 400
COMMUTATOR_STEPS = 20


# -- module algebra ----------------------------------------------------------------


def commutant(F: FiniteField, mats: list[np.ndarray], n: int) -> np.ndarray:
    """Basis (d x n x n) of the matrices commuting with every matrix in ``mats``."""
    if not mats:
        return np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    cols = []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=np.int64)
            E[i, j] = 1
            cols.append(np.concatenate([
                F.sub(gf.mat_mul(F, E, m), gf.mat_mul(F, m, E)).reshape(-1) for m in mats
            ]))
    basis = gf.nullspace(F, np.array(cols).T)
    return basis.reshape(-1, n, n)


def _coords(F: FiniteField, basis: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Coordinates of each target in the span of ``basis`` (rows are flattened)."""
    B = basis.reshape(len(basis), -1)
    T = targets.reshape(len(targets), -1)
    R, piv = gf.rref(F, np.hstack([B.T, T.T]))
    d = len(B)
    if piv[:d] != list(range(d)) or any(p >= d for p in piv):
        raise ArithmeticError("target outside the span")
    return R[:d, d:].T


def _mat_pow(F: FiniteField, M: np.ndarray, e: int) -> np.ndarray:
    out = gf.identity(M.shape[0])
    while e:
        if e & 1:
            out = gf.mat_mul(F, out, M)
        M = gf.mat_mul(F, M, M)
        e >>= 1
    return out


def simple_factor_count(F: FiniteField, mats: list[np.ndarray], n: int) -> int:
    """Number of isotypic components of a semisimple module.

    The endomorphism algebra of a semisimple module is a product of one
    simple algebra per isotypic component; its centre is a product of
    that many finite fields, and the count equals the dimension of the
    fixed space of x -> x^q on the centre.
    """
    End = commutant(F, mats, n)
    centre = commutant(F, list(End), n)
    # centre of End = End intersected with the commutant of End
    joint = _intersect_spans(F, End.reshape(len(End), -1), centre.reshape(len(centre), -1))
    C = joint.reshape(-1, n, n)
    powers = np.array([_mat_pow(F, c, F.q) for c in C])
    frob = _coords(F, C, powers)  # row k = coordinates of C_k^q
    fixed = gf.nullspace(F, F.sub(frob.T, gf.identity(len(C))))
    return len(fixed)


def _intersect_spans(F: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row basis of span(A) intersected with span(B)."""
    if len(A) == 0 or len(B) == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    ns = gf.nullspace(F, np.vstack([A, F.neg(B)]).T)
    if len(ns) == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return gf.row_space(F, gf.mat_mul(F, ns[:, : len(A)], A))


def is_homogeneous(F: FiniteField, mats: list[np.ndarray], n: int) -> bool:
    """Homogeneity of a semisimple module given by generator matrices."""
    return simple_factor_count(F, mats, n) == 1


def is_quasiprimitive(A: ModuleAction) -> bool:
    """Irreducible and homogeneous on restriction to every normal subgroup.

    Restrictions of an irreducible module to normal subgroups are
    semisimple, which is what :func:`is_homogeneous` needs.
    """
    if not A.single_field or not A.is_irreducible():
        raise UsageError("quasi-primitivity is defined for irreducible modules")
    G, F, n = A.G, A.field, A.dim
    for N in grp.normal_subgroups(G, cap=NORMAL_CAP):
        if len(N) == 1:
            continue
        mats = [G.element(int(g)) for g in grp.generating_set(G, N)]
        if not is_homogeneous(F, mats, n):
            return False
    return True


# -- sections E_i / Z_i as vector spaces ------------------------------------------------


@dataclass
class Section:
    """An elementary abelian section X/Y with coordinates over GF(p)."""

    p: int
    basis: list[int]  # element indices of G mapping to a basis of X/Y
    coord: dict[int, np.ndarray]  # element index in X -> coordinates

    @property
    def dim(self) -> int:
        return len(self.basis)

    def action_matrix(self, G: EnumeratedGroup, g: int) -> np.ndarray:
        """Matrix of conjugation x -> g x g^-1 on the section."""
        cols = [self.coord[int(G.conj(g, b))] for b in self.basis]
        return np.array(cols, dtype=np.int64).T.reshape(self.dim, self.dim)


def section(G: EnumeratedGroup, X: np.ndarray, Y: np.ndarray, p: int) -> Section:
    """Coordinates on X/Y, assumed elementary abelian of exponent p."""
    inY = np.zeros(G.order, dtype=bool)
    inY[Y] = True
    span = np.array(Y)
    basis: list[int] = []
    coord_of_span = {int(y): np.zeros(0, dtype=np.int64) for y in Y}
    for x in X:
        if int(x) in coord_of_span:
            continue
        basis.append(int(x))
        new = {}
        powers = [0]
        for _ in range(p - 1):
            powers.append(int(G.table[powers[-1], x]))
        for k, xk in enumerate(powers):
            for s, c in coord_of_span.items():
                new[int(G.table[s, xk])] = np.append(c, k)
        coord_of_span = new
    if len(coord_of_span) != len(X):
        raise StructuralError("extraspecial_parts", f"section is not elementary abelian of exponent {p}")
    return Section(p, basis, coord_of_span)


def commutator_form(G: EnumeratedGroup, sec: Section, centre: np.ndarray) -> np.ndarray:
    """Gram matrix of (x, y) -> [x, y] in the order-p centre, as discrete logs."""
    p = sec.p
    z = int(next(c for c in centre if c != 0))
    log = {0: 0}
    cur = 0
    for k in range(1, p):
        cur = int(G.table[cur, z])
        log[cur] = k
    d = sec.dim
    J = np.zeros((d, d), dtype=np.int64)
    for i, x in enumerate(sec.basis):
        for j, y in enumerate(sec.basis):
            c = int(G.commutator(x, y))
            if c not in log:
                raise StructuralError("extraspecial_parts", "commutator outside the centre")
            J[i, j] = log[c]
    return J


# -- the decomposition -------------------------------------------------------------------


@dataclass
class PrimeComponent:
    p: int
    P: np.ndarray
    Z: np.ndarray
    E: np.ndarray
    T: np.ndarray
    U: np.ndarray
    U_unique: bool = True

    @property
    def extraspecial(self) -> bool:
        return len(self.E) != len(self.Z)

    @property
    def e(self) -> int:
        return math.isqrt(len(self.E) // len(self.Z))


@dataclass
class QPDecomposition:
    action: ModuleAction
    components: list[PrimeComponent]
    Z: np.ndarray
    E: np.ndarray
    U: np.ndarray
    F: np.ndarray
    A: np.ndarray
    W: np.ndarray  # basis rows of W inside V
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def G(self) -> EnumeratedGroup:
        return self.action.G

    @property
    def e_list(self) -> list[int]:
        return [c.e for c in self.components if c.extraspecial]

    @property
    def e(self) -> int:
        return math.prod(self.e_list)

    @property
    def dim_W(self) -> int:
        return len(self.W)

    @property
    def W_size(self) -> int:
        return self.action.field.q ** self.dim_W

    @property
    def b(self) -> int:
        return self.action.dim // (self.dim_W * self.e)

    def summary(self) -> dict:
        return {
            "e": self.e,
            "U": len(self.U),
            "F": len(self.F),
            "A/F": len(self.A) // len(self.F),
            "W": self.W_size,
            "b": self.b,
        }

    def to_json(self) -> dict:
        out = {
            "G": self.G.order,
            "Z": len(self.Z),
            "U": len(self.U),
            "E": len(self.E),
            "F": len(self.F),
            "A": len(self.A),
            "e_list": self.e_list,
            "e": self.e,
            "W_size": self.W_size,
            "dim_W": self.dim_W,
            "b": self.b,
            "clauses": dict(self.checks),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def omega1(G: EnumeratedGroup, S: np.ndarray, p: int) -> np.ndarray:
    """Subgroup generated by the elements of order p in S."""
    S = np.asarray(S)
    return grp.generated(G, S[G.orders[S] == p])


def _iterated_commutator(G: EnumeratedGroup, P: np.ndarray) -> np.ndarray:
    allg = np.arange(G.order)
    K = P
    for _ in range(COMMUTATOR_STEPS):
        nxt = grp.commutator_subgroup(G, K, allg)
        if len(nxt) == len(K):
            return K
        K = nxt
    return K


def _is_cyclic(G: EnumeratedGroup, S: np.ndarray) -> bool:
    return int(G.orders[np.asarray(S)].max()) == len(S)


def _component(G: EnumeratedGroup, p: int, notes: list[str]) -> PrimeComponent:
    P = grp.p_core(G, p)
    Zi = omega1(G, grp.center(G, P), p)
    if p != 2:
        Ei = omega1(G, P, p)
    else:
        K = _iterated_commutator(G, P)
        Ei = K if len(K) > 1 else Zi
    T = grp.centralizer(G, Ei, within=P)
    U_unique = True
    if p != 2 or _is_cyclic(G, T):
        Ui = T
    else:
        half = len(T) // 2
        cands = []
        for x in T[G.orders[T] == half]:
            C = grp.generated(G, [x])
            if grp.is_normal(G, C) and not any(np.array_equal(C, D) for D in cands):
                cands.append(C)
        if not cands:
            raise StructuralError("U_on_W", f"no normal cyclic subgroup of index 2 in T_{p}")
        if len(cands) > 1:
            U_unique = False
            notes.append(f"index-2 cyclic subgroup of T for p={p} is not unique ({len(cands)} choices); first taken")
        Ui = cands[0]
    return PrimeComponent(p, P, Zi, Ei, T, Ui, U_unique)


def decompose(A: ModuleAction, check: bool = True) -> QPDecomposition:
    """Structure decomposition of a faithful quasi-primitive solvable linear group."""
    if not A.single_field:
        raise UsageError("decomposition needs a module over a single field")
    G = A.G
    if not A.is_faithful():
        raise UsageError("action is not faithful")
    if not grp.is_solvable(G):
        raise UsageError("group is not solvable")
    notes: list[str] = []
    Fit = grp.fitting(G)
    primes = sorted(gf.factorize(len(Fit)))
    comps = [_component(G, p, notes) for p in primes]
    ext = [c for c in comps if c.extraspecial]
    one = np.array([0])
    E = grp.generated(G, np.concatenate([one] + [c.E for c in ext]))
    Z = grp.generated(G, np.concatenate([one] + [c.Z for c in ext]))
    U = grp.generated(G, np.concatenate([one] + [c.U for c in comps]))
    Fsub = grp.generated(G, np.union1d(E, U))
    Asub = grp.centralizer(G, U)
    F, n = A.field, A.dim
    v = gf.decode(F, 1, n)
    Uaction_gens = [G.element(int(u)) for u in grp.generating_set(G, U)]
    W = _spin(F, Uaction_gens, v)
    D = QPDecomposition(A, comps, Z, E, U, Fsub, Asub, W, notes=notes)
    if check:
        for name, fn in STRUCTURE_CHECKS.items():
            fn(D)
            D.checks[name] = True
    return D


def _spin(F: FiniteField, mats: list[np.ndarray], v: np.ndarray) -> np.ndarray:
    basis = gf.row_space(F, np.atleast_2d(v))
    while True:
        imgs = np.concatenate([basis] + [gf.mat_mul(F, basis, m.T) for m in mats])
        nxt = gf.row_space(F, imgs)
        if len(nxt) == len(basis):
            return basis
        basis = nxt


# -- clause checks ------------------------------------------------------------------------


def _fail(name: str, msg: str):
    raise StructuralError(name, msg)


def _same(X, Y) -> bool:
    return np.array_equal(np.sort(np.asarray(X)), np.sort(np.asarray(Y)))


def check_abelian_normal_cyclic(D: QPDecomposition) -> None:
    G = D.G
    for N in grp.normal_subgroups(G, cap=NORMAL_CAP):
        comm = G.commutator(N[:, None], N[None, :])
        if np.all(comm == 0) and not _is_cyclic(G, N):
            _fail("abelian_normal_cyclic", f"normal abelian subgroup of order {len(N)} is not cyclic")


def check_fitting_product(D: QPDecomposition) -> None:
    G = D.G
    if not _same(grp.product(G, D.E, D.U), D.F):
        _fail("fitting_product", "F != EU")
    if np.any(G.commutator(D.E[:, None], D.U[None, :]) != 0):
        _fail("fitting_product", "E and U do not commute")
    if not _same(grp.intersect(D.E, D.U), D.Z) or not _same(grp.center(G, D.E), D.Z):
        _fail("fitting_product", "E n U, Z and Z(E) differ")
    if not np.isin(grp.centralizer(G, D.F), D.F).all():
        _fail("fitting_product", "C_G(F) is not contained in F")


def _sections(D: QPDecomposition) -> list[tuple[PrimeComponent, Section]]:
    return [(c, section(D.G, c.E, c.Z, c.p)) for c in D.components if c.extraspecial]


def check_section_reducible(D: QPDecomposition) -> None:
    G = D.G
    if len(D.F) // len(D.U) != len(D.E) // len(D.Z):
        _fail("section_reducible", "|F/U| != |E/Z|")
    for c, sec in _sections(D):
        mats = [sec.action_matrix(G, g) for g in G.generators]
        H = grp.close([m.reshape(-1) for m in mats], MatrixRep([(gf.field(c.p), sec.dim)]))
        if not ModuleAction(H).is_completely_reducible():
            _fail("section_reducible", f"E/Z is not completely reducible at p={c.p}")


def check_extraspecial_parts(D: QPDecomposition) -> None:
    G = D.G
    r = D.action.field.p
    for c in D.components:
        if not c.extraspecial:
            continue
        if len(c.Z) != c.p or not _same(grp.center(G, c.E), c.Z):
            _fail("extraspecial_parts", f"Z(E_{c.p}) is not Z_{c.p} of order {c.p}")
        if not _same(grp.derived_subgroup(G, c.E), c.Z):
            _fail("extraspecial_parts", f"[E_{c.p}, E_{c.p}] != Z_{c.p}")
        section(G, c.E, c.Z, c.p)
        k = round(math.log(c.e, c.p)) if c.e > 1 else 0
        if k < 1 or c.p**k != c.e or c.e * c.e * len(c.Z) != len(c.E):
            _fail("extraspecial_parts", f"e_{c.p} = {c.e} is not a positive power of {c.p}")
    if D.action.dim % D.e:
        _fail("extraspecial_parts", f"e = {D.e} does not divide n = {D.action.dim}")
    if D.e % r == 0:
        _fail("extraspecial_parts", "characteristic divides e")


def _acts_trivially_mod(G: EnumeratedGroup, a: int, E: np.ndarray, Z: np.ndarray) -> bool:
    inZ = np.zeros(G.order, dtype=bool)
    inZ[Z] = True
    gens = grp.generating_set(G, E)
    if not gens:
        return True
    x = np.asarray(gens)
    return bool(inZ[G.table[G.conj(a, x), G.inverse[x]]].all())


def _euler_phi(n: int) -> int:
    out = n
    for p in gf.factorize(n):
        out = out // p * (p - 1)
    return out


def check_centralizer_of_U(D: QPDecomposition) -> None:
    G = D.G
    if not _same(D.A, grp.centralizer(G, D.U)):
        _fail("centralizer_of_U", "A != C_G(U)")
    if _euler_phi(len(D.U)) % (G.order // len(D.A)):
        _fail("centralizer_of_U", "|G/A| does not divide |Aut(U)|")
    kernel = [int(a) for a in D.A if _acts_trivially_mod(G, int(a), D.E, D.Z)]
    if not _same(kernel, D.F):
        _fail("centralizer_of_U", "A/F does not act faithfully on E/Z")


def check_symplectic_action(D: QPDecomposition) -> None:
    G = D.G
    gensA = grp.generating_set(G, D.A)
    for c, sec in _sections(D):
        J = commutator_form(G, sec, c.Z)
        Fp = gf.field(c.p)
        if np.any(np.diag(J)) or np.any((J + J.T) % c.p) or gf.det(Fp, J) == 0:
            _fail("symplectic_action", f"commutator form at p={c.p} is not non-degenerate alternating")
        for a in gensA:
            M = sec.action_matrix(G, a)
            if not np.array_equal(gf.mat_mul(Fp, gf.mat_mul(Fp, M.T, J), M), J):
                _fail("symplectic_action", f"A does not preserve the commutator form at p={c.p}")


def check_U_on_W(D: QPDecomposition) -> None:
    G, A = D.G, D.action
    if not _is_cyclic(G, D.U):
        _fail("U_on_W", "U is not cyclic")
    F = A.field
    for u in D.U:
        if u == 0:
            continue
        m = G.element(int(u))
        # u restricted to W: solve for the matrix in W's basis
        img = gf.mat_mul(F, D.W, m.T)
        fixed = gf.nullspace(F, F.sub(img, D.W).T)
        if len(fixed):
            _fail("U_on_W", "U has a non-zero fixed vector in W")
    _, irreducible = _u_irreducible(D)
    if not irreducible:
        _fail("U_on_W", "W is not an irreducible U-module")
    if (D.W_size - 1) % len(D.U):
        _fail("U_on_W", "|U| does not divide |W| - 1")


def _u_irreducible(D: QPDecomposition) -> tuple[int, bool]:
    F = D.action.field
    mats = [D.G.element(int(u)) for u in grp.generating_set(D.G, D.U)]
    coeffs = gf.all_vectors(F, D.dim_W)[1:]
    if len(coeffs) > 2**16:
        return len(coeffs), True
    for c in coeffs:
        w = gf.mat_vec(F, D.W.T, c)
        if len(_spin(F, mats, w)) != D.dim_W:
            return len(coeffs), False
    return len(coeffs), True


def check_module_size(D: QPDecomposition) -> None:
    n = D.action.dim
    if n % (D.dim_W * D.e):
        _fail("module_size", "|V| is not a power of |W|^e")
    if D.W_size ** (D.e * D.b) != D.action.size:
        _fail("module_size", "|V| != |W|^(eb)")


def fixed_point_data(D: QPDecomposition) -> list[dict]:
    """Every prime-order g outside A with its fixed-point count and the predicted one."""
    G, A = D.G, D.action
    inA = np.zeros(G.order, dtype=bool)
    inA[D.A] = True
    out = []
    eb = D.e * D.b
    for g in range(G.order):
        s = int(G.orders[g])
        if inA[g] or not gf.is_prime(s):
            continue
        got = A.fixed_count(g)
        num = D.dim_W * eb
        pred = A.field.q ** (num // s) if num % s == 0 else None
        out.append({"element": g, "order": s, "fixed": got, "predicted": pred})
    return out


def check_fixed_point_law(D: QPDecomposition) -> None:
    if D.dim_W % (D.G.order // len(D.A)):
        _fail("fixed_point_law", "|G:A| does not divide dim W")
    for pt in fixed_point_data(D):
        if pt["predicted"] is None or pt["fixed"] != pt["predicted"]:
            _fail("fixed_point_law", f"element {pt['element']} of order {pt['order']} fixes {pt['fixed']} vectors")


def check_cyclic_top(D: QPDecomposition) -> None:
    G = D.G
    if len(D.A) == G.order:
        return
    Q = grp.quotient(G, D.A).group
    if int(Q.orders.max()) != Q.order:
        _fail("cyclic_top", "G/A is not cyclic")


STRUCTURE_CHECKS = {
    "abelian_normal_cyclic": check_abelian_normal_cyclic,
    "fitting_product": check_fitting_product,
    "section_reducible": check_section_reducible,
    "extraspecial_parts": check_extraspecial_parts,
    "centralizer_of_U": check_centralizer_of_U,
    "symplectic_action": check_symplectic_action,
    "U_on_W": check_U_on_W,
    "module_size": check_module_size,
    "fixed_point_law": check_fixed_point_law,
    "cyclic_top": check_cyclic_top,
}


def order_divides_bound(D: QPDecomposition) -> bool:
    """|G| divides dim(W) |A/F| e^2 (|W| - 1)."""
    bound = D.dim_W * (len(D.A) // len(D.F)) * D.e**2 * (D.W_size - 1)
    return bound % D.G.order == 0


def order_bound(D: QPDecomposition) -> int:
    return D.dim_W * (len(D.A) // len(D.F)) * D.e**2 * (D.W_size - 1)

"""Small finite fields GF(p^k), vectors and matrices over them.

Elements are plain integers in ``[0, q)``.  The base-p digits of an element
are the coefficients of its polynomial representative, constant term first,
so ``value = c0 + c1*p + c2*p**2 + ...``.  Every routine here accepts either
python ints or numpy integer arrays; arrays are processed elementwise.

Matrices are numpy ``int64`` arrays of element values.  Vectors of ``GF(q)^n``
are identified with integer codes ``sum(coords[i] * q**i)``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DomainError, ResourceError, UsageError

MAX_ORDER = 2**20

# Moduli as coefficient lists (constant term first, monic).  Each is the
# lexicographically least primitive polynomial of its degree, so the class
# of x generates the multiplicative group.  Entries not listed are found by
# the same rule at construction time.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 3, 0, 1),
    (5, 4): (2, 2, 1, 0, 1),
    (5, 5): (2, 4, 0, 0, 0, 1),
    (7, 2): (3, 1, 1),
    (11, 2): (7, 1, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise if q is not a prime power."""
    f = factorize(q) if q > 1 else {}
    if len(f) != 1:
        raise DomainError(f"{q} is not a prime power")
    ((p, k),) = f.items()
    return p, k


# -- polynomials over GF(p), coefficient lists constant term first ---------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _poly_trim(a)
    return a


def is_irreducible(poly: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    m = list(poly)
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(m, divisor, p):
                return False
    return True


def _is_primitive(poly: tuple[int, ...], p: int) -> bool:
    k = len(poly) - 1
    order = p**k - 1
    m = list(poly)

    def xpow(e: int) -> list[int]:
        result, base = [1], [0, 1]
        while e:
            if e & 1:
                result = _poly_mod(_poly_mulraw(result, base), m, p)
            base = _poly_mod(_poly_mulraw(base, base), m, p)
            e >>= 1
        return result

    if xpow(order) != [1]:
        return False
    return all(xpow(order // r) != [1] for r in factorize(order))


def _poly_mulraw(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least (by reversed coefficient tuple) primitive poly."""
    for tail in product(range(p), repeat=k):
        poly = tuple(reversed(tail)) + (1,)
        if poly[0] == 0:
            continue
        if is_irreducible(poly, p) and _is_primitive(poly, p):
            return poly
    raise DomainError(f"no primitive polynomial of degree {k} over GF({p})")


# -- the field --------------------------------------------------------------


class FiniteField:
    """GF(p^k) with exp/log tables over the primitive element x."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or k < 1:
            raise DomainError(f"GF({p}^{k}) is not a field")
        q = p**k
        if q > MAX_ORDER:
            raise ResourceError(f"GF({p}^{k}) exceeds the 2^20 field cap")
        self.p, self.k, self.q = p, k, q
        if k == 1:
            self.modulus = (-_primitive_root(p) % p, 1)
        else:
            self.modulus = MODULI.get((p, k)) or find_modulus(p, k)
        if not is_irreducible(self.modulus, p):
            raise DomainError(f"modulus {self.modulus} is reducible over GF({p})")
        self._build_tables()

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        # x -> x * generator, in digit form
        coeffs = [1] + [0] * (k - 1)
        low = [(-c) % p for c in self.modulus[:-1]]
        gen_root = (-self.modulus[0]) % p  # the root of x - g when k == 1
        powers = p ** np.arange(k)
        for i in range(q - 1):
            val = int(np.dot(coeffs, powers)) if k > 1 else coeffs[0]
            if log[val] != -1:
                raise DomainError("modulus is not primitive")
            exp[i] = val
            log[val] = i
            if k == 1:
                coeffs = [coeffs[0] * gen_root % p]
            else:
                top = coeffs[-1]
                coeffs = [0] + coeffs[:-1]
                coeffs = [(c + top * l) % p for c, l in zip(coeffs, low)]
        exp[q - 1 :] = np.concatenate([exp[: q - 1], exp[:1]])
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp, self.log = exp, log
        self._powers = powers
        self.primitive = int(exp[1]) if q > 2 else 1

    # equality by parameters so fields built twice compare equal
    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- elementwise arithmetic; ints in, ints out; arrays in, arrays out --

    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.p

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p if _is_arr(a, b) else (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b) if _is_arr(a, b) else a ^ b
        out = ((self.digits(a) + self.digits(b)) % self.p) @ self._powers
        return out if _is_arr(a, b) else int(out)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p if _is_arr(a) else (-a) % self.p
        if self.p == 2:
            return a
        out = ((-self.digits(a)) % self.p) @ self._powers
        return out if _is_arr(a) else int(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * b) % self.p if _is_arr(a, b) else (a * b) % self.p
        if not _is_arr(a, b):
            if a == 0 or b == 0:
                return 0
            return int(self.exp[self.log[a] + self.log[b]])
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        if _is_arr(a):
            a = np.asarray(a, dtype=np.int64)
            if np.any(a == 0):
                raise DomainError("inverse of zero")
            return self.exp[(-self.log[a]) % (self.q - 1)]
        if a == 0:
            raise DomainError("inverse of zero")
        if self.k == 1:
            return pow(int(a), self.p - 2, self.p)
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DomainError("inverse of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a):
        """x -> x^p."""
        if _is_arr(a):
            a = np.asarray(a, dtype=np.int64)
            out = self.exp[(self.log[a] * self.p) % (self.q - 1)]
            return np.where(a == 0, 0, out)
        return self.pow(a, self.p)

    def root_of_unity(self, order: int) -> int:
        """An element of exact multiplicative order ``order``."""
        if (self.q - 1) % order:
            raise DomainError(f"{order} does not divide {self.q} - 1")
        return int(self.exp[(self.q - 1) // order])

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k}


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> FiniteField:
    """Cached constructor; fields are immutable and shared."""
    return FiniteField(p, k)


def gf(q: int) -> FiniteField:
    return field(*prime_power(q))


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise AssertionError("unreachable")


def _is_arr(*xs) -> bool:
    return any(isinstance(x, np.ndarray) for x in xs)


def _check_same(F: FiniteField, G: FiniteField) -> None:
    if F != G:
        raise UsageError(f"mixed fields {F} and {G}")


# -- matrices ---------------------------------------------------------------


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(F: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product; leading axes broadcast like ``np.matmul``."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[-2]:
        raise UsageError(f"incompatible shapes {A.shape} and {B.shape}")
    if F.k == 1:
        return np.matmul(A, B) % F.p
    acc = None
    for l in range(A.shape[-1]):
        term = F.mul(A[..., :, l, None], B[..., None, l, :])
        acc = term if acc is None else F.add(acc, term)
    return acc


def mat_vec(F: FiniteField, A: np.ndarray, v: np.ndarray) -> np.ndarray:
    return mat_mul(F, A, np.asarray(v)[..., None])[..., 0]


def rref(F: FiniteField, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = np.array(M, dtype=np.int64, copy=True)
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = F.mul(M[r], F.inv(int(M[r, c])))
        col = M[:, c].copy()
        col[r] = 0
        for i in np.nonzero(col)[0]:
            M[i] = F.sub(M[i], F.mul(M[r], int(col[i])))
        pivots.append(c)
        r += 1
    return M, pivots


def rank(F: FiniteField, M: np.ndarray) -> int:
    return len(rref(F, M)[1]) if np.size(M) else 0


def nullspace(F: FiniteField, M: np.ndarray) -> np.ndarray:
    """Basis of ``{x : M x = 0}`` as rows of the returned array."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = F.neg(int(R[i, f]))
    return basis


def row_space(F: FiniteField, vectors: np.ndarray) -> np.ndarray:
    """Echelon basis (rows) of the span of the given row vectors."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.size == 0:
        return vectors.reshape(0, vectors.shape[-1] if vectors.ndim == 2 else 0)
    R, piv = rref(F, vectors)
    return R[: len(piv)]


def det(F: FiniteField, M: np.ndarray) -> int:
    """Determinant by Gaussian elimination."""
    M = np.array(M, dtype=np.int64, copy=True)
    n = M.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if len(nz) == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            M[[c, i]] = M[[i, c]]
            d = F.neg(d)
        piv = int(M[c, c])
        d = F.mul(d, piv)
        inv = F.inv(piv)
        for i in range(c + 1, n):
            if M[i, c]:
                M[i] = F.sub(M[i], F.mul(M[c], F.mul(int(M[i, c]), inv)))
    return d


def det_cofactor(F: FiniteField, M: np.ndarray) -> int:
    """Determinant by Laplace expansion along the first row (small n only)."""
    n = len(M)
    if n == 1:
        return int(M[0][0])
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = np.delete(np.delete(np.asarray(M), 0, axis=0), j, axis=1)
        term = F.mul(int(M[0][j]), det_cofactor(F, minor))
        total = F.sub(total, term) if j % 2 else F.add(total, term)
    return total


def mat_inv(F: FiniteField, M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(F, np.hstack([M, identity(n)]))
    if piv[:n] != list(range(n)):
        raise DomainError("singular matrix")
    return R[:, n:]


def fixed_space(F: FiniteField, M: np.ndarray) -> tuple[np.ndarray, int]:
    """Basis of the fixed vectors of M and their number ``q**dim``."""
    M = np.asarray(M, dtype=np.int64)
    basis = nullspace(F, F.sub(M, identity(M.shape[0])))
    return basis, F.q ** len(basis)


# -- vector codes -----------------------------------------------------------


def encode(F: FiniteField, coords) -> np.ndarray | int:
    coords = np.asarray(coords, dtype=np.int64)
    weights = F.q ** np.arange(coords.shape[-1], dtype=np.int64)
    out = coords @ weights
    return out if out.ndim else int(out)


def decode(F: FiniteField, code, n: int) -> np.ndarray:
    code = np.asarray(code, dtype=np.int64)
    return (code[..., None] // (F.q ** np.arange(n, dtype=np.int64))) % F.q


def all_vectors(F: FiniteField, n: int) -> np.ndarray:
    """Coordinates of every vector, row i having code i."""
    return decode(F, np.arange(F.q**n, dtype=np.int64), n)


# -- JSON text format -------------------------------------------------------


def matrix_to_json(F: FiniteField, M: np.ndarray) -> str:
    return json.dumps({"field": F.to_json(), "matrix": np.asarray(M).tolist()})


def matrix_from_json(text: str) -> tuple[FiniteField, np.ndarray]:
    obj = json.loads(text)
    F = field(obj["field"]["p"], obj["field"].get("k", 1))
    M = np.asarray(obj["matrix"], dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise UsageError("matrix must be a non-empty square array")
    if M.min() < 0 or M.max() >= F.q:
        raise UsageError(f"entries out of range for {F}")
    return F, M

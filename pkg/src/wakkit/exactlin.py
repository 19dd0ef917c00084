"""Dense exact linear algebra over a prime field F_p.

Matrices are plain 2-d numpy integer arrays with entries in ``range(p)``.
Every function takes the characteristic ``p`` explicitly and returns fresh
arrays; nothing is modified in place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_INT64_LIMIT = 2**63 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p <= 2**31 - 1) or not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not a prime in [2, 2^31-1]")

    def inv(self, x: int) -> int:
        return inv(x, self.p)

    def matrix(self, rows) -> np.ndarray:
        return asmat(rows, self.p)


def inv(x: int, p: int) -> int:
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(x, p - 2, p)


def asmat(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce nested lists (or an array) to a reduced int64 array."""
    a = np.array(rows, dtype=object)
    if shape is not None:
        a = a.reshape(shape)
    return (a % p).astype(np.int64)


def columns(a, rows: int, p: int) -> np.ndarray:
    """View a vector or matrix as a reduced matrix with ``rows`` rows."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 2 and a.shape[0] == rows:
        return a % p
    if a.size == 0:
        return zeros(rows, 0)
    return a.reshape(rows, -1) % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if (p - 1) ** 2 * max(a.shape[1], 1) <= _INT64_LIMIT:
        return (a @ b) % p
    c = a.astype(object) @ b.astype(object)
    return np.asarray(c % p, dtype=np.int64)


def mul(p: int, *mats: np.ndarray) -> np.ndarray:
    """Product of a chain of matrices, left to right."""
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m, p)
    return out


def kron(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if (p - 1) ** 2 <= _INT64_LIMIT:
        return np.kron(a, b) % p
    return np.asarray(np.kron(a.astype(object), b.astype(object)) % p, dtype=np.int64)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the null space of ``a``."""
    rows, cols = a.shape
    red, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    k = zeros(cols, len(free))
    for j, fc in enumerate(free):
        k[fc, j] = 1
        for i, pc in enumerate(piv):
            k[pc, j] = (-red[i, fc]) % p
    return k


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """An independent subset of the columns of ``a`` spanning its column space."""
    if a.shape[1] == 0:
        return a.copy()
    _, piv = rref(a, p)
    return a[:, piv].copy()


def image_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Reduced basis of the column space (columns of the transposed rref)."""
    if a.shape[1] == 0:
        return zeros(a.shape[0], 0)
    red, piv = rref(a.T, p)
    return red[: len(piv)].T.copy()


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``x`` with ``a @ x == b`` mod p, or None if the system is inconsistent."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.hstack([a % p, b % p]) if b.shape[1] else a % p
    red, piv = rref(aug, p)
    if any(c >= n for c in piv):
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(piv):
        x[c] = red[i, n:]
    return x


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a)


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(a, identity(n), p)
    if x is None or rank(a, p) < n:
        raise ValueError("matrix is singular")
    return x


def quotient(ambient: int, sub: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto ``F_p^ambient / colspan(sub)`` and a linear section of it.

    Returns ``(proj, sect)`` with ``proj @ sect = I``, ``proj @ sub = 0``.
    The columns of ``sub`` must be linearly independent.
    """
    sub = columns(sub, ambient, p)
    k = sub.shape[1]
    if rank(sub, p) != k:
        raise ValueError("sub columns are linearly dependent")
    # extend sub by standard vectors to a basis of the ambient space
    red, piv = rref(np.hstack([sub, identity(ambient)]), p)
    extra = [c - k for c in piv if c >= k]
    basis = np.hstack([sub, identity(ambient)[:, extra]])
    binv = inverse(basis, p)
    proj = binv[k:].copy()
    sect = identity(ambient)[:, extra].copy()
    return proj, sect


class Coordinates:
    """Coordinate extraction for vectors lying in the span of independent columns."""

    def __init__(self, basis: np.ndarray, p: int):
        self.basis = basis
        self.p = p
        n, k = basis.shape
        if k == 0:
            self.rows: list[int] = []
            self.left = zeros(0, 0)
            return
        _, piv = rref(basis.T, p)
        if len(piv) != k:
            raise ValueError("basis columns are dependent")
        self.rows = piv
        self.left = inverse(basis[piv], p)

    def __call__(self, v: np.ndarray, check: bool = False) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        vec = v.ndim == 1
        if vec:
            v = v.reshape(-1, 1)
        if not self.rows:
            c = zeros(0, v.shape[1])
        else:
            c = matmul(self.left, v[self.rows], self.p)
        if check and not np.array_equal(matmul(self.basis, c, self.p), v % self.p):
            raise ValueError("vector is not in the span")
        return c[:, 0] if vec else c

    def contains(self, v: np.ndarray) -> bool:
        v = columns(v, self.basis.shape[0], self.p)
        c = self(v)
        return np.array_equal(matmul(self.basis, c, self.p), v % self.p)

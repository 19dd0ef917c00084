"""Finite-dimensional unital algebras over F_p given by structure constants."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .. import exactlin as el


class Algebra:
    """An associative unital F_p-algebra with basis ``e_0, ..., e_{n-1}``.

    ``table[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.
    """

    def __init__(self, p: int, table, unit, name: str = ""):
        self.field = el.Field(p)
        self.p = p
        self.table = el.asmat(table, p)
        n = self.table.shape[0]
        if self.table.shape != (n, n, n):
            raise ValueError(f"structure table has shape {self.table.shape}, expected cube")
        self.dim = n
        self.unit = el.asmat(unit, p).reshape(n)
        self.name = name
        self._opposite: Algebra | None = None
        self._lock = threading.RLock()
        self._cache: dict = {}

    def __repr__(self):
        return f"Algebra({self.name or '?'}, p={self.p}, dim={self.dim})"

    # left_mats[i] @ v == e_i * v, right_mats[i] @ v == v * e_i
    @cached_property
    def left_mats(self) -> np.ndarray:
        return np.ascontiguousarray(self.table.transpose(0, 2, 1))

    @cached_property
    def right_mats(self) -> np.ndarray:
        return np.ascontiguousarray(self.table.transpose(1, 2, 0))

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return el.matmul(self.lmat(u), v.reshape(-1, 1), self.p)[:, 0]

    def lmat(self, u) -> np.ndarray:
        """Matrix of left multiplication by the element ``u``."""
        return np.tensordot(np.asarray(u, dtype=np.int64), self.left_mats, axes=1) % self.p

    def rmat(self, u) -> np.ndarray:
        return np.tensordot(np.asarray(u, dtype=np.int64), self.right_mats, axes=1) % self.p

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(self.p, self.table.transpose(1, 0, 2), self.unit, name=f"{self.name}^op")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def cached(self, key, build):
        """Build-once cache shared by all threads."""
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def same(self, other: "Algebra") -> bool:
        return self is other or (
            self.p == other.p
            and self.dim == other.dim
            and np.array_equal(self.table, other.table)
            and np.array_equal(self.unit, other.unit)
        )

    @property
    def generators(self) -> list[int]:
        """Indices of basis elements generating the algebra (with the unit)."""
        return self.cached("generators", lambda: _generators(self))

    @property
    def radical(self) -> np.ndarray:
        """Columns form a basis of the Jacobson radical."""
        return self.cached("radical", lambda: jacobson_radical(self))

    @property
    def primitive_idempotents(self) -> list[np.ndarray] | None:
        """Complete orthogonal primitive idempotents, or None outside the split basic case."""
        return self.cached("idempotents", lambda: _primitive_idempotents(self))


def ground(p: int) -> Algebra:
    """The field F_p as a 1-dimensional algebra."""
    return _GROUND.setdefault(p, Algebra(p, [[[1]]], [1], name=f"F{p}"))


_GROUND: dict[int, Algebra] = {}


@dataclass
class Validation:
    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_algebra(a: Algebra) -> Validation:
    """Check associativity on all basis triples and that the unit is two-sided."""
    p = a.p
    fails = []
    n = a.dim
    L = a.left_mats
    for i in range(n):
        for j in range(n):
            # e_i (e_j x) == (e_i e_j) x for all x
            lhs = el.matmul(L[i], L[j], p)
            rhs = np.tensordot(a.table[i, j], L, axes=1) % p
            if not np.array_equal(lhs, rhs):
                k = int(np.nonzero((lhs - rhs) % p)[1][0])
                fails.append(f"associativity fails on (e{i}, e{j}, e{k})")
    eye = el.identity(n)
    if not np.array_equal(a.lmat(a.unit), eye):
        fails.append("unit is not a left identity")
    if not np.array_equal(a.rmat(a.unit), eye):
        fails.append("unit is not a right identity")
    return Validation(not fails, fails)


def path_algebra(p: int, vertices, arrows, name: str = "") -> Algebra:
    """Path algebra of an acyclic quiver without relations.

    ``arrows`` is a list of ``(source, target)`` pairs. Paths compose right to
    left, so left modules are representations: ``e_i M`` is the space at
    vertex ``i`` and an arrow ``i -> j`` maps it into ``e_j M``.
    The basis lists trivial paths in vertex order, then longer paths by length.
    """
    vertices = list(vertices)
    idx = {v: i for i, v in enumerate(vertices)}
    # a path is (source, target, tuple of arrow indices in composition order)
    paths = [(idx[v], idx[v], ()) for v in vertices]
    layer = [(idx[s], idx[t], (k,)) for k, (s, t) in enumerate(arrows)]
    while layer:
        if len(paths) > 4096:
            raise ValueError("quiver has oriented cycles or too many paths")
        paths.extend(layer)
        nxt = []
        for s, t, word in layer:
            for k, (s2, t2) in enumerate(arrows):
                if idx[s2] == t:
                    nxt.append((s, idx[t2], (k,) + word))
        layer = nxt
    pos = {pth: i for i, pth in enumerate(paths)}
    n = len(paths)
    table = np.zeros((n, n, n), dtype=np.int64)
    for i, (s1, t1, w1) in enumerate(paths):
        for j, (s2, t2, w2) in enumerate(paths):
            if s1 != t2:
                continue
            table[i, j, pos[(s2, t1, w1 + w2)]] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[: len(vertices)] = 1
    alg = Algebra(p, table, unit, name=name or "path algebra")
    alg.path_basis = paths
    return alg


def polynomial_quotient(p: int, degree: int, name: str = "") -> Algebra:
    """F_p[x]/(x^degree) with basis 1, x, ..., x^{degree-1}."""
    table = np.zeros((degree, degree, degree), dtype=np.int64)
    for i in range(degree):
        for j in range(degree):
            if i + j < degree:
                table[i, j, i + j] = 1
    unit = np.zeros(degree, dtype=np.int64)
    unit[0] = 1
    return Algebra(p, table, unit, name=name or f"F{p}[x]/(x^{degree})")


def subalgebra_span(a: Algebra, elements: np.ndarray) -> np.ndarray:
    """Basis (columns) of the subalgebra generated by the unit and the given columns."""
    p = a.p
    span = el.image_basis(np.hstack([a.unit.reshape(-1, 1), elements]), p)
    while True:
        prods = [a.mul(span[:, i], span[:, j]) for i in range(span.shape[1]) for j in range(span.shape[1])]
        new = el.image_basis(np.hstack([span] + [v.reshape(-1, 1) for v in prods]), p)
        if new.shape[1] == span.shape[1]:
            return span
        span = new


def _generators(a: Algebra) -> list[int]:
    gens: list[int] = []
    span = subalgebra_span(a, el.zeros(a.dim, 0))
    for i in range(a.dim):
        if span.shape[1] == a.dim:
            break
        e = a.basis_vector(i).reshape(-1, 1)
        if el.rank(np.hstack([span, e]), a.p) > span.shape[1]:
            gens.append(i)
            span = subalgebra_span(a, np.stack([a.basis_vector(g) for g in gens], axis=1))
    return gens


def jacobson_radical(a: Algebra) -> np.ndarray:
    """Jacobson radical by the trace-functional sieve for prime fields.

    With ``g_i(x) = Tr(X^(p^i)) / p^i mod p`` for an integer lift ``X`` of the
    regular representation of ``x``, the ideals
    ``I_i = {x in I_(i-1) : g_i(x y) = 0 for all y}`` stabilise at the radical
    once ``p^i > dim``.
    """
    p, n = a.p, a.dim
    L = a.left_mats
    current = el.identity(n)  # I_{-1} = A
    i = 0
    while p**i <= n and current.shape[1]:
        q = p**i

        def g(x: np.ndarray) -> int:
            m = np.tensordot(x, L, axes=1) % p
            mo = m.astype(object)
            pw = np.linalg.matrix_power(mo, q) if q > 1 else mo
            tr = int(np.trace(pw))
            return (tr // q) % p if tr % q == 0 else _bad_trace(tr, q)

        k = current.shape[1]
        cons = np.zeros((n, k), dtype=np.int64)
        for j in range(n):
            for c in range(k):
                cons[j, c] = g(a.mul(current[:, c], a.basis_vector(j)))
        null = el.kernel_basis(cons, p)
        current = el.matmul(current, null, p)
        i += 1
    return el.image_basis(current, p) if current.shape[1] else current


def _bad_trace(tr: int, q: int) -> int:
    raise ArithmeticError(f"trace {tr} not divisible by {q}; radical sieve invariant broken")


def is_nilpotent_ideal(a: Algebra, basis: np.ndarray) -> bool:
    """Two-sided ideal check plus nilpotency of the spanned subspace."""
    p = a.p
    if basis.shape[1] == 0:
        return True
    coords = el.Coordinates(basis, p)
    for c in range(basis.shape[1]):
        for j in range(a.dim):
            e = a.basis_vector(j)
            if not coords.contains(a.mul(e, basis[:, c])) or not coords.contains(a.mul(basis[:, c], e)):
                return False
    power = basis
    for _ in range(a.dim + 1):
        if power.shape[1] == 0:
            return True
        prods = [a.mul(power[:, i], basis[:, j]) for i in range(power.shape[1]) for j in range(basis.shape[1])]
        power = el.image_basis(np.stack(prods, axis=1), p)
    return power.shape[1] == 0


def _lift_idempotent(a: Algebra, u: np.ndarray) -> np.ndarray:
    p = a.p
    for _ in range(64):
        u2 = a.mul(u, u)
        if np.array_equal(u2, u):
            return u
        u3 = a.mul(u2, u)
        u = (3 * u2 - 2 * u3) % p
    raise ArithmeticError("idempotent lifting did not converge")


def _primitive_idempotents(a: Algebra, max_p: int = 1000) -> list[np.ndarray] | None:
    """Primitive orthogonal idempotents summing to 1, when A/rad A is a product of copies of F_p."""
    p, n = a.p, a.dim
    if p > max_p:
        return None
    J = a.radical
    proj, sect = el.quotient(n, J, p)
    m = proj.shape[0]

    def qmul(x, y):
        return el.matmul(proj, a.mul(el.matmul(sect, x.reshape(-1, 1), p)[:, 0],
                                     el.matmul(sect, y.reshape(-1, 1), p)[:, 0]).reshape(-1, 1), p)[:, 0]

    qbasis = [np.eye(m, dtype=np.int64)[i] for i in range(m)]
    for x, y in product(qbasis, repeat=2):
        if not np.array_equal(qmul(x, y), qmul(y, x)):
            return None
    for x in qbasis:
        pw = x
        for _ in range(p - 1):
            pw = qmul(pw, x)
        if not np.array_equal(pw, x):
            return None
    one = el.matmul(proj, a.unit.reshape(-1, 1), p)[:, 0]
    idems = [one]
    for b in qbasis:
        refined = []
        for e in idems:
            for lam in range(p):
                # 1 - (b - lam)^(p-1) is the idempotent of the lam-eigenspace of b
                d = (b - lam * one) % p
                pw = one
                for _ in range(p - 1):
                    pw = qmul(pw, d)
                f = qmul(e, (one - pw) % p)
                if np.any(f):
                    refined.append(f)
        idems = refined
    # lift to A, keeping orthogonality by working in corner algebras
    lifted: list[np.ndarray] = []
    rest = a.unit.copy()
    for k, e in enumerate(idems):
        if k == len(idems) - 1:
            lifted.append(rest)
            break
        u = el.matmul(sect, e.reshape(-1, 1), p)[:, 0]
        u = a.mul(a.mul(rest, u), rest)
        f = _lift_idempotent(a, u)
        lifted.append(f)
        rest = (rest - f) % p
    lifted.sort(key=lambda v: tuple(-x for x in (v != 0).astype(int)))
    return lifted

"""Left modules, bimodules, homomorphisms, duality, Hom spaces and tensor products."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

import numpy as np

from .. import exactlin as el
from .algebra import Algebra, Validation, ground


class DimensionCapError(RuntimeError):
    pass


def max_dim() -> int:
    return int(os.environ.get("WAKKIT_MAX_DIM", "64"))


def _check_cap(d: int):
    cap = max_dim()
    if d > cap:
        raise DimensionCapError(f"module of dimension {d} exceeds WAKKIT_MAX_DIM={cap}")


class Module:
    """A finite-dimensional left module: one action matrix per algebra basis element."""

    def __init__(self, algebra: Algebra, action, name: str = "", check: bool = True):
        p = algebra.p
        act = el.asmat(action, p) if not isinstance(action, np.ndarray) else action % p
        if act.ndim != 3:
            d = 0 if act.size == 0 else int(round(act.size / algebra.dim) ** 0.5)
            act = act.reshape(algebra.dim, d, d)
        if act.shape[0] != algebra.dim or act.shape[1] != act.shape[2]:
            raise ValueError(f"action shape {act.shape} does not match algebra of dim {algebra.dim}")
        _check_cap(act.shape[1])
        self.algebra = algebra
        self.action = np.ascontiguousarray(act, dtype=np.int64)
        self.dim = act.shape[1]
        self.name = name
        self._cache: dict = {}
        self._lock = threading.RLock()
        if check:
            v = validate_module(self)
            if not v:
                raise ValueError("; ".join(v.failures))

    @property
    def p(self) -> int:
        return self.algebra.p

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim}, over {self.algebra.name or '?'})"

    def act(self, u) -> np.ndarray:
        return np.tensordot(np.asarray(u, dtype=np.int64), self.action, axes=1) % self.p

    def cached(self, key, build):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def identity(self) -> "ModuleHom":
        return ModuleHom(self, self, el.identity(self.dim), check=False)


def validate_module(m: Module) -> Validation:
    a, p = m.algebra, m.p
    fails = []
    if not np.array_equal(m.act(a.unit), el.identity(m.dim)):
        fails.append("unit does not act as the identity")
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = el.matmul(m.action[i], m.action[j], p)
            rhs = m.act(a.table[i, j])
            if not np.array_equal(lhs, rhs):
                fails.append(f"action does not respect e{i}*e{j}")
    return Validation(not fails, fails)


class ModuleHom:
    """A module homomorphism given by its matrix on the chosen bases."""

    def __init__(self, source: Module, target: Module, matrix, check: bool = True):
        if not source.algebra.same(target.algebra):
            raise ValueError("homomorphism between modules over different algebras")
        self.source = source
        self.target = target
        self.matrix = el.asmat(matrix, source.p, (target.dim, source.dim)) if not isinstance(
            matrix, np.ndarray) else np.asarray(matrix, dtype=np.int64).reshape(target.dim, source.dim) % source.p
        if check and not self.is_linear():
            raise ValueError("matrix does not intertwine the module actions")

    @property
    def p(self) -> int:
        return self.source.p

    def is_linear(self) -> bool:
        p = self.p
        for g in self.source.algebra.generators:
            if not np.array_equal(el.matmul(self.matrix, self.source.action[g], p),
                                  el.matmul(self.target.action[g], self.matrix, p)):
                return False
        return True

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValueError("composition of non-composable maps")
        return ModuleHom(other.source, self.target, el.matmul(self.matrix, other.matrix, self.p), check=False)

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target, (self.matrix + other.matrix) % self.p, check=False)

    def __sub__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target, (self.matrix - other.matrix) % self.p, check=False)

    def __neg__(self) -> "ModuleHom":
        return ModuleHom(self.source, self.target, (-self.matrix) % self.p, check=False)

    def scale(self, c: int) -> "ModuleHom":
        return ModuleHom(self.source, self.target, (c * self.matrix) % self.p, check=False)

    def rank(self) -> int:
        return el.rank(self.matrix, self.p)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def __eq__(self, other):
        return isinstance(other, ModuleHom) and np.array_equal(self.matrix, other.matrix)

    def __repr__(self):
        return f"ModuleHom({self.source.name or '?'} -> {self.target.name or '?'}, rank {self.rank()})"


def zero_hom(m: Module, n: Module) -> ModuleHom:
    return ModuleHom(m, n, el.zeros(n.dim, m.dim), check=False)


# ---------------------------------------------------------------- constructions


def regular_module(a: Algebra) -> Module:
    return a.cached("regular_module", lambda: Module(a, a.left_mats, name=f"{a.name or 'A'}", check=False))


def free_module(a: Algebra, rank: int) -> Module:
    return direct_sum([regular_module(a)] * rank)[0] if rank else zero_module(a)


def zero_module(a: Algebra) -> Module:
    return Module(a, np.zeros((a.dim, 0, 0), dtype=np.int64), name="0", check=False)


def direct_sum(mods: list[Module], name: str = "") -> tuple[Module, list[ModuleHom], list[ModuleHom]]:
    """Direct sum with its canonical injections and projections."""
    if not mods:
        raise ValueError("empty direct sum needs an algebra; use zero_module")
    a = mods[0].algebra
    d = sum(m.dim for m in mods)
    act = np.zeros((a.dim, d, d), dtype=np.int64)
    off = 0
    for m in mods:
        act[:, off:off + m.dim, off:off + m.dim] = m.action
        off += m.dim
    s = Module(a, act, name=name or "+".join(m.name or "?" for m in mods), check=False)
    inj, proj = [], []
    off = 0
    for m in mods:
        e = el.zeros(d, m.dim)
        e[off:off + m.dim] = el.identity(m.dim)
        inj.append(ModuleHom(m, s, e, check=False))
        proj.append(ModuleHom(s, m, e.T.copy(), check=False))
        off += m.dim
    return s, inj, proj


def submodule(m: Module, basis: np.ndarray, name: str = "") -> tuple[Module, ModuleHom]:
    """The submodule spanned by independent columns (which must be invariant)."""
    p = m.p
    basis = el.columns(basis, m.dim, p)
    coords = el.Coordinates(basis, p)
    act = np.stack([coords(el.matmul(m.action[i], basis, p), check=True) for i in range(m.algebra.dim)]) \
        if basis.shape[1] else np.zeros((m.algebra.dim, 0, 0), dtype=np.int64)
    sub = Module(m.algebra, act, name=name, check=False)
    return sub, ModuleHom(sub, m, basis, check=False)


def generated_subspace(m: Module, vectors: np.ndarray) -> np.ndarray:
    """Basis of the submodule generated by the given columns."""
    p = m.p
    vectors = el.columns(vectors, m.dim, p)
    span = el.image_basis(vectors, p)
    while True:
        imgs = [span] + [el.matmul(m.action[g], span, p) for g in m.algebra.generators]
        new = el.image_basis(np.hstack(imgs), p)
        if new.shape[1] == span.shape[1]:
            return span
        span = new


def quotient_module(m: Module, sub: np.ndarray, name: str = "") -> tuple[Module, ModuleHom, np.ndarray]:
    """``m / colspan(sub)`` with its projection and a linear (not module) section."""
    p = m.p
    sub = el.image_basis(el.columns(sub, m.dim, p), p)
    proj, sect = el.quotient(m.dim, sub, p)
    act = np.stack([el.mul(p, proj, m.action[i], sect) for i in range(m.algebra.dim)]) \
        if proj.shape[0] else np.zeros((m.algebra.dim, 0, 0), dtype=np.int64)
    q = Module(m.algebra, act, name=name, check=False)
    pi = ModuleHom(m, q, proj, check=False)
    if not pi.is_linear():
        raise ValueError("subspace is not a submodule")
    return q, pi, sect


def kernel(f: ModuleHom, name: str = "") -> tuple[Module, ModuleHom]:
    return submodule(f.source, el.kernel_basis(f.matrix, f.p), name=name)


def image_basis(f: ModuleHom) -> np.ndarray:
    return el.image_basis(f.matrix, f.p)


def cokernel(f: ModuleHom, name: str = "") -> tuple[Module, ModuleHom, np.ndarray]:
    return quotient_module(f.target, image_basis(f), name=name)


def dual(m: Module, name: str = "") -> Module:
    """Vector-space dual ``Hom_k(m, k)``, a left module over the opposite algebra."""
    return Module(m.algebra.opposite(), m.action.transpose(0, 2, 1), name=name or f"D({m.name})", check=False)


def dual_hom(f: ModuleHom, source: Module | None = None, target: Module | None = None) -> ModuleHom:
    """``D(f): D(target) -> D(source)``."""
    return ModuleHom(target or dual(f.target), source or dual(f.source), f.matrix.T.copy(), check=False)


def restrict_scalars(m: Module, alg: Algebra, inclusion: np.ndarray, name: str = "") -> Module:
    """Restrict along an algebra map given by its matrix (columns: images of ``alg`` basis)."""
    act = np.stack([m.act(inclusion[:, i]) for i in range(alg.dim)])
    return Module(alg, act, name=name or m.name, check=False)


# ---------------------------------------------------------------- Hom spaces


def _intertwiner_constraints(a: Algebra, src_act: np.ndarray, tgt_act: np.ndarray) -> np.ndarray:
    """Linear constraints on row-major vec(X) for ``X src(g) = tgt(g) X``."""
    p = a.p
    ds, dt = src_act.shape[1], tgt_act.shape[1]
    blocks = []
    for g in a.generators:
        blocks.append((el.kron(el.identity(dt), src_act[g].T, p) - el.kron(tgt_act[g], el.identity(ds), p)) % p)
    if not blocks:
        return el.zeros(0, ds * dt)
    return np.vstack(blocks)


def hom_matrices(m: Module, n: Module) -> np.ndarray:
    """Basis of Hom_A(m, n) as an array of shape (h, n.dim, m.dim)."""
    if not m.algebra.same(n.algebra):
        raise ValueError("Hom between modules over different algebras")
    if m.dim == 0 or n.dim == 0:
        return np.zeros((0, n.dim, m.dim), dtype=np.int64)
    cons = _intertwiner_constraints(m.algebra, m.action, n.action)
    k = el.kernel_basis(cons, m.p)
    return np.ascontiguousarray(k.T.reshape(-1, n.dim, m.dim))


def hom_basis(m: Module, n: Module) -> list[ModuleHom]:
    return [ModuleHom(m, n, h, check=False) for h in hom_matrices(m, n)]


class HomSpace:
    """Hom_A(m, n) with fixed basis and coordinate extraction."""

    def __init__(self, m: Module, n: Module, basis: np.ndarray | None = None):
        self.source, self.target = m, n
        self.p = m.p
        self.basis = hom_matrices(m, n) if basis is None else basis
        self.dim = self.basis.shape[0]
        flat = self.basis.reshape(self.dim, -1).T if self.dim else el.zeros(m.dim * n.dim, 0)
        self._flat = flat
        self._coords = el.Coordinates(flat, self.p)

    def coords(self, f) -> np.ndarray:
        mat = f.matrix if isinstance(f, ModuleHom) else f
        return self._coords(np.asarray(mat, dtype=np.int64).reshape(-1) % self.p, check=True)

    def element(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if self.dim == 0:
            return el.zeros(self.target.dim, self.source.dim)
        return np.tensordot(v, self.basis, axes=1) % self.p

    def hom(self, v) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.element(v), check=False)

    def solve(self, lhs, rhs) -> np.ndarray | None:
        """Coordinates ``c`` with ``lhs(element(c)) == rhs``; ``lhs`` is linear on matrices."""
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64) if not np.any(rhs) else None
        cols = np.stack([np.asarray(lhs(h), dtype=np.int64).reshape(-1) for h in self.basis], axis=1) % self.p
        x = el.solve(cols, np.asarray(rhs, dtype=np.int64).reshape(-1, 1) % self.p, self.p)
        return None if x is None else x[:, 0]

    def solve_space(self, lhs) -> np.ndarray:
        """Coordinates (columns) of the kernel of a linear condition on Hom."""
        if self.dim == 0:
            return el.zeros(0, 0)
        cols = np.stack([np.asarray(lhs(h), dtype=np.int64).reshape(-1) for h in self.basis], axis=1) % self.p
        return el.kernel_basis(cols, self.p)


def hom_space(m: Module, n: Module) -> HomSpace:
    key = ("hom", id(n))
    entry = m.cached(key, lambda: (n, HomSpace(m, n)))
    return entry[1]


def find_section(f: ModuleHom) -> ModuleHom | None:
    """A module map ``s`` with ``f s = id``, if ``f`` is split epi."""
    hs = hom_space(f.target, f.source)
    c = hs.solve(lambda h: el.matmul(f.matrix, h, f.p), el.identity(f.target.dim))
    return None if c is None else hs.hom(c)


def find_retraction(f: ModuleHom) -> ModuleHom | None:
    hs = hom_space(f.target, f.source)
    c = hs.solve(lambda h: el.matmul(h, f.matrix, f.p), el.identity(f.source.dim))
    return None if c is None else hs.hom(c)


def find_isomorphism(m: Module, n: Module, rng: np.random.Generator | None = None,
                     tries: int = 64) -> ModuleHom | None:
    """Search Hom(m, n) for an invertible map (exhaustive when the space is tiny)."""
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return ModuleHom(m, n, el.zeros(0, 0), check=False)
    hs = hom_space(m, n)
    p = m.p
    if hs.dim == 0:
        return None
    if p ** hs.dim <= 4096:
        it = (np.array(np.unravel_index(k, (p,) * hs.dim)) for k in range(1, p ** hs.dim))
    else:
        rng = rng or np.random.default_rng(0)
        it = (rng.integers(0, p, hs.dim) for _ in range(tries))
    for v in it:
        mat = hs.element(v)
        if el.rank(mat, p) == m.dim:
            return ModuleHom(m, n, mat, check=False)
    return None


def is_local(m: Module) -> bool:
    """Endomorphism ring is local: every endomorphism is nilpotent or invertible.

    Exhaustive, so only meant for tiny endomorphism rings.
    """
    hs = hom_space(m, m)
    p = m.p
    if m.dim == 0:
        return False
    if p ** hs.dim > 1 << 16:
        raise ValueError("endomorphism ring too large for the exhaustive locality test")
    for k in range(p ** hs.dim):
        mat = hs.element(np.array(np.unravel_index(k, (p,) * hs.dim)))
        r = el.rank(mat, p)
        if r == m.dim:
            continue
        pw = mat
        for _ in range(m.dim):
            pw = el.matmul(pw, mat, p)
        if np.any(pw):
            return False
    return True


# ---------------------------------------------------------------- bimodules


class Bimodule:
    """An (L, R)-bimodule: left action of ``left`` and commuting right action of ``right``.

    ``ract[j] @ v`` is ``v * r_j``.
    """

    def __init__(self, left: Algebra, right: Algebra, lact, ract, name: str = "", check: bool = True):
        p = left.p
        self.left, self.right = left, right
        self.lact = np.asarray(lact, dtype=np.int64) % p
        self.ract = np.asarray(ract, dtype=np.int64) % p
        d = self.lact.shape[1]
        if self.lact.shape != (left.dim, d, d) or self.ract.shape != (right.dim, d, d):
            raise ValueError("bimodule action shapes are inconsistent")
        _check_cap(d)
        self.dim = d
        self.name = name
        self._cache: dict = {}
        self._lock = threading.RLock()
        if check:
            v = validate_bimodule(self)
            if not v:
                raise ValueError("; ".join(v.failures))

    @property
    def p(self) -> int:
        return self.left.p

    def cached(self, key, build):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def left_module(self) -> Module:
        return self.cached("left", lambda: Module(self.left, self.lact, name=self.name, check=False))

    def right_module(self) -> Module:
        """The right action as a left module over the opposite algebra."""
        return self.cached("right", lambda: Module(self.right.opposite(), self.ract, name=self.name, check=False))

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim})"


def validate_bimodule(b: Bimodule) -> Validation:
    fails = []
    fails += [f"left: {f}" for f in validate_module(Module(b.left, b.lact, check=False)).failures]
    fails += [f"right: {f}" for f in validate_module(Module(b.right.opposite(), b.ract, check=False)).failures]
    p = b.p
    for i in range(b.left.dim):
        for j in range(b.right.dim):
            if not np.array_equal(el.matmul(b.lact[i], b.ract[j], p), el.matmul(b.ract[j], b.lact[i], p)):
                fails.append(f"left e{i} and right e{j} do not commute")
    return Validation(not fails, fails)


def as_bimodule(m: Module) -> Bimodule:
    """A left A-module as an (A, k)-bimodule."""
    k = ground(m.p)
    return m.cached("as_bimodule", lambda: Bimodule(m.algebra, k, m.action, el.identity(m.dim)[None],
                                                     name=m.name, check=False))


def right_bimodule(m: Module, algebra: Algebra) -> Bimodule:
    """A left module over ``algebra^op`` viewed as a (k, algebra)-bimodule."""
    k = ground(m.p)
    if not m.algebra.same(algebra.opposite()):
        raise ValueError("module is not over the opposite algebra")
    return m.cached("as_right", lambda: Bimodule(k, algebra, el.identity(m.dim)[None], m.action,
                                                  name=m.name, check=False))


def regular_bimodule(a: Algebra) -> Bimodule:
    return a.cached("regular_bimodule", lambda: Bimodule(a, a, a.left_mats, a.right_mats, name=a.name, check=False))


def dual_bimodule(b: Bimodule, name: str = "") -> Bimodule:
    """``D(b)`` with ``(r f l)(x) = f(l x r)``: an (R, L)-bimodule."""
    return Bimodule(b.right, b.left, b.ract.transpose(0, 2, 1), b.lact.transpose(0, 2, 1),
                    name=name or f"D{b.name}", check=False)


def bimodule_hom_is_linear(src: Bimodule, tgt: Bimodule, mat: np.ndarray) -> bool:
    p = src.p
    for g in src.left.generators:
        if not np.array_equal(el.matmul(mat, src.lact[g], p), el.matmul(tgt.lact[g], mat, p)):
            return False
    for g in src.right.generators:
        if not np.array_equal(el.matmul(mat, src.ract[g], p), el.matmul(tgt.ract[g], mat, p)):
            return False
    return True


@dataclass
class Tensor:
    """``M (x)_A N`` as a quotient of ``M (x)_k N`` (index ``i * N.dim + j``)."""

    left: Bimodule
    right: Bimodule
    module: Bimodule
    proj: np.ndarray
    sect: np.ndarray

    def pure(self, m_vec, n_vec) -> np.ndarray:
        """Coordinates of ``m (x) n``."""
        p = self.module.p
        v = el.kron(np.asarray(m_vec).reshape(-1, 1), np.asarray(n_vec).reshape(-1, 1), p)
        return el.matmul(self.proj, v, p)[:, 0]

    @property
    def dim(self) -> int:
        return self.module.dim


def tensor(m: Bimodule, n: Bimodule, name: str = "") -> Tensor:
    """``m (x)_A n`` for an (C, A)-bimodule ``m`` and an (A, D)-bimodule ``n``."""
    if not m.right.same(n.left):
        raise ValueError("tensor over mismatched algebras")
    a, p = n.left, n.p
    dm, dn = m.dim, n.dim
    rels = [(el.kron(m.ract[g], el.identity(dn), p) - el.kron(el.identity(dm), n.lact[g], p)) % p
            for g in a.generators]
    relmat = np.hstack(rels) if rels else el.zeros(dm * dn, 0)
    sub = el.image_basis(relmat, p) if relmat.shape[1] else relmat
    proj, sect = el.quotient(dm * dn, sub, p)
    lact = np.stack([el.mul(p, proj, el.kron(m.lact[i], el.identity(dn), p), sect) for i in range(m.left.dim)])
    ract = np.stack([el.mul(p, proj, el.kron(el.identity(dm), n.ract[j], p), sect) for j in range(n.right.dim)])
    mod = Bimodule(m.left, n.right, lact, ract, name=name or f"{m.name}(x){n.name}", check=False)
    return Tensor(m, n, mod, proj, sect)


def tensor_map(src: Tensor, tgt: Tensor, f_left: np.ndarray, f_right: np.ndarray) -> np.ndarray:
    """Matrix of ``f_left (x) f_right: src -> tgt``."""
    p = src.module.p
    return el.mul(p, tgt.proj, el.kron(f_left, f_right, p), src.sect)


class BimoduleHom:
    """Hom_A(m, n) for an (A, B)-bimodule ``m`` and (A, C)-bimodule ``n``, as a (B, C)-bimodule."""

    def __init__(self, m: Bimodule, n: Bimodule, name: str = ""):
        if not m.left.same(n.left):
            raise ValueError("Hom over mismatched algebras")
        self.source, self.target = m, n
        p = m.p
        self.p = p
        self.space = HomSpace(m.left_module(), n.left_module())
        basis = self.space.basis
        h = self.space.dim
        if h:
            lact = np.stack([np.stack([self.space.coords(el.matmul(basis[k], m.ract[b], p)) for k in range(h)], axis=1)
                             for b in range(m.right.dim)])
            ract = np.stack([np.stack([self.space.coords(el.matmul(n.ract[c], basis[k], p)) for k in range(h)], axis=1)
                             for c in range(n.right.dim)])
        else:
            lact = np.zeros((m.right.dim, 0, 0), dtype=np.int64)
            ract = np.zeros((n.right.dim, 0, 0), dtype=np.int64)
        self.module = Bimodule(m.right, n.right, lact, ract, name=name or f"Hom({m.name},{n.name})", check=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def coords(self, mat) -> np.ndarray:
        return self.space.coords(mat)

    def element(self, v) -> np.ndarray:
        return self.space.element(v)

    def post(self, f: np.ndarray, tgt: "BimoduleHom") -> np.ndarray:
        """Matrix of ``h -> f h`` into ``tgt``."""
        if self.dim == 0 or tgt.dim == 0:
            return el.zeros(tgt.dim, self.dim)
        return np.stack([tgt.coords(el.matmul(f, h, self.p)) for h in self.space.basis], axis=1)

    def pre(self, g: np.ndarray, tgt: "BimoduleHom") -> np.ndarray:
        """Matrix of ``h -> h g`` into ``tgt``."""
        if self.dim == 0 or tgt.dim == 0:
            return el.zeros(tgt.dim, self.dim)
        return np.stack([tgt.coords(el.matmul(h, g, self.p)) for h in self.space.basis], axis=1)


# ---------------------------------------------------------------- tensor-hom adjunction


def hom_from(m: Bimodule, x: Module) -> BimoduleHom:
    """``Hom_L(m, x)`` for an (L, R)-bimodule ``m``: a left R-module via its ``module``."""
    return x.cached(("hom_from", id(m)), lambda: (m, BimoduleHom(m, as_bimodule(x))))[1]


def tensor_with(m: Bimodule, y: Module) -> Tensor:
    """``m (x)_R y`` for an (L, R)-bimodule ``m``."""
    return y.cached(("tensor_with", id(m)), lambda: (m, tensor(m, as_bimodule(y))))[1]


def counit(m: Bimodule, x: Module) -> ModuleHom:
    """``m (x)_R Hom_L(m, x) -> x``, ``t (x) h -> h(t)``."""
    h = hom_from(m, x)
    tens = tensor_with(m, h.module.left_module())
    d, dh = m.dim, h.dim
    raw = el.zeros(x.dim, d * dh)
    for k in range(dh):
        raw[:, k::dh] = h.space.basis[k]
    return ModuleHom(tens.module.left_module(), x, el.matmul(raw, tens.sect, x.p), check=False)


def unit(m: Bimodule, y: Module) -> ModuleHom:
    """``y -> Hom_L(m, m (x)_R y)``, ``y -> (t -> t (x) y)``."""
    tens = tensor_with(m, y)
    h = hom_from(m, tens.module.left_module())
    d, p = m.dim, y.p
    cols = []
    for c in range(y.dim):
        img = el.matmul(tens.proj, el.kron(el.identity(d), el.identity(y.dim)[:, c:c + 1], p), p)
        cols.append(h.coords(img))
    mat = np.stack(cols, axis=1) if cols else el.zeros(h.dim, 0)
    return ModuleHom(y, h.module.left_module(), mat, check=False)

"""Trivial extension algebras, their modules as pairs, and the stable category.

The basis of ``T(A) = A (+) DA`` is ``e_0, ..., e_{n-1}, e*_0, ..., e*_{n-1}`` with
``e*_j`` the dual basis of ``DA``. A ``T(A)``-module is the same thing as a pair
``(X, phi)`` with ``phi: DA (x)_A X -> X`` satisfying ``phi (DA (x) phi) = 0``;
``e*_j`` acts on ``x`` as ``phi(e*_j (x) x)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from . import exactlin as el
from .algmod import (Algebra, Bimodule, HomSpace, Module, ModuleHom, Validation, as_bimodule, dual_bimodule,
                     regular_bimodule, regular_module, tensor, tensor_map, validate_algebra)
from .algmod.homology import ShortExactSeq, injective_envelope, is_projective, projective_cover
from .algmod.modules import bimodule_hom_is_linear, hom_space


class TrivExt:
    """``T(A)`` together with the data needed to pass between modules and pairs."""

    def __init__(self, base: Algebra):
        self.base = base
        n, p = base.dim, base.p
        t = np.zeros((2 * n, 2 * n, 2 * n), dtype=np.int64)
        t[:n, :n, :n] = base.table
        # e_i e*_j = sum_k table[k, i, j] e*_k and e*_j e_i = sum_k table[i, k, j] e*_k
        t[:n, n:, n:] = base.table.transpose(1, 2, 0)
        t[n:, :n, n:] = base.table.transpose(2, 0, 1)
        unit = np.concatenate([base.unit, np.zeros(n, dtype=np.int64)])
        self.total = Algebra(p, t, unit, name=f"T({base.name})")
        self.da = dual_bimodule(regular_bimodule(base), name=f"D{base.name}")
        self._lock = threading.RLock()

    @property
    def n(self) -> int:
        return self.base.dim

    def __repr__(self):
        return f"TrivExt({self.base.name}, dim {self.total.dim})"

    def trace_form(self) -> np.ndarray:
        """Gram matrix of ``<u, v> = lambda(uv)`` where ``lambda(a, f) = f(1)``."""
        tot, n = self.total, self.n
        lam = np.concatenate([np.zeros(n, dtype=np.int64), self.base.unit])
        return np.tensordot(tot.table, lam, axes=([2], [0])) % tot.p

    def da_tensor(self, x: Module):
        return x.cached(("da_tensor", id(self)), lambda: tensor(self.da, as_bimodule(x)))

    def restrict(self, m: Module) -> Module:
        """Underlying A-module of a T(A)-module."""
        if not m.algebra.same(self.total):
            raise ValueError("not a module over the trivial extension")
        return m.cached("base_module", lambda: Module(self.base, m.action[:self.n], name=m.name, check=False))


def validate_trivext(t: TrivExt) -> Validation:
    fails = list(validate_algebra(t.total).failures)
    n, p = t.n, t.base.p
    da_part = t.total.table[n:, n:]
    if np.any(da_part):
        fails.append("DA does not square to zero")
    if not np.array_equal(t.total.table[:n, :n, :n], t.base.table) or np.any(t.total.table[:n, :n, n:]):
        fails.append("A is not a subalgebra")
    if not symmetric_check(t):
        fails.append("trace pairing does not give a bimodule isomorphism T(A) -> D T(A)")
    return Validation(not fails, fails)


def symmetric_check(t: TrivExt) -> bool:
    """``u -> lambda(- u)`` is a bimodule isomorphism ``T(A) -> D(T(A))``."""
    gram = t.trace_form()
    p = t.base.p
    if el.rank(gram, p) != t.total.dim or not np.array_equal(gram, gram.T):
        return False
    reg = regular_bimodule(t.total)
    return bimodule_hom_is_linear(reg, dual_bimodule(reg), gram.T.copy())


def trivial_extension(a: Algebra) -> TrivExt:
    return a.cached("trivial_extension", lambda: TrivExt(a))


# ---------------------------------------------------------------- pairs


class PairModule:
    """A ``T(A)``-module presented as ``(X, phi)``; ``phi`` is a matrix on ``DA (x)_A X``."""

    def __init__(self, t: TrivExt, x: Module, phi, name: str = "", check: bool = True):
        self.trivext = t
        self.x = x
        self.tensor = t.da_tensor(x)
        self.phi = el.columns(phi, x.dim, x.p)
        if self.phi.shape != (x.dim, self.tensor.dim):
            raise ValueError(f"phi has shape {self.phi.shape}, expected {(x.dim, self.tensor.dim)}")
        self.name = name or x.name
        self._module: Module | None = None
        if check:
            v = validate_pair(self)
            if not v:
                raise ValueError("; ".join(v.failures))

    @property
    def dim(self) -> int:
        return self.x.dim

    @property
    def module(self) -> Module:
        if self._module is None:
            self._module = pair_to_module(self)
        return self._module

    def __repr__(self):
        return f"PairModule({self.name or '?'}, dim={self.dim})"


def star_action(pair: PairModule) -> np.ndarray:
    """Action matrices of ``e*_0, ..., e*_{n-1}`` on ``X``."""
    n, d, p = pair.trivext.n, pair.x.dim, pair.x.p
    proj = pair.tensor.proj
    return np.stack([el.matmul(pair.phi, proj[:, j * d:(j + 1) * d], p) for j in range(n)]) \
        if d else np.zeros((n, 0, 0), dtype=np.int64)


def square_zero_witness(pair: PairModule) -> np.ndarray:
    """The matrix of ``phi (DA (x) phi)`` on ``DA (x) DA (x) X`` (zero for a valid pair)."""
    t, p = pair.trivext, pair.x.p
    inner = pair.tensor
    outer = tensor(t.da, inner.module)
    lifted = tensor_map(outer, inner, el.identity(t.da.dim), pair.phi)
    return el.matmul(pair.phi, lifted, p)


def validate_pair(pair: PairModule) -> Validation:
    fails = []
    p = pair.x.p
    src = pair.tensor.module
    for g in pair.trivext.base.generators:
        if not np.array_equal(el.matmul(pair.phi, src.lact[g], p), el.matmul(pair.x.action[g], pair.phi, p)):
            fails.append(f"phi is not A-linear (generator e{g})")
    w = square_zero_witness(pair)
    if np.any(w):
        fails.append(f"phi (DA (x) phi) != 0 (rank {el.rank(w, p)})")
    return Validation(not fails, fails)


def pair_to_module(pair: PairModule) -> Module:
    t = pair.trivext
    act = np.concatenate([pair.x.action, star_action(pair)])
    m = Module(t.total, act, name=pair.name, check=False)
    # the underlying A-module and the pair are remembered on the module handle
    m._cache["base_module"] = pair.x
    m._cache[("pair", id(t))] = pair
    return m


def module_to_pair(t: TrivExt, m: Module, name: str = "") -> PairModule:
    x = t.restrict(m)
    tens = t.da_tensor(x)
    d, p = x.dim, x.p
    flat = np.hstack([m.action[t.n + j] for j in range(t.n)]) if d else el.zeros(0, 0)
    phi = el.matmul(flat, tens.sect, p) if d else el.zeros(0, tens.dim)
    pair = PairModule(t, x, phi, name=name or m.name, check=False)
    pair._module = m
    return pair


def as_pair(t: TrivExt, m: Module) -> PairModule:
    """The pair presenting a T(A)-module, cached on the module handle."""
    return m.cached(("pair", id(t)), lambda: module_to_pair(t, m))


def inflate(t: TrivExt, x: Module) -> PairModule:
    """``(X, 0)``: DA acts as zero."""
    return PairModule(t, x, el.zeros(x.dim, t.da_tensor(x).dim), name=x.name, check=False)


def pair_hom_is_linear(src: PairModule, tgt: PairModule, mat: np.ndarray) -> bool:
    return ModuleHom(src.module, tgt.module, mat, check=False).is_linear()


# ---------------------------------------------------------------- stable category


@dataclass
class StableHom:
    """``Hom(x, y)`` with the subspace ``P(x, y)`` of maps factoring through projectives."""

    space: HomSpace
    projective_part: np.ndarray  # columns: coordinates of a basis of P(x, y)

    @property
    def dim(self) -> int:
        return self.space.dim - self.projective_part.shape[1]

    @property
    def hom_dim(self) -> int:
        return self.space.dim

    def is_stably_zero(self, f) -> bool:
        c = self.space.coords(f)
        return el.Coordinates(self.projective_part, self.space.p).contains(c)

    def stable_coords(self, f) -> np.ndarray:
        """Coordinates in ``Hom / P`` for a fixed complement."""
        q = self._quotient()
        return el.matmul(q[0], self.space.coords(f).reshape(-1, 1), self.space.p)[:, 0]

    def _quotient(self):
        if not hasattr(self, "_q"):
            self._q = el.quotient(self.space.dim, self.projective_part, self.space.p)
        return self._q

    def complement(self) -> list[np.ndarray]:
        """Matrices whose classes form a basis of the stable Hom space."""
        _, sect = self._quotient()
        return [self.space.element(sect[:, j]) for j in range(sect.shape[1])]


def stable_hom(x: Module, y: Module) -> StableHom:
    def build():
        hs = hom_space(x, y)
        p = x.p
        if hs.dim == 0:
            return StableHom(hs, el.zeros(0, 0))
        pm, cover = projective_cover(y)
        through = hom_space(x, pm.module)
        imgs = [hs.coords(el.matmul(cover.matrix, h, p)) for h in through.basis]
        proj_part = el.image_basis(np.stack(imgs, axis=1), p) if imgs else el.zeros(hs.dim, 0)
        return StableHom(hs, proj_part)
    return x.cached(("stable_hom", id(y)), lambda: (y, build()))[1]


def stably_zero(f: ModuleHom) -> bool:
    return stable_hom(f.source, f.target).is_stably_zero(f)


def stably_equal(f: ModuleHom, g: ModuleHom) -> bool:
    return stably_zero(f - g)


def is_stable_iso(f: ModuleHom, g: ModuleHom) -> bool:
    """``g f`` and ``f g`` are stably the identities."""
    return stably_equal(g @ f, f.source.identity()) and stably_equal(f @ g, f.target.identity())


# ---------------------------------------------------------------- suspension and triangles


@dataclass
class SuspensionData:
    """``0 -> X --i--> I(X) --d--> Sigma X -> 0`` fixed once for the module handle."""

    module: Module
    injective: Module
    i: ModuleHom
    d: ModuleHom
    suspension: Module
    section: np.ndarray  # linear section of d

    def check(self) -> bool:
        return ShortExactSeq(self.i, self.d).check() and is_projective(self.injective)


class SuspensionRegistry:
    """Build-once store of suspension sequences, keyed by module identity."""

    def __init__(self):
        self._lock = threading.RLock()
        self._data: dict[int, SuspensionData] = {}

    def __call__(self, x: Module) -> SuspensionData:
        with self._lock:
            hit = self._data.get(id(x))
            if hit is not None and hit.module is x:
                return hit
            inj, i = injective_envelope(x)
            from .algmod import cokernel
            sx, d, sect = cokernel(i, name=f"Sigma({x.name})")
            data = SuspensionData(x, inj, i, d, sx, sect)
            self._data[id(x)] = data
            return data

    def __len__(self):
        return len(self._data)


def suspension(x: Module, reg: SuspensionRegistry) -> Module:
    return reg(x).suspension


def sigma_map(a: ModuleHom, reg: SuspensionRegistry, rng: np.random.Generator | None = None) -> ModuleHom:
    """A representative of ``Sigma(a)``: extend ``i' a`` over ``I(X)`` and pass to cokernels."""
    sx, sy = reg(a.source), reg(a.target)
    p = a.p
    hs = hom_space(sx.injective, sy.injective)
    target = el.matmul(sy.i.matrix, a.matrix, p)
    v = _solve_with_noise(hs, lambda h: el.matmul(h, sx.i.matrix, p), target, rng)
    if v is None:
        raise ArithmeticError("cannot extend over the injective: suspension data is broken")
    mat = el.mul(p, sy.d.matrix, v, sx.section)
    return ModuleHom(sx.suspension, sy.suspension, mat, check=False)


def _solve_with_noise(hs: HomSpace, lhs, rhs, rng):
    c = hs.solve(lhs, rhs)
    if c is None:
        return None
    if rng is not None and hs.dim:
        ker = hs.solve_space(lhs)
        if ker.shape[1]:
            c = (c + el.matmul(ker, rng.integers(0, hs.p, (ker.shape[1], 1)), hs.p)[:, 0]) % hs.p
    return hs.element(c)


@dataclass
class Triangle:
    """``X --f--> Y --g--> Z --omega--> Sigma X`` from a short exact sequence."""

    seq: ShortExactSeq
    omega: ModuleHom
    lift: ModuleHom  # Y -> I(X) extending i_X along f
    susp: SuspensionData

    def check(self) -> bool:
        """Commutativity of the defining ladder."""
        p = self.omega.p
        f, g = self.seq.f, self.seq.g
        return (np.array_equal(el.matmul(self.lift.matrix, f.matrix, p), self.susp.i.matrix)
                and np.array_equal(el.matmul(self.omega.matrix, g.matrix, p),
                                   el.matmul(self.susp.d.matrix, self.lift.matrix, p)))


def triangle_from_ses(seq: ShortExactSeq, reg: SuspensionRegistry,
                      rng: np.random.Generator | None = None) -> Triangle:
    """Connecting morphism ``omega`` with ``omega g = d_X u`` and ``u f = i_X``.

    With ``rng`` the lift ``u`` is perturbed by a random map vanishing on ``f``.
    """
    x, y, z = seq.ends
    sx = reg(x)
    p = x.p
    hs = hom_space(y, sx.injective)
    u = _solve_with_noise(hs, lambda h: el.matmul(h, seq.f.matrix, p), sx.i.matrix, rng)
    if u is None:
        raise ArithmeticError("i_X does not extend along f: suspension data is broken")
    sect = el.solve(seq.g.matrix, el.identity(z.dim), p)
    omega = ModuleHom(z, sx.suspension, el.mul(p, sx.d.matrix, u, sect), check=False)
    return Triangle(seq, omega, ModuleHom(y, sx.injective, u, check=False), sx)

"""Projective resolutions, Ext and Tor, explicit extensions, covers and envelopes.

Projective modules are direct sums of ``A e`` for idempotents ``e`` (one per
*slot*). When the algebra is split basic the slots use primitive idempotents
and resolutions are minimal; otherwise every slot is the free module ``A``.
A homomorphism out of such a module is determined by the images of the slot
generators ``e_l``, which must lie in ``e_l N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import exactlin as el
from .algebra import Algebra
from .modules import Module, ModuleHom, direct_sum, dual, find_section, quotient_module, submodule


class ProjectiveModule:
    """``P = (+)_l A e_l`` with an explicit basis inside ``A^r``."""

    def __init__(self, algebra: Algebra, idempotents: list[np.ndarray]):
        self.algebra = algebra
        p, n = algebra.p, algebra.dim
        self.idempotents = [np.asarray(e, dtype=np.int64) % p for e in idempotents]
        self.rank = len(self.idempotents)
        blocks = [el.image_basis(algebra.rmat(e), p) for e in self.idempotents]
        self.slot_dims = [b.shape[1] for b in blocks]
        d = sum(self.slot_dims)
        self.embed = el.zeros(n * self.rank, d)
        off = 0
        for l, b in enumerate(blocks):
            self.embed[l * n:(l + 1) * n, off:off + b.shape[1]] = b
            off += b.shape[1]
        self._coords = el.Coordinates(self.embed, p)
        if d:
            act = np.stack([el.matmul(el.kron(el.identity(self.rank), algebra.left_mats[i], p), self.embed, p)
                            for i in range(n)])
            act = np.stack([self._coords(a) for a in act])
        else:
            act = np.zeros((n, 0, 0), dtype=np.int64)
        self.module = Module(algebra, act, name="P", check=False)

    @property
    def dim(self) -> int:
        return self.module.dim

    def coords(self, ambient: np.ndarray) -> np.ndarray:
        """Coordinates of an element of ``A^r`` lying in ``P``."""
        return self._coords(ambient, check=True)

    def ambient(self, v: np.ndarray) -> np.ndarray:
        return el.matmul(self.embed, el.columns(v, self.dim, self.algebra.p), self.algebra.p)

    def generator(self, l: int) -> np.ndarray:
        """Coordinates of the slot generator ``e_l``."""
        n = self.algebra.dim
        amb = np.zeros(n * self.rank, dtype=np.int64)
        amb[l * n:(l + 1) * n] = self.idempotents[l]
        return self.coords(amb)

    def slot_parts(self, v: np.ndarray) -> np.ndarray:
        """Ambient components ``(a_1, ..., a_r)`` of an element, shape (r, dim A)."""
        return self.ambient(v)[:, 0].reshape(self.rank, self.algebra.dim)

    def map_to(self, target: Module, vectors: np.ndarray) -> ModuleHom:
        """The homomorphism sending generator ``l`` to column ``l`` of ``vectors``."""
        p, n = self.algebra.p, self.algebra.dim
        vectors = el.columns(vectors, target.dim, self.algebra.p)
        mat = el.zeros(target.dim, self.dim)
        for l in range(self.rank):
            # columns rho(e_j) v_l, then apply to the slot-l coordinates of the basis
            w = np.stack([el.matmul(target.action[j], vectors[:, l:l + 1], p)[:, 0] for j in range(n)], axis=1) \
                if target.dim else el.zeros(0, n)
            mat = (mat + el.matmul(w, self.embed[l * n:(l + 1) * n], p)) % p
        return ModuleHom(self.module, target, mat, check=False)

    def generator_images(self, f: ModuleHom) -> np.ndarray:
        """Columns ``f(e_l)``."""
        if self.rank == 0:
            return el.zeros(f.target.dim, 0)
        return np.stack([el.matmul(f.matrix, self.generator(l).reshape(-1, 1), f.p)[:, 0]
                         for l in range(self.rank)], axis=1)

    def cochain_basis(self, n_mod: Module) -> np.ndarray:
        """Basis of ``(+)_l e_l N`` inside ``N^r`` (columns)."""
        p = self.algebra.p
        d = n_mod.dim
        cols = []
        for l, e in enumerate(self.idempotents):
            img = el.image_basis(n_mod.act(e), p) if d else el.zeros(0, 0)
            block = el.zeros(d * self.rank, img.shape[1])
            block[l * d:(l + 1) * d] = img
            cols.append(block)
        return np.hstack(cols) if cols else el.zeros(0, 0)


def top_generators(m: Module, sub_basis: np.ndarray | None = None) -> tuple[list[np.ndarray], np.ndarray]:
    """Idempotents and vectors generating ``m`` minimally (lifts of a basis of the top).

    Returns ``(idempotents, vectors)`` with ``vectors[:, l]`` in ``e_l m``.
    """
    a, p = m.algebra, m.p
    if m.dim == 0:
        return [], el.zeros(0, 0)
    rad = a.radical
    jm = [el.matmul(m.act(rad[:, c]), el.identity(m.dim), p) for c in range(rad.shape[1])]
    jm_basis = el.image_basis(np.hstack(jm), p) if jm else el.zeros(m.dim, 0)
    idems = a.primitive_idempotents
    if idems is None:
        return _greedy_generators(m, jm_basis)
    idems_used = idems
    chosen_e, chosen_v = [], []
    for e in idems_used:
        re = m.act(e)
        u = el.image_basis(re, p)
        w = el.image_basis(el.matmul(re, jm_basis, p), p) if jm_basis.shape[1] else el.zeros(m.dim, 0)
        if u.shape[1] == w.shape[1]:
            continue
        _, piv = el.rref(np.hstack([w, u]), p)
        for c in piv:
            if c >= w.shape[1]:
                chosen_e.append(e)
                chosen_v.append(u[:, c - w.shape[1]])
    return chosen_e, np.stack(chosen_v, axis=1)


def _greedy_generators(m: Module, jm_basis: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
    """Free generators: add complement vectors while they enlarge the generated submodule."""
    from .modules import generated_subspace
    p = m.p
    span = jm_basis
    chosen = []
    _, piv = el.rref(np.hstack([jm_basis, el.identity(m.dim)]), p)
    for c in piv:
        if c < jm_basis.shape[1] or span.shape[1] == m.dim:
            continue
        v = el.identity(m.dim)[:, c - jm_basis.shape[1]]
        if el.Coordinates(span, p).contains(v):
            continue
        chosen.append(v)
        span = el.image_basis(np.hstack([jm_basis, generated_subspace(m, np.stack(chosen, axis=1))]), p)
    return [m.algebra.unit] * len(chosen), np.stack(chosen, axis=1)


def projective_cover(m: Module) -> tuple[ProjectiveModule, ModuleHom]:
    """A projective cover ``P -> m`` (minimal when the algebra is split basic)."""
    def build():
        idems, vecs = top_generators(m)
        pm = ProjectiveModule(m.algebra, idems)
        return pm, pm.map_to(m, vecs)
    return m.cached("projective_cover", build)


@dataclass
class Resolution:
    """``... -> P_1 -> P_0 -> M -> 0``.

    ``diffs[0]`` is the augmentation ``P_0 -> M``; ``diffs[i]`` maps ``P_i -> P_{i-1}``.
    ``coeffs[i][k, l]`` is the slot-``l`` component of ``d_i(e_k)`` (an element of A),
    for ``i >= 1``.
    """

    module: Module
    stages: list[ProjectiveModule] = field(default_factory=list)
    diffs: list[ModuleHom] = field(default_factory=list)
    coeffs: list[np.ndarray | None] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.stages) - 1

    def ranks(self) -> list[int]:
        return [s.rank for s in self.stages]

    def extend(self, length: int):
        a = self.module.algebra
        while self.length < length:
            if not self.stages:
                pm, aug = projective_cover(self.module)
                self.stages.append(pm)
                self.diffs.append(aug)
                self.coeffs.append(None)
                continue
            prev, d = self.stages[-1], self.diffs[-1]
            kb = el.kernel_basis(d.matrix, a.p)
            if kb.shape[1] == 0:
                pm = ProjectiveModule(a, [])
                self.stages.append(pm)
                self.diffs.append(ModuleHom(pm.module, prev.module, el.zeros(prev.dim, 0), check=False))
                self.coeffs.append(np.zeros((0, prev.rank, a.dim), dtype=np.int64))
                continue
            k, inc = submodule(prev.module, kb)
            idems, vecs = top_generators(k)
            pm = ProjectiveModule(a, idems)
            amb = el.matmul(inc.matrix, vecs, a.p)
            nd = pm.map_to(prev.module, amb)
            self.stages.append(pm)
            self.diffs.append(nd)
            self.coeffs.append(np.stack([prev.slot_parts(amb[:, l]) for l in range(pm.rank)]))

    def check_exact(self) -> bool:
        p = self.module.p
        if not self.stages:
            return True
        if self.diffs[0].rank() != self.module.dim:
            return False
        for i in range(1, len(self.stages)):
            d_prev, d = self.diffs[i - 1], self.diffs[i]
            if not el.is_zero(el.matmul(d_prev.matrix, d.matrix, p)):
                return False
            if d.rank() != self.stages[i - 1].dim - d_prev.rank():
                return False
        return True


def free_resolution(m: Module, length: int) -> Resolution:
    """The cached projective resolution of ``m``, computed to at least ``length``."""
    if length < 0:
        raise ValueError("length must be non-negative")
    res = m.cached("resolution", lambda: Resolution(m))
    with m._lock:
        res.extend(length)
    return res


# ---------------------------------------------------------------- Ext


def _coboundary(res: Resolution, i: int, n: Module) -> np.ndarray:
    """Matrix of ``Hom(P_{i-1}, N) -> Hom(P_i, N)`` on ``N^{r_{i-1}} -> N^{r_i}``."""
    p, d = n.p, n.dim
    r_prev, r = res.stages[i - 1].rank, res.stages[i].rank
    out = el.zeros(d * r, d * r_prev)
    co = res.coeffs[i]
    for k in range(r):
        for l in range(r_prev):
            if np.any(co[k, l]):
                out[k * d:(k + 1) * d, l * d:(l + 1) * d] = n.act(co[k, l])
    return out


@dataclass
class ExtClass:
    """A cocycle in ``Hom(P_i, N)`` for a fixed resolution of the first argument."""

    resolution: Resolution
    degree: int
    target: Module
    cocycle: np.ndarray

    def __add__(self, other: "ExtClass") -> "ExtClass":
        _same_group(self, other)
        return ExtClass(self.resolution, self.degree, self.target, (self.cocycle + other.cocycle) % self.target.p)

    def scale(self, c: int) -> "ExtClass":
        return ExtClass(self.resolution, self.degree, self.target, (c * self.cocycle) % self.target.p)

    def hom(self) -> ModuleHom:
        """The cocycle as a homomorphism ``P_i -> N``."""
        st = self.resolution.stages[self.degree]
        return st.map_to(self.target, self.cocycle.reshape(st.rank, self.target.dim).T)


def _same_group(a: ExtClass, b: ExtClass):
    if a.resolution is not b.resolution or a.degree != b.degree or a.target is not b.target:
        raise ValueError("Ext classes live in different groups or resolutions")


class ExtGroup:
    """``Ext^i(M, N)`` computed from the cached resolution of ``M``."""

    def __init__(self, m: Module, n: Module, i: int):
        if not m.algebra.same(n.algebra):
            raise ValueError("Ext between modules over different algebras")
        self.source, self.target, self.degree = m, n, i
        p = m.p
        self.p = p
        self.resolution = free_resolution(m, i + 1)
        res = self.resolution
        cb = res.stages[i].cochain_basis(n)
        nxt = _coboundary(res, i + 1, n)
        z = el.matmul(cb, el.kernel_basis(el.matmul(nxt, cb, p), p), p) if cb.shape[1] else cb
        if i > 0 and z.shape[1]:
            prev_cb = res.stages[i - 1].cochain_basis(n)
            bnd = el.image_basis(el.matmul(_coboundary(res, i, n), prev_cb, p), p) if prev_cb.shape[1] \
                else el.zeros(z.shape[0], 0)
        else:
            bnd = el.zeros(z.shape[0], 0)
        self.cocycles = el.image_basis(z, p) if z.shape[1] else z
        self.boundaries = bnd
        _, piv = el.rref(np.hstack([bnd, self.cocycles]), p)
        self.reps = self.cocycles[:, [c - bnd.shape[1] for c in piv if c >= bnd.shape[1]]]
        self.dim = self.reps.shape[1]
        self._coords = el.Coordinates(np.hstack([bnd, self.reps]), p)

    def basis(self) -> list[ExtClass]:
        return [ExtClass(self.resolution, self.degree, self.target, self.reps[:, j].copy()) for j in range(self.dim)]

    def element(self, coeffs) -> ExtClass:
        v = el.matmul(self.reps, np.asarray(coeffs, dtype=np.int64).reshape(-1, 1), self.p)[:, 0] if self.dim \
            else np.zeros(self.reps.shape[0], dtype=np.int64)
        return ExtClass(self.resolution, self.degree, self.target, v)

    def coords(self, c: ExtClass) -> np.ndarray:
        """Coordinates of the class of ``c`` in the chosen basis."""
        if c.resolution is not self.resolution or c.degree != self.degree:
            raise ValueError("class computed from a different resolution")
        full = self._coords(c.cocycle, check=True)
        return full[self.boundaries.shape[1]:]

    def coboundary_part(self, c: ExtClass) -> np.ndarray:
        full = self._coords(c.cocycle, check=True)
        return full[:self.boundaries.shape[1]]

    def is_zero(self, c: ExtClass) -> bool:
        return not np.any(self.coords(c))


def ext_group(m: Module, n: Module, i: int) -> ExtGroup:
    return m.cached(("ext", id(n), i), lambda: (n, ExtGroup(m, n, i)))[1]


def ext_dim(m: Module, n: Module, i: int) -> int:
    if i < 0:
        raise ValueError("degree must be non-negative")
    if m.dim == 0 or n.dim == 0:
        return 0
    return ext_group(m, n, i).dim


def ext_basis(m: Module, n: Module, i: int) -> list[ExtClass]:
    return ext_group(m, n, i).basis()


def push_class(c: ExtClass, f: ModuleHom) -> ExtClass:
    """Image of ``c`` under ``Ext^i(M, f)``."""
    r = c.resolution.stages[c.degree].rank
    d = c.target.dim
    blocks = c.cocycle.reshape(r, d)
    new = el.matmul(blocks, f.matrix.T, f.p).reshape(-1) if r else np.zeros(0, dtype=np.int64)
    return ExtClass(c.resolution, c.degree, f.target, new)


def lift_through(target_hom: ModuleHom, values: np.ndarray, idems: list[np.ndarray]) -> np.ndarray | None:
    """Vectors ``w_l`` in ``e_l E`` with ``target_hom(w_l) = values[:, l]``."""
    p = target_hom.p
    src = target_hom.source
    if values.shape[1] == 0:
        return el.zeros(src.dim, 0)
    sol = el.solve(target_hom.matrix, values, p)
    if sol is None:
        return None
    return np.stack([el.matmul(src.act(e), sol[:, l:l + 1], p)[:, 0] for l, e in enumerate(idems)], axis=1)


def lift_chain_map(src: Resolution, tgt: Resolution, u: ModuleHom, degree: int) -> list[ModuleHom]:
    """Chain maps ``P_i(src) -> P_i(tgt)`` over ``u`` for ``i <= degree``."""
    p = u.p
    src.extend(degree)
    tgt.extend(degree)
    maps: list[ModuleHom] = []
    for i in range(degree + 1):
        ps, pt = src.stages[i], tgt.stages[i]
        if i == 0:
            vals = el.matmul(u.matrix, ps.generator_images(src.diffs[0]), p) if ps.rank else el.zeros(u.target.dim, 0)
        else:
            vals = el.matmul(maps[-1].matrix, ps.generator_images(src.diffs[i]), p) if ps.rank \
                else el.zeros(tgt.stages[i - 1].dim, 0)
        w = lift_through(tgt.diffs[i], vals, ps.idempotents)
        if w is None:
            raise ArithmeticError("chain map lifting failed: resolution is not exact")
        maps.append(ps.map_to(pt.module, w))
    return maps


def pull_class(c: ExtClass, u: ModuleHom) -> ExtClass:
    """Image of ``c`` in ``Ext^i(M', N)`` under ``u: M' -> M``, on the cached resolution of ``M'``."""
    src = free_resolution(u.source, c.degree + 1)
    chain = lift_chain_map(src, c.resolution, u, c.degree)
    h = el.matmul(c.hom().matrix, chain[c.degree].matrix, u.p)
    st = src.stages[c.degree]
    vals = st.generator_images(ModuleHom(st.module, c.target, h, check=False))
    return ExtClass(src, c.degree, c.target, vals.T.reshape(-1).copy())


# ---------------------------------------------------------------- extensions


@dataclass
class ShortExactSeq:
    """``0 -> X1 --f--> X2 --g--> X3 -> 0``."""

    f: ModuleHom
    g: ModuleHom

    @property
    def ends(self) -> tuple[Module, Module, Module]:
        return self.f.source, self.f.target, self.g.target

    def check(self) -> bool:
        p = self.f.p
        if self.f.target is not self.g.source and self.f.target.dim != self.g.source.dim:
            return False
        return (self.f.is_injective() and self.g.is_surjective()
                and el.is_zero(el.matmul(self.g.matrix, self.f.matrix, p))
                and self.f.rank() + self.g.rank() == self.f.target.dim)


def extension_from_class(c: ExtClass) -> ShortExactSeq:
    """Realize a class of ``Ext^1(Z, X)`` as ``0 -> X -> E -> Z -> 0``.

    ``E = (X (+) P_0) / {(h(y), -d(y)) : y in P_1}`` where ``h`` is the cocycle.
    """
    return universal_extension([c])


def universal_extension(classes: list[ExtClass], end: Module | None = None) -> ShortExactSeq:
    """``0 -> X -> E -> Z_1 (+) ... (+) Z_n -> 0`` restricting to class ``j`` on summand ``j``.

    The classes share the target ``X`` but may come from different modules ``Z_j``.
    ``end`` may supply a prebuilt direct sum of the ``Z_j`` in the standard basis.
    """
    if not classes:
        raise ValueError("need at least one class")
    x = classes[0].target
    for c in classes:
        if c.degree != 1:
            raise ValueError("only degree-1 classes define short exact sequences")
        if c.target is not x:
            raise ValueError("classes have different targets")
    p = x.p
    n = len(classes)
    resolutions = [c.resolution for c in classes]
    p0s = [r.stages[0].module for r in resolutions]
    s, inj, proj = direct_sum([x] + p0s, name="E")
    rels = []
    for j, c in enumerate(classes):
        d1 = resolutions[j].diffs[1].matrix
        blocks = [c.hom().matrix] + [(-d1) % p if k == j else el.zeros(p0s[k].dim, d1.shape[1]) for k in range(n)]
        rels.append(np.vstack(blocks))
    q, pi, _ = quotient_module(s, np.hstack(rels), name="E")
    f = ModuleHom(x, q, el.matmul(pi.matrix, inj[0].matrix, p), check=False)
    zs = [r.module for r in resolutions]
    zn = end if end is not None else (zs[0] if n == 1 else direct_sum(zs)[0])
    rows = []
    for j, r in enumerate(resolutions):
        aug = r.diffs[0].matrix
        rows.append(np.hstack([el.zeros(zs[j].dim, x.dim)] + [
            aug if k == j else el.zeros(zs[j].dim, p0s[k].dim) for k in range(n)]))
    g_on_sum = np.vstack(rows)
    sect = el.solve(pi.matrix, el.identity(q.dim), p)
    g = ModuleHom(q, zn, el.matmul(g_on_sum, sect, p), check=False)
    return ShortExactSeq(f, g)


def class_of_extension(seq: ShortExactSeq) -> ExtClass:
    """The class in ``Ext^1(X3, X1)`` (cached resolution of ``X3``)."""
    x1, e, x3 = seq.ends
    p = x1.p
    res = free_resolution(x3, 2)
    p0 = res.stages[0]
    w = lift_through(seq.g, p0.generator_images(res.diffs[0]), p0.idempotents)
    phi0 = p0.map_to(e, w)
    p1 = res.stages[1]
    imgs = el.matmul(phi0.matrix, p1.generator_images(res.diffs[1]), p) if p1.rank else el.zeros(e.dim, 0)
    xs = lift_through(seq.f, imgs, p1.idempotents) if p1.rank else el.zeros(x1.dim, 0)
    return ExtClass(res, 1, x1, xs.T.reshape(-1).copy())


def split_sequence(x: Module, z: Module) -> ShortExactSeq:
    s, inj, proj = direct_sum([x, z])
    return ShortExactSeq(inj[0], proj[1])


# ---------------------------------------------------------------- Tor


def tor_dim(m: Module, n: Module, i: int) -> int:
    """``dim Tor_i^A(M, N)`` for a right module ``m`` (a module over ``A^op``) and left module ``n``."""
    a = n.algebra
    if not m.algebra.same(a.opposite()):
        raise ValueError("first argument must be a module over the opposite algebra")
    if i < 0:
        raise ValueError("degree must be non-negative")
    if m.dim == 0 or n.dim == 0:
        return 0
    res = free_resolution(n, i + 1)
    p, d = a.p, m.dim

    def chains(k):
        return _right_chain_basis(res.stages[k], m)

    def diff(k):
        # M (x) P_k -> M (x) P_{k-1}: block (l, j) = right action of coeffs[k][j, l]
        r, r_prev = res.stages[k].rank, res.stages[k - 1].rank
        out = el.zeros(d * r_prev, d * r)
        co = res.coeffs[k]
        for j in range(r):
            for l in range(r_prev):
                if np.any(co[j, l]):
                    out[l * d:(l + 1) * d, j * d:(j + 1) * d] = m.act(co[j, l])
        return out

    ci = chains(i)
    if ci.shape[1] == 0:
        return 0
    if i > 0:
        cyc = el.kernel_basis(el.matmul(diff(i), ci, p), p).shape[1]
    else:
        cyc = ci.shape[1]
    cn = chains(i + 1)
    bnd = el.rank(el.matmul(diff(i + 1), cn, p), p) if cn.shape[1] else 0
    return cyc - bnd


def _right_chain_basis(st: ProjectiveModule, m: Module) -> np.ndarray:
    """Basis of ``(+)_l M e_l`` inside ``M^r``."""
    p, d = m.p, m.dim
    cols = []
    for l, e in enumerate(st.idempotents):
        img = el.image_basis(m.act(e), p)
        block = el.zeros(d * st.rank, img.shape[1])
        block[l * d:(l + 1) * d] = img
        cols.append(block)
    return np.hstack(cols) if cols else el.zeros(0, 0)


# ---------------------------------------------------------------- projectivity


def is_projective(m: Module) -> bool:
    if m.dim == 0:
        return True
    _, cover = projective_cover(m)
    return find_section(cover) is not None


def is_injective(m: Module) -> bool:
    return is_projective(dual(m))


def injective_envelope(m: Module) -> tuple[Module, ModuleHom]:
    """``m -> D(P)`` where ``P -> D(m)`` is a projective cover."""
    def build():
        dm = dual(m)
        pm, cover = projective_cover(dm)
        inj = dual(pm.module, name="I")
        return inj, ModuleHom(m, inj, cover.matrix.T.copy(), check=False)
    return m.cached("injective_envelope", build)


def projective_dimension(m: Module, bound: int) -> int | None:
    """Projective dimension if at most ``bound``, else None."""
    res = free_resolution(m, bound + 1)
    for i, st in enumerate(res.stages):
        if st.rank == 0:
            return max(i - 1, 0) if m.dim else 0
    return None


# ---------------------------------------------------------------- standard modules


def _idempotent(a: Algebra, i: int) -> np.ndarray:
    idems = a.primitive_idempotents
    if idems is None:
        raise ValueError("algebra is not split basic; primitive idempotents unavailable")
    return idems[i]


def indecomposable_projective(a: Algebra, i: int) -> Module:
    """``A e_i`` for the ``i``-th primitive idempotent."""
    def build():
        pm = ProjectiveModule(a, [_idempotent(a, i)])
        pm.module.name = f"P{i}"
        return pm.module
    return a.cached(("projective", i), build)


def simple_module(a: Algebra, i: int) -> Module:
    """The top of ``A e_i``."""
    def build():
        pr = indecomposable_projective(a, i)
        rad = a.radical
        jm = [pr.act(rad[:, c]) for c in range(rad.shape[1])]
        sub = el.image_basis(np.hstack(jm), a.p) if jm else el.zeros(pr.dim, 0)
        return quotient_module(pr, sub, name=f"S{i}")[0]
    return a.cached(("simple", i), build)


def indecomposable_injective(a: Algebra, i: int) -> Module:
    """``D(e_i A)``, the injective envelope of the ``i``-th simple."""
    def build():
        m = dual(indecomposable_projective(a.opposite(), i), name=f"I{i}")
        return Module(a, m.action, name=f"I{i}", check=False)
    return a.cached(("injective", i), build)


def radical_submodule(m: Module) -> np.ndarray:
    """Basis of ``rad(A) M``."""
    rad = m.algebra.radical
    if rad.shape[1] == 0 or m.dim == 0:
        return el.zeros(m.dim, 0)
    return el.image_basis(np.hstack([m.act(rad[:, c]) for c in range(rad.shape[1])]), m.p)


def standard_indecomposables(a: Algebra) -> list[Module]:
    """Pairwise non-isomorphic indecomposables among ``rad^j P_i / rad^k P_i``.

    For Nakayama algebras (path algebras of linear quivers, their trivial
    extensions) this is the full list of indecomposables.
    """
    from .modules import find_isomorphism, is_local
    n = len(_idempotents_or_fail(a))
    out: list[Module] = [simple_module(a, i) for i in range(n)]
    for i in range(n):
        pr = indecomposable_projective(a, i)
        layers = [el.identity(pr.dim)]
        while layers[-1].shape[1]:
            sub, inc = submodule(pr, layers[-1])
            nxt = radical_submodule(sub)
            layers.append(el.matmul(inc.matrix, nxt, a.p) if nxt.shape[1] else el.zeros(pr.dim, 0))
        for j in range(len(layers) - 1):
            for k in range(j + 1, len(layers)):
                sub, _ = submodule(pr, layers[j])
                # express layer k inside layer j
                inner = el.solve(layers[j], layers[k], a.p) if layers[k].shape[1] else el.zeros(sub.dim, 0)
                top = f"rad{j}P{i}" if j else f"P{i}"
                name = top if k == len(layers) - 1 else f"{top}/rad{k}"
                q = quotient_module(sub, inner, name=name)[0]
                if q.dim == 0 or not is_local(q):
                    continue
                if any(o.dim == q.dim and find_isomorphism(o, q) is not None for o in out):
                    continue
                out.append(q)
    return out


def _idempotents_or_fail(a: Algebra) -> list[np.ndarray]:
    idems = a.primitive_idempotents
    if idems is None:
        raise ValueError("algebra is not split basic; primitive idempotents unavailable")
    return idems


# ---------------------------------------------------------------- sampling sequences


def extension_sequences(mods: list[Module], count: int, rng: np.random.Generator | None = None,
                        max_dim: int = 8) -> list[tuple[str, ShortExactSeq]]:
    """Up to ``count`` short exact sequences with ends in ``mods`` or sums of two of them.

    Non-split extensions come first (a basis of each nonzero ``Ext^1`` and, with
    ``rng``, a random nonzero class), then split sequences.
    """
    ends = [(m.name, m) for m in mods]
    for i, x in enumerate(mods):
        for y in mods[i:]:
            if x.dim + y.dim <= max_dim // 2:
                ends.append((f"{x.name}+{y.name}", direct_sum([x, y], name=f"{x.name}+{y.name}")[0]))
    nonsplit, split = [], []
    for zn, z in ends:
        for xn, x in ends:
            if x.dim + z.dim > max_dim or x.dim == 0 or z.dim == 0:
                continue
            grp = ext_group(z, x, 1)
            for k in range(grp.dim):
                nonsplit.append((f"ext({zn},{xn})#{k}", grp.basis()[k]))
            if rng is not None and grp.dim > 1:
                v = rng.integers(0, x.p, grp.dim)
                if np.any(v):
                    nonsplit.append((f"ext({zn},{xn})#r", grp.element(v)))
            split.append((f"split({xn},{zn})", (x, z)))
    out = []
    for name, c in nonsplit:
        if len(out) >= count:
            return out
        out.append((name, extension_from_class(c)))
    for name, (x, z) in split:
        if len(out) >= count:
            break
        out.append((name, split_sequence(x, z)))
    return out


def random_ses_morphism(xi: ShortExactSeq, xi2: ShortExactSeq, rng: np.random.Generator
                        ) -> tuple[ModuleHom, ModuleHom, ModuleHom] | None:
    """A random morphism ``(a, b, c): xi -> xi2`` with ``b != 0``, or None if every such ``b`` is 0."""
    from .modules import hom_space
    p = xi.f.p
    x1, x2, x3 = xi.ends
    y1, y2, y3 = xi2.ends
    hs = hom_space(x2, y2)
    ker = hs.solve_space(lambda h: el.mul(p, xi2.g.matrix, h, xi.f.matrix))
    if ker.shape[1] == 0:
        return None
    v = np.zeros(ker.shape[1], dtype=np.int64)
    while not np.any(v):
        v = rng.integers(0, p, ker.shape[1])
    b = hs.hom(el.matmul(ker, v.reshape(-1, 1), p)[:, 0])
    a_mat = el.solve(xi2.f.matrix, el.matmul(b.matrix, xi.f.matrix, p), p)
    g_sect = el.solve(xi.g.matrix, el.identity(x3.dim), p)
    c_mat = el.mul(p, xi2.g.matrix, b.matrix, g_sect)
    return ModuleHom(x1, y1, a_mat, check=False), b, ModuleHom(x3, y3, c_mat, check=False)


def restrict_sequence(xi: ShortExactSeq, restrict) -> ShortExactSeq:
    """Apply a restriction of scalars ``restrict: Module -> Module`` to every term."""
    x1, x2, x3 = (restrict(m) for m in xi.ends)
    return ShortExactSeq(ModuleHom(x1, x2, xi.f.matrix, check=False), ModuleHom(x2, x3, xi.g.matrix, check=False))

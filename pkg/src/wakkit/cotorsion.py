"""Cotorsion-pair backends, special preenvelopes, and their behaviour on sequences.

A backend describes a complete hereditary cotorsion pair ``(W, V)`` with
``W n V = add T`` through bounded Ext tests:

* ``classical_tilting``: ``V = T^perp``; ``X`` is in ``W`` when ``Ext^i(X, T) = 0``
  and ``pd X <= bound`` (for a tilting module of projective dimension at most
  one this is ``perp(T^perp)``).
* ``finite_type``: ``W = add W0`` and ``V = add V0``; membership in ``V`` is
  ``Ext^i(W0, X) = 0`` and membership in ``W`` is ``Ext^i(X, V0) = 0``.

Special preenvelopes are built by iterated universal extensions by summands
of ``T`` (tilting) or of ``W0`` (finite type).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from .algmod import (Algebra, Bimodule, Module, ModuleHom, Validation, cokernel, direct_sum, hom_basis,
                     regular_module)
from .algmod.homology import (ShortExactSeq, class_of_extension, ext_basis, ext_dim, ext_group,
                              extension_from_class, projective_dimension, pull_class, universal_extension)
from .algmod.modules import (HomSpace, counit, dual_bimodule, find_section, hom_from, hom_space, quotient_module,
                             tensor_with, unit)


class NonConvergence(RuntimeError):
    pass


class ObstructionError(ArithmeticError):
    """A vanishing that the hereditary/complete hypotheses guarantee did not happen."""


@dataclass
class PreenvelopeData:
    """``0 -> X --alpha--> V(X) --proj--> W(X) -> 0``."""

    alpha: ModuleHom
    proj: ModuleHom
    section: np.ndarray
    rounds: int = 0

    @property
    def module(self) -> Module:
        return self.alpha.source

    @property
    def v(self) -> Module:
        return self.alpha.target

    @property
    def w(self) -> Module:
        return self.proj.target


def _sum_or_zero(mods: list[Module], a: Algebra) -> Module:
    from .algmod import zero_module
    mods = [m for m in mods if m.dim]
    if not mods:
        return zero_module(a)
    return mods[0] if len(mods) == 1 else direct_sum(mods)[0]


class Backend:
    """A computable complete hereditary cotorsion pair."""

    VARIANTS = ("classical_tilting", "finite_type")

    def __init__(self, variant: str, t: Module, w0: Module | None = None, v0: Module | None = None,
                 ext_bound: int = 4, max_rounds: int = 32, name: str = "",
                 summands: list[Module] | None = None, w0_parts: list[Module] | None = None,
                 v0_parts: list[Module] | None = None):
        if variant not in self.VARIANTS:
            raise ValueError(f"unknown backend variant {variant!r}")
        if w0 is None and w0_parts:
            w0 = _sum_or_zero(w0_parts, t.algebra)
        if v0 is None and v0_parts:
            v0 = _sum_or_zero(v0_parts, t.algebra)
        if variant == "finite_type" and (w0 is None or v0 is None):
            raise ValueError("finite_type backend needs W0 and V0")
        self.variant = variant
        self.algebra = t.algebra
        self.t = t
        self.summands = summands or [t]
        self.w0 = w0
        self.v0 = v0
        self.w0_parts = [m for m in (w0_parts or ([w0] if w0 is not None else [])) if m.dim]
        self.v0_parts = [m for m in (v0_parts or ([v0] if v0 is not None else [])) if m.dim]
        self.ext_bound = ext_bound
        self.max_rounds = max_rounds
        self.name = name
        self._lock = threading.RLock()
        self._fixed: dict[int, tuple[Module, PreenvelopeData]] = {}

    @property
    def extenders(self) -> list[Module]:
        """Modules whose universal extensions build special preenvelopes.

        Summands of T for a tilting pair; summands of W0 for a finite-type pair,
        where T alone may have no extensions to offer (e.g. V = injectives).
        """
        return self.summands if self.variant == "classical_tilting" else self.w0_parts

    def __repr__(self):
        return f"Backend({self.variant}, bound={self.ext_bound})"

    # membership ----------------------------------------------------------

    def _vanish(self, m: Module, n: Module) -> bool:
        if m.dim == 0 or n.dim == 0:
            return True
        return all(ext_dim(m, n, i) == 0 for i in range(1, self.ext_bound + 1))

    def in_v(self, x: Module) -> bool:
        if self.variant == "classical_tilting":
            return self._vanish(self.t, x)
        return self._vanish(self.w0, x)

    def in_w(self, x: Module) -> bool:
        if self.variant == "classical_tilting":
            return self._vanish(x, self.t) and (x.dim == 0 or projective_dimension(x, self.ext_bound) is not None)
        return self._vanish(x, self.v0)

    def validate(self) -> Validation:
        fails = []
        if self.variant == "classical_tilting":
            pd = projective_dimension(self.t, 1)
            if pd is None:
                fails.append("T has projective dimension > 1")
            if ext_dim(self.t, self.t, 1):
                fails.append("Ext^1(T, T) != 0")
        else:
            if not in_add(self.t, self.w0):
                fails.append("T is not in add W0")
            if not in_add(self.t, self.v0):
                fails.append("T is not in add V0")
        return Validation(not fails, fails)

    # preenvelopes --------------------------------------------------------

    def preenvelope(self, x: Module) -> PreenvelopeData:
        """The special V-preenvelope fixed for this module handle."""
        with self._lock:
            hit = self._fixed.get(id(x))
            if hit is not None and hit[0] is x:
                return hit[1]
            data = special_preenvelope(x, self)
            self._fixed[id(x)] = (x, data)
            return data

    def fix(self, data: PreenvelopeData):
        """Register an explicitly chosen preenvelope for its module handle."""
        with self._lock:
            self._fixed[id(data.module)] = (data.module, data)


def special_preenvelope(x: Module, b: Backend, rng: np.random.Generator | None = None) -> PreenvelopeData:
    """Iterate universal extensions ``0 -> X_i -> X_{i+1} -> (+)_k T_k^{n_k} -> 0`` until ``X_i`` is in V.

    ``T_k`` runs over ``b.extenders`` and ``n_k = dim Ext^1(T_k, X_i)``; the
    cokernel is an iterated extension of modules in W, hence in W.
    With ``rng`` each Ext basis is replaced by a random basis, which gives a
    different but equally valid preenvelope.
    """
    p = x.p
    alpha = x.identity()
    cur = x
    rounds = 0
    while not b.in_v(cur):
        if rounds >= b.max_rounds:
            raise NonConvergence(f"preenvelope did not converge in {b.max_rounds} rounds")
        classes = []
        for tk in b.extenders:
            grp = ext_group(tk, cur, 1)
            k = grp.dim
            if k == 0:
                continue
            mix = _invertible(rng, k, p) if rng is not None else el.identity(k)
            classes += [grp.element(mix[:, j]) for j in range(k)]
        if not classes:
            raise NonConvergence("no extensions left but X_i is not in V: the extenders do not generate W")
        seq = universal_extension(classes)
        alpha = seq.f @ alpha
        cur = seq.f.target
        rounds += 1
    w, proj, sect = cokernel(alpha, name=f"W({x.name})")
    return PreenvelopeData(alpha, proj, sect, rounds)


def _invertible(rng: np.random.Generator, k: int, p: int) -> np.ndarray:
    while True:
        m = rng.integers(0, p, (k, k))
        if el.rank(m, p) == k:
            return m


def check_preenvelope(data: PreenvelopeData, b: Backend) -> Validation:
    fails = []
    if not data.alpha.is_injective():
        fails.append("alpha is not injective")
    if not b.in_v(data.v):
        fails.append("V(X) is not in V")
    if not b.in_w(data.w):
        fails.append(f"W(X) is not in W (bound {b.ext_bound})")
    if not ShortExactSeq(data.alpha, data.proj).check():
        fails.append("0 -> X -> V(X) -> W(X) -> 0 is not exact")
    return Validation(not fails, fails)


def add_witness(m: Module, t: Module) -> dict:
    """Re-checkable data for ``m in add t``: the evaluation ``t^h -> m`` and whether it splits."""
    hs = hom_space(t, m) if m.dim and t.dim else None
    if hs is None or hs.dim == 0:
        return {"hom_dim": 0, "evaluation": [], "surjective": m.dim == 0, "split": m.dim == 0}
    th, _, _ = direct_sum([t] * hs.dim)
    ev = ModuleHom(th, m, np.hstack(list(hs.basis)), check=False)
    surj = ev.is_surjective()
    return {"hom_dim": hs.dim, "evaluation": ev.matrix.tolist(), "surjective": surj,
            "split": surj and find_section(ev) is not None}


def in_add(m: Module, t: Module) -> bool:
    """``m`` is a direct summand of a sum of copies of ``t``: the evaluation ``t^h -> m`` splits."""
    if m.dim == 0:
        return True
    if t.dim == 0:
        return False
    hs = hom_space(t, m)
    if hs.dim == 0:
        return False
    th, _, _ = direct_sum([t] * hs.dim)
    ev = ModuleHom(th, m, np.hstack(list(hs.basis)), check=False)
    return ev.is_surjective() and find_section(ev) is not None


# ---------------------------------------------------------------- sequences (the ladder)


@dataclass
class Ladder:
    """Special preenvelope of a short exact sequence with the data of its construction."""

    xi: ShortExactSeq
    pre1: PreenvelopeData
    pre3: PreenvelopeData
    f_v: ModuleHom
    g_v: ModuleHom
    alpha2: ModuleHom
    proj2: ModuleHom
    section2: np.ndarray
    pushout: ShortExactSeq  # 0 -> V1 -> E -> X3 -> 0
    a: ModuleHom  # X2 -> E
    a_prime: ModuleHom  # E -> V2

    @property
    def pre2(self) -> PreenvelopeData:
        return PreenvelopeData(self.alpha2, self.proj2, self.section2)

    def check(self, b: Backend | None = None) -> Validation:
        p = self.alpha2.p
        fails = []
        if not ShortExactSeq(self.f_v, self.g_v).check():
            fails.append("bottom row is not exact")
        if not self.xi.check():
            fails.append("top row is not exact")
        if not np.array_equal(el.matmul(self.alpha2.matrix, self.xi.f.matrix, p),
                              el.matmul(self.f_v.matrix, self.pre1.alpha.matrix, p)):
            fails.append("left square does not commute")
        if not np.array_equal(el.matmul(self.g_v.matrix, self.alpha2.matrix, p),
                              el.matmul(self.pre3.alpha.matrix, self.xi.g.matrix, p)):
            fails.append("right square does not commute")
        if not self.alpha2.is_injective():
            fails.append("alpha2 is not injective")
        for m in (self.f_v, self.g_v, self.alpha2):
            if not m.is_linear():
                fails.append("a ladder map is not a module map")
        if b is not None:
            if not b.in_v(self.alpha2.target):
                fails.append("V2 is not in V")
            if not b.in_w(self.proj2.target):
                fails.append(f"W2 is not in W (bound {b.ext_bound})")
        return Validation(not fails, fails)


def pushout_along(xi: ShortExactSeq, alpha1: ModuleHom) -> tuple[ShortExactSeq, ModuleHom]:
    """Pushout of ``xi`` along ``alpha1: X1 -> V1``: ``E = (V1 (+) X2) / {(alpha1 x, -f x)}``."""
    p = alpha1.p
    v1, x2, x3 = alpha1.target, xi.f.target, xi.g.target
    s, inj, proj = direct_sum([v1, x2], name="E")
    rel = np.vstack([alpha1.matrix, (-xi.f.matrix) % p])
    e, pi, sect = quotient_module(s, rel, name="E")
    f_prime = ModuleHom(v1, e, el.matmul(pi.matrix, inj[0].matrix, p), check=False)
    a = ModuleHom(x2, e, el.matmul(pi.matrix, inj[1].matrix, p), check=False)
    g_on_sum = el.matmul(xi.g.matrix, proj[1].matrix, p)
    sect_e = el.solve(pi.matrix, el.identity(e.dim), p)
    g_prime = ModuleHom(e, x3, el.matmul(g_on_sum, sect_e, p), check=False)
    return ShortExactSeq(f_prime, g_prime), a


def ext_restriction_is_surjective(alpha3: ModuleHom, v1: Module) -> bool:
    """``Ext^1(V3, V1) -> Ext^1(X3, V1)`` along ``alpha3: X3 -> V3`` is onto."""
    x3, v3 = alpha3.source, alpha3.target
    target = ext_group(x3, v1, 1)
    if target.dim == 0:
        return True
    imgs = [target.coords(pull_class(c, alpha3)) for c in ext_basis(v3, v1, 1)]
    if not imgs:
        return False
    return el.rank(np.stack(imgs, axis=1), x3.p) == target.dim


def preenvelope_of_ses(xi: ShortExactSeq, pre1: PreenvelopeData, pre3: PreenvelopeData,
                       rng: np.random.Generator | None = None) -> Ladder:
    """Special preenvelope of ``xi`` from those of its ends.

    Push ``xi`` out along ``alpha1`` to ``0 -> V1 -> E -> X3 -> 0``, lift its class
    through ``Ext^1(V3, V1) -> Ext^1(X3, V1)``, realize the preimage as
    ``0 -> V1 -> V2 -> V3 -> 0`` and compare ``E`` with its pullback along ``alpha3``.
    With ``rng`` every free choice (preimage class, cocycle representative, comparison
    map) is randomized.
    """
    p = xi.f.p
    alpha1, alpha3 = pre1.alpha, pre3.alpha
    if alpha1.source is not xi.f.source and alpha1.source.dim != xi.f.source.dim:
        raise ValueError("pre1 is not a preenvelope of X1")
    v1, v3, x3 = alpha1.target, alpha3.target, alpha3.source
    push, a = pushout_along(xi, alpha1)
    c_e = class_of_extension(push)
    target = ext_group(x3, v1, 1)
    rhs = target.coords(c_e)
    src = ext_group(v3, v1, 1)
    basis = src.basis()
    if basis:
        imgs = np.stack([target.coords(pull_class(c, alpha3)) for c in basis], axis=1)
    else:
        imgs = el.zeros(target.dim, 0)
    lam = el.solve(imgs, rhs.reshape(-1, 1), p) if imgs.shape[0] else el.zeros(len(basis), 1)
    if lam is None:
        raise ObstructionError("Ext^1(V3, V1) -> Ext^1(X3, V1) misses the pushout class (Ext^2(W3, V1) != 0?)")
    lam = lam[:, 0]
    if rng is not None and imgs.shape[1]:
        ker = el.kernel_basis(imgs, p)
        if ker.shape[1]:
            lam = (lam + el.matmul(ker, rng.integers(0, p, (ker.shape[1], 1)), p)[:, 0]) % p
    u = src.element(lam)
    if rng is not None and src.boundaries.shape[1]:
        shift = el.matmul(src.boundaries, rng.integers(0, p, (src.boundaries.shape[1], 1)), p)[:, 0]
        u = type(u)(u.resolution, u.degree, u.target, (u.cocycle + shift) % p)
    bottom = extension_from_class(u)
    f_v, g_v = bottom.f, bottom.g
    v2 = f_v.target
    e = push.f.target
    hs = hom_space(e, v2)

    def lhs(h):
        return np.concatenate([el.matmul(h, push.f.matrix, p).reshape(-1),
                               el.matmul(g_v.matrix, h, p).reshape(-1)])

    rhs2 = np.concatenate([f_v.matrix.reshape(-1), el.matmul(alpha3.matrix, push.g.matrix, p).reshape(-1)])
    c = hs.solve(lhs, rhs2)
    if c is None:
        raise ObstructionError("no comparison map E -> V2 over the pulled-back extension")
    if rng is not None:
        ker = hs.solve_space(lhs)
        if ker.shape[1]:
            c = (c + el.matmul(ker, rng.integers(0, p, (ker.shape[1], 1)), p)[:, 0]) % p
    a_prime = hs.hom(c)
    alpha2 = a_prime @ a
    w2, proj2, sect2 = cokernel(alpha2, name="W2")
    return Ladder(xi, pre1, pre3, f_v, g_v, alpha2, proj2, sect2, push, a, a_prime)


def corrected_lift(t: ModuleHom, ladder: Ladder) -> ModuleHom:
    """``t'`` with ``t = t' f_V`` and ``t' alpha2 = 0``, given ``t alpha1 = 0``.

    Factor ``t`` through ``W1``, extend along ``f_W: W1 -> W2`` (possible since
    ``Ext^1(W3, V) = 0``), and compose with ``V2 -> W2``.
    """
    p = t.p
    pre1 = ladder.pre1
    if not el.is_zero(el.matmul(t.matrix, pre1.alpha.matrix, p)):
        raise ValueError("t does not vanish on alpha1")
    t_bar = el.matmul(t.matrix, pre1.section, p)
    f_w = el.mul(p, ladder.proj2.matrix, ladder.f_v.matrix, pre1.section)
    hs = hom_space(ladder.proj2.target, t.target)
    c = hs.solve(lambda h: el.matmul(h, f_w, p), t_bar)
    if c is None:
        raise ObstructionError("t does not extend along W1 -> W2 (Ext^1(W3, V) != 0?)")
    t2 = hs.element(c)
    return ModuleHom(ladder.f_v.target, t.target, el.matmul(t2, ladder.proj2.matrix, p), check=False)


@dataclass
class Prism:
    ladder: Ladder
    ladder2: Ladder
    a: ModuleHom
    b: ModuleHom
    c: ModuleHom
    a_v: ModuleHom
    b_v: ModuleHom
    c_v: ModuleHom

    def failures(self) -> list[str]:
        p = self.a.p
        L, M = self.ladder, self.ladder2

        def eq(x, y):
            return np.array_equal(x % p, y % p)

        mm = el.matmul
        checks = {
            "top left": eq(mm(M.xi.f.matrix, self.a.matrix, p), mm(self.b.matrix, L.xi.f.matrix, p)),
            "top right": eq(mm(M.xi.g.matrix, self.b.matrix, p), mm(self.c.matrix, L.xi.g.matrix, p)),
            "side 1": eq(mm(self.a_v.matrix, L.pre1.alpha.matrix, p), mm(M.pre1.alpha.matrix, self.a.matrix, p)),
            "side 2": eq(mm(self.b_v.matrix, L.alpha2.matrix, p), mm(M.alpha2.matrix, self.b.matrix, p)),
            "side 3": eq(mm(self.c_v.matrix, L.pre3.alpha.matrix, p), mm(M.pre3.alpha.matrix, self.c.matrix, p)),
            "bottom left": eq(mm(M.f_v.matrix, self.a_v.matrix, p), mm(self.b_v.matrix, L.f_v.matrix, p)),
            "bottom right": eq(mm(M.g_v.matrix, self.b_v.matrix, p), mm(self.c_v.matrix, L.g_v.matrix, p)),
        }
        out = [k for k, ok in checks.items() if not ok]
        for name, m in (("a_V", self.a_v), ("b_V", self.b_v), ("c_V", self.c_v)):
            if not m.is_linear():
                out.append(f"{name} is not a module map")
        return out


def _extend_along(alpha: ModuleHom, target: ModuleHom, rng=None) -> ModuleHom:
    """``u`` with ``u alpha = target`` (``alpha`` a preenvelope, ``target`` into V)."""
    p = alpha.p
    hs = hom_space(alpha.target, target.target)
    c = hs.solve(lambda h: el.matmul(h, alpha.matrix, p), target.matrix)
    if c is None:
        raise ObstructionError("map does not extend over the preenvelope (target not in V?)")
    if rng is not None:
        ker = hs.solve_space(lambda h: el.matmul(h, alpha.matrix, p))
        if ker.shape[1]:
            c = (c + el.matmul(ker, rng.integers(0, p, (ker.shape[1], 1)), p)[:, 0]) % p
    return hs.hom(c)


def preenvelope_of_morphism(ladder: Ladder, ladder2: Ladder, a: ModuleHom, b: ModuleHom, c: ModuleHom,
                            rng: np.random.Generator | None = None) -> Prism:
    """Maps ``a_V, b_V, c_V`` between the ladders making the whole prism commute."""
    p = a.p
    a_v = _extend_along(ladder.pre1.alpha, ladder2.pre1.alpha @ a, rng)
    b_v0 = _extend_along(ladder.alpha2, ladder2.alpha2 @ b, rng)
    t = (ladder2.f_v @ a_v) - (b_v0 @ ladder.f_v)
    t_prime = corrected_lift(t, ladder)
    b_v = t_prime + b_v0
    sect = el.solve(ladder.g_v.matrix, el.identity(ladder.g_v.target.dim), p)
    c_v = ModuleHom(ladder.g_v.target, ladder2.g_v.target,
                    el.mul(p, ladder2.g_v.matrix, b_v.matrix, sect), check=False)
    return Prism(ladder, ladder2, a, b, c, a_v, b_v, c_v)


# ---------------------------------------------------------------- tilting checks


def endomorphism_bimodule(t: Module, name: str = "T") -> Bimodule:
    """``T`` as an ``(A, B)``-bimodule with ``B = End_A(T)^op`` (``t . b = b(t)``)."""
    p = t.p
    hs = hom_space(t, t)
    basis = hs.basis
    k = hs.dim
    table = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            table[i, j] = hs.coords(el.matmul(basis[j], basis[i], p))
    unit = hs.coords(el.identity(t.dim))
    b = Algebra(p, table, unit, name=f"End({t.name})^op")
    return Bimodule(t.algebra, b, t.action, basis, name=name, check=False)


@dataclass
class Report:
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def add(self, name: str, ok: bool, witness=None):
        self.checks[name] = bool(ok)
        if not ok and witness is not None:
            self.witnesses[name] = witness

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def check_wakamatsu_tilting(t: Bimodule, bound: int) -> Report:
    """Faithful balance on both sides plus vanishing self-extensions up to ``bound``."""
    rep = Report()
    p = t.p
    ta = t.left_module()
    tb = t.right_module()
    end_b = hom_space(tb, tb)
    left_img = np.stack([t.lact[i].reshape(-1) for i in range(t.left.dim)], axis=1)
    rep.add("A -> End_B(T) dimension", end_b.dim == t.left.dim, {"dim A": t.left.dim, "dim End": end_b.dim})
    rep.add("A -> End_B(T) injective", el.rank(left_img, p) == t.left.dim)
    end_a = hom_space(ta, ta)
    right_img = np.stack([t.ract[j].reshape(-1) for j in range(t.right.dim)], axis=1)
    rep.add("B -> End_A(T) dimension", end_a.dim == t.right.dim, {"dim B": t.right.dim, "dim End": end_a.dim})
    rep.add("B -> End_A(T) injective", el.rank(right_img, p) == t.right.dim)
    for i in range(1, bound + 1):
        da, db = ext_dim(ta, ta, i), ext_dim(tb, tb, i)
        rep.add(f"Ext^{i}_A(T, T) = 0", da == 0, {"dim": da})
        rep.add(f"Ext^{i}_B(T, T) = 0", db == 0, {"dim": db})
    return rep


# ---------------------------------------------------------------- good Wakamatsu-tilting conditions


def derived_b_backend(ba: Backend, t: Bimodule, ext_bound: int | None = None) -> Backend | None:
    """The B-side pair ``(Y, Z) = (Hom_A(T, V), DT (x)_A W)`` for a finite-type A-side pair.

    Returns None for the classical tilting variant, whose B-side classes are not
    finitely generated in general.
    """
    if ba.variant != "finite_type":
        return None
    dt = dual_bimodule(t, name="DT")
    ys = [hom_from(t, v).module.left_module() for v in ba.v0_parts]
    zs = [tensor_with(dt, w).module.left_module() for w in ba.w0_parts]
    for k, y in enumerate(ys):
        y.name = f"Hom(T,{ba.v0_parts[k].name})"
    for k, z in enumerate(zs):
        z.name = f"DT(x){ba.w0_parts[k].name}"
    return Backend("finite_type", dt.left_module(), ext_bound=ext_bound or ba.ext_bound,
                   max_rounds=ba.max_rounds, name="derived", w0_parts=ys, v0_parts=zs)


def _is_iso(f: ModuleHom) -> bool:
    return f.source.dim == f.target.dim and f.rank() == f.source.dim


def check_good_conditions(ba: Backend, bb: Backend, t: Bimodule, sample_a: list[Module],
                          sample_b: list[Module], bound: int | None = None) -> Report:
    """Bounded checks of the four goodness conditions on the given samples.

    ``ba`` is ``(W, V)`` on A-mod and ``bb`` is ``(Y, Z)`` on B-mod, written as
    backends whose left class is W (resp. Y) and right class V (resp. Z).
    """
    rep = Report()
    bound = bound or max(ba.ext_bound, bb.ext_bound)
    dt = dual_bimodule(t, name="DT")
    for side, b, sample in (("A", ba, sample_a), ("B", bb, sample_b)):
        gen = "T" if side == "A" else "DT"
        ws = [m for m in sample if b.in_w(m)]
        vs = [m for m in sample if b.in_v(m)]
        bad = [(w.name, v.name, i) for w in ws for v in vs for i in range(1, bound + 1) if ext_dim(w, v, i)]
        rep.add(f"hereditary ({side})", not bad, {"nonzero Ext (left, right, degree)": bad})
        stuck = []
        for m in sample:
            try:
                v = check_preenvelope(special_preenvelope(m, b), b)
                if not v:
                    stuck.append((m.name, v.failures))
            except (NonConvergence, ObstructionError) as exc:
                stuck.append((m.name, str(exc)))
        rep.add(f"complete ({side})", not stuck, {"failures": stuck})
        v = b.validate()
        wit = {"failures": v.failures}
        if b.variant == "finite_type":
            wit["T in add W0"] = add_witness(b.t, b.w0)
            wit["T in add V0"] = add_witness(b.t, b.v0)
        rep.add(f"add {gen} in both classes ({side})", bool(v), wit)
        t_mod = b.t
        wrong = [m.name for m in sample if (b.in_w(m) and b.in_v(m)) != in_add(m, t_mod)]
        rep.add(f"intersection is add {gen} ({side})", not wrong, {"modules": wrong})
    # Hom_A(T, -) and T (x)_B - between V and Y
    bad = []
    for v in (m for m in sample_a if ba.in_v(m)):
        e = counit(t, v)
        if not _is_iso(e) or not bb.in_w(hom_from(t, v).module.left_module()):
            bad.append(("counit or image", v.name))
    for y in (m for m in sample_b if bb.in_w(m)):
        u = unit(t, y)
        if not _is_iso(u) or not ba.in_v(tensor_with(t, y).module.left_module()):
            bad.append(("unit or image", y.name))
    rep.add("V ~ Y", not bad, {"failures": bad})
    # DT (x)_A - and Hom_B(DT, -) between W and Z
    bad = []
    for w in (m for m in sample_a if ba.in_w(m)):
        u = unit(dt, w)
        if not _is_iso(u) or not bb.in_v(tensor_with(dt, w).module.left_module()):
            bad.append(("unit or image", w.name))
    for z in (m for m in sample_b if bb.in_v(m)):
        e = counit(dt, z)
        if not _is_iso(e) or not ba.in_w(hom_from(dt, z).module.left_module()):
            bad.append(("counit or image", z.name))
    rep.add("W ~ Z", not bad, {"failures": bad})
    return rep

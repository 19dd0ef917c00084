"""The verification suite: named checks over an instance, collected into a report."""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import exactlin as el
from ..algmod import ModuleHom, direct_sum, find_isomorphism, regular_module, validate_algebra
from ..algmod.homology import (ShortExactSeq, ext_dim, extension_sequences, indecomposable_injective,
                               indecomposable_projective, is_injective, is_projective, random_ses_morphism,
                               restrict_sequence, tor_dim)
from ..algmod.modules import hom_space
from ..algmod.oracles import ext1_by_enumeration
from ..cotorsion import (NonConvergence, ObstructionError, check_good_conditions, check_preenvelope,
                         check_wakamatsu_tilting, corrected_lift, preenvelope_of_morphism, preenvelope_of_ses,
                         special_preenvelope)
from ..trivext import stable_hom, stably_equal, stably_zero, symmetric_check, validate_pair
from ..wakfun import WakamatsuFunctor, delta_maps_are_bimodule_maps, verify_equivalence
from .instance import Instance


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    detail: dict = field(default_factory=dict)
    witness: object = None
    seconds: float = 0.0

    def body(self) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    instance: str
    seed: int
    ext_bound: int
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def body(self) -> dict:
        """Deterministic part of the report (no timings)."""
        return {"instance": self.instance, "seed": self.seed, "ext_bound": self.ext_bound, "ok": self.ok,
                "checks": [r.body() for r in sorted(self.results, key=lambda r: r.name)]}

    def to_json(self) -> dict:
        out = self.body()
        out["timing"] = {r.name: round(r.seconds, 4) for r in sorted(self.results, key=lambda r: r.name)}
        return out

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


class Context:
    """Lazily built shared data for one suite run; everything is rebuilt per run."""

    def __init__(self, inst: Instance, seed: int):
        self.inst = inst
        self.seed = seed
        self._functor = None

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])

    @property
    def functor(self) -> WakamatsuFunctor:
        if self._functor is None:
            self._functor = WakamatsuFunctor(self.inst.t, self.inst.backend,
                                             phi_sign=int(self.inst.settings.get("phi_sign", -1)))
        return self._functor

    def pairs(self) -> list:
        """Sample pairs that are genuine T(A)-modules; invalid ones are reported by ``trivext.pairs``."""
        if not hasattr(self, "_pairs"):
            self._pairs = [pr for pr in self.inst.sample("pairs") if validate_pair(pr)]
        return self._pairs

    def a_sequences(self) -> list[tuple[str, ShortExactSeq]]:
        if not hasattr(self, "_a_seqs"):
            inst = self.inst
            n = int(inst.settings["random_sequences"])
            out = [(k, s) for k, s in inst.sequences.items() if s.f.source.algebra is inst.a]
            out += extension_sequences(inst.sample("a_modules"), n, self.rng("a_sequences"))
            # underlying A-sequences of sequences of pairs are often non-split over A
            for k, s in self.pair_sequences():
                if len(out) >= n + len(inst.sequences):
                    break
                out.append((f"res {k}", restrict_sequence(s, inst.ta.restrict)))
            self._a_seqs = out[:max(n, len(inst.sequences))]
        return self._a_seqs

    def pair_sequences(self) -> list[tuple[str, ShortExactSeq]]:
        if not hasattr(self, "_p_seqs"):
            inst = self.inst
            n = int(inst.settings["pair_sequences"])
            out = [(k, s) for k, s in inst.sequences.items() if s.f.source.algebra is inst.ta.total]
            mods = [pr.module for pr in self.pairs()]
            out += extension_sequences(mods, n, self.rng("pair_sequences"), max_dim=8)
            self._p_seqs = out[:max(n, 1)]
        return self._p_seqs

    def morphisms(self, seqs: list, count: int, name: str) -> list:
        rng = self.rng(name)
        out = []
        for i, (k1, s1) in enumerate(seqs):
            for k2, s2 in seqs[i:]:
                if len(out) >= count:
                    return out
                m = random_ses_morphism(s1, s2, rng)
                if m is not None:
                    out.append(((k1, k2), s1, s2, m))
        return out


CHECKS: dict[str, Callable[[Context], CheckResult]] = {}


def check(name: str):
    def deco(fn):
        CHECKS[name] = fn
        return fn
    return deco


def _result(name: str, ok: bool, detail=None, witness=None) -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", detail or {}, None if ok else witness)


def _mat(m) -> list:
    return np.asarray(m).tolist()


# ---------------------------------------------------------------- structure


@check("algebra.axioms")
def _algebra_axioms(ctx: Context) -> CheckResult:
    inst = ctx.inst
    fails = {}
    for label, alg in (("A", inst.a), ("B", inst.b), ("T(A)", inst.ta.total), ("T(B)", inst.tb.total)):
        v = validate_algebra(alg)
        if not v:
            fails[label] = v.failures
    return _result("algebra.axioms", not fails, {"dims": {"A": inst.a.dim, "B": inst.b.dim}}, fails)


@check("trivext.symmetric")
def _symmetric(ctx: Context) -> CheckResult:
    inst = ctx.inst
    res = {"T(A)": symmetric_check(inst.ta), "T(B)": symmetric_check(inst.tb)}
    wit = {k: {"gram": _mat(t.trace_form())} for k, t in (("T(A)", inst.ta), ("T(B)", inst.tb)) if not res[k]}
    return _result("trivext.symmetric", all(res.values()), res, wit)


@check("trivext.projective_injective")
def _proj_inj(ctx: Context) -> CheckResult:
    inst = ctx.inst
    bad = []
    for label, tx in (("T(A)", inst.ta), ("T(B)", inst.tb)):
        idems = tx.total.primitive_idempotents
        if idems is None:
            bad.append((label, "not split basic"))
            continue
        for i in range(len(idems)):
            if not is_injective(indecomposable_projective(tx.total, i)):
                bad.append((label, f"P{i} not injective"))
            if not is_projective(indecomposable_injective(tx.total, i)):
                bad.append((label, f"I{i} not projective"))
    return _result("trivext.projective_injective", not bad, {}, bad)


@check("trivext.pairs")
def _pairs(ctx: Context) -> CheckResult:
    bad = {}
    for pr in ctx.inst.sample("pairs"):
        v = validate_pair(pr)
        if not v:
            bad[pr.name] = {"failures": v.failures, "phi": _mat(pr.phi)}
    return _result("trivext.pairs", not bad, {"pairs": len(ctx.inst.samples["pairs"])}, bad)


@check("bimodule.wakamatsu_tilting")
def _wt(ctx: Context) -> CheckResult:
    rep = check_wakamatsu_tilting(ctx.inst.t, ctx.inst.settings["ext_bound"])
    return _result("bimodule.wakamatsu_tilting", rep.ok, {"dim B": ctx.inst.b.dim, "checks": rep.checks},
                   rep.witnesses)


@check("duality.tor_ext")
def _tor_ext(ctx: Context) -> CheckResult:
    inst = ctx.inst
    dt_right = ctx.functor.dt.right_module()
    rows, bad = [], []
    for m in inst.sample("a_modules"):
        tor, ext = tor_dim(dt_right, m, 1), ext_dim(m, inst.t.left_module(), 1)
        rows.append([m.name, tor, ext])
        if tor != ext:
            bad.append([m.name, tor, ext])
    return _result("duality.tor_ext", not bad, {"rows (module, Tor_1(DT,M), Ext^1(M,T))": rows}, bad)


@check("oracle.ext1")
def _oracle(ctx: Context) -> CheckResult:
    """Ext^1 from resolutions against brute-force extension counting, on each side."""
    inst = ctx.inst
    cap = int(inst.settings["oracle_max_dim"])
    rows, bad, skipped = [], [], []
    for key in ("a_modules", "b_modules"):
        mods = inst.sample(key)
        sums = [direct_sum([x, y])[0] for i, x in enumerate(mods) for y in mods[i:] if x.dim + y.dim < cap]
        pool = mods + sums
        for m in pool:
            for n in pool:
                if m.dim + n.dim > cap:
                    continue
                try:
                    o = ext1_by_enumeration(m, n)
                except ValueError:
                    skipped.append([m.name, n.name])
                    continue
                d = ext_dim(m, n, 1)
                rows.append([m.name, n.name, d, o])
                if d != o:
                    bad.append([m.name, n.name, d, o])
    return _result("oracle.ext1", not bad, {"compared": len(rows), "max total dim": cap,
                                            "skipped (too large)": skipped}, bad)


# ---------------------------------------------------------------- cotorsion


@check("cotorsion.backend")
def _backend(ctx: Context) -> CheckResult:
    inst = ctx.inst
    v = inst.backend.validate()
    detail = {"variant": inst.backend.variant, "ext_bound": inst.backend.ext_bound}
    fails = {"A": v.failures}
    if inst.backend_b is not None:
        vb = inst.backend_b.validate()
        fails["B"] = vb.failures
        detail["variant B"] = inst.backend_b.variant
    return _result("cotorsion.backend", not any(fails.values()), detail, fails)


@check("cotorsion.preenvelopes")
def _preenvelopes(ctx: Context) -> CheckResult:
    inst = ctx.inst
    b = inst.backend
    rows, bad = [], []
    for m in inst.sample("a_modules"):
        try:
            pre = b.preenvelope(m)
        except (NonConvergence, ObstructionError) as exc:
            bad.append([m.name, str(exc)])
            continue
        v = check_preenvelope(pre, b)
        again = special_preenvelope(pre.v, b)
        rows.append([m.name, pre.v.dim, pre.w.dim, pre.rounds])
        if not v:
            bad.append([m.name, v.failures])
        if again.w.dim:
            bad.append([m.name, "preenvelope of V(X) is not trivial"])
        dt_alpha = ctx.functor.dt_tensor(m), ctx.functor.dt_tensor(pre.v)
        from ..algmod import tensor_map
        mat = tensor_map(dt_alpha[0], dt_alpha[1], el.identity(ctx.functor.dt.dim), pre.alpha.matrix)
        if el.rank(mat, inst.p) != dt_alpha[0].dim:
            bad.append([m.name, "DT (x) alpha is not injective", _mat(mat)])
    return _result("cotorsion.preenvelopes", not bad, {"rows (X, dim V, dim W, rounds)": rows}, bad)


def _ladder_failures(ctx: Context, xi: ShortExactSeq, rng) -> list:
    b = ctx.inst.backend
    p = ctx.inst.p
    x1, x2, x3 = xi.ends
    pre1, pre3 = b.preenvelope(x1), b.preenvelope(x3)
    lad = preenvelope_of_ses(xi, pre1, pre3)
    out = list(lad.check(b).failures)
    # corrected lift of a random t: V1 -> V vanishing on alpha1, with V = V2
    v = lad.alpha2.target
    hs = hom_space(pre1.v, v)
    ker = hs.solve_space(lambda h: el.matmul(h, pre1.alpha.matrix, p))
    if ker.shape[1]:
        t = hs.hom(el.matmul(ker, rng.integers(0, p, (ker.shape[1], 1)), p)[:, 0])
        t2 = corrected_lift(t, lad)
        if not np.array_equal(el.matmul(t2.matrix, lad.f_v.matrix, p), t.matrix):
            out.append("corrected lift: t != t' f_V")
        if not el.is_zero(el.matmul(t2.matrix, lad.alpha2.matrix, p)):
            out.append("corrected lift: t' alpha2 != 0")
    return out


@check("cotorsion.ladders")
def _ladders(ctx: Context) -> CheckResult:
    rng = ctx.rng("cotorsion.ladders")
    names, bad = [], {}
    for k, xi in ctx.a_sequences():
        names.append(k)
        try:
            fails = _ladder_failures(ctx, xi, rng)
        except (NonConvergence, ObstructionError) as exc:
            fails = [str(exc)]
        if fails:
            bad[k] = fails
    return _result("cotorsion.ladders", not bad and bool(names), {"sequences": len(names), "names": names}, bad)


@check("cotorsion.prisms")
def _prisms(ctx: Context) -> CheckResult:
    b = ctx.inst.backend
    seqs = ctx.a_sequences()
    mors = ctx.morphisms(seqs, int(ctx.inst.settings["random_morphisms"]), "cotorsion.prisms")
    bad = {}
    for (k1, k2), s1, s2, (a, bm, c) in mors:
        l1 = preenvelope_of_ses(s1, b.preenvelope(s1.ends[0]), b.preenvelope(s1.ends[2]))
        l2 = preenvelope_of_ses(s2, b.preenvelope(s2.ends[0]), b.preenvelope(s2.ends[2]))
        try:
            fails = preenvelope_of_morphism(l1, l2, a, bm, c).failures()
        except ObstructionError as exc:
            fails = [str(exc)]
        if fails:
            bad[f"{k1} -> {k2}"] = fails
    return _result("cotorsion.prisms", not bad and bool(mors), {"morphisms": len(mors)}, bad)


@check("good.conditions")
def _good(ctx: Context) -> CheckResult:
    inst = ctx.inst
    if inst.backend_b is None:
        return CheckResult("good.conditions", "skipped", {"reason": "no B-side backend given or derivable"})
    rep = check_good_conditions(inst.backend, inst.backend_b, inst.t, inst.sample("a_modules"),
                                inst.sample("b_modules"), inst.settings["ext_bound"])
    return _result("good.conditions", rep.ok, {"checks": rep.checks, "bound": inst.settings["ext_bound"]},
                   rep.witnesses)


# ---------------------------------------------------------------- the functor


@check("wakfun.delta")
def _delta(ctx: Context) -> CheckResult:
    try:
        f = ctx.functor
    except ValueError as exc:
        return _result("wakfun.delta", False, {}, str(exc))
    ok = delta_maps_are_bimodule_maps(f.deltas)
    return _result("wakfun.delta", ok, {"dim DT(x)T": f.deltas.dt_t.dim, "dim B": f.b.dim},
                   {"delta": _mat(f.deltas.delta), "delta'": _mat(f.deltas.delta_prime)})


@check("wakfun.adjunction")
def _adjunction(ctx: Context) -> CheckResult:
    inst, f = ctx.inst, ctx.functor
    bad = []
    xs, ys = inst.sample("a_modules"), inst.sample("b_modules")
    for k in range(max(len(xs), len(ys))):
        x, y = xs[k % len(xs)], ys[k % len(ys)]
        r = f.triangle_identities(x, y)
        if not all(r.values()):
            bad.append([x.name, y.name, r])
    return _result("wakfun.adjunction", not bad, {}, bad)


@check("wakfun.L")
def _l(ctx: Context) -> CheckResult:
    inst, f = ctx.inst, ctx.functor
    bad = []
    for m in inst.sample("a_modules"):
        v = inst.backend.preenvelope(m).v
        lv = f.build_l(v)
        if not lv.check() or lv.module.dim != lv.hom.dim + lv.tensor.dim:
            bad.append(m.name)
    iso = f.regular_to_l()
    ok_iso = iso.is_linear() and iso.is_iso()
    if not ok_iso:
        bad.append({"L(T) -> T(B)": _mat(iso.matrix)})
    return _result("wakfun.L", not bad, {"L(T) = T(B)": ok_iso}, bad)


@check("wakfun.dt_tensor_square_zero")
def _square_zero(ctx: Context) -> CheckResult:
    inst, f = ctx.inst, ctx.functor
    bad = {}
    for pr in inst.sample("pairs"):
        w = f.square_zero_witness(pr)
        if np.any(w):
            bad[pr.name] = {"psi (DB (x) psi)": _mat(w), "phi": _mat(pr.phi)}
    return _result("wakfun.dt_tensor_square_zero", not bad, {"pairs": len(inst.samples["pairs"])}, bad)


@check("wakfun.embedding")
def _embedding(ctx: Context) -> CheckResult:
    inst, f = ctx.inst, ctx.functor
    rows, bad = [], {}
    for pr in ctx.pairs():
        s = f.s_object(pr)
        rows.append([pr.name, pr.dim, s.l.module.dim, s.module.dim])
        fails = s.check()
        if s.module.dim != s.l.module.dim - f.dt_tensor(pr.x).dim:
            fails.append("dimension bookkeeping")
        if fails:
            bad[pr.name] = {"failures": fails, "embedding": _mat(s.emb.matrix)}
    return _result("wakfun.embedding", not bad, {"rows (pair, dim X, dim L(V), dim S)": rows}, bad)


@check("wakfun.s_projective")
def _s_proj(ctx: Context) -> CheckResult:
    inst, f = ctx.inst, ctx.functor
    bad = []
    for i in range(len(inst.ta.total.primitive_idempotents or [])):
        pm = indecomposable_projective(inst.ta.total, i)
        s = f.s_of_module(pm)
        if not stably_zero(s.module.identity()):
            bad.append([pm.name, s.module.dim])
    return _result("wakfun.s_projective", not bad, {}, bad)


@check("wakfun.s_morphism")
def _s_morphism(ctx: Context) -> CheckResult:
    """Independence of the lift f_V, functoriality and the canonical isomorphism."""
    inst, f = ctx.inst, ctx.functor
    rng = ctx.rng("wakfun.s_morphism")
    pairs = ctx.pairs()
    bad, n = [], 0
    for x in pairs:
        for y in pairs:
            hs = hom_space(x.module, y.module)
            if hs.dim == 0:
                continue
            h = hs.hom(rng.integers(0, inst.p, hs.dim))
            sx, sy = f.s_object(x), f.s_object(y)
            one = f.s_morphism(h, sx, sy)
            two = f.s_morphism(h, sx, sy, rng=rng)
            if not stably_equal(one, two):
                bad.append([x.name, y.name, "two lifts differ stably"])
            # a second preenvelope of X and the canonical isomorphism
            alt = f.s_object(x, special_preenvelope(x.x, inst.backend, rng))
            can = f.canonical_iso(alt, sx, rng)
            back = f.canonical_iso(sx, alt, rng)
            if not stably_equal(back @ can, alt.module.identity()):
                bad.append([x.name, "can is not a stable isomorphism"])
            if not stably_equal(f.s_morphism(h, alt, sy), one @ can):
                bad.append([x.name, y.name, "S'(f) != S(f) can"])
            n += 1
            if n >= 12:
                break
        if n >= 12:
            break
    # composition on one triple
    if len(pairs) >= 3:
        x, y, z = pairs[:3]
        h1s, h2s = hom_space(x.module, y.module), hom_space(y.module, z.module)
        if h1s.dim and h2s.dim:
            g1, g2 = h1s.hom(rng.integers(0, inst.p, h1s.dim)), h2s.hom(rng.integers(0, inst.p, h2s.dim))
            sx, sy, sz = (f.s_object(q) for q in (x, y, z))
            lhs = f.s_morphism(g2 @ g1, sx, sz, rng=rng)
            rhs = f.s_morphism(g2, sy, sz, rng=rng) @ f.s_morphism(g1, sx, sy, rng=rng)
            if not stably_equal(lhs, rhs):
                bad.append([x.name, y.name, z.name, "S(gf) != S(g)S(f)"])
    return _result("wakfun.s_morphism", not bad, {"morphisms": n}, bad)


@check("wakfun.omega")
def _omega(ctx: Context) -> CheckResult:
    f = ctx.functor
    rng = ctx.rng("wakfun.omega")
    rows, bad = [], {}
    for k, xi in ctx.pair_sequences():
        try:
            o1 = f.omega(xi)
            o2 = f.omega(xi, rng)
        except (ArithmeticError, NonConvergence) as exc:
            bad[k] = str(exc)
            continue
        fails = []
        if not o1.triangle.check() or not o2.triangle.check():
            fails.append("triangle data inconsistent")
        if not stably_equal(o1.omega, o2.omega):
            fails.append("omega depends on the choices")
            bad[k] = {"failures": fails, "omega": _mat(o1.omega.matrix), "omega'": _mat(o2.omega.matrix)}
        elif fails:
            bad[k] = fails
        rows.append([k, o1.s2.module.dim, o2.s2.module.dim, stably_zero(o1.omega)])
    return _result("wakfun.omega", not bad and bool(rows),
                   {"sequences": len(rows), "rows (seq, dim S'(X2), dim S''(X2), omega stably zero)": rows}, bad)


@check("wakfun.naturality")
def _naturality(ctx: Context) -> CheckResult:
    f = ctx.functor
    seqs = ctx.pair_sequences()
    mors = ctx.morphisms(seqs, int(ctx.inst.settings["random_morphisms"]), "wakfun.naturality")
    rng = ctx.rng("wakfun.naturality.choices")
    bad = {}
    for (k1, k2), s1, s2, (a, b, c) in mors:
        r = f.naturality(s1, s2, a, c, rng)
        if not r.ok:
            bad[f"{k1} -> {k2}"] = {"lhs": _mat(r.lhs.matrix), "rhs": _mat(r.rhs.matrix)}
    return _result("wakfun.naturality", not bad and bool(mors), {"morphisms": len(mors)}, bad)


@check("wakfun.equivalence")
def _equivalence(ctx: Context) -> CheckResult:
    inst, f = ctx.inst, ctx.functor
    mods = [pr.module for pr in ctx.pairs()]
    targets = None
    if inst.settings.get("density"):
        from ..algmod.homology import standard_indecomposables
        targets = [m for m in standard_indecomposables(inst.tb.total) if not is_projective(m)]
    rep = verify_equivalence(f, mods, targets, rng=ctx.rng("wakfun.equivalence"))
    table = [[r["x"], r["y"], r["stable_hom"], r["stable_hom_S"], r["rank"]] for r in rep.rows]
    bad = [r for r in rep.rows if not r["ok"]] + [d for d in rep.density if not d["ok"]]
    return _result("wakfun.equivalence", rep.ok,
                   {"stable hom table (x, y, dim, dim under S, rank)": table, "density": rep.density}, bad)


# ---------------------------------------------------------------- expectations


def _expectations(ctx: Context) -> list[CheckResult]:
    inst = ctx.inst
    out = []
    for key, want in sorted(inst.expect.items()):
        name = f"expect.{key}"
        if key == "dim_B":
            got = inst.b.dim
        elif key == "dim_T":
            got = inst.t.dim
        elif key == "ext1":
            got = [[m, n, ext_dim(inst.module(m), inst.module(n), 1)] for m, n, _ in want]
        elif key == "preenvelope":
            got = {m: {"V": inst.backend.preenvelope(inst.a_modules[m]).v.dim,
                       "W": inst.backend.preenvelope(inst.a_modules[m]).w.dim} for m in want}
        elif key == "stable_hom":
            got = [[x, y, stable_hom(inst.module(x), inst.module(y)).dim] for x, y, _ in want]
        elif key == "s_dims":
            got = {x: ctx.functor.s_object(inst.pairs[x]).module.dim for x in want}
        else:
            out.append(CheckResult(name, "skipped", {"reason": "unknown expectation"}))
            continue
        out.append(_result(name, got == want, {"expected": want, "got": got}, {"got": got}))
    return out


DEFAULT_EXCLUDE: set[str] = set()


def run_suite(inst: Instance, selection: list[str] | None = None, seed: int = 0) -> Report:
    """Run the selected checks (all by default) in name order; failures never raise."""
    ctx = Context(inst, seed)
    names = sorted(CHECKS) if not selection else sorted(
        n for n in CHECKS if any(n == s or n.startswith(s + ".") or n.startswith(s) for s in selection))
    results = []
    for name in names:
        t0 = time.perf_counter()
        try:
            r = CHECKS[name](ctx)
        except Exception as exc:  # a crashing check is a failed check with the error as witness
            r = CheckResult(name, "fail", {}, {"error": f"{type(exc).__name__}: {exc}"})
        r.name = name
        r.seconds = time.perf_counter() - t0
        results.append(r)
    if not selection or any(s.startswith("expect") for s in selection):
        t0 = time.perf_counter()
        try:
            exp = _expectations(ctx)
        except Exception as exc:
            exp = [CheckResult("expect", "fail", {}, {"error": f"{type(exc).__name__}: {exc}"})]
        for r in exp:
            r.seconds = (time.perf_counter() - t0) / max(len(exp), 1)
        results += exp
    return Report(inst.name, seed, int(inst.settings["ext_bound"]), results)

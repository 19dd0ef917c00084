"""Instance files: JSON descriptions of an algebra, a bimodule, backends and samples.

Module specs are small JSON objects evaluated over a given algebra:

* ``{"action": [M_0, ..., M_{n-1}]}``: explicit matrices, one per basis element
* ``{"projective": i}``, ``{"simple": i}``, ``{"injective": i}``, ``{"regular": true}``
* ``{"sum": [name, ...]}``: direct sum of previously defined modules
* B side only: ``{"hom_t": a_name}`` and ``{"dt_tensor": a_name}``

``T`` (the left A-module of the bimodule) and ``DT`` (the left B-module) are
predefined names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .. import exactlin as el
from ..algmod import (Algebra, Bimodule, Module, ModuleHom, direct_sum, dual_bimodule, path_algebra, regular_module,
                      validate_algebra)
from ..algmod.homology import (ShortExactSeq, indecomposable_injective, indecomposable_projective, simple_module,
                               standard_indecomposables)
from ..algmod.modules import hom_from, tensor_with, validate_bimodule
from ..cotorsion import Backend, derived_b_backend, endomorphism_bimodule
from ..trivext import PairModule, TrivExt, as_pair, inflate, trivial_extension


class InstanceError(ValueError):
    """Malformed or inconsistent instance, with a location path."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


@dataclass
class Instance:
    name: str
    p: int
    a: Algebra
    t: Bimodule
    backend: Backend
    backend_b: Backend | None
    a_modules: dict[str, Module]
    b_modules: dict[str, Module]
    pairs: dict[str, PairModule]
    sequences: dict[str, ShortExactSeq]
    samples: dict[str, list[str]]
    settings: dict[str, Any]
    expect: dict[str, Any]
    raw: dict = field(repr=False, default_factory=dict)

    @property
    def b(self) -> Algebra:
        return self.t.right

    @property
    def ta(self) -> TrivExt:
        return trivial_extension(self.a)

    @property
    def tb(self) -> TrivExt:
        return trivial_extension(self.b)

    def sample(self, key: str) -> list:
        src = {"a_modules": self.a_modules, "b_modules": self.b_modules, "pairs": self.pairs}[key]
        return [src[n] for n in self.samples.get(key, [])]

    def module(self, name: str) -> Module:
        for src in (self.a_modules, self.b_modules):
            if name in src:
                return src[name]
        if name in self.pairs:
            return self.pairs[name].module
        raise KeyError(name)


def _mat(v, p: int, where: str) -> np.ndarray:
    try:
        a = np.asarray(v, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InstanceError(where, f"not an integer array ({exc})") from None
    return a % p


def _algebra(spec: dict, p: int, where: str) -> Algebra:
    if not isinstance(spec, dict):
        raise InstanceError(where, "expected an object")
    name = spec.get("name", "A")
    if "quiver" in spec:
        q = spec["quiver"]
        try:
            verts, arrows = q["vertices"], [tuple(a) for a in q["arrows"]]
        except (KeyError, TypeError):
            raise InstanceError(f"{where}.quiver", "needs 'vertices' and 'arrows'") from None
        if any(s not in verts or t not in verts for s, t in arrows):
            raise InstanceError(f"{where}.quiver", "arrow endpoint is not a vertex")
        a = path_algebra(p, verts, arrows, name=name)
    elif "table" in spec:
        table = _mat(spec["table"], p, f"{where}.table")
        n = table.shape[0] if table.ndim == 3 else -1
        if table.ndim != 3 or table.shape != (n, n, n):
            raise InstanceError(f"{where}.table", f"expected an n x n x n array, got shape {table.shape}")
        if "dim" in spec and spec["dim"] != n:
            raise InstanceError(f"{where}.dim", f"says {spec['dim']} but the table has size {n}")
        if "unit" in spec:
            unit = _mat(spec["unit"], p, f"{where}.unit")
        else:
            unit = _find_unit(table, p)
            if unit is None:
                raise InstanceError(where, "no unit element; give 'unit' explicitly")
        a = Algebra(p, table, unit, name=name)
    else:
        raise InstanceError(where, "needs 'quiver' or 'table'")
    v = validate_algebra(a)
    if not v:
        raise InstanceError(where, "; ".join(v.failures))
    if "dim" in spec and spec["dim"] != a.dim:
        raise InstanceError(f"{where}.dim", f"says {spec['dim']} but the algebra has dimension {a.dim}")
    return a


def _find_unit(table: np.ndarray, p: int) -> np.ndarray | None:
    n = table.shape[0]
    # u * e_j = e_j for all j: sum_i u_i table[i, j, :] = e_j
    lhs = table.transpose(1, 2, 0).reshape(n * n, n)
    rhs = el.identity(n).reshape(n * n, 1)
    sol = el.solve(lhs, rhs, p)
    return None if sol is None else sol[:, 0]


def _module(spec, alg: Algebra, known: dict[str, Module], where: str, extra=None) -> Module:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise InstanceError(where, "module spec must be an object with exactly one key")
    (kind, val), = spec.items()
    try:
        if kind == "action":
            act = _mat(val, alg.p, where)
            if act.ndim != 3 or act.shape[0] != alg.dim or act.shape[1] != act.shape[2]:
                raise InstanceError(where, f"action needs {alg.dim} square matrices, got shape {act.shape}")
            return Module(alg, act)
        if kind == "projective":
            return indecomposable_projective(alg, int(val))
        if kind == "simple":
            return simple_module(alg, int(val))
        if kind == "injective":
            return indecomposable_injective(alg, int(val))
        if kind == "regular":
            return regular_module(alg)
        if kind == "ref":
            return known[val]
        if kind == "sum":
            mods = [known[n] for n in val]
            return direct_sum(mods)[0] if len(mods) > 1 else mods[0]
        if extra is not None and kind in extra:
            return extra[kind](known_a_name=val)
    except KeyError as exc:
        raise InstanceError(where, f"unknown module {exc}") from None
    except (IndexError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(where, str(exc)) from None
    raise InstanceError(where, f"unknown module spec kind {kind!r}")


def _modules(specs: dict, alg: Algebra, known: dict[str, Module], where: str, extra=None) -> dict[str, Module]:
    if not isinstance(specs, dict):
        raise InstanceError(where, "expected an object of named module specs")
    for name, spec in specs.items():
        m = _module(spec, alg, known, f"{where}.{name}", extra)
        # a fresh handle, so shared cached modules keep their own names
        known[name] = Module(m.algebra, m.action, name=name, check=False)
    return known


def _backend(spec: dict, t_mod: Module, mods: dict[str, Module], where: str) -> Backend:
    variant = spec.get("variant")
    names = lambda key: [mods[n] for n in spec.get(key, [])]  # noqa: E731
    try:
        w0s = v0s = None
        if variant == "finite_type":
            if not spec.get("W0") or not spec.get("V0"):
                raise InstanceError(where, "finite_type needs nonempty W0 and V0 lists")
            w0s, v0s = names("W0"), names("V0")
        summ = names("T") or None
        return Backend(variant, t_mod, ext_bound=int(spec.get("ext_bound", 4)),
                       max_rounds=int(spec.get("max_preenv_rounds", 32)), summands=summ, w0_parts=w0s,
                       v0_parts=v0s)
    except KeyError as exc:
        raise InstanceError(where, f"unknown module {exc}") from None
    except ValueError as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(where, str(exc)) from None


def parse_instance(text: str, source: str = "<instance>") -> Instance:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if not isinstance(raw, dict):
        raise InstanceError(source, "top level must be an object")
    return build_instance(raw, source)


def build_instance(raw: dict, source: str = "<instance>") -> Instance:
    p = raw.get("field")
    if not isinstance(p, int) or not el.is_prime(p):
        raise InstanceError(f"{source}.field", f"{p!r} is not a prime")
    a = _algebra(raw.get("algebra"), p, f"{source}.algebra")
    a_mods = _modules(raw.get("modules", {}), a, {}, f"{source}.modules")
    if "T" in a_mods:
        raise InstanceError(f"{source}.modules", "the name 'T' is reserved")
    bspec = raw.get("bimodule")
    if not isinstance(bspec, dict):
        raise InstanceError(f"{source}.bimodule", "missing")
    where = f"{source}.bimodule"
    if "left_action" in bspec:
        t_left = _module({"action": bspec["left_action"]}, a, a_mods, where)
    elif "left" in bspec:
        t_left = _module(bspec["left"], a, a_mods, f"{where}.left")
    else:
        raise InstanceError(where, "needs 'left_action' or 'left'")
    if "dim" in bspec and bspec["dim"] != t_left.dim:
        raise InstanceError(f"{where}.dim", f"says {bspec['dim']} but T has dimension {t_left.dim}")
    if "right_algebra" in bspec:
        b = _algebra(bspec["right_algebra"], p, f"{where}.right_algebra")
        if "right_action" not in bspec:
            raise InstanceError(where, "right_algebra given without right_action")
        ract = _mat(bspec["right_action"], p, f"{where}.right_action")
        if ract.shape != (b.dim, t_left.dim, t_left.dim):
            raise InstanceError(f"{where}.right_action", f"expected shape {(b.dim, t_left.dim, t_left.dim)}")
        t = Bimodule(a, b, t_left.action, ract, name="T", check=False)
        v = validate_bimodule(t)
        if not v:
            raise InstanceError(where, "; ".join(v.failures))
    else:
        t = endomorphism_bimodule(Module(a, t_left.action, name="T", check=False))
        t.right.name = "B"
    t_mod = t.left_module()
    t_mod.name = "T"
    a_mods["T"] = t_mod

    b = t.right
    dt = dual_bimodule(t, name="DT")
    dt_mod = dt.left_module()
    dt_mod.name = "DT"
    b_mods: dict[str, Module] = {"DT": dt_mod}
    extra = {
        "hom_t": lambda known_a_name: hom_from(t, a_mods[known_a_name]).module.left_module(),
        "dt_tensor": lambda known_a_name: tensor_with(dt, a_mods[known_a_name]).module.left_module(),
    }
    _modules(raw.get("b_modules", {}), b, b_mods, f"{source}.b_modules", extra)

    bk = raw.get("backend")
    if not isinstance(bk, dict):
        raise InstanceError(f"{source}.backend", "missing")
    backend = _backend(bk, t_mod, a_mods, f"{source}.backend")
    if "backend_b" in raw:
        backend_b = _backend(raw["backend_b"], dt_mod, b_mods, f"{source}.backend_b")
    else:
        backend_b = derived_b_backend(backend, t)

    ta = trivial_extension(a)
    pairs: dict[str, PairModule] = {}
    for name, spec in raw.get("pairs", {}).items():
        w = f"{source}.pairs.{name}"
        if "module" in spec:
            x = a_mods.get(spec["module"])
            if x is None:
                raise InstanceError(w, f"unknown module {spec['module']!r}")
            phi = spec.get("phi")
            if phi is None:
                pair = inflate(ta, x)
            else:
                try:
                    pair = PairModule(ta, x, _mat(phi, p, w), name=name, check=not spec.get("unchecked", False))
                except ValueError as exc:
                    raise InstanceError(w, str(exc)) from None
        elif "action" in spec:
            m = _module({"action": spec["action"]}, ta.total, {}, w)
            pair = as_pair(ta, m)
        else:
            raise InstanceError(w, "pair needs 'module' (+ optional 'phi') or 'action'")
        pair.name = name
        pairs[name] = pair

    seqs: dict[str, ShortExactSeq] = {}
    for name, spec in raw.get("sequences", {}).items():
        w = f"{source}.sequences.{name}"
        try:
            over = spec.get("over", "A")
            pool = {"A": a_mods, "TA": {k: v.module for k, v in pairs.items()}}[over]
            m1, m2, m3 = (pool[n] for n in spec["modules"])
            f = ModuleHom(m1, m2, _mat(spec["f"], p, f"{w}.f"))
            g = ModuleHom(m2, m3, _mat(spec["g"], p, f"{w}.g"))
        except KeyError as exc:
            raise InstanceError(w, f"unknown name {exc}") from None
        except ValueError as exc:
            raise InstanceError(w, str(exc)) from None
        seq = ShortExactSeq(f, g)
        if not seq.check():
            raise InstanceError(w, "sequence is not exact")
        seqs[name] = seq

    samples = dict(raw.get("samples", {}))
    for key, pool, alg in (("a_modules", a_mods, a), ("b_modules", b_mods, b)):
        names = samples.get(key, "standard")
        if names == "standard":
            names = []
            for m in standard_indecomposables(alg):
                nm = m.name if m.name not in pool else f"{m.name}'"
                pool.setdefault(nm, m)
                names.append(nm)
        elif names == "all":
            names = list(pool)
        for n in names:
            if n not in pool:
                raise InstanceError(f"{source}.samples.{key}", f"unknown name {n!r}")
        samples[key] = list(names)
    pnames = samples.get("pairs", "standard")
    if pnames == "standard":
        # explicit pairs, the standard T(A)-indecomposables and the inflated A-sample
        pnames = list(pairs)
        for m in standard_indecomposables(ta.total):
            nm = m.name if m.name not in pairs else f"{m.name}'"
            pairs[nm] = as_pair(ta, m)
            pnames.append(nm)
        for x in samples["a_modules"]:
            nm = f"({x},0)"
            if nm not in pairs:
                pairs[nm] = inflate(ta, a_mods[x])
            pnames.append(nm)
        for nm in pnames:
            pairs[nm].name = nm
            pairs[nm].module.name = nm
    elif pnames == "all":
        pnames = list(pairs)
    samples["pairs"] = list(dict.fromkeys(pnames))
    for n in samples["pairs"]:
        if n not in pairs:
            raise InstanceError(f"{source}.samples.pairs", f"unknown name {n!r}")

    settings = {"ext_bound": backend.ext_bound, "random_sequences": 10, "random_morphisms": 5,
                "pair_sequences": 10, "density": False, "oracle_max_dim": 6}
    settings.update(raw.get("settings", {}))
    return Instance(raw.get("name", source), p, a, t, backend, backend_b, a_mods, b_mods, pairs, seqs, samples,
                    settings, raw.get("expect", {}), raw)


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), source=str(path))

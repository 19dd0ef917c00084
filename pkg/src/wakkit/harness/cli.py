"""Command line: ``wakkit validate|preenv|apply-s|triangle|verify|report``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib.resources import files
from pathlib import Path

import numpy as np

from ..algmod import DimensionCapError, ModuleHom
from ..algmod.homology import ShortExactSeq
from ..trivext import inflate, stably_zero, validate_pair
from ..wakfun import WakamatsuFunctor, stable_core
from .instance import InstanceError, Instance, load_instance, parse_instance
from .suite import CHECKS, Report, run_suite


def _load(path: str) -> Instance:
    p = Path(path)
    if not p.exists() and not p.suffix:
        golden = files("wakkit") / "instances" / f"{path}.json"
        if golden.is_file():
            return parse_instance(golden.read_text(), source=path)
    return load_instance(p)


def render_text(body: dict) -> str:
    lines = [f"instance: {body['instance']}  seed: {body['seed']}  ext_bound: {body['ext_bound']}"]
    for c in body["checks"]:
        lines.append(f"{c['status'].upper():7s} {c['name']}")
        if c["status"] == "fail" and "witness" in c:
            lines.append("        witness: " + json.dumps(c["witness"], default=str)[:400])
    lines.append("OK" if body["ok"] else "FAILED")
    return "\n".join(lines)


def _mat(m) -> str:
    return "\n".join("  " + " ".join(str(int(x)) for x in row) for row in np.asarray(m))


def cmd_validate(args) -> int:
    inst = _load(args.file)
    print(f"{inst.name}: p={inst.p}, dim A={inst.a.dim}, dim T={inst.t.dim}, dim B={inst.b.dim}")
    print(f"backend: {inst.backend.variant} (ext_bound {inst.backend.ext_bound}); "
          f"B side: {inst.backend_b.variant if inst.backend_b else 'none'}")
    bad = [pr.name for pr in inst.sample("pairs") if not validate_pair(pr)]
    v = inst.backend.validate()
    for f in v.failures:
        print(f"backend: {f}")
    for name in bad:
        print(f"pair {name}: not a T(A)-module")
    for key in ("a_modules", "b_modules", "pairs"):
        print(f"{key}: {', '.join(inst.samples[key])}")
    return 0 if v and not bad else 1


def cmd_preenv(args) -> int:
    inst = _load(args.file)
    m = inst.a_modules[args.module]
    pre = inst.backend.preenvelope(m)
    print(f"0 -> {m.name} (dim {m.dim}) -> V (dim {pre.v.dim}) -> W (dim {pre.w.dim}) -> 0, rounds {pre.rounds}")
    print("alpha:")
    print(_mat(pre.alpha.matrix))
    return 0


def cmd_apply_s(args) -> int:
    inst = _load(args.file)
    f = WakamatsuFunctor(inst.t, inst.backend, phi_sign=inst.settings.get("phi_sign", -1))
    pr = inst.pairs[args.pair]
    s = f.s_object(pr)
    print(f"S({pr.name}): dim {s.module.dim}, L(V(X)) dim {s.l.module.dim}, DT(x)X dim {s.emb.source.dim}")
    print(f"stable core dim {stable_core(s.module).dim}")
    for k, mat in enumerate(s.module.action):
        print(f"basis element {k} of T(B):")
        print(_mat(mat))
    return 0 if not s.check() else 1


def cmd_triangle(args) -> int:
    inst = _load(args.file)
    f = WakamatsuFunctor(inst.t, inst.backend)
    xi = inst.sequences[args.ses]
    if xi.f.source.algebra is inst.a:
        x1, x2, x3 = (inflate(inst.ta, m).module for m in xi.ends)
        xi = ShortExactSeq(ModuleHom(x1, x2, xi.f.matrix), ModuleHom(x2, x3, xi.g.matrix))
    o = f.omega(xi)
    print(f"S(X1) dim {o.s1.module.dim}, S'(X2) dim {o.s2.module.dim}, S(X3) dim {o.s3.module.dim}")
    print(f"Sigma S(X1) dim {o.triangle.susp.suspension.dim}; omega stably zero: {stably_zero(o.omega)}")
    print("omega:")
    print(_mat(o.omega.matrix))
    return 0 if o.triangle.check() else 1


def cmd_verify(args) -> int:
    inst = _load(args.file)
    rep = run_suite(inst, args.checks, seed=args.seed)
    out = rep.to_json()
    if args.output:
        Path(args.output).write_text(json.dumps(out, indent=2, default=str))
    print(json.dumps(out, indent=2, default=str) if args.format == "json" else render_text(out))
    return 0 if rep.ok else 1


def cmd_report(args) -> int:
    body = json.loads(Path(args.report).read_text())
    print(json.dumps(body, indent=2) if args.format == "json" else render_text(body))
    return 0 if body.get("ok") else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wakkit", description="Wakamatsu's functor on finite-dimensional algebras")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("validate", help="parse and validate an instance")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)
    p = sub.add_parser("preenv", help="special preenvelope of a named A-module")
    p.add_argument("file")
    p.add_argument("--module", required=True)
    p.set_defaults(fn=cmd_preenv)
    p = sub.add_parser("apply-s", help="S of a named pair")
    p.add_argument("file")
    p.add_argument("--pair", required=True)
    p.set_defaults(fn=cmd_apply_s)
    p = sub.add_parser("triangle", help="connecting morphism of a named sequence")
    p.add_argument("file")
    p.add_argument("--ses", required=True)
    p.set_defaults(fn=cmd_triangle)
    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("file")
    p.add_argument("--checks", nargs="*", help=f"check names or prefixes, from: {', '.join(sorted(CHECKS))}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="also write the JSON report here")
    p.set_defaults(fn=cmd_verify)
    p = sub.add_parser("report", help="render a saved JSON report")
    p.add_argument("report")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InstanceError, KeyError, DimensionCapError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

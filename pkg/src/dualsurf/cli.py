"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FilePath

import numpy as np

from . import bjorling as bj
from . import catalog
from . import grammar
from . import verify
from .errors import DualSurfError
from .isometry import act_on_patch, make
from .quadrature import circle, grid, real_period, sample_patch
from .weierstrass import (
    IsotropicCurve,
    WeierstrassData,
    dual,
    isotropic_from_weierstrass,
    weierstrass_from_isotropic,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# descriptors --------------------------------------------------------------

def _num(x: float) -> float:
    return float(x) + 0.0  # normalizes -0.0


def descriptor(name: str, w: WeierstrassData) -> dict:
    return {
        "name": name,
        "g": grammar.to_string(w.g),
        "f": grammar.to_string(w.f),
        "epsilon": int(w.sig),
        "punctures": [[_num(p.real), _num(p.imag)] for p in w.punctures],
        "params": {k: float(v) for k, v in sorted(w.params.items())},
    }


def load_descriptor(path: str) -> dict:
    try:
        doc = json.loads(FilePath(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot read descriptor {path}: {err}") from None
    missing = {"g", "f", "epsilon"} - set(doc)
    if missing:
        raise UsageError(f"descriptor lacks {sorted(missing)}")
    return doc


def data_from_descriptor(doc: dict, params: dict) -> WeierstrassData:
    punct = tuple(complex(*p) if isinstance(p, list) else complex(p) for p in doc.get("punctures", []))
    merged = {**doc.get("params", {}), **params}
    return WeierstrassData(grammar.parse(doc["g"]), grammar.parse(doc["f"]), int(doc["epsilon"]),
                           punct, merged)


class Source:
    """Something that can be sampled: a catalog entry or a descriptor."""

    def __init__(self, name, curve: IsotropicCurve, data: WeierstrassData | None,
                 z0=0.0, X0=(0.0, 0.0, 0.0), domain=(-1.0, 1.0, -1.0, 1.0), entry=None):
        self.name, self.curve, self.data = name, curve, data
        self.z0, self.X0, self.domain, self.entry = complex(z0), X0, domain, entry


def resolve(target: str, params: dict) -> Source:
    if target.endswith(".json"):
        doc = load_descriptor(target)
        w = data_from_descriptor(doc, params)
        z0 = complex(*doc["z0"]) if "z0" in doc else _default_base(w.punctures)
        domain = tuple(doc.get("domain", (-1.0, 1.0, -1.0, 1.0)))
        return Source(doc.get("name", FilePath(target).stem), isotropic_from_weierstrass(w), w,
                      z0, (0.0, 0.0, 0.0), domain)
    e = catalog.build(target, params)
    return Source(e.name, e.curve, e.data, e.z0, e.X0, e.domain, e)


def _default_base(punctures) -> complex:
    z = 0j
    while any(abs(z - p) < 0.5 for p in punctures):
        z += 1
    return z


# mesh export -------------------------------------------------------------

def obj_text(patch) -> str:
    nu, nv = patch.shape
    lines = ["# dualsurf mesh", f"# grid {nu} x {nv}, signature {int(patch.sig)}"]
    for i in range(nu):
        for j in range(nv):
            x, y, z = patch.points[i, j]
            lines.append(f"# uv {patch.u[i]:.17g} {patch.v[j]:.17g}")
            lines.append(f"v {x:.17g} {y:.17g} {z:.17g}")
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1
            b, c, d = a + nv, a + nv + 1, a + 1
            lines.append(f"f {a} {b} {c}")
            lines.append(f"f {a} {c} {d}")
    return "\n".join(lines) + "\n"


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write(out: str | None, text: str, sidecar: dict | None = None):
    if out is None:
        sys.stdout.write(text)
        return
    path = FilePath(out)
    path.write_text(text)
    if sidecar is not None:
        path.with_name(path.name + ".json").write_text(_dump(sidecar))


def _grid_from_args(args, domain):
    umin, umax, vmin, vmax = domain
    nu = nv = 49
    if args.grid:
        try:
            nu, nv = (int(k) for k in args.grid.lower().split("x"))
        except ValueError:
            raise UsageError(f"--grid expects NUxNV, got {args.grid!r}") from None
    umin = args.umin if args.umin is not None else umin
    umax = args.umax if args.umax is not None else umax
    vmin = args.vmin if args.vmin is not None else vmin
    vmax = args.vmax if args.vmax is not None else vmax
    nu = args.nu or nu
    nv = args.nv or nv
    if nu < 2 or nv < 2 or not (umin < umax and vmin < vmax):
        raise UsageError("grid needs at least 2 x 2 nodes and increasing ranges")
    return grid(umin, umax, vmin, vmax, nu, nv)


def _sidecar(src: Source, patch, w: WeierstrassData | None, extra=None) -> dict:
    doc = {
        "name": src.name,
        "signature": int(patch.sig),
        "grid": {"u": [patch.u[0], patch.u[-1], len(patch.u)],
                 "v": [patch.v[0], patch.v[-1], len(patch.v)]},
        "z0": [_num(src.z0.real), _num(src.z0.imag)],
        "X0": [float(x) for x in patch.X0],
        "vertices": int(patch.points.shape[0] * patch.points.shape[1]),
        "faces": int(2 * (patch.points.shape[0] - 1) * (patch.points.shape[1] - 1)),
        "isotropy_residual": src.curve.isotropy_residual(),
    }
    if w is not None:
        doc["weierstrass"] = descriptor(src.name, w)
    if extra:
        doc.update(extra)
    return doc


# commands ---------------------------------------------------------------

def cmd_catalog(args) -> int:
    rows = []
    for name in catalog.NAMES:
        e = catalog.build(name)
        rows.append({"name": name, "params": catalog.defaults(name), "signature": int(e.sig),
                     "closed_form": e.closed_form is not None, "summary": e.summary})
    if args.json:
        sys.stdout.write(_dump(rows))
    else:
        for r in rows:
            ps = ", ".join(f"{k}={v!r}" for k, v in r["params"].items()) or "-"
            sys.stdout.write(f"{r['name']:<22} eps={r['signature']:+d}  [{ps}]  {r['summary']}\n")
    return EXIT_OK


def cmd_surface(args) -> int:
    src = resolve(args.target, args.param)
    u, v = _grid_from_args(args, src.domain)
    patch = sample_patch(src.curve, src.z0, np.asarray(src.X0, dtype=float), u, v)
    extra = {}
    if src.entry is not None and src.entry.closed_form is not None:
        ref = src.entry.closed_patch(u=u, v=v)
        extra["closed_form_residual"] = float(np.max(np.abs(ref.points - patch.points)))
    _write(args.out, obj_text(patch), _sidecar(src, patch, src.data, extra))
    return EXIT_OK


def cmd_dual(args) -> int:
    src = resolve(args.target, args.param)
    w = src.data if src.data is not None else weierstrass_from_isotropic(src.curve)
    wd = dual(w)
    curve = isotropic_from_weierstrass(wd)
    u, v = _grid_from_args(args, src.domain)
    patch = sample_patch(curve, src.z0, np.zeros(3), u, v)
    dsrc = Source(src.name + "_dual", curve, wd, src.z0, (0.0, 0.0, 0.0), src.domain)
    if args.out is None:
        sys.stdout.write(_dump(descriptor(dsrc.name, wd)))
    else:
        _write(args.out, obj_text(patch), _sidecar(dsrc, patch, wd))
    return EXIT_OK


_FRAMES = {"timelike": bj.rotational_timelike, "spacelike": bj.rotational_spacelike,
           "lightlike": bj.rotational_lightlike}


def cmd_bjorling(args) -> int:
    a = float(args.param.get("a", 0.0))
    d = _FRAMES[args.frame](a)
    curve, z0, X0 = bj.bjorling_surface(d)
    u, v = _grid_from_args(args, (-1.0, 1.0, -0.5, 0.5))
    patch = sample_patch(curve, z0, X0, u, v)
    src = Source(f"bjorling_{args.frame}", curve, None, z0, X0)
    _write(args.out, obj_text(patch), _sidecar(src, patch, weierstrass_from_isotropic(curve)))
    return EXIT_OK


def cmd_transform(args) -> int:
    src = resolve(args.target, args.param)
    u, v = _grid_from_args(args, src.domain)
    patch = sample_patch(src.curve, src.z0, np.asarray(src.X0, dtype=float), u, v)
    vec = [float(x) for x in args.vector.split(",")] if args.vector else None
    iso = make(args.kind, args.amount, vec)
    moved = act_on_patch(iso, patch)
    extra = {"transform": {"kind": iso.kind.value, "param": iso.param}}
    _write(args.out, obj_text(moved), _sidecar(src, moved, src.data, extra))
    return EXIT_OK


def cmd_periods(args) -> int:
    src = resolve(args.target, args.param)
    if args.loop:
        try:
            cx, cy, r = (float(x) for x in args.loop.split(","))
        except ValueError:
            raise UsageError("--loop expects cx,cy,r") from None
        curve, loop = src.curve, circle(complex(cx, cy), r)
        if src.entry is not None and src.entry.periodic is not None:
            curve = isotropic_from_weierstrass(src.entry.periodic)
    elif src.entry is not None and src.entry.periodic is not None:
        curve, loop = isotropic_from_weierstrass(src.entry.periodic), src.entry.loop
    else:
        curve, loop = src.curve, circle(0, 1)
    p = real_period(curve, loop)
    sys.stdout.write(" ".join(f"{x:.17g}" for x in p) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    certs = verify.run_suite(args.suite, args.tol)
    text = verify.report_json(certs)
    _write(args.out, text)
    if args.out is not None:
        failed = [c.claim for c in certs if not c.passed]
        sys.stderr.write(f"{len(certs) - len(failed)}/{len(certs)} certificates pass\n")
        for claim in failed:
            sys.stderr.write(f"FAIL {claim}\n")
    return EXIT_OK if all(c.passed for c in certs) else EXIT_FAIL


# argument parsing ---------------------------------------------------------

def _kv(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected k=v, got {text!r}")
    k, v = text.split("=", 1)
    try:
        return k.strip(), float(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {k} is not a number: {v!r}") from None


class _Params(argparse.Action):
    def __call__(self, parser, ns, value, option_string=None):
        d = dict(getattr(ns, self.dest) or {})
        d[value[0]] = value[1]
        setattr(ns, self.dest, d)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualsurf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, target=True, grid_flags=True):
        if target:
            sp.add_argument("target", help="catalog name or descriptor .json")
        sp.add_argument("--param", type=_kv, action=_Params, default={}, metavar="K=V")
        sp.add_argument("--out", metavar="PATH")
        if grid_flags:
            sp.add_argument("--grid", metavar="NUxNV")
            for flag in ("umin", "umax", "vmin", "vmax"):
                sp.add_argument(f"--{flag}", type=float)
            sp.add_argument("--nu", type=int)
            sp.add_argument("--nv", type=int)

    c = sub.add_parser("catalog", help="list catalog entries")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)

    s = sub.add_parser("surface", help="sample a surface and export OBJ + JSON")
    common(s)
    s.set_defaults(func=cmd_surface)

    d = sub.add_parser("dual", help="dual Weierstrass data and mesh")
    common(d)
    d.set_defaults(func=cmd_dual)

    b = sub.add_parser("bjorling", help="rotational Björling surfaces of L^3")
    b.add_argument("frame", choices=sorted(_FRAMES))
    common(b, target=False)
    b.set_defaults(func=cmd_bjorling)

    t = sub.add_parser("transform", help="apply an ambient motion to a sampled surface")
    common(t)
    t.add_argument("--kind", required=True,
                   choices=["elliptic", "hyperbolic", "parabolic", "euclidean_y", "translation",
                            "dilation"])
    t.add_argument("--amount", type=float, required=True, help="angle, ratio or distance")
    t.add_argument("--vector", help="translation direction x,y,z")
    t.set_defaults(func=cmd_transform)

    r = sub.add_parser("periods", help="real period vector around a loop")
    common(r, grid_flags=False)
    r.add_argument("--loop", metavar="CX,CY,R")
    r.set_defaults(func=cmd_periods)

    v = sub.add_parser("verify", help="run certificate suites")
    v.add_argument("suite", nargs="?", default="all", choices=["all", *verify.SUITES])
    v.add_argument("--tol", type=float)
    v.add_argument("--out", metavar="PATH")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DualSurfError, KeyError, ValueError) as err:
        sys.stderr.write(f"dualsurf: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

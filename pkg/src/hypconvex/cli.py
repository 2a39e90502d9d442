"""Command-line front end: ``hypconvex <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import config, verify
from .delaunay import delaunay_triangulate, lcr_map
from .dome import MobiusMap, compare_domes, ideal_hull, mobius_apply, to_obj
from .errors import GeometryError
from .gauge import ConvexPolytope, GaugeSampleSet, fibonacci_sphere, gauge_eval, gauge_extend
from .io import (FormatError, read_ideal_set, read_points, read_polytope, read_triangulation,
                 write_lcr_csv, write_polytope, write_shears_csv, write_triangulation)
from .surface_metric import (SurfacePoint, ball_circumference, read_obj, surface_distance,
                             unit_cube)


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="run seed (default 0)")
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VAL",
                   help="override a named tolerance; repeatable")
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic where supported")
    p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="hypconvex", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run property suites")
    v.add_argument("suite", choices=sorted(verify.SUITES) + ["all"])

    d = sub.add_parser("delaunay", help="planar Delaunay triangulation")
    dsub = d.add_subparsers(dest="action", required=True)
    x = dsub.add_parser("build", parents=[common], help="points JSON -> triangulation JSON")
    x.add_argument("--in", dest="inp", required=True)
    x = dsub.add_parser("lcr", parents=[common], help="triangulation or points JSON -> lcr CSV")
    x.add_argument("--in", dest="inp", required=True)

    m = sub.add_parser("dome", help="hulls of ideal point sets")
    msub = m.add_subparsers(dest="action", required=True)
    x = msub.add_parser("build", parents=[common], help="ideal set JSON -> OBJ of the hull")
    x.add_argument("--in", dest="inp", required=True)
    x = msub.add_parser("shears", parents=[common], help="ideal set JSON -> shear CSV")
    x.add_argument("--in", dest="inp", required=True)
    x = msub.add_parser("compare", parents=[common], help="compare the shears of two ideal sets")
    x.add_argument("--lhs", required=True)
    x.add_argument("--rhs", help="second set; defaults to the Mobius image of --lhs")
    x.add_argument("--mobius", metavar="a,b,c,d", help="complex coefficients applied to --lhs")
    x.add_argument("--correspondence", metavar="i,j,...", help="lhs index -> rhs index (default: identity, then hull isomorphism search up to 12 vertices)")

    g = sub.add_parser("gauge", help="gauge functions of convex bodies")
    gsub = g.add_subparsers(dest="action", required=True)
    x = gsub.add_parser("eval", parents=[common], help="gauge values at given directions")
    x.add_argument("--body", default="cube", help="polytope JSON or 'cube'")
    x.add_argument("--dir", action="append", required=True, metavar="x,y,z")
    x = gsub.add_parser("extend", parents=[common], help="convex extension over removed caps")
    x.add_argument("--body", default="cube", help="polytope JSON or 'cube'")
    x.add_argument("--samples", type=int, default=500)
    x.add_argument("--holes", action="append", default=[], metavar="cap:R[@x,y,z]")

    s = sub.add_parser("surface", help="intrinsic metric of convex surfaces")
    ssub = s.add_subparsers(dest="action", required=True)
    x = ssub.add_parser("dist", parents=[common], help="distance between two surface points")
    x.add_argument("--mesh", default="cube", help="OBJ file or 'cube'")
    x.add_argument("--from", dest="frm", required=True, metavar="v:I|f:I:b0,b1,b2|p:x,y,z")
    x.add_argument("--to", required=True, metavar="v:I|f:I:b0,b1,b2|p:x,y,z")
    x.add_argument("--steiner", type=int, default=8)
    x = ssub.add_parser("circ", parents=[common], help="length of a small metric circle")
    x.add_argument("--mesh", default="cube", help="OBJ file or 'cube'")
    x.add_argument("--vertex", type=int, default=0)
    x.add_argument("--delta", type=float, required=True)
    return ap


# ---------------------------------------------------------------- helpers

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)


def _floats(s: str, n: int | None, what: str) -> list[float]:
    try:
        vals = [float(t) for t in s.split(",")]
    except ValueError as exc:
        raise UsageError(f"{what}: expected comma-separated numbers, got {s!r}") from exc
    if n is not None and len(vals) != n:
        raise UsageError(f"{what}: expected {n} numbers, got {len(vals)}")
    return vals


def _apply_tolerances(items: list[str]) -> None:
    changes = {}
    for it in items:
        name, sep, val = it.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VAL, got {it!r}")
        try:
            changes[name.strip()] = float(val)
        except ValueError as exc:
            raise UsageError(f"--tol {name}: {val!r} is not a number") from exc
    try:
        config.set_tolerances(config.get_tolerances().override(**changes))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


def _report(args, rows: dict, text: str) -> None:
    _emit(args, json.dumps(rows, indent=1, sort_keys=True) if args.format == "json" else text)


def _body(spec: str) -> ConvexPolytope:
    return ConvexPolytope.cube() if spec == "cube" else read_polytope(_read(spec))


def _mesh(spec: str, k: int = 8):
    return unit_cube(k) if spec == "cube" else read_obj(_read(spec), k)


def _surface_point(s, spec: str) -> SurfacePoint:
    kind, _, rest = spec.partition(":")
    try:
        if kind == "v":
            i = int(rest)
            if not 0 <= i < len(s.vertices):
                raise UsageError(f"vertex {i} out of range")
            return s.vertex_point(i)
        if kind == "f":
            f, _, b = rest.partition(":")
            return SurfacePoint.on_face(int(f), _floats(b, 3, "barycentric"))
        if kind == "p":
            return s.locate(_floats(rest, 3, "point"))
    except ValueError as exc:
        raise UsageError(f"bad surface point {spec!r}: {exc}") from exc
    raise UsageError(f"surface point must be v:I, f:I:b0,b1,b2 or p:x,y,z, got {spec!r}")


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, args.seed)
    ok = all(r.passed for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:36s} residual={r.residual:.3e}  [{r.anchor}]"
             + (f"  {r.detail}" if r.detail else "") for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed (seed {args.seed})")
    rows = {"suite": args.suite, "seed": args.seed, "passed": ok,
            "checks": [r.to_dict() for r in results]}
    _report(args, rows, "\n".join(lines))
    return 0 if ok else 1


def cmd_delaunay(args) -> int:
    text = _read(args.inp)
    if args.action == "build":
        t = delaunay_triangulate(read_points(text), exact=args.exact)
        _emit(args, write_triangulation(t))
        return 0
    data = json.loads(text) if text.strip().startswith("{") else {}
    if "triangles" in data:
        t = read_triangulation(text)
    else:
        t = delaunay_triangulate(read_points(text), exact=args.exact)
    _emit(args, write_lcr_csv(lcr_map(t)))
    return 0


def _parse_mobius(s: str) -> MobiusMap:
    try:
        a, b, c, d = (complex(t.strip().replace("i", "j")) for t in s.split(","))
    except ValueError as exc:
        raise UsageError(f"--mobius expects four complex numbers a,b,c,d, got {s!r}") from exc
    return MobiusMap(a, b, c, d)


def cmd_dome(args) -> int:
    if args.action in ("build", "shears"):
        h = ideal_hull(read_ideal_set(_read(args.inp)), seed=0)
        _emit(args, to_obj(h) if args.action == "build" else write_shears_csv(h))
        return 0
    x = read_ideal_set(_read(args.lhs))
    if args.mobius:
        x = mobius_apply(_parse_mobius(args.mobius), x)
    if args.rhs:
        y = read_ideal_set(_read(args.rhs))
    elif args.mobius:
        y, x = x, read_ideal_set(_read(args.lhs))
    else:
        raise UsageError("dome compare needs --rhs, --mobius or both")
    corr = None
    if args.correspondence:
        try:
            corr = [int(t) for t in args.correspondence.split(",")]
        except ValueError as exc:
            raise UsageError("--correspondence expects comma-separated integers") from exc
    r = compare_domes(x, y, correspondence=corr)
    text = (f"verdict={r.verdict} max_defect={r.max_defect:.3e} "
            f"worst_edge={r.worst_edge} flat_edges={len(r.flat_edges)}")
    _report(args, r.to_dict(), text)
    return 0


def _parse_hole(s: str) -> tuple[np.ndarray, float]:
    kind, _, rest = s.partition(":")
    if kind != "cap":
        raise UsageError(f"--holes expects cap:R[@x,y,z], got {s!r}")
    r, _, c = rest.partition("@")
    radius = _floats(r, 1, "cap radius")[0]
    centre = np.array(_floats(c, 3, "cap centre") if c else [1.0, 0.0, 0.0])
    if not 0 < radius < math.pi / 2 or np.linalg.norm(centre) == 0:
        raise UsageError("cap radius must lie in (0, pi/2) with a non-zero centre")
    return centre / np.linalg.norm(centre), radius


def cmd_gauge(args) -> int:
    body = _body(args.body)
    if args.action == "eval":
        dirs = np.array([_floats(d, 3, "--dir") for d in args.dir])
        vals = np.atleast_1d(gauge_eval(body, dirs))
        rows = {"directions": dirs.tolist(), "gauge": vals.tolist()}
        text = "\n".join(f"{','.join(repr(float(c)) for c in d)}  {float(v)!r}" for d, v in zip(dirs, vals))
        _report(args, rows, text)
        return 0
    if args.samples < 4:
        raise UsageError("--samples must be at least 4")
    holes = [_parse_hole(h) for h in args.holes]
    s = GaugeSampleSet.from_polytope(body, fibonacci_sphere(args.samples))
    for c, r in holes:
        s = s.without_cap(c, r)
    ext = gauge_extend(s)
    probe = fibonacci_sphere(20_000)
    inside = np.zeros(len(probe), bool)
    for c, r in holes:
        inside |= np.arccos(np.clip(probe @ c, -1, 1)) <= r
    err = 0.0
    if inside.any():
        err = float(np.max(np.abs(gauge_eval(ext, probe[inside]) / gauge_eval(body, probe[inside]) - 1)))
    if args.format == "json":
        rows = {"samples": len(s), "holes": [[c.tolist(), r] for c, r in holes],
                "max_relative_error_in_holes": err, "extension": json.loads(write_polytope(ext))}
        _emit(args, json.dumps(rows, indent=1, sort_keys=True))
    else:
        _emit(args, f"samples kept={len(s)} extension vertices={len(ext.vertices)} "
                    f"max relative error in holes={err:.3e}")
    return 0


def cmd_surface(args) -> int:
    if args.action == "dist":
        s = _mesh(args.mesh, args.steiner)
        p, q = _surface_point(s, args.frm), _surface_point(s, args.to)
        d = surface_distance(s, p, q, args.steiner)
        _report(args, {"distance": d, "steiner": args.steiner}, repr(d))
        return 0
    s = _mesh(args.mesh)
    if not 0 <= args.vertex < len(s.vertices):
        raise UsageError(f"vertex {args.vertex} out of range")
    c = ball_circumference(s, args.vertex, args.delta)
    rows = {"circumference": c, "ratio_to_flat": c / (2 * math.pi * args.delta)}
    _report(args, rows, f"{c!r}  (ratio to 2*pi*delta: {rows['ratio_to_flat']:.6f})")
    return 0


COMMANDS = {"verify": cmd_verify, "delaunay": cmd_delaunay, "dome": cmd_dome,
            "gauge": cmd_gauge, "surface": cmd_surface}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = config.get_tolerances()
    try:
        _apply_tolerances(args.tol)
        return COMMANDS[args.command](args)
    except (UsageError, FormatError, json.JSONDecodeError) as exc:
        print(f"hypconvex: error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"hypconvex: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        config.set_tolerances(saved)


if __name__ == "__main__":
    raise SystemExit(main())

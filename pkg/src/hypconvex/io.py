"""Readers and writers for the JSON, CSV and OBJ exchange formats.

Malformed input raises :class:`FormatError` naming the offending field.
"""
from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction

import numpy as np

from .delaunay import PlanarTriangulation, triangulation_from_faces
from .dome import IdealHull, IdealPointSet, shear_at_edge
from .gauge import ConvexPolytope
from .predicates import QSqrt3


class FormatError(ValueError):
    """Input file does not match the expected format."""


def _load_json(text: str, what: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{what}: top level must be an object")
    return data


_QS3 = re.compile(r"^\s*([^*]+?)\s*([+-])\s*([^*]+?)\s*\*\s*sqrt\(3\)\s*$")


def parse_number(v, where: str):
    """JSON number -> float; "p/q" string -> Fraction; "a+b*sqrt(3)" -> QSqrt3."""
    if isinstance(v, bool):
        raise FormatError(f"{where}: expected a number, got {v!r}")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        m = _QS3.match(v)
        try:
            if m:
                b = Fraction(m.group(3))
                return QSqrt3(Fraction(m.group(1)), b if m.group(2) == "+" else -b)
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"{where}: cannot parse {v!r} as a rational") from exc
    raise FormatError(f"{where}: expected a number or 'p/q' string, got {type(v).__name__}")


def format_number(v):
    if isinstance(v, QSqrt3):
        sign = "+" if v.b >= 0 else "-"
        return f"{v.a}{sign}{abs(v.b)}*sqrt(3)"
    if isinstance(v, Fraction):
        return str(v)
    return float(v)


def _points_field(data: dict, what: str, dim: int) -> list:
    pts = data.get("points")
    if not isinstance(pts, list):
        raise FormatError(f"{what}: missing 'points' array")
    out = []
    for i, p in enumerate(pts):
        if not isinstance(p, list) or len(p) != dim:
            raise FormatError(f"{what}: points[{i}] must be a list of {dim} numbers")
        out.append(tuple(parse_number(c, f"{what}: points[{i}][{j}]") for j, c in enumerate(p)))
    return out


def read_points(text: str) -> list:
    """{"points": [[x, y], ...]} with numbers or "p/q" strings."""
    return _points_field(_load_json(text, "points"), "points", 2)


def write_points(points) -> str:
    return json.dumps({"points": [[format_number(c) for c in p] for p in points]}, indent=1)


def write_triangulation(t: PlanarTriangulation) -> str:
    return json.dumps({
        "points": [[format_number(c) for c in p] for p in t.points],
        "triangles": t.triangles.tolist(),
        "exact": bool(t.exact),
    }, indent=1)


def read_triangulation(text: str) -> PlanarTriangulation:
    data = _load_json(text, "triangulation")
    pts = _points_field(data, "triangulation", 2)
    tris = data.get("triangles")
    if not isinstance(tris, list):
        raise FormatError("triangulation: missing 'triangles' array")
    for i, t in enumerate(tris):
        if not (isinstance(t, list) and len(t) == 3 and all(isinstance(v, int) for v in t)):
            raise FormatError(f"triangulation: triangles[{i}] must be three integers")
    try:
        return triangulation_from_faces(pts, tris, exact=bool(data.get("exact", False)))
    except ValueError as exc:
        raise FormatError(f"triangulation: {exc}") from exc


def write_lcr_csv(lcr: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["edge_v1", "edge_v2", "lcr"])
    for (i, j), v in sorted(lcr.items()):
        w.writerow([i, j, str(v) if isinstance(v, Fraction) else repr(float(v))])
    return buf.getvalue()


def read_ideal_set(text: str) -> IdealPointSet:
    """{"points": [[re, im], ..., "inf"]}."""
    data = _load_json(text, "ideal set")
    pts = data.get("points")
    if not isinstance(pts, list):
        raise FormatError("ideal set: missing 'points' array")
    vals = []
    for i, p in enumerate(pts):
        if isinstance(p, str) and p.strip().lower() == "inf":
            vals.append("inf")
        elif isinstance(p, list) and len(p) == 2:
            re_, im = (float(parse_number(c, f"ideal set: points[{i}][{j}]")) for j, c in enumerate(p))
            vals.append(complex(re_, im))
        else:
            raise FormatError(f"ideal set: points[{i}] must be [re, im] or \"inf\"")
    return IdealPointSet.from_points(vals)


def write_ideal_set(x: IdealPointSet) -> str:
    pts = ["inf" if v == float("inf") else [v.real, v.imag] for v in x.values]
    return json.dumps({"points": pts}, indent=1)


def write_shears_csv(h: IdealHull) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["v1", "v3", "v2", "v4", "shear", "flat"])
    for e in h.edges():
        v1, v2, v3, v4 = h.edge_quad(e)
        w.writerow([v1, v3, v2, v4, repr(shear_at_edge(h, e)), int(e in h.flat_edges)])
    return buf.getvalue()


def read_polytope(text: str) -> ConvexPolytope:
    """{"vertices": [[x, y, z], ...]}; facets are derived from the hull."""
    data = _load_json(text, "polytope")
    v = data.get("vertices")
    if not isinstance(v, list):
        raise FormatError("polytope: missing 'vertices' array")
    rows = []
    for i, p in enumerate(v):
        if not isinstance(p, list) or len(p) != 3:
            raise FormatError(f"polytope: vertices[{i}] must be three numbers")
        rows.append([float(parse_number(c, f"polytope: vertices[{i}][{j}]")) for j, c in enumerate(p)])
    return ConvexPolytope.from_vertices(np.array(rows))


def write_polytope(p: ConvexPolytope) -> str:
    return json.dumps({"vertices": p.vertices.tolist()}, indent=1)

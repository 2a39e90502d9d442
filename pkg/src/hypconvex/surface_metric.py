"""Intrinsic distances on convex polyhedral surfaces and Alexandrov doubles.

Distances on a triangle mesh are shortest paths in a Steiner graph: mesh
vertices plus k - 1 equally spaced points on every edge, joined by straight
segments whenever two nodes lie on a common face.  Every graph path is a
path on the surface, so graph distances are upper bounds; refining k -> 2k
only adds nodes, so they are non-increasing along doubling sequences.

The double of a convex polygon is handled exactly by unfolding: a shortest
path between the two sheets crosses the boundary once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra
from scipy.spatial import ConvexHull

from . import config
from .errors import DeltaTooLarge, GeometryError, InvalidSurface, PunctureHitsEndpoint


@dataclass(frozen=True)
class SurfacePoint:
    """A point on a mesh (face + barycentrics) or on a double (side + xy)."""

    face: int | None = None
    bary: tuple | None = None
    side: str | None = None
    xy: tuple | None = None

    @classmethod
    def on_face(cls, face: int, bary) -> "SurfacePoint":
        b = np.asarray(bary, dtype=float)
        if b.shape != (3,) or np.any(b < -1e-12) or abs(b.sum() - 1.0) > 1e-12:
            raise GeometryError("barycentric coordinates must lie in the closed simplex")
        return cls(face=int(face), bary=tuple(float(v) for v in np.clip(b, 0.0, None)))

    @classmethod
    def on_side(cls, side: str, xy) -> "SurfacePoint":
        if side not in ("+", "-"):
            raise GeometryError("side must be '+' or '-'")
        return cls(side=side, xy=(float(xy[0]), float(xy[1])))


class PolyhedralSurface:
    """Closed convex triangle mesh with outward-oriented faces."""

    def __init__(self, vertices, triangles, steiner_density: int = 8):
        v = np.asarray(vertices, dtype=float)
        t = np.asarray(triangles, dtype=int)
        if v.ndim != 2 or v.shape[1] != 3 or t.ndim != 2 or t.shape[1] != 3:
            raise InvalidSurface("expected (n, 3) vertices and (m, 3) triangles")
        if steiner_density < 0:
            raise InvalidSurface("steiner density must be >= 0")
        self.vertices = v
        self.triangles = t
        self.steiner_density = int(steiner_density)
        self._graphs: dict[int, _SteinerGraph] = {}
        self._validate()

    def _validate(self):
        v, t = self.vertices, self.triangles
        if t.min() < 0 or t.max() >= len(v):
            raise InvalidSurface("triangle index out of range")
        directed = {}
        for f, (a, b, c) in enumerate(t):
            if len({a, b, c}) < 3:
                raise InvalidSurface(f"face {f} repeats a vertex")
            for e in ((a, b), (b, c), (c, a)):
                if e in directed:
                    raise InvalidSurface(f"edge {e} used twice in the same direction")
                directed[e] = f
        for (a, b) in directed:
            if (b, a) not in directed:
                raise InvalidSurface(f"edge ({a}, {b}) has no opposite face; mesh is not closed")
        used = np.unique(t)
        if len(used) != len(v):
            raise InvalidSurface("mesh has unused vertices")
        cross = np.cross(v[t[:, 1]] - v[t[:, 0]], v[t[:, 2]] - v[t[:, 0]])
        area2 = np.linalg.norm(cross, axis=1)
        scale = self.diameter
        if np.any(area2 <= 1e-14 * scale * scale):
            raise InvalidSurface("mesh has degenerate faces")
        self.normals = cross / area2[:, None]
        tol = config.TOL.surface_convexity * max(1.0, scale)
        off = np.einsum("ij,ij->i", self.normals, v[t[:, 0]])
        side = v @ self.normals.T - off
        if np.max(side) > tol:
            raise InvalidSurface("mesh is not convex or not outward oriented")
        centroid = v.mean(axis=0)
        if np.max(self.normals @ centroid - off) > tol:
            raise InvalidSurface("faces are not oriented outward")

    @property
    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt(np.max(np.sum(d * d, axis=-1))))

    def transformed(self, rotation, translation) -> "PolyhedralSurface":
        r = np.asarray(rotation, dtype=float)
        return PolyhedralSurface(self.vertices @ r.T + np.asarray(translation, float),
                                 self.triangles, self.steiner_density)

    def position(self, p: SurfacePoint) -> np.ndarray:
        return np.asarray(p.bary) @ self.vertices[self.triangles[p.face]]

    def vertex_point(self, v: int) -> SurfacePoint:
        f = int(np.nonzero(np.any(self.triangles == v, axis=1))[0][0])
        b = (self.triangles[f] == v).astype(float)
        return SurfacePoint.on_face(f, b)

    def locate(self, x, tol: float = 1e-9) -> SurfacePoint:
        """SurfacePoint for a 3D point lying on the mesh."""
        x = np.asarray(x, dtype=float)
        best = None
        for f, tri in enumerate(self.triangles):
            a, b, c = self.vertices[tri]
            m = np.column_stack([b - a, c - a])
            uv, *_ = np.linalg.lstsq(m, x - a, rcond=None)
            bary = np.array([1 - uv.sum(), uv[0], uv[1]])
            resid = np.linalg.norm(m @ uv + a - x)
            err = max(resid, -bary.min())
            if best is None or err < best[0]:
                best = (err, f, bary)
        if best[0] > tol * max(1.0, self.diameter):
            raise GeometryError("point is not on the surface")
        b = np.clip(best[2], 0.0, None)
        return SurfacePoint.on_face(best[1], b / b.sum())

    def faces_containing(self, p: SurfacePoint) -> list[int]:
        """All faces whose closed triangle contains p (more than one on edges)."""
        tri = self.triangles[p.face]
        zero = [i for i in range(3) if p.bary[i] <= 1e-12]
        if not zero:
            return [p.face]
        on = [int(tri[i]) for i in range(3) if i not in zero]
        return [f for f in range(len(self.triangles))
                if all(v in self.triangles[f] for v in on)]

    def cone_angle(self, v: int) -> float:
        total = 0.0
        for tri in self.triangles:
            if v in tri:
                k = int(np.nonzero(tri == v)[0][0])
                p = self.vertices[tri[k]]
                a = self.vertices[tri[(k + 1) % 3]] - p
                b = self.vertices[tri[(k + 2) % 3]] - p
                total += math.atan2(np.linalg.norm(np.cross(a, b)), a @ b)
        return total

    def graph(self, k: int | None = None) -> "_SteinerGraph":
        k = self.steiner_density if k is None else int(k)
        if k not in self._graphs:
            self._graphs[k] = _SteinerGraph(self, k)
        return self._graphs[k]


class _SteinerGraph:
    """Nodes, per-face node lists and intra-face segments for one density."""

    def __init__(self, s: PolyhedralSurface, k: int):
        v, t = s.vertices, s.triangles
        pos = [p for p in v]
        edge_nodes: dict[tuple[int, int], list[int]] = {}
        for a, b, c in t:
            for u, w in ((a, b), (b, c), (c, a)):
                key = (min(u, w), max(u, w))
                if key in edge_nodes:
                    continue
                ids = []
                for j in range(1, max(k, 1)):
                    pos.append(v[key[0]] + (j / k) * (v[key[1]] - v[key[0]]))
                    ids.append(len(pos) - 1)
                edge_nodes[key] = ids
        self.pos = np.array(pos)
        self.face_nodes = []
        for a, b, c in t:
            ids = [int(a), int(b), int(c)]
            for u, w in ((a, b), (b, c), (c, a)):
                ids += edge_nodes[(min(u, w), max(u, w))]
            self.face_nodes.append(np.array(ids))
        rows, cols = [], []
        for ids in self.face_nodes:
            i, j = np.triu_indices(len(ids), 1)
            rows.append(ids[i])
            cols.append(ids[j])
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        lo, hi = np.minimum(r, c), np.maximum(r, c)
        # nodes on an edge belong to the segment lists of both faces
        key = np.unique(lo * len(self.pos) + hi)
        self.src = key // len(self.pos)
        self.dst = key % len(self.pos)
        self.w = np.linalg.norm(self.pos[self.src] - self.pos[self.dst], axis=1)


def _distance_query(s: PolyhedralSurface, g: _SteinerGraph, p: SurfacePoint, q: SurfacePoint,
                    extra=None, blocked=None) -> float:
    """Graph distance with p, q (and optional extra nodes) attached to their faces.

    ``extra`` is a list of (position, faces) pairs; ``blocked`` a predicate
    on segment endpoint arrays returning a mask of segments to drop, and on
    node positions via ``blocked.nodes``.
    """
    pos = list(g.pos)
    face_extra: dict[int, list[int]] = {}

    def attach(x, faces):
        scale = max(1.0, s.diameter)
        for f in faces:
            ids = g.face_nodes[f]
            d = np.linalg.norm(g.pos[ids] - x, axis=1)
            if np.min(d) <= 1e-14 * scale:
                return int(ids[int(np.argmin(d))])
        pos.append(np.asarray(x, float))
        idx = len(pos) - 1
        for f in faces:
            face_extra.setdefault(f, []).append(idx)
        return idx

    ip = attach(s.position(p), s.faces_containing(p))
    iq = attach(s.position(q), s.faces_containing(q))
    if ip == iq:
        return 0.0
    for x, faces in (extra or []):
        attach(x, faces)
    src, dst = [g.src], [g.dst]
    for f, new in face_extra.items():
        allids = np.concatenate([g.face_nodes[f], new])
        for a in new:
            others = allids[allids != a]
            src.append(np.full(len(others), a))
            dst.append(others)
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    allpos = np.array(pos)
    lo, hi = np.minimum(src, dst), np.maximum(src, dst)
    key = np.unique(lo * len(allpos) + hi)
    src, dst = key // len(allpos), key % len(allpos)
    w = np.linalg.norm(allpos[src] - allpos[dst], axis=1)
    keep = w > 0
    if blocked is not None:
        keep &= ~blocked(allpos[src], allpos[dst])
    n = len(allpos)
    mat = coo_matrix((w[keep], (src[keep], dst[keep])), shape=(n, n)).tocsr()
    d = dijkstra(mat, directed=False, indices=ip)
    return float(d[iq])


def surface_distance(s: PolyhedralSurface, p: SurfacePoint, q: SurfacePoint,
                     k: int | None = None) -> float:
    """Steiner-graph distance between two surface points (an upper bound)."""
    return _distance_query(s, s.graph(k), p, q)


def _segment_point_distance(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    ab = b - a
    L2 = np.sum(ab * ab, axis=1)
    t = np.clip(np.einsum("ij,ij->i", c - a, ab) / np.where(L2 > 0, L2, 1.0), 0.0, 1.0)
    return np.linalg.norm(a + t[:, None] * ab - c, axis=1)


def puncture_stability(s: PolyhedralSurface, p: SurfacePoint, q: SurfacePoint, punctures,
                       k: int | None = None, ring: int = 16) -> tuple[float, float]:
    """(distance, distance avoiding r-balls around the punctures), r = 1e-6 * diam.

    Both values use the same graph, augmented with a ring of nodes at radius
    2r around each puncture so that the second one can detour.  In the
    second, segments passing within r of a puncture are removed.
    """
    g = s.graph(k)
    r = config.TOL.puncture_radius * s.diameter
    pts = [s.position(x) if isinstance(x, SurfacePoint) else np.asarray(x, float)
           for x in punctures]
    for x in pts:
        for end in (p, q):
            if np.linalg.norm(s.position(end) - x) <= r:
                raise PunctureHitsEndpoint("an endpoint lies inside a puncture")
    extra = []
    for x in pts:
        sp = s.locate(x)
        for f in s.faces_containing(sp):
            a, b, c = s.vertices[s.triangles[f]]
            u = (b - a) / np.linalg.norm(b - a)
            w = np.cross(s.normals[f], u)
            m = np.column_stack([b - a, c - a])
            for th in np.linspace(0.0, 2 * np.pi, ring, endpoint=False):
                y = x + 2 * r * (math.cos(th) * u + math.sin(th) * w)
                uv, *_ = np.linalg.lstsq(m, y - a, rcond=None)
                if uv.min() >= 0 and uv.sum() <= 1:
                    extra.append((y, [f]))
    free = _distance_query(s, g, p, q, extra=extra)
    if not pts:
        return free, free

    def blocked(a, b):
        hit = np.zeros(len(a), dtype=bool)
        for x in pts:
            hit |= _segment_point_distance(a, b, x) < r
        return hit

    return free, _distance_query(s, g, p, q, extra=extra, blocked=blocked)


def ball_circumference(s, p, delta: float) -> float:
    """Length of the metric circle of radius delta around p.

    ``s`` is a PolyhedralSurface or DoubledPolygon; ``p`` is a vertex index
    or a SurfacePoint.  At a vertex the circle length is (cone angle) *
    delta, at any other point 2 pi delta.  Raises DeltaTooLarge when the
    ball is not contained in the star of p.
    """
    if isinstance(s, DoubledPolygon):
        if isinstance(p, SurfacePoint):
            p = s.to_surface().locate([p.xy[0], p.xy[1], 0.0])
        s = s.to_surface()
    if delta <= 0:
        raise GeometryError("delta must be positive")
    v, t = s.vertices, s.triangles
    if isinstance(p, SurfacePoint):
        nz = [i for i in range(3) if p.bary[i] > 1e-12]
        if len(nz) == 1:
            p = int(t[p.face][nz[0]])
    if isinstance(p, SurfacePoint):
        x = s.position(p)
        faces = s.faces_containing(p)
        edges = [np.linalg.norm(v[t[f][i]] - v[t[f][(i + 1) % 3]]) for f in faces for i in range(3)]
        near = float(np.min(np.linalg.norm(v - x, axis=1)))
        if delta >= 0.25 * min(edges) or delta >= near:
            raise DeltaTooLarge("delta reaches a cone point or exceeds the local scale")
        return 2.0 * math.pi * delta
    vi = int(p)
    faces = [f for f in range(len(t)) if vi in t[f]]
    edges = []
    for f in faces:
        a, b, c = v[t[f]]
        edges += [np.linalg.norm(a - b), np.linalg.norm(b - c), np.linalg.norm(c - a)]
        k = int(np.nonzero(t[f] == vi)[0][0])
        o1, o2 = v[t[f][(k + 1) % 3]], v[t[f][(k + 2) % 3]]
        height = _segment_point_distance(o1[None], o2[None], v[vi])[0]
        if delta >= height:
            raise DeltaTooLarge("delta leaves the star of the vertex")
    if delta >= 0.25 * min(edges):
        raise DeltaTooLarge("delta must be below a quarter of the shortest incident edge")
    return s.cone_angle(vi) * delta


class DoubledPolygon:
    """Two copies (+ and -) of a convex polygon glued along the boundary."""

    def __init__(self, polygon):
        p = np.asarray(polygon, dtype=float)
        if p.ndim != 2 or p.shape[1] != 2 or len(p) < 3:
            raise GeometryError("polygon needs at least three 2D vertices")
        # merge collinear vertices
        keep = []
        n = len(p)
        for i in range(n):
            a, b, c = p[i - 1], p[i], p[(i + 1) % n]
            cr = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if abs(cr) > 1e-14 * max(1.0, np.max(np.abs(p))) ** 2:
                keep.append(i)
        p = p[keep]
        area = 0.5 * np.sum(p[:, 0] * np.roll(p[:, 1], -1) - np.roll(p[:, 0], -1) * p[:, 1])
        if area <= 0:
            raise GeometryError("polygon must be counterclockwise with positive area")
        n = len(p)
        for i in range(n):
            a, b, c = p[i - 1], p[i], p[(i + 1) % n]
            if (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) < 0:
                raise GeometryError("polygon is not convex")
        self.polygon = p
        self._surface = None

    def edges(self):
        n = len(self.polygon)
        return [(self.polygon[i], self.polygon[(i + 1) % n]) for i in range(n)]

    def contains(self, xy, tol: float = 1e-12) -> bool:
        x = np.asarray(xy, dtype=float)
        for a, b in self.edges():
            d = b - a
            if d[0] * (x[1] - a[1]) - d[1] * (x[0] - a[0]) < -tol * max(1.0, np.linalg.norm(d)):
                return False
        return True

    def interior_angle(self, i: int) -> float:
        n = len(self.polygon)
        a = self.polygon[i - 1] - self.polygon[i]
        b = self.polygon[(i + 1) % n] - self.polygon[i]
        return math.atan2(abs(a[0] * b[1] - a[1] * b[0]), a @ b)

    def to_surface(self) -> PolyhedralSurface:
        """The double as a flat closed mesh: fan on top, mirrored fan below."""
        if self._surface is None:
            n = len(self.polygon)
            v = np.column_stack([self.polygon, np.zeros(n)])
            top = [(0, i, i + 1) for i in range(1, n - 1)]
            bottom = [(0, i + 1, i) for i in range(1, n - 1)]
            # both sheets share the boundary vertices
            self._surface = _FlatDouble(v, top + bottom)
        return self._surface


class _FlatDouble(PolyhedralSurface):
    """Zero-thickness closed mesh; the two sheets share vertices."""

    def _validate(self):
        v, t = self.vertices, self.triangles
        cross = np.cross(v[t[:, 1]] - v[t[:, 0]], v[t[:, 2]] - v[t[:, 0]])
        area2 = np.linalg.norm(cross, axis=1)
        self.normals = cross / area2[:, None]


def _unfold_one_crossing(p, q, a, b) -> float:
    """min over x in segment ab of |p - x| + |x - q| for p, q inside the polygon.

    The sum is convex along the edge; its unconstrained minimum is where
    the segment from p to the reflection of q crosses the edge line, so
    clamping that crossing to the segment gives the constrained minimum.
    """
    d = b - a
    nrm = np.array([-d[1], d[0]]) / np.linalg.norm(d)
    qr = q - 2.0 * ((q - a) @ nrm) * nrm
    sp, sq = (p - a) @ nrm, (qr - a) @ nrm
    if sp == sq:
        # both points on the edge line
        return float(np.linalg.norm(p - q))
    lam = sp / (sp - sq)
    x = p + lam * (qr - p)
    t = min(1.0, max(0.0, ((x - a) @ d) / (d @ d)))
    xc = a + t * d
    return float(np.linalg.norm(p - xc) + np.linalg.norm(xc - q))


def double_distance(d: DoubledPolygon, p: SurfacePoint, q: SurfacePoint) -> float:
    """Intrinsic distance on the double of a convex polygon.

    Same-sheet points are joined by the straight segment (the polygon is
    convex); otherwise the shortest path crosses the boundary once, found
    by reflecting q across each edge.
    """
    for x in (p, q):
        if x.side not in ("+", "-") or not d.contains(x.xy):
            raise GeometryError("points must be tagged '+'/'-' and lie in the polygon")
    a = np.asarray(p.xy)
    b = np.asarray(q.xy)
    if p.side == q.side:
        return float(np.linalg.norm(a - b))
    return min(_unfold_one_crossing(a, b, e0, e1) for e0, e1 in d.edges())


def extrude_polygon(polygon, thickness: float, steiner_density: int = 8) -> PolyhedralSurface:
    """Closed prism mesh over a convex polygon, bottom at z = 0, top at z = thickness."""
    p = DoubledPolygon(polygon).polygon
    n = len(p)
    v = np.vstack([np.column_stack([p, np.zeros(n)]), np.column_stack([p, np.full(n, thickness)])])
    tris = []
    for i in range(1, n - 1):
        tris.append((n, n + i, n + i + 1))
        tris.append((0, i + 1, i))
    for i in range(n):
        j = (i + 1) % n
        tris.append((i, j, n + j))
        tris.append((i, n + j, n + i))
    return PolyhedralSurface(v, tris, steiner_density)


def slab_point(slab: PolyhedralSurface, thickness: float, p: SurfacePoint) -> SurfacePoint:
    """Point of the prism corresponding to a point of the double."""
    z = thickness if p.side == "+" else 0.0
    return slab.locate([p.xy[0], p.xy[1], z])


def unit_cube(steiner_density: int = 8) -> PolyhedralSurface:
    """Unit cube with vertex i at the binary corner (0,0,0), (1,0,0), (1,1,0), (0,1,0), ... z=1."""
    v = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0],
                  [0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]], float)
    quads = [(0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7)]
    tris = []
    for a, b, c, d in quads:
        tris += [(a, b, c), (a, c, d)]
    return PolyhedralSurface(v, tris, steiner_density)


def convex_mesh_from_points(points, steiner_density: int = 8) -> PolyhedralSurface:
    """Outward-oriented hull mesh of a point cloud in convex position."""
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    used = np.unique(hull.simplices)
    remap = -np.ones(len(pts), dtype=int)
    remap[used] = np.arange(len(used))
    tris = []
    for simp, eq in zip(hull.simplices, hull.equations):
        a, b, c = pts[simp]
        if np.cross(b - a, c - a) @ eq[:3] < 0:
            simp = simp[[0, 2, 1]]
        tris.append(remap[simp])
    return PolyhedralSurface(pts[used], np.array(tris), steiner_density)


def read_obj(text: str, steiner_density: int = 8) -> PolyhedralSurface:
    """Parse OBJ vertices and faces (polygons are fan-triangulated)."""
    verts, faces = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        try:
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                idx = [int(tok.split("/")[0]) for tok in parts[1:]]
                idx = [i - 1 if i > 0 else len(verts) + i for i in idx]
                for j in range(1, len(idx) - 1):
                    faces.append((idx[0], idx[j], idx[j + 1]))
        except ValueError as exc:
            raise InvalidSurface(f"line {lineno}: {exc}") from exc
    return PolyhedralSurface(np.array(verts), np.array(faces), steiner_density)


def write_obj(s: PolyhedralSurface) -> str:
    lines = [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in s.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in s.triangles]
    return "\n".join(lines) + "\n"

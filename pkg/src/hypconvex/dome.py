"""Convex hulls of finite sets of ideal points and their shear coordinates.

An ideal point of hyperbolic 3-space is a point of the Riemann sphere; in
the Klein ball the hyperbolic convex hull of ideal points is the Euclidean
convex hull of their images on the unit sphere.  Hulls are computed with
exact orientation tests on integer homogeneous coordinates, so cocircular
points (coplanar on the sphere) are detected exactly for rational inputs.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config
from .errors import BoundaryEdge, DegenerateHull, DuplicatePoints, GeometryError, TooFewPoints

INF = math.inf


def _is_inf(z) -> bool:
    if z is None:
        return True
    if isinstance(z, str):
        return z.strip().lower() in ("inf", "infinity", "oo")
    try:
        return math.isinf(abs(complex(z)))
    except TypeError:
        return False


def _as_complex(z) -> complex:
    if isinstance(z, (tuple, list, np.ndarray)) and len(z) == 2:
        return complex(float(z[0]), float(z[1]))
    return complex(z)


def stereographic(z) -> np.ndarray:
    """Unit 3-vector of an extended complex number; infinity is (0, 0, 1)."""
    if _is_inf(z):
        return np.array([0.0, 0.0, 1.0])
    z = _as_complex(z)
    r2 = z.real * z.real + z.imag * z.imag
    d = 1.0 + r2
    return np.array([2.0 * z.real / d, 2.0 * z.imag / d, (r2 - 1.0) / d])


def stereographic_inv(v) -> complex | float:
    """Inverse of :func:`stereographic`; returns ``math.inf`` for the north pole."""
    x, y, h = (float(c) for c in v)
    rho2 = x * x + y * y
    if rho2 == 0.0 and h > 0:
        return INF
    if h <= 0:
        return complex(x, y) / (1.0 - h)
    # 1 - h loses precision near the pole; |z|^2 = (1 + h) / (1 - h)
    return complex(x, y) * (1.0 + h) / rho2


def chordal(z, w) -> float:
    """Chordal distance |S(z) - S(w)| computed without cancellation."""
    zi, wi = _is_inf(z), _is_inf(w)
    if zi and wi:
        return 0.0
    if zi or wi:
        u = _as_complex(w if zi else z)
        return 2.0 / math.sqrt(1.0 + abs(u) ** 2)
    z, w = _as_complex(z), _as_complex(w)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def cross_ratio(z1, z2, z3, z4) -> complex:
    """(z1 - z3)(z2 - z4) / ((z2 - z3)(z1 - z4)) with infinite entries dropped."""
    zs = [None if _is_inf(z) else _as_complex(z) for z in (z1, z2, z3, z4)]
    num = [(0, 2), (1, 3)]
    den = [(1, 2), (0, 3)]
    out = complex(1.0)
    for i, j in num:
        if zs[i] is not None and zs[j] is not None:
            out *= zs[i] - zs[j]
    for i, j in den:
        if zs[i] is not None and zs[j] is not None:
            out /= zs[i] - zs[j]
    return out


def abs_cross_ratio(z1, z2, z3, z4) -> float:
    """|z1 - z2||z3 - z4| / (|z2 - z3||z4 - z1|) for extended complex inputs."""
    return (chordal(z1, z2) * chordal(z3, z4)) / (chordal(z2, z3) * chordal(z4, z1))


class IdealPointSet:
    """Finite set of points of the Riemann sphere.

    Build with :meth:`from_points` (complex numbers, (re, im) pairs, or
    "inf"/None/math.inf for infinity) or :meth:`from_sphere` (unit
    3-vectors).  Points are kept in input order; the index of a point is
    its label everywhere else in this module.
    """

    def __init__(self, values: list, sphere: np.ndarray | None = None):
        self._values = list(values)
        self._sphere_input = sphere is not None
        if sphere is None:
            sphere = np.array([stereographic(v) for v in self._values]).reshape(-1, 3)
        self.sphere = np.asarray(sphere, dtype=float)
        self.sphere.setflags(write=False)

    @classmethod
    def from_points(cls, points) -> "IdealPointSet":
        vals = [INF if _is_inf(p) else _as_complex(p) for p in points]
        for v in vals:
            if v is not INF and not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise GeometryError("non-finite point")
        return cls(vals)

    @classmethod
    def from_sphere(cls, vectors) -> "IdealPointSet":
        s = np.atleast_2d(np.asarray(vectors, dtype=float))
        if s.shape[1] != 3:
            raise GeometryError("sphere points must be 3-vectors")
        if np.any(np.abs(np.linalg.norm(s, axis=1) - 1.0) > config.TOL.unit_norm * 10):
            raise GeometryError("sphere points must have unit norm")
        return cls([stereographic_inv(v) for v in s], sphere=s)

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, i):
        return self._values[i]

    @property
    def values(self) -> list:
        return list(self._values)

    @property
    def is_infinite(self) -> np.ndarray:
        return np.array([v is INF for v in self._values])

    def homogeneous(self) -> list[tuple[int, int, int, int]]:
        """Exact integer homogeneous coordinates (X, Y, Z, W), W > 0.

        For complex inputs z = (p + i q) / D these are
        (2pD, 2qD, p^2 + q^2 - D^2, p^2 + q^2 + D^2), exactly on the sphere.
        Sphere inputs use their own (rational) coordinates.
        """
        out = []
        if self._sphere_input:
            for v in self.sphere:
                fr = [Fraction(float(c)) for c in v]
                den = math.lcm(*(f.denominator for f in fr))
                out.append(tuple(int(f * den) for f in fr) + (den,))
            return out
        for v in self._values:
            if v is INF:
                out.append((0, 0, 1, 1))
                continue
            fa, fb = Fraction(v.real), Fraction(v.imag)
            d = math.lcm(fa.denominator, fb.denominator)
            p, q = int(fa * d), int(fb * d)
            s = p * p + q * q
            out.append((2 * p * d, 2 * q * d, s - d * d, s + d * d))
        return out

    def __repr__(self):
        return f"IdealPointSet({self._values!r})"


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d), normalized so that a d - b c = 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if abs(det) <= config.TOL.mobius_det:
            raise GeometryError("Mobius coefficients have a d - b c = 0")
        r = cmath.sqrt(det)
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, v / r)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0) -> "MobiusMap":
        while True:
            c = (rng.standard_normal(4) + 1j * rng.standard_normal(4)) * scale
            if abs(c[0] * c[3] - c[1] * c[2]) > 1e-3:
                return cls(*c)

    def __call__(self, z):
        if _is_inf(z):
            return INF if self.c == 0 else self.a / self.c
        z = _as_complex(z)
        den = self.c * z + self.d
        if den == 0:
            return INF
        return (self.a * z + self.b) / den

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other."""
        m = np.array([[self.a, self.b], [self.c, self.d]]) @ np.array([[other.a, other.b],
                                                                      [other.c, other.d]])
        return MobiusMap(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)


def mobius_apply(m: MobiusMap, x: IdealPointSet) -> IdealPointSet:
    return IdealPointSet.from_points([m(v) for v in x.values])


def _orient_exact(a, b, c, d) -> int:
    """Sign of det[[a, 1], [b, 1], [c, 1], [d, 1]] for homogeneous integer rows."""
    m = [list(a), list(b), list(c), list(d)]
    # fraction-free Gaussian elimination (Bareiss) on 4x4 ints
    sign = 1
    prev = 1
    for k in range(3):
        if m[k][k] == 0:
            for r in range(k + 1, 4):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, 4):
            for j in range(k + 1, 4):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    det = m[3][3] * sign
    return (det > 0) - (det < 0)


class _Orienter:
    """orient(a, b, c, d) = sign det3(a - d, b - d, c - d) with a float filter.

    Negative means d lies on the side of plane abc from which a, b, c
    appear counterclockwise.
    """

    def __init__(self, hom, fl):
        self.hom = hom
        self.fl = fl
        self.filter = 1e-11

    def __call__(self, i, j, k, m) -> int:
        f = self.fl
        det = np.linalg.det(np.array([f[i] - f[m], f[j] - f[m], f[k] - f[m]]))
        if abs(det) > self.filter:
            return 1 if det > 0 else -1
        h = self.hom
        # each row carries the factor W > 0, so signs agree
        return _orient_exact(h[i], h[j], h[k], h[m])


def _hull_triangles(hom, fl, seed: int) -> list[tuple[int, int, int]]:
    n = len(hom)
    orient = _Orienter(hom, fl)
    rng = np.random.default_rng(seed)
    perm = [int(v) for v in rng.permutation(n)]

    start = None
    for t2 in range(2, n):
        for t3 in range(t2 + 1, n):
            s = orient(perm[0], perm[1], perm[t2], perm[t3])
            if s != 0:
                start = (t2, t3, s)
                break
        if start:
            break
    if start is None:
        raise DegenerateHull("points are concyclic; the hull is 2-dimensional")
    t2, t3, s = start
    a, b, c, d = perm[0], perm[1], perm[t2], perm[t3]
    if s < 0:
        b, c = c, b
    faces: dict[int, tuple[int, int, int]] = {}
    edge_face: dict[tuple[int, int], int] = {}
    counter = [0]

    def add(f):
        fid = counter[0]
        counter[0] += 1
        faces[fid] = f
        for u, v in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
            edge_face[(u, v)] = fid

    for f in ((a, b, c), (b, a, d), (c, b, d), (a, c, d)):
        add(f)

    rest = [p for t, p in enumerate(perm) if t not in (0, 1, t2, t3)]
    for p in rest:
        visible = {fid for fid, (u, v, w) in faces.items() if orient(u, v, w, p) < 0}
        if not visible:
            raise DegenerateHull(f"point {p} is not a vertex of the hull")
        horizon = []
        for fid in visible:
            f = faces[fid]
            for u, v in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                if edge_face[(v, u)] not in visible:
                    horizon.append((u, v))
        for fid in visible:
            f = faces.pop(fid)
            for u, v in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                if edge_face.get((u, v)) == fid:
                    del edge_face[(u, v)]
        for u, v in horizon:
            add((u, v, p))
    return list(faces.values())


@dataclass(frozen=True, eq=False)
class IdealHull:
    """Hull of an ideal point set with its triangulated boundary surface.

    ``faces`` are the polygonal faces (cyclic, counterclockwise seen from
    outside); ``triangles`` is the fixed fan triangulation of the surface
    and ``flat_edges`` the diagonals added inside non-triangular faces.
    """

    points: IdealPointSet
    vertices: np.ndarray
    faces: tuple
    normals: np.ndarray
    triangles: tuple
    flat_edges: frozenset
    face_edges: dict = field(repr=False)
    _apex: dict = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        """Edges of the triangulated surface as sorted pairs."""
        return sorted({(min(u, v), max(u, v)) for (u, v) in self._apex})

    def polygon_edges(self) -> list[tuple[int, int]]:
        return sorted(self.face_edges)

    def euler_characteristic(self) -> int:
        return self.num_vertices - len(self.face_edges) + len(self.faces)

    def edge_quad(self, edge) -> tuple[int, int, int, int]:
        """(v1, v2, v3, v4) around a surface edge with v1 < v3.

        v2 is opposite the outward-oriented edge v1 -> v3 and v4 opposite
        v3 -> v1; for points in the plane this matches the counterclockwise
        planar quad used for length-cross-ratios.
        """
        i, j = edge
        v1, v3 = min(i, j), max(i, j)
        if (v1, v3) not in self._apex or (v3, v1) not in self._apex:
            raise BoundaryEdge(f"({v1}, {v3}) is not an edge of the hull surface")
        return v1, self._apex[(v1, v3)], v3, self._apex[(v3, v1)]


def _fan_faces(faces_tri, fl, priority, tol):
    """Merge coplanar adjacent triangles and re-triangulate each face by a fan."""
    m = len(faces_tri)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for t, (a, b, c) in enumerate(faces_tri):
        for u, v in ((a, b), (b, c), (c, a)):
            owner[(u, v)] = t
    normals = []
    for a, b, c in faces_tri:
        nrm = np.cross(fl[b] - fl[a], fl[c] - fl[a])
        normals.append(nrm / np.linalg.norm(nrm))
    for (u, v), t in owner.items():
        s = owner[(v, u)]
        if s <= t:
            continue
        apex = next(w for w in faces_tri[s] if w not in (u, v))
        a = faces_tri[t][0]
        if abs(normals[t] @ (fl[apex] - fl[a])) < tol:
            parent[find(s)] = find(t)

    groups: dict[int, list[int]] = {}
    for t in range(m):
        groups.setdefault(find(t), []).append(t)

    polygons = []
    for members in groups.values():
        mset = set(members)
        nxt = {}
        for t in members:
            a, b, c = faces_tri[t]
            for u, v in ((a, b), (b, c), (c, a)):
                if owner[(v, u)] not in mset:
                    nxt[u] = v
        start = min(nxt, key=lambda v: priority[v])
        cyc = [start]
        while True:
            w = nxt[cyc[-1]]
            if w == start:
                break
            cyc.append(w)
            if len(cyc) > len(nxt):
                raise DegenerateHull("merged face is not a disk")
        polygons.append(tuple(cyc))
    polygons.sort(key=lambda p: sorted(priority[v] for v in p))
    return polygons


def ideal_hull(x: IdealPointSet, fan_priority=None, seed: int = 0) -> IdealHull:
    """Convex hull of the sphere images of ``x``.

    Coplanar adjacent triangles (within the coplanarity tolerance) are
    merged into polygonal faces, which are then fanned from their vertex of
    lowest ``fan_priority`` (default: lowest index).
    """
    n = len(x)
    if n < 4:
        raise TooFewPoints(f"need at least 4 ideal points, got {n}")
    hom = x.homogeneous()
    # compare normalized exact coordinates for duplicates
    keyed = {}
    for i, (X, Y, Z, W) in enumerate(hom):
        key = (Fraction(X, W), Fraction(Y, W), Fraction(Z, W))
        if key in keyed:
            raise DuplicatePoints(f"points {keyed[key]} and {i} coincide")
        keyed[key] = i
    fl = np.array(x.sphere, dtype=float)
    tri = _hull_triangles(hom, fl, seed)
    priority = list(range(n)) if fan_priority is None else list(fan_priority)
    if sorted(priority) != sorted(set(priority)) or len(priority) != n:
        raise GeometryError("fan_priority must rank every vertex distinctly")
    polys = _fan_faces(tri, fl, priority, config.TOL.coplanar)

    triangles = []
    apex = {}
    flat = set()
    face_edges: dict[tuple[int, int], list[int]] = {}
    normals = []
    for f, poly in enumerate(polys):
        for u, v in zip(poly, poly[1:] + poly[:1]):
            face_edges.setdefault((min(u, v), max(u, v)), []).append(f)
        v0 = poly[0]
        for k in range(1, len(poly) - 1):
            t = (v0, poly[k], poly[k + 1])
            triangles.append(t)
            for u, v, w in ((t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])):
                apex[(u, v)] = w
            if k > 1:
                flat.add((min(v0, poly[k]), max(v0, poly[k])))
        nrm = np.cross(fl[poly[1]] - fl[poly[0]], fl[poly[2]] - fl[poly[0]])
        normals.append(nrm / np.linalg.norm(nrm))
    return IdealHull(x, fl, tuple(polys), np.array(normals), tuple(triangles),
                     frozenset(flat), {k: tuple(v) for k, v in face_edges.items()}, apex)


def shear_at_edge(h: IdealHull, edge) -> float:
    """Shear coordinate |(v1 - v2)(v3 - v4)| / |(v2 - v3)(v4 - v1)| at a surface edge."""
    v1, v2, v3, v4 = h.edge_quad(edge)
    z = h.points
    return abs_cross_ratio(z[v1], z[v2], z[v3], z[v4])


def shears(h: IdealHull) -> dict[tuple[int, int], float]:
    return {e: shear_at_edge(h, e) for e in h.edges()}


@dataclass
class DomeComparison:
    verdict: str
    max_defect: float
    edge_defects: dict
    flat_edges: list
    worst_edge: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "max_defect": self.max_defect,
            "worst_edge": list(self.worst_edge) if self.worst_edge else None,
            "edges": [{"v1": e[0], "v3": e[1], "defect": d} for e, d in sorted(self.edge_defects.items())],
            "flat_edges": [list(e) for e in self.flat_edges],
        }


def compare_domes(x: IdealPointSet, y: IdealPointSet, correspondence=None,
                  tol: float | None = None) -> DomeComparison:
    """Compare the shear coordinates of two hulls under a vertex bijection.

    ``correspondence[i]`` is the vertex of ``y`` matched with vertex ``i`` of
    ``x``.  Without one, identity is tried first; if that is not a hull
    isomorphism and there are at most 12 vertices, every isomorphism of the
    hull triangulations is tried and the best match is reported.  The hull of ``y`` is fanned in the order
    induced from ``x`` so that both surfaces carry the same triangulation.
    Verdicts: "ShearEqual", "ShearDiffer" or "NonIsomorphic".  Edges inside
    flat (non-triangular) faces are reported but excluded from the verdict.
    """
    tol = config.TOL.shear_equal if tol is None else tol
    n = len(x)
    if correspondence is None:
        rep = _compare(x, y, list(range(n)), tol)
        if rep.verdict != "NonIsomorphic" or len(y) != n or n > MAX_SEARCH_VERTICES:
            return rep
        best = rep
        for corr in hull_isomorphisms(ideal_hull(x), ideal_hull(y)):
            r = _compare(x, y, corr, tol)
            if best.verdict == "NonIsomorphic" or r.max_defect < best.max_defect:
                best = r
        return best
    return _compare(x, y, [int(c) for c in correspondence], tol)


MAX_SEARCH_VERTICES = 12


def hull_isomorphisms(hx: IdealHull, hy: IdealHull):
    """Yield vertex bijections mapping the triangles of ``hx`` onto those of ``hy``."""
    n = len(hx.points)
    if len(hy.points) != n or len(hx.triangles) != len(hy.triangles):
        return
    ty = {frozenset(t) for t in hy.triangles}
    nbx = [set() for _ in range(n)]
    nby = [set() for _ in range(n)]
    for t in hx.triangles:
        for v in t:
            nbx[v].update(t)
    for t in hy.triangles:
        for v in t:
            nby[v].update(t)
    order = sorted(range(n), key=lambda v: -len(nbx[v]))
    corr = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            if {frozenset(corr[v] for v in t) for t in hx.triangles} == ty:
                yield list(corr)
            return
        v = order[k]
        for w in range(n):
            if used[w] or len(nby[w]) != len(nbx[v]):
                continue
            # mapped neighbours must stay neighbours
            if any(corr[u] >= 0 and (corr[u] in nby[w]) != (u in nbx[v]) for u in range(n)):
                continue
            corr[v], used[w] = w, True
            yield from extend(k + 1)
            corr[v], used[w] = -1, False

    yield from extend(0)


def _compare(x, y, corr, tol) -> DomeComparison:
    n = len(x)
    if len(y) != n or sorted(corr) != list(range(n)):
        return DomeComparison("NonIsomorphic", math.inf, {}, [])
    hx = ideal_hull(x)
    prio_y = [0] * n
    for i, j in enumerate(corr):
        prio_y[j] = i
    hy = ideal_hull(y, fan_priority=prio_y)

    tx = {frozenset(corr[v] for v in t) for t in hx.triangles}
    ty = {frozenset(t) for t in hy.triangles}
    if tx != ty:
        return DomeComparison("NonIsomorphic", math.inf, {}, [])

    # flat edges of either hull, in x labels (prio_y inverts the correspondence)
    flat_x = set(hx.flat_edges) | {tuple(sorted((prio_y[u], prio_y[v]))) for u, v in hy.flat_edges}
    defects = {}
    flat = []
    for e in hx.edges():
        v1, v2, v3, v4 = hx.edge_quad(e)
        sx = abs_cross_ratio(x[v1], x[v2], x[v3], x[v4])
        sy = abs_cross_ratio(y[corr[v1]], y[corr[v2]], y[corr[v3]], y[corr[v4]])
        if e in flat_x:
            flat.append(e)
            continue
        defects[e] = abs(math.log(sx) - math.log(sy))
    if defects:
        worst = max(defects, key=defects.get)
        mx = defects[worst]
    else:
        worst, mx = None, 0.0
    verdict = "ShearEqual" if mx < tol else "ShearDiffer"
    return DomeComparison(verdict, mx, defects, sorted(flat), worst)


def to_obj(h: IdealHull) -> str:
    """Wavefront OBJ text of the triangulated hull in the Klein ball."""
    lines = [f"v {p[0]:.17g} {p[1]:.17g} {p[2]:.17g}" for p in h.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in h.triangles]
    return "\n".join(lines) + "\n"

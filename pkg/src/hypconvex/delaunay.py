"""Planar Delaunay triangulations and their length-cross-ratios.

Triangulations are built by lexicographic incremental insertion followed by
Lawson edge flips, using the exact predicates of :mod:`hypconvex.predicates`.
Cocircular ties are resolved by symbolic perturbation of the lifted heights
in index order, which makes the output a deterministic function of the input
sequence: every cocircular cell is fanned from its lowest-index vertex.

Points may be floats (double mode) or exact numbers (ints, Fractions,
:class:`~hypconvex.predicates.QSqrt3`).  Passing ``exact=True`` converts
floats to their exact rational values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import AllCollinear, DegenerateQuad, DuplicatePoints, GeometryError, TooFewPoints
from .predicates import QSqrt3, incircle_perturbed, is_exact, orient2d, to_exact


@dataclass(frozen=True)
class EdgeQuad:
    """Quadrilateral v1 v2 v3 v4 around the diagonal v1 v3.

    Triangles v1 v2 v3 and v1 v3 v4 share the diagonal; the vertex indices
    are kept alongside the coordinates when the quad comes from a
    triangulation.
    """

    v1: tuple
    v2: tuple
    v3: tuple
    v4: tuple
    indices: tuple | None = None


@dataclass(frozen=True, eq=False)
class PlanarTriangulation:
    """Immutable triangulation of a planar point set.

    ``triangles`` holds counterclockwise vertex triples.  Half-edge ``h``
    belongs to triangle ``h // 3`` and runs from ``origin[h]`` to
    ``origin[next[h]]``; ``twin[h]`` is -1 on the convex hull.
    """

    points: tuple
    triangles: np.ndarray
    origin: np.ndarray
    next: np.ndarray
    twin: np.ndarray
    exact: bool

    @property
    def coords(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.points])

    @property
    def num_vertices(self) -> int:
        return len(self.points)

    def triangle_set(self) -> set[frozenset]:
        return {frozenset(int(v) for v in t) for t in self.triangles}

    def dest(self, h: int) -> int:
        return int(self.origin[self.next[h]])

    def apex_of(self, h: int) -> int:
        return int(self.origin[self.next[self.next[h]]])

    def edges(self) -> list[tuple[int, int]]:
        """All undirected edges (i < j), sorted."""
        out = {tuple(sorted((int(self.origin[h]), self.dest(h)))) for h in range(len(self.origin))}
        return sorted(out)

    def interior_edges(self) -> list[tuple[int, int]]:
        out = set()
        for h in range(len(self.origin)):
            if self.twin[h] >= 0:
                out.add(tuple(sorted((int(self.origin[h]), self.dest(h)))))
        return sorted(out)

    def boundary_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted((int(self.origin[h]), self.dest(h))))
                      for h in range(len(self.origin)) if self.twin[h] < 0)

    def half_edge(self, i: int, j: int) -> int:
        """Index of the half-edge i -> j; KeyError if it does not exist."""
        return self._half_edge_index()[(i, j)]

    def _half_edge_index(self) -> dict:
        cache = self.__dict__.get("_he_index")
        if cache is None:
            cache = {(int(self.origin[h]), self.dest(h)): h for h in range(len(self.origin))}
            object.__setattr__(self, "_he_index", cache)
        return cache

    def edge_quad(self, i: int, j: int) -> EdgeQuad:
        """Quad around the interior edge {i, j} with v1 = min, v3 = max.

        v2 is the third vertex of the triangle on the left of v3 -> v1, v4
        the third vertex of the triangle on the left of v1 -> v3, so that
        v1 v2 v3 v4 runs counterclockwise.
        """
        a, c = min(i, j), max(i, j)
        idx = self._half_edge_index()
        if (a, c) not in idx or (c, a) not in idx:
            raise GeometryError(f"edge ({a}, {c}) is not an interior edge")
        b = self.apex_of(idx[(c, a)])
        d = self.apex_of(idx[(a, c)])
        p = self.points
        return EdgeQuad(p[a], p[b], p[c], p[d], (a, b, c, d))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_vertices, dtype=int)
        for i, j in self.edges():
            deg[i] += 1
            deg[j] += 1
        return deg

    def hull_vertices(self) -> set[int]:
        return {v for e in self.boundary_edges() for v in e}


def _prepare(points, exact: bool) -> tuple[tuple, bool]:
    pts = []
    for p in points:
        if len(p) != 2:
            raise GeometryError("points must be 2-vectors")
        pts.append((p[0], p[1]))
    any_exact = any(is_exact(v) for p in pts for v in p)
    if exact or any_exact:
        pts = [(to_exact(x), to_exact(y)) for x, y in pts]
        # mixed Fraction / QSqrt3 inputs are promoted together
        if any(isinstance(v, QSqrt3) for p in pts for v in p):
            pts = [tuple(v if isinstance(v, QSqrt3) else QSqrt3(v) for v in p) for p in pts]
        return tuple(pts), True
    pts = [(float(x), float(y)) for x, y in pts]
    if not all(math.isfinite(v) for p in pts for v in p):
        raise GeometryError("non-finite coordinates")
    return tuple(pts), False


def delaunay_triangulate(points, exact: bool = False) -> PlanarTriangulation:
    """Delaunay triangulation of the convex hull of ``points``.

    Raises TooFewPoints, DuplicatePoints or AllCollinear for invalid input.
    """
    pts, is_ex = _prepare(points, exact)
    n = len(pts)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    order = sorted(range(n), key=lambda i: (pts[i], i))
    for a, b in zip(order, order[1:]):
        if pts[a] == pts[b]:
            raise DuplicatePoints(f"points {min(a, b)} and {max(a, b)} coincide")

    def orient(i, j, k):
        return orient2d(pts[i], pts[j], pts[k])

    # first point off the line through the two lexicographically smallest
    k = 2
    while k < n and orient(order[0], order[1], order[k]) == 0:
        k += 1
    if k == n:
        raise AllCollinear("all points are collinear")

    opp: dict[tuple[int, int], int] = {}

    def add_tri(a, b, c):
        opp[(a, b)] = c
        opp[(b, c)] = a
        opp[(c, a)] = b

    def del_tri(a, b, c):
        del opp[(a, b)], opp[(b, c)], opp[(c, a)]

    chain = order[:k]
    p = order[k]
    left = orient(chain[0], chain[1], p) > 0
    for u, v in zip(chain, chain[1:]):
        if left:
            add_tri(u, v, p)
        else:
            add_tri(v, u, p)
    hull = chain + [p] if left else [chain[0], p] + chain[:0:-1]

    for q in order[k + 1:]:
        m = len(hull)
        vis = [orient(hull[i], hull[(i + 1) % m], q) < 0 for i in range(m)]
        # rotate so the visible run starts at position 0
        start = next(i for i in range(m) if vis[i] and not vis[i - 1])
        run = 0
        while vis[(start + run) % m]:
            u, v = hull[(start + run) % m], hull[(start + run + 1) % m]
            add_tri(v, u, q)
            run += 1
        keep = [hull[(start + run + t) % m] for t in range(m - run + 1)]
        hull = keep + [q]

    # Lawson flips
    stack = list({tuple(sorted(e)) for e in opp})
    while stack:
        u, v = stack.pop()
        if (u, v) not in opp or (v, u) not in opp:
            continue
        w1, w2 = opp[(u, v)], opp[(v, u)]
        if incircle_perturbed(pts, u, v, w1, w2) > 0:
            del_tri(u, v, w1)
            del_tri(v, u, w2)
            add_tri(u, w2, w1)
            add_tri(w2, v, w1)
            stack.extend([(u, w2), (w2, v), (v, w1), (w1, u)])

    tris = set()
    for (a, b), c in opp.items():
        r = min((a, b, c), (b, c, a), (c, a, b))
        tris.add(r)
    return _build(pts, sorted(tris), is_ex)


def triangulation_from_faces(points, triangles, exact: bool = False) -> PlanarTriangulation:
    """Rebuild a triangulation from stored faces, checking orientation and manifoldness."""
    pts, is_ex = _prepare(points, exact)
    tris = [tuple(int(v) for v in t) for t in triangles]
    seen = set()
    for t in tris:
        if len(t) != 3 or min(t) < 0 or max(t) >= len(pts):
            raise GeometryError(f"triangle {t} has invalid vertex indices")
        if orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) <= 0:
            raise GeometryError(f"triangle {t} is not counterclockwise")
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            if e in seen:
                raise GeometryError(f"half-edge {e} appears twice")
            seen.add(e)
    return _build(pts, tris, is_ex)


def _build(pts, tris, is_ex) -> PlanarTriangulation:
    tri = np.array(tris, dtype=int).reshape(-1, 3)
    m = len(tri)
    origin = tri.reshape(-1).copy()
    nxt = np.array([3 * (h // 3) + (h % 3 + 1) % 3 for h in range(3 * m)], dtype=int)
    lookup = {(int(origin[h]), int(origin[nxt[h]])): h for h in range(3 * m)}
    twin = np.array([lookup.get((int(origin[nxt[h]]), int(origin[h])), -1) for h in range(3 * m)],
                    dtype=int)
    for arr in (tri, origin, nxt, twin):
        arr.setflags(write=False)
    return PlanarTriangulation(pts, tri, origin, nxt, twin, is_ex)


def brute_force_delaunay(points, exact: bool = False) -> set[frozenset]:
    """Triangles of the Delaunay triangulation by testing every triple.

    O(n^4) reference implementation using the same symbolic tie-breaking
    as :func:`delaunay_triangulate`.
    """
    pts, _ = _prepare(points, exact)
    n = len(pts)
    out = set()
    for i, j, k in combinations(range(n), 3):
        o = orient2d(pts[i], pts[j], pts[k])
        if o == 0:
            continue
        a, b, c = (i, j, k) if o > 0 else (i, k, j)
        if all(incircle_perturbed(pts, a, b, c, m) < 0
               for m in range(n) if m not in (i, j, k)):
            out.add(frozenset((i, j, k)))
    return out


def audit_delaunay(t: PlanarTriangulation) -> list[tuple[int, int]]:
    """Exact global empty-circumdisk audit.

    Returns the (triangle, vertex) pairs with the vertex strictly inside
    the circumdisk; empty for a Delaunay triangulation.
    """
    from .predicates import incircle
    pts = t.points
    bad = []
    for f, (a, b, c) in enumerate(t.triangles):
        for m in range(len(pts)):
            if m in (a, b, c):
                continue
            if incircle(pts[a], pts[b], pts[c], pts[m]) > 0:
                bad.append((f, m))
    return bad


def _dist2(p, q):
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def length_cross_ratio_squared(q: EdgeQuad):
    """Square of the length-cross-ratio, exact for exact coordinates."""
    d12 = _dist2(q.v1, q.v2)
    d34 = _dist2(q.v3, q.v4)
    d23 = _dist2(q.v2, q.v3)
    d41 = _dist2(q.v4, q.v1)
    pairs = [(q.v1, q.v2), (q.v1, q.v3), (q.v1, q.v4), (q.v2, q.v3), (q.v2, q.v4), (q.v3, q.v4)]
    if any(a[0] == b[0] and a[1] == b[1] for a, b in pairs):
        raise DegenerateQuad("quad has coincident vertices")
    return (d12 * d34) / (d23 * d41)


def length_cross_ratio(q: EdgeQuad) -> float:
    """|v1 - v2| |v3 - v4| / (|v2 - v3| |v4 - v1|)."""
    v = [np.asarray([float(c) for c in p]) for p in (q.v1, q.v2, q.v3, q.v4)]
    d12 = np.linalg.norm(v[0] - v[1])
    d34 = np.linalg.norm(v[2] - v[3])
    d23 = np.linalg.norm(v[1] - v[2])
    d41 = np.linalg.norm(v[3] - v[0])
    if min(d12, d34, d23, d41, np.linalg.norm(v[0] - v[2]), np.linalg.norm(v[1] - v[3])) == 0:
        raise DegenerateQuad("quad has coincident vertices")
    return float(d12 * d34 / (d23 * d41))


def _exact_sqrt(x):
    """Exact square root of a non-negative rational if it is a perfect square."""
    if isinstance(x, QSqrt3):
        if x.b != 0:
            return None
        x = x.a
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def lcr_map(t: PlanarTriangulation) -> dict[tuple[int, int], float | Fraction]:
    """Length-cross-ratio at each interior edge, keyed by sorted endpoints.

    For exact triangulations the value is a Fraction whenever the ratio is
    rational, and a float otherwise.
    """
    out = {}
    for i, j in t.interior_edges():
        q = t.edge_quad(i, j)
        if t.exact:
            r = _exact_sqrt(length_cross_ratio_squared(q))
            out[(i, j)] = r if r is not None else length_cross_ratio(q)
        else:
            out[(i, j)] = length_cross_ratio(q)
    return out


def hex_lattice(m: int, exact: bool = False) -> list[tuple]:
    """Triangular lattice points within ``m`` rings of the origin.

    Points are i (1, 0) + j (1/2, sqrt(3)/2) with hex distance
    max(|i|, |j|, |i + j|) <= m, ordered by ring and then angle.  With
    ``exact=True`` coordinates are :class:`QSqrt3` values.

    In float mode sqrt(3)/2 is truncated so that every j * sqrt(3)/2 is an
    exact double; the points are then an exact affine image of Z^2 and the
    collinear hull sides stay exactly collinear (no sliver triangles).
    """
    if int(m) != m or m < 1:
        raise GeometryError("m must be a positive integer")
    shift = 53 - (int(m).bit_length() + 1)
    s = math.ldexp(math.floor(math.ldexp(math.sqrt(3) / 2, shift)), -shift)
    cells = []
    for i in range(-m, m + 1):
        for j in range(-m, m + 1):
            r = max(abs(i), abs(j), abs(i + j))
            if r <= m:
                ang = math.atan2(j * s, i + j / 2) % (2 * math.pi)
                cells.append((r, round(ang, 12), i, j))
    cells.sort()
    out = []
    for _, _, i, j in cells:
        if exact:
            out.append((QSqrt3(Fraction(2 * i + j, 2)), QSqrt3(0, Fraction(j, 2))))
        else:
            out.append((i + j / 2, j * s))
    return out


def similarity(points, scale: float, angle: float, shift) -> list[tuple[float, float]]:
    """Image of points under z -> scale * exp(i angle) * z + shift."""
    z = np.array([complex(float(x), float(y)) for x, y in points])
    w = scale * np.exp(1j * angle) * z + complex(*shift)
    return [(float(v.real), float(v.imag)) for v in w]

"""Gauge functions of convex bodies and their convex extension from samples.

The gauge of a convex body Y with 0 in its interior is
q(a) = inf{k > 0 : a / k in Y}; for a polytope with facets <n_F, x> <= h_F
this is max_F <a, n_F> / h_F.  A positively 1-homogeneous function known
on a set of directions is extended by taking the gauge of the convex hull of
its sampled unit level set, which is the largest convex 1-homogeneous
function below the data.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import config
from .errors import (DegenerateBody, GeometryError, OriginInHull, OriginNotInterior,
                     UnboundedExtension)


def _dedupe_facets(normals: np.ndarray, offsets: np.ndarray, tol: float):
    key = np.hstack([normals, offsets[:, None]])
    order = np.lexsort(np.round(key / tol).T[::-1])
    keep = []
    for i in order:
        if keep and np.max(np.abs(key[i] - key[keep[-1]])) <= tol:
            continue
        if any(np.max(np.abs(key[i] - key[j])) <= tol for j in keep[-8:]):
            continue
        keep.append(i)
    keep = np.sort(np.array(keep, dtype=int))
    return normals[keep], offsets[keep]


@dataclass(frozen=True, eq=False)
class ConvexPolytope:
    """Convex polytope in R^3 given by vertices and facets <n_F, x> <= h_F."""

    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray

    @classmethod
    def from_vertices(cls, points) -> "ConvexPolytope":
        """Hull of ``points``; planar point sets give a flat body with facets +-n."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 3:
            raise GeometryError("need at least three 3-vectors")
        centred = pts - pts.mean(axis=0)
        _, sv, vt = np.linalg.svd(centred, full_matrices=False)
        scale = max(sv[0], 1e-300)
        if sv[2] <= 1e-12 * scale:
            return cls._flat(pts, vt)
        try:
            hull = ConvexHull(pts)
        except QhullError as exc:
            raise GeometryError(f"hull construction failed: {exc}") from exc
        normals = hull.equations[:, :3]
        offsets = -hull.equations[:, 3]
        normals, offsets = _dedupe_facets(normals, offsets, config.TOL.facet_incidence)
        return cls(pts[hull.vertices], normals, offsets)

    @classmethod
    def _flat(cls, pts, vt) -> "ConvexPolytope":
        if np.linalg.svd(pts - pts.mean(axis=0), compute_uv=False)[1] <= 1e-12:
            raise GeometryError("points are collinear")
        u, v, nrm = vt
        origin = pts.mean(axis=0)
        uv = np.column_stack([(pts - origin) @ u, (pts - origin) @ v])
        h2 = ConvexHull(uv)
        normals = [nrm, -nrm]
        offsets = [float(nrm @ origin), float(-nrm @ origin)]
        for eq in h2.equations:
            n3 = eq[0] * u + eq[1] * v
            normals.append(n3)
            offsets.append(float(-eq[2] + n3 @ origin))
        return cls(pts[h2.vertices], np.array(normals), np.array(offsets))

    @classmethod
    def cube(cls, half: float = 1.0) -> "ConvexPolytope":
        c = np.array([[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], float)
        return cls.from_vertices(half * c)

    @classmethod
    def regular_tetrahedron(cls, inradius: float = 1.0) -> "ConvexPolytope":
        """Regular tetrahedron centred at 0; facet normals are -v/|v| for its vertices."""
        v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], float)
        # inradius of this tetrahedron is 1/sqrt(3)
        return cls.from_vertices(v * inradius * np.sqrt(3.0))

    @property
    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt(np.max(np.sum(d * d, axis=-1))))

    def contains(self, x, tol: float = 1e-12) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.all(x @ self.normals.T <= self.offsets + tol, axis=-1)

    def incident_facets(self, x, tol: float | None = None) -> np.ndarray:
        tol = config.TOL.facet_incidence if tol is None else tol
        scale = max(1.0, float(np.max(np.abs(self.offsets))))
        return np.nonzero(np.abs(self.normals @ np.asarray(x, float) - self.offsets) <= tol * scale)[0]

    def consistency_residual(self) -> float:
        """Largest violation of <v, n_F> <= h_F over vertices and facets."""
        return float(np.max(self.vertices @ self.normals.T - self.offsets))


def _check_origin(p: ConvexPolytope) -> None:
    if np.min(p.offsets) <= config.TOL.gauge_offset:
        raise OriginNotInterior("origin is not strictly inside the polytope")


def gauge_eval(p: ConvexPolytope, alpha) -> np.ndarray | float:
    """max(0, max_F <alpha, n_F> / h_F); broadcasts over leading axes of alpha."""
    _check_origin(p)
    a = np.asarray(alpha, dtype=float)
    q = np.maximum(np.max(a @ (p.normals / p.offsets[:, None]).T, axis=-1), 0.0)
    return float(q) if q.ndim == 0 else q


def subadditivity_defect(p: ConvexPolytope, x, y):
    """q(x) + q(y) - q(x + y); non-negative for a convex gauge."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return gauge_eval(p, x) + gauge_eval(p, y) - gauge_eval(p, x + y)


def fibonacci_sphere(count: int) -> np.ndarray:
    """Quasi-uniform unit vectors on the sphere (golden-angle spiral)."""
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


@dataclass(frozen=True, eq=False)
class GaugeSampleSet:
    """Values of a 1-homogeneous positive function at unit directions."""

    directions: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        d = np.atleast_2d(np.asarray(self.directions, dtype=float))
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if d.shape[1] != 3 or len(d) != len(v):
            raise GeometryError("need one value per 3-vector direction")
        norms = np.linalg.norm(d, axis=1)
        if np.any(norms <= config.TOL.zero_direction):
            raise GeometryError("zero direction")
        d = d / norms[:, None]
        if np.any(~np.isfinite(v)) or np.any(v <= 0):
            raise GeometryError("sample values must be finite and positive")
        sep = config.TOL.direction_separation
        for i in range(len(d) - 1):
            if np.any(np.linalg.norm(d[i + 1:] - d[i], axis=1) <= sep):
                raise GeometryError(f"direction {i} is repeated")
        d.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "directions", d)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_points(cls, points) -> "GaugeSampleSet":
        """Samples whose unit level set passes through the given points."""
        p = np.asarray(points, dtype=float)
        r = np.linalg.norm(p, axis=1)
        return cls(p / r[:, None], 1.0 / r)

    @classmethod
    def from_polytope(cls, body: ConvexPolytope, directions) -> "GaugeSampleSet":
        d = np.asarray(directions, dtype=float)
        d = d / np.linalg.norm(d, axis=1, keepdims=True)
        return cls(d, gauge_eval(body, d))

    @property
    def points(self) -> np.ndarray:
        return self.directions / self.values[:, None]

    def __len__(self) -> int:
        return len(self.values)

    def without_cap(self, center, radius: float) -> "GaugeSampleSet":
        """Drop the samples within angular distance ``radius`` of ``center``."""
        c = np.asarray(center, dtype=float)
        c = c / np.linalg.norm(c)
        keep = np.arccos(np.clip(self.directions @ c, -1.0, 1.0)) > radius
        return GaugeSampleSet(self.directions[keep], self.values[keep])

    def union(self, other: "GaugeSampleSet") -> "GaugeSampleSet":
        return GaugeSampleSet(np.vstack([self.directions, other.directions]),
                              np.concatenate([self.values, other.values]))


def gauge_extend(s: GaugeSampleSet) -> ConvexPolytope:
    """Hull of the sampled level-set points {direction / value}.

    Raises UnboundedExtension if the directions lie in a closed halfspace
    through 0, in which case the largest convex minorant is not a gauge of
    a bounded body.
    """
    if len(s) < 4:
        raise UnboundedExtension("need at least four directions")
    dirs = ConvexPolytope.from_vertices(s.directions)
    if np.min(dirs.offsets) <= config.TOL.origin_in_hull:
        raise UnboundedExtension("sample directions lie in a closed halfspace through 0")
    return ConvexPolytope.from_vertices(s.points)


@dataclass(frozen=True)
class NearestPoint:
    beta: np.ndarray
    weights: np.ndarray
    iterations: int
    residual: float


def min_norm_point(points, tol: float | None = None, max_iter: int | None = None) -> NearestPoint:
    """Nearest point of conv(points) to the origin by Wolfe's active-set method.

    ``residual`` is |beta|^2 - min_i <beta, p_i>, which is <= 0 up to
    rounding at the optimum (the variational inequality <beta, x - beta> >= 0).
    """
    p = np.atleast_2d(np.asarray(points, dtype=float))
    m = len(p)
    tol = config.TOL.min_norm_residual if tol is None else tol
    max_iter = 10 * m + 10 if max_iter is None else max_iter
    scale = float(np.max(np.sum(p * p, axis=1)))
    active = [int(np.argmin(np.sum(p * p, axis=1)))]
    w = np.array([1.0])
    x = p[active[0]].copy()
    it = 0
    while it < max_iter:
        it += 1
        j = int(np.argmin(p @ x))
        if x @ x - p[j] @ x <= tol * scale or j in active:
            break
        active.append(j)
        w = np.append(w, 0.0)
        while True:
            it += 1
            q = p[active]
            k = len(active)
            kkt = np.zeros((k + 1, k + 1))
            kkt[:k, :k] = q @ q.T
            kkt[:k, k] = 1.0
            kkt[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            v = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:k]
            if np.all(v > 1e-14):
                w = v
                break
            neg = v <= 1e-14
            theta = min(1.0, float(np.min(w[neg] / (w[neg] - v[neg]))))
            w = theta * v + (1.0 - theta) * w
            drop = w <= 1e-14
            drop[np.argmin(w)] = True
            active = [a for a, d in zip(active, drop) if not d]
            w = w[~drop]
            w = w / np.sum(w)
            if it >= max_iter:
                break
        x = w @ p[active]
    weights = np.zeros(m)
    weights[active] = w
    return NearestPoint(x, weights, it, float(x @ x - np.min(p @ x)))


def hemisphere_center(a) -> np.ndarray:
    """Unit alpha with <alpha, x> > 0 for every input point.

    alpha is the direction of the nearest point beta of conv(a) to the
    origin.  Raises OriginInHull when |beta| is below tolerance.
    """
    res = min_norm_point(a)
    nb = float(np.linalg.norm(res.beta))
    if nb < config.TOL.origin_in_hull:
        raise OriginInHull("the convex hull of the points contains the origin")
    return res.beta / nb


def interior_normal(p: ConvexPolytope, where) -> np.ndarray:
    """Unit vector at a boundary point pointing into the polytope.

    ``where`` is a vertex index into ``p.vertices`` or a boundary point.  The
    normal cone is spanned by the incident facet normals; its hemisphere
    centre alpha gives -alpha, which is checked against a short segment of
    length 1e-3 * diameter.
    """
    if np.ndim(where) == 0:
        x = p.vertices[int(where)]
    else:
        x = np.asarray(where, dtype=float)
    inc = p.incident_facets(x)
    if len(inc) == 0:
        raise GeometryError("point is not on the boundary of the polytope")
    gens = p.normals[inc]
    g = gens @ gens.T
    if np.any(g < -1.0 + config.TOL.antipodal):
        raise DegenerateBody("normal cone contains antipodal directions")
    try:
        alpha = hemisphere_center(gens)
    except OriginInHull as exc:
        raise DegenerateBody("normal cone is not pointed") from exc
    d = -alpha
    end = x + 1e-3 * p.diameter * d
    if np.any(gens @ d >= 0) or not p.contains(end):
        raise DegenerateBody("no inward direction at this point")
    return d

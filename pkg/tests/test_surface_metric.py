import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypconvex.errors import DeltaTooLarge, InvalidSurface, PunctureHitsEndpoint
from hypconvex.surface_metric import (DoubledPolygon, PolyhedralSurface, SurfacePoint, ball_circumference,
                                      convex_mesh_from_points, double_distance, extrude_polygon,
                                      puncture_stability, read_obj, slab_point, surface_distance,
                                      unit_cube, write_obj)

SQ = [[0, 0], [1, 0], [1, 1], [0, 1]]


def test_cube_distances():
    c = unit_cube()
    p = c.vertex_point(0)
    assert surface_distance(c, p, p) == 0
    for k in (1, 4, 16):
        assert surface_distance(c, p, c.vertex_point(1), k) == 1.0
    d8 = surface_distance(c, p, c.vertex_point(6), 8)
    assert math.sqrt(5) <= d8 <= 1.01 * math.sqrt(5)
    d32 = surface_distance(c, p, c.vertex_point(6), 32)
    assert d32 <= 1.002 * math.sqrt(5)


def test_adjacent_faces_against_unfolding():
    # bottom face z=0 and side face x=1 unfold into one plane
    c = unit_cube()
    rng = np.random.default_rng(0)
    for _ in range(10):
        # near the shared edge, away from the other faces, the one-hinge
        # unfolding is the shortest path
        a = np.array([rng.uniform(0.5, 1), rng.uniform(0.3, 0.7), 0.0])
        b = np.array([1.0, rng.uniform(0.3, 0.7), rng.uniform(0, 0.5)])
        exact = math.hypot(a[0] - (1 + b[2]), a[1] - b[1])
        for k in (8, 32):
            # an upper bound, within half a node spacing of the true length
            d = surface_distance(c, c.locate(a), c.locate(b), k)
            assert exact - 1e-12 <= d <= exact + 0.5 / k


def test_monotone_in_k():
    c = unit_cube()
    rng = np.random.default_rng(1)
    for _ in range(5):
        p = SurfacePoint.on_face(int(rng.integers(12)), rng.dirichlet([1, 1, 1]))
        q = SurfacePoint.on_face(int(rng.integers(12)), rng.dirichlet([1, 1, 1]))
        d = [surface_distance(c, p, q, k) for k in (2, 4, 8, 16, 32)]
        assert all(b <= a + 1e-12 for a, b in zip(d, d[1:]))


def test_metric_axioms_and_isometry():
    rng = np.random.default_rng(2)
    s = convex_mesh_from_points(rng.standard_normal((12, 3)))
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    s2 = s.transformed(q, rng.standard_normal(3))
    pts = [SurfacePoint.on_face(int(rng.integers(len(s.triangles))), rng.dirichlet([1, 1, 1]))
           for _ in range(9)]
    for i in range(3):
        a, b, c = pts[3 * i:3 * i + 3]
        ab = surface_distance(s, a, b)
        assert abs(ab - surface_distance(s, b, a)) < 1e-12
        assert surface_distance(s, a, c) <= ab + surface_distance(s, b, c) + 1e-9
        assert abs(surface_distance(s2, a, b) - ab) < 1e-10


def test_double_distance_examples():
    d = DoubledPolygon(SQ)
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rng.random(2), rng.random(2)
        assert double_distance(d, SurfacePoint.on_side("+", a), SurfacePoint.on_side("+", b)) == \
            np.linalg.norm(a - b)
    edge = (1.0, 0.4)
    assert double_distance(d, SurfacePoint.on_side("+", edge), SurfacePoint.on_side("-", edge)) == 0
    c = (0.5, 0.5)
    assert abs(double_distance(d, SurfacePoint.on_side("+", c), SurfacePoint.on_side("-", c)) - 1) < 1e-10


def test_double_is_slab_limit():
    d = DoubledPolygon(SQ)
    # the crossing point (0, 0.5) is a Steiner node, so the graph error
    # does not mask the O(eps) term
    p, q = SurfacePoint.on_side("+", (0.3, 0.5)), SurfacePoint.on_side("-", (0.2, 0.5))
    exact = double_distance(d, p, q)
    errs = []
    for eps in (1e-2, 1e-3):
        slab = extrude_polygon(SQ, eps, 16)
        errs.append(abs(surface_distance(slab, slab_point(slab, eps, p), slab_point(slab, eps, q)) - exact))
    assert 8 < errs[0] / errs[1] < 12.5


def test_circumference_examples():
    c = unit_cube()
    delta = 0.1
    assert ball_circumference(c, 0, delta) == pytest.approx(1.5 * math.pi * delta, rel=1e-12)
    p = SurfacePoint.on_face(0, [0.3, 0.3, 0.4])
    assert ball_circumference(c, p, 0.01) == pytest.approx(2 * math.pi * 0.01, rel=1e-12)
    tri = DoubledPolygon([[0, 0], [2, 0], [0.5, 1.5]])
    for i in range(3):
        th = tri.interior_angle(i)
        assert ball_circumference(tri, i, 0.05) == pytest.approx(2 * th * 0.05, rel=1e-12)
    with pytest.raises(DeltaTooLarge):
        ball_circumference(c, 0, 0.5)


def test_circumference_bound_random_meshes():
    rng = np.random.default_rng(4)
    for _ in range(5):
        s = convex_mesh_from_points(rng.standard_normal((20, 3)))
        for v in range(len(s.vertices)):
            assert ball_circumference(s, v, 1e-3) <= 2 * math.pi * 1e-3 * (1 + 1e-9)


def test_puncture_examples():
    c = unit_cube()
    p, q = c.vertex_point(0), c.vertex_point(6)
    a, b = puncture_stability(c, p, q, [])
    assert a == b
    a, b = puncture_stability(c, p, q, [np.array([0.0, 0.5, 1.0])])
    assert a == b
    f = SurfacePoint.on_face(0, [0.6, 0.2, 0.2])
    g = SurfacePoint.on_face(0, [0.2, 0.2, 0.6])
    mid = 0.5 * (c.position(f) + c.position(g))
    a, b = puncture_stability(c, f, g, [mid], k=32)
    assert abs(b - a) < 1e-3 * a
    with pytest.raises(PunctureHitsEndpoint):
        puncture_stability(c, p, q, [c.position(p)])


def test_obj_round_trip_and_validation():
    c = unit_cube()
    c2 = read_obj(write_obj(c))
    assert np.array_equal(c2.vertices, c.vertices) and np.array_equal(c2.triangles, c.triangles)
    with pytest.raises(InvalidSurface, match="line 2"):
        read_obj("v 0 0 0\nv 1 x 0\n")
    with pytest.raises(InvalidSurface):
        PolyhedralSurface(c.vertices, c.triangles[:-1])
    with pytest.raises(InvalidSurface):
        PolyhedralSurface(c.vertices, c.triangles[:, ::-1])


def test_cone_angles():
    c = unit_cube()
    assert all(c.cone_angle(v) == pytest.approx(1.5 * math.pi) for v in range(8))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_same_side_double_is_planar(seed):
    rng = np.random.default_rng(seed)
    poly = DoubledPolygon([[0, 0], [3, 0], [4, 2], [1, 3]])
    w = rng.dirichlet([1, 1, 1, 1], 2) @ poly.polygon
    side = "+" if rng.random() < 0.5 else "-"
    d = double_distance(poly, SurfacePoint.on_side(side, w[0]), SurfacePoint.on_side(side, w[1]))
    assert d == np.linalg.norm(w[0] - w[1])

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypconvex.errors import DegenerateBody, OriginInHull, OriginNotInterior, UnboundedExtension
from hypconvex.gauge import (ConvexPolytope, GaugeSampleSet, fibonacci_sphere, gauge_eval, gauge_extend,
                             hemisphere_center, interior_normal, min_norm_point, subadditivity_defect)

CUBE = ConvexPolytope.cube()


def test_gauge_examples():
    assert gauge_eval(CUBE, [2.0, 0, 0]) == 2.0
    assert gauge_eval(CUBE, [1.0, 1, 1]) == 1.0
    r = 0.7
    tet = ConvexPolytope.regular_tetrahedron(r)
    for n in tet.normals:
        assert gauge_eval(tet, n) == pytest.approx(1 / r, rel=1e-12)


def test_subadditivity_examples():
    assert subadditivity_defect(CUBE, [1.0, 0, 0], [0, 1.0, 0]) == 1.0
    assert subadditivity_defect(CUBE, [1.0, 2, 3], [2.0, 4, 6]) == pytest.approx(0.0, abs=1e-15)


def test_origin_must_be_interior():
    with pytest.raises(OriginNotInterior):
        gauge_eval(ConvexPolytope.from_vertices(np.eye(3).tolist() + [[1, 1, 1]]), [1.0, 0, 0])


def test_cube_recovery_face_hole():
    for n, tol in ((500, 0.02), (5000, 0.005)):
        s = GaugeSampleSet.from_polytope(CUBE, fibonacci_sphere(n)).without_cap([1, 0, 0], 0.2)
        ext = gauge_extend(s)
        probe = fibonacci_sphere(20000)
        probe = probe[np.arccos(np.clip(probe[:, 0], -1, 1)) <= 0.2]
        assert np.max(np.abs(gauge_eval(ext, probe) / gauge_eval(CUBE, probe) - 1)) < tol


def test_edge_hole_converges():
    # a cap over a cube edge: the hole adds nothing beyond the sampling error
    c = np.array([1.0, 1.0, 0]) / np.sqrt(2)
    probe = fibonacci_sphere(20000)
    probe = probe[probe @ c >= np.cos(0.2)]
    errs = []
    for n in (500, 5000):
        ext = gauge_extend(GaugeSampleSet.from_polytope(CUBE, fibonacci_sphere(n)).without_cap(c, 0.2))
        errs.append(np.max(np.abs(gauge_eval(ext, probe) / gauge_eval(CUBE, probe) - 1)))
    assert errs[1] < 0.005 and errs[1] < errs[0]


def test_extension_by_construction():
    d = np.vstack([np.eye(3), -np.eye(3)])
    ext = gauge_extend(GaugeSampleSet(d, np.ones(6)))
    assert np.allclose(gauge_eval(ext, d), 1)
    a = np.array([0.3, -1.2, 0.5])
    for k in (0.5, 2.0, 10.0):
        assert gauge_eval(ext, k * a) == pytest.approx(k * gauge_eval(ext, a), rel=1e-12)
    with pytest.raises(UnboundedExtension):
        gauge_extend(GaugeSampleSet(np.eye(3), np.ones(3)))


def test_hemisphere_examples():
    a = hemisphere_center(np.eye(3))
    assert np.allclose(a, np.ones(3) / np.sqrt(3))
    assert np.min(np.eye(3) @ a) == pytest.approx(1 / np.sqrt(3))
    p = np.array([0.6, 0.0, 0.8])
    assert np.allclose(hemisphere_center([p]), p)
    with pytest.raises(OriginInHull):
        hemisphere_center([[1, 0, 0], [-1, 0, 0]])


def test_min_norm_point_against_qp():
    # the nearest point of a hull checked against a brute-force scan of the simplex
    rng = np.random.default_rng(0)
    for _ in range(20):
        pts = rng.standard_normal((3, 3)) + [2, 0, 0]
        res = min_norm_point(pts)
        w = rng.dirichlet([1, 1, 1], 20000)
        assert np.linalg.norm(res.beta) <= np.min(np.linalg.norm(w @ pts, axis=1)) + 1e-12
        assert np.min((pts - res.beta) @ res.beta) >= -1e-10


def test_interior_normal_examples():
    n = interior_normal(CUBE, int(np.argmin(np.linalg.norm(CUBE.vertices - 1, axis=1))))
    assert np.allclose(n, -np.ones(3) / np.sqrt(3))
    assert np.allclose(interior_normal(CUBE, [1.0, 0.2, -0.3]), [-1, 0, 0])
    slab = ConvexPolytope.from_vertices([[x, y, 0] for x in (-1, 1) for y in (-1, 1)])
    with pytest.raises(DegenerateBody):
        interior_normal(slab, 0)


def test_sample_set_validation():
    with pytest.raises(ValueError):
        GaugeSampleSet(np.eye(3), [1.0, -1.0, 1.0])
    with pytest.raises(ValueError):
        GaugeSampleSet(np.vstack([np.eye(3), [[1, 0, 0]]]), np.ones(4))


def test_fibonacci_sphere():
    d = fibonacci_sphere(500)
    assert d.shape == (500, 3)
    assert np.allclose(np.linalg.norm(d, axis=1), 1)
    assert np.linalg.norm(d.mean(axis=0)) < 1e-2


vec = st.tuples(*[st.floats(-5, 5, allow_nan=False)] * 3)


@settings(max_examples=200, deadline=None)
@given(vec, vec, st.floats(0, 1))
def test_convex_and_subadditive(x, y, lam):
    body = ConvexPolytope.regular_tetrahedron(0.5)
    x, y = np.array(x), np.array(y)
    assert subadditivity_defect(body, x, y) >= -1e-12
    lhs = gauge_eval(body, lam * x + (1 - lam) * y)
    assert lhs <= lam * gauge_eval(body, x) + (1 - lam) * gauge_eval(body, y) + 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_extension_below_data_and_monotone(seed):
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((40, 3))
    s = GaugeSampleSet.from_polytope(CUBE, d)
    s = GaugeSampleSet(s.directions, s.values * rng.uniform(1, 2, len(s)))
    try:
        ext = gauge_extend(s)
    except UnboundedExtension:
        return
    assert np.all(gauge_eval(ext, s.directions) <= s.values + 1e-12)
    more = s.union(GaugeSampleSet.from_polytope(CUBE, rng.standard_normal((5, 3))))
    probe = rng.standard_normal((200, 3))
    assert np.all(gauge_eval(gauge_extend(more), probe) <= gauge_eval(ext, probe) + 1e-12)

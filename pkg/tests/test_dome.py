import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypconvex.delaunay import delaunay_triangulate, hex_lattice, lcr_map
from hypconvex.dome import (IdealPointSet, MobiusMap, abs_cross_ratio, compare_domes, cross_ratio,
                            ideal_hull, mobius_apply, shear_at_edge, shears, stereographic,
                            stereographic_inv, to_obj)
from hypconvex.errors import BoundaryEdge, DegenerateHull, DuplicatePoints, TooFewPoints

TETRA = [0, 1, "inf", cmath.exp(1j * math.pi / 3)]


def test_stereographic_examples():
    assert np.allclose(stereographic(0), [0, 0, -1])
    assert np.allclose(stereographic("inf"), [0, 0, 1])
    for th in np.linspace(0, 2 * np.pi, 7):
        z = cmath.exp(1j * th)
        assert np.allclose(stereographic(z), [z.real, z.imag, 0], atol=1e-15)
    for z in (0.3 - 2j, 1e8 + 1j, -1e-9j):
        assert abs(stereographic_inv(stereographic(z)) - z) <= 1e-12 * max(1, abs(z))
    assert stereographic_inv([0, 0, 1]) == math.inf


def test_regular_tetrahedron():
    h = ideal_hull(IdealPointSet.from_points(TETRA))
    assert len(h.faces) == 4 and len(h.edges()) == 6
    assert all(v == pytest.approx(1.0, abs=1e-12) for v in shears(h).values())


def test_square_plus_infinity():
    h = ideal_hull(IdealPointSet.from_points([0, 1, 1 + 1j, 1j, "inf"]))
    finite = [f for f in h.faces if 4 not in f]
    assert len(finite) == 1 and sorted(finite[0]) == [0, 1, 2, 3]
    assert h.flat_edges == {(0, 2)}
    assert h.euler_characteristic() == 2


def test_rectangle_shear_matches_lcr():
    pts = [0, 2, 2 + 1j, 1j]
    h = ideal_hull(IdealPointSet.from_points(pts + ["inf"]))
    assert shear_at_edge(h, (0, 2)) == pytest.approx(4.0, rel=1e-12)
    t = delaunay_triangulate([(z.real, z.imag) for z in map(complex, pts)])
    assert lcr_map(t)[(0, 2)] == pytest.approx(4.0, rel=1e-15)


def test_hex_lattice_shears_are_one():
    pts = hex_lattice(2)
    h = ideal_hull(IdealPointSet.from_points([complex(x, y) for x, y in pts] + ["inf"]))
    t = delaunay_triangulate(pts)
    for e in lcr_map(t):
        assert abs(shear_at_edge(h, e) - 1) < 1e-10


def test_errors():
    with pytest.raises(DegenerateHull):
        ideal_hull(IdealPointSet.from_points([1, 1j, -1, -1j]))
    with pytest.raises(TooFewPoints):
        ideal_hull(IdealPointSet.from_points([0, 1, "inf"]))
    with pytest.raises(DuplicatePoints):
        ideal_hull(IdealPointSet.from_points([0, 1, 1j, 1, "inf"]))
    h = ideal_hull(IdealPointSet.from_points(TETRA))
    with pytest.raises(BoundaryEdge):
        h.edge_quad((0, 0))


def test_mobius_examples():
    x = IdealPointSet.from_points([0, 1, "inf"])
    assert mobius_apply(MobiusMap.identity(), x).values == x.values
    inv = mobius_apply(MobiusMap(0, 1, 1, 0), x).values
    assert inv[0] == math.inf and inv[1] == 1 and inv[2] == 0
    rng = np.random.default_rng(0)
    for _ in range(100):
        z = list(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        m = MobiusMap.random(rng)
        w = [m(v) for v in z]
        assert abs(cross_ratio(*w) / cross_ratio(*z) - 1) < 1e-10


def test_compare_examples():
    rng = np.random.default_rng(1)
    z = list(rng.standard_normal(8) + 1j * rng.standard_normal(8))
    x = IdealPointSet.from_points(z)
    r = compare_domes(x, x)
    assert r.verdict == "ShearEqual" and r.max_defect == 0
    r = compare_domes(x, mobius_apply(MobiusMap.random(rng), x))
    assert r.verdict == "ShearEqual" and r.max_defect < 1e-8
    z2 = list(z)
    z2[3] += 1e-2 * cmath.exp(0.7j)
    r = compare_domes(x, IdealPointSet.from_points(z2))
    assert r.verdict != "ShearEqual" and r.max_defect > 1e-4


def test_duality_and_hull_audit():
    rng = np.random.default_rng(2)
    for _ in range(20):
        n = int(rng.integers(4, 25))
        P = rng.random((n, 2))
        t = delaunay_triangulate([tuple(p) for p in P])
        h = ideal_hull(IdealPointSet.from_points(list(P[:, 0] + 1j * P[:, 1]) + ["inf"]))
        assert {frozenset(f) for f in h.triangles if n not in f} == t.triangle_set()
        inf_faces = {frozenset(set(f) - {n}) for f in h.triangles if n in f}
        assert inf_faces == {frozenset(e) for e in t.boundary_edges()}
        assert {v for f in h.faces for v in f} == set(range(n + 1))


def test_obj_export():
    h = ideal_hull(IdealPointSet.from_points(TETRA))
    lines = to_obj(h).splitlines()
    assert sum(l.startswith("v ") for l in lines) == 4
    assert sum(l.startswith("f ") for l in lines) == 4


def test_abs_cross_ratio_infinity():
    assert abs_cross_ratio(0, 2, 2 + 1j, 1j) == pytest.approx(4.0)
    assert abs_cross_ratio(0, 1, "inf", cmath.exp(1j * math.pi / 3)) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(5, 12))
def test_mobius_invariance_property(seed, n):
    rng = np.random.default_rng(seed)
    x = IdealPointSet.from_points(list(rng.standard_normal(n) + 1j * rng.standard_normal(n)))
    r = compare_domes(x, mobius_apply(MobiusMap.random(rng), x))
    assert r.verdict == "ShearEqual"


def test_compare_searches_correspondence_when_omitted():
    x = IdealPointSet.from_points([0, 1, 1j, 2 + 3j, -1 - 0.5j, 0.3 - 2j, "inf"])
    y = mobius_apply(MobiusMap(1, 2, 1j, 3), x)
    perm = [3, 5, 0, 6, 1, 2, 4]
    yp = IdealPointSet.from_points([y.values[perm.index(i)] for i in range(7)])
    assert compare_domes(x, yp, correspondence=list(range(7))).verdict == "NonIsomorphic"
    rep = compare_domes(x, yp)
    assert rep.verdict == "ShearEqual" and rep.max_defect < 1e-8

import json
from fractions import Fraction

import pytest

from hypconvex.delaunay import delaunay_triangulate, hex_lattice, lcr_map
from hypconvex.dome import IdealPointSet, ideal_hull
from hypconvex.gauge import ConvexPolytope
from hypconvex.io import (FormatError, parse_number, read_ideal_set, read_points, read_polytope,
                          read_triangulation, write_ideal_set, write_lcr_csv, write_points,
                          write_polytope, write_shears_csv, write_triangulation)
from hypconvex.predicates import QSqrt3


def test_parse_number():
    assert parse_number(2, "x") == 2.0
    assert parse_number("3/4", "x") == Fraction(3, 4)
    assert parse_number("1/2-3/2*sqrt(3)", "x") == QSqrt3(Fraction(1, 2), Fraction(-3, 2))
    for bad in ("abc", True, None, [1]):
        with pytest.raises(FormatError):
            parse_number(bad, "x")


def test_points_round_trip():
    pts = hex_lattice(1, exact=True)
    assert read_points(write_points(pts)) == pts
    assert read_points('{"points": [[0, "1/3"], [1, 0]]}') == [(0.0, Fraction(1, 3)), (1.0, 0.0)]


def test_bad_json_reports_location():
    with pytest.raises(FormatError, match="line 2"):
        read_points('{"points":\n [[0, 0] [1, 1]]}')
    with pytest.raises(FormatError, match=r"points\[1\]"):
        read_points('{"points": [[0, 0], [1]]}')
    with pytest.raises(FormatError, match="'points'"):
        read_points('{"pts": []}')


def test_triangulation_round_trip():
    t = delaunay_triangulate([(0, 0), (1, 0), (1, 1), (0, 1)], exact=True)
    t2 = read_triangulation(write_triangulation(t))
    assert t2.triangle_set() == t.triangle_set() and t2.exact
    with pytest.raises(FormatError, match="triangles"):
        read_triangulation('{"points": [[0,0],[1,0],[0,1]], "triangles": [[0, 1]]}')


def test_lcr_csv():
    t = delaunay_triangulate([(0, 0), (1, 0), (1, 1), (0, 1)], exact=True)
    assert write_lcr_csv(lcr_map(t)) == "edge_v1,edge_v2,lcr\n0,2,1\n"
    t = delaunay_triangulate([(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)])
    assert write_lcr_csv(lcr_map(t)).splitlines()[1] == "0,2,4.0"


def test_ideal_set_and_shears():
    x = read_ideal_set('{"points": [[0, 0], [2, 0], [2, 1], [0, 1], "inf"]}')
    assert x.values[-1] == float("inf")
    assert read_ideal_set(write_ideal_set(x)).values == x.values
    rows = write_shears_csv(ideal_hull(x)).splitlines()
    assert rows[0] == "v1,v3,v2,v4,shear,flat"
    diag = [r for r in rows[1:] if r.startswith("0,2,")]
    assert len(diag) == 1 and float(diag[0].split(",")[4]) == pytest.approx(4.0)
    with pytest.raises(FormatError):
        read_ideal_set('{"points": [[0, 0], "infinity"]}')


def test_polytope_round_trip():
    c = ConvexPolytope.cube()
    c2 = read_polytope(write_polytope(c))
    assert sorted(map(tuple, c2.vertices)) == sorted(map(tuple, c.vertices))
    with pytest.raises(FormatError, match=r"vertices\[0\]"):
        read_polytope(json.dumps({"vertices": [[0, 0]]}))

"""
Delaunay triangulations and length-cross-ratios
===============================================

Each interior edge of a planar triangulation has a quad around it; its
length-cross-ratio is |v1-v2||v3-v4| / (|v2-v3||v4-v1|).  On the regular
triangular lattice every ratio is exactly one, which exact arithmetic over
Q(sqrt 3) confirms without rounding.
"""
import numpy as np

from hypconvex.delaunay import delaunay_triangulate, hex_lattice, lcr_map, similarity

sq = delaunay_triangulate([(0, 0), (1, 0), (1, 1), (0, 1)])
print("square triangles:", sq.triangles.tolist(), " lcr:", lcr_map(sq))

t = delaunay_triangulate(hex_lattice(3, exact=True))
vals = set(lcr_map(t).values())
print("hex lattice, exact mode: %d interior edges, distinct lcr values %s" % (len(lcr_map(t)), vals))

rng = np.random.default_rng(1)
pts = [tuple(p) for p in rng.random((40, 2))]
m1 = lcr_map(delaunay_triangulate(pts))
m2 = lcr_map(delaunay_triangulate(similarity(pts, 3.0, 0.4, (7.0, -2.0))))
print("similarity changes lcr by at most", max(abs(m1[e] - m2[e]) for e in m1))
print("lcr range on random points: %.3f .. %.3f" % (min(m1.values()), max(m1.values())))

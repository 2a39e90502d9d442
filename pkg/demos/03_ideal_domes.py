"""
Domes over ideal points and shear coordinates
=============================================

Putting a planar point set and infinity on the sphere at infinity of H^3,
the hull faces away from infinity are the Delaunay triangles, and each
shear coordinate equals the length-cross-ratio of the same edge.  Moebius
maps preserve all shears; moving one point does not.
"""
import cmath

import numpy as np

from hypconvex.delaunay import delaunay_triangulate, lcr_map
from hypconvex.dome import IdealPointSet, MobiusMap, compare_domes, ideal_hull, mobius_apply, shear_at_edge

rng = np.random.default_rng(2)
P = rng.random((12, 2))
t = delaunay_triangulate([tuple(p) for p in P])
h = ideal_hull(IdealPointSet.from_points(list(P[:, 0] + 1j * P[:, 1]) + ["inf"]))
print("Delaunay triangles:", len(t.triangles), " hull faces away from infinity:",
      sum(12 not in f for f in h.triangles))
gap = max(abs(np.log(v) - np.log(shear_at_edge(h, e))) for e, v in lcr_map(t).items())
print("max |log lcr - log shear| =", gap)

z = list(rng.standard_normal(9) + 1j * rng.standard_normal(9))
x = IdealPointSet.from_points(z)
m = MobiusMap.random(rng)
print("Moebius image:", compare_domes(x, mobius_apply(m, x)).verdict)
z[4] += 1e-2 * cmath.exp(1j)
r = compare_domes(x, IdealPointSet.from_points(z))
print("one point moved by 1e-2:", r.verdict, "max defect %.2e at edge %s" % (r.max_defect, r.worst_edge))

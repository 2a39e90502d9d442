"""
Filling a hole in a sampled gauge function
==========================================

Sample the gauge of the cube [-1, 1]^3 on quasi-uniform directions, drop a
spherical cap, and take the gauge of the hull of the remaining level-set
points.  Over a face the hole closes exactly; over an edge or vertex the
error is the ordinary sampling error, which shrinks with more samples.
"""
import numpy as np

from hypconvex.gauge import (ConvexPolytope, GaugeSampleSet, fibonacci_sphere, gauge_eval, gauge_extend,
                             hemisphere_center, interior_normal)

cube = ConvexPolytope.cube()
probe = fibonacci_sphere(20000)
for name, centre in (("face", [1, 0, 0]), ("edge", [1, 1, 0]), ("vertex", [1, 1, 1])):
    c = np.array(centre, float) / np.linalg.norm(centre)
    inside = probe[probe @ c >= np.cos(0.2)]
    errs = []
    for n in (500, 5000):
        s = GaugeSampleSet.from_polytope(cube, fibonacci_sphere(n)).without_cap(c, 0.2)
        ext = gauge_extend(s)
        errs.append(np.max(np.abs(gauge_eval(ext, inside) / gauge_eval(cube, inside) - 1)))
    print("%-6s hole: max relative error %.2e (500 samples), %.2e (5000 samples)" % (name, *errs))

print("hemisphere centre of the coordinate axes:", hemisphere_center(np.eye(3)))
print("inward normal at the corner (1,1,1):", interior_normal(cube, [1.0, 1.0, 1.0]))

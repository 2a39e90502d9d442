"""
Intrinsic distances on convex surfaces
======================================

Distances on a closed convex mesh are upper-bounded by shortest paths in a
graph of Steiner points.  On the cube the corner-to-corner distance is
sqrt(5); small metric circles are never longer than in the plane; removing
tiny balls does not change distances; and a thin slab converges to the
double of its face.
"""
import math

from hypconvex.surface_metric import (DoubledPolygon, SurfacePoint, ball_circumference, double_distance,
                                      extrude_polygon, puncture_stability, slab_point, surface_distance,
                                      unit_cube)

cube = unit_cube()
for k in (1, 2, 8, 32):
    d = surface_distance(cube, cube.vertex_point(0), cube.vertex_point(6), k)
    print("k=%-2d  corner to corner %.10f  (sqrt 5 = %.10f)" % (k, d, math.sqrt(5)))

delta = 0.1
print("circle of radius 0.1 at a cube corner: %.6f = %.3f * 2 pi delta"
      % (ball_circumference(cube, 0, delta), ball_circumference(cube, 0, delta) / (2 * math.pi * delta)))

f, g = SurfacePoint.on_face(0, [0.6, 0.2, 0.2]), SurfacePoint.on_face(0, [0.2, 0.2, 0.6])
mid = 0.5 * (cube.position(f) + cube.position(g))
print("distance with and without a puncture on the path:", puncture_stability(cube, f, g, [mid], k=32))

sq = [[0, 0], [1, 0], [1, 1], [0, 1]]
p, q = SurfacePoint.on_side("+", (0.5, 0.5)), SurfacePoint.on_side("-", (0.5, 0.5))
exact = double_distance(DoubledPolygon(sq), p, q)
for eps in (1e-2, 1e-3):
    slab = extrude_polygon(sq, eps)
    d = surface_distance(slab, slab_point(slab, eps, p), slab_point(slab, eps, q))
    print("slab thickness %.0e: %.6f  (double: %.6f)" % (eps, d, exact))

"""
Pairs of hyperbolic points as pairs of Euclidean points
=======================================================

Phi sends a pair (x, y) of points on the hyperboloid to a pair (a, b) of
points in R^3 with |a| + |b| < 2, and Psi undoes it.  Equal hyperbolic
distances become equal Euclidean distances, and an isometry A of H^3
acting on the second point becomes a Euclidean isometry B.
"""
import numpy as np

from hypconvex.isometry import random_lorentz
from hypconvex.minkowski import hyp_distance, random_points
from hypconvex.pogorelov import hyp_to_euc_isometry, length_defect, phi, psi

rng = np.random.default_rng(0)
x = random_points(rng, 5, 3, 3.0)
y = random_points(rng, 5, 3, 3.0)

a, b = phi(x, y)
print("|a| + |b| per pair:", np.round(np.linalg.norm(a, axis=1) + np.linalg.norm(b, axis=1), 6))
x2, y2 = psi(a, b)
print("round trip residual:", np.abs(x2 - x).max(), np.abs(y2 - y).max())

# isometric quadruple: d(x, u) = d(Ax, Au), so the image lengths agree
A = random_lorentz(rng, 2.0)
u = random_points(rng, 5, 3, 3.0)
print("d(x,u) - d(Ax,Au):", np.abs(hyp_distance(x, u) - hyp_distance(A.apply(x), A.apply(u))).max())
direct, closed = length_defect(x, A.apply(x), u, A.apply(u))
print("|x^-u^|^2 - |y^-v^|^2:", np.abs(direct).max())

# the second component of Phi(x, A x) is B applied to the first
B = hyp_to_euc_isometry(A)
p, q = phi(x, A.apply(x))
print("Phi(x, Ax) = (p, Bp) residual:", np.abs(B.apply(p) - q).max())
print("B rotation det:", round(np.linalg.det(B.rotation), 12), " translation:", B.translation)

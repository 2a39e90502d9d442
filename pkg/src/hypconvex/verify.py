"""Property suites run by ``hypconvex verify``.

Each check draws its randomness from its own counter-based stream derived
from the run seed and the check name, so suites can be run in any order or
subset and still reproduce bit for bit.
"""
from __future__ import annotations

import math
import time
import zlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config
from .delaunay import (audit_delaunay, brute_force_delaunay, delaunay_triangulate, hex_lattice,
                       lcr_map, similarity)
from .dome import IdealPointSet, MobiusMap, compare_domes, ideal_hull, mobius_apply, shear_at_edge
from .gauge import (ConvexPolytope, GaugeSampleSet, fibonacci_sphere, gauge_eval, gauge_extend,
                    hemisphere_center, interior_normal, min_norm_point, subadditivity_defect)
from .isometry import EuclideanIsometry, random_lorentz
from .minkowski import hyp_distance, lift, mink_product, random_points
from .pogorelov import (chord_deviation, euc_to_hyp_isometry, fit_euclidean_isometry,
                        hyp_to_euc_isometry, radial_image,
                        image_speeds, length_defect, length_defect_scale, omega_defect, phi, psi)
from .predicates import incircle, incircle_exact, incircle_naive, incircle_perturbed
from .surface_metric import (DoubledPolygon, SurfacePoint, ball_circumference,
                             convex_mesh_from_points, double_distance, extrude_polygon,
                             puncture_stability, slab_point, surface_distance, unit_cube)


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    anchor: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "residual": self.residual,
                "anchor": self.anchor, "detail": self.detail}


def check_rng(seed: int, name: str) -> np.random.Generator:
    """Philox stream keyed by the run seed and the check name."""
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=(zlib.crc32(name.encode()),))
    return np.random.Generator(np.random.Philox(ss))


def _result(name, ok, res, anchor, detail=""):
    return CheckResult(name, bool(ok), float(res), anchor, detail)


# ---------------------------------------------------------------- pogorelov

def pogorelov_inverse(rng, count: int = 10_000):
    x = random_points(rng, count, 3, 5.0)
    y = random_points(rng, count, 3, 5.0)
    t0 = time.perf_counter()
    a, b = phi(x, y)
    x2, y2 = psi(a, b)
    a2, b2 = phi(x2, y2)
    elapsed = time.perf_counter() - t0
    r1 = max(np.max(np.abs(x2 - x)), np.max(np.abs(y2 - y)))
    r2 = max(np.max(np.abs(a2 - a)), np.max(np.abs(b2 - b)))
    res = max(r1, r2)
    return res, elapsed


def isometric_quadruples(rng, count: int):
    """(x, y, u, v) with <x, u> = <y, v> built as y = A x, v = A u."""
    x = random_points(rng, count, 3, 3.0)
    u = random_points(rng, count, 3, 3.0)
    y = np.empty_like(x)
    v = np.empty_like(u)
    for i in range(count):
        A = random_lorentz(rng, 2.0)
        y[i] = A.apply(x[i])
        v[i] = A.apply(u[i])
    return x, y, u, v


def length_defect_check(rng, count: int = 10_000, iso_count: int = 1000):
    x, y, u, v = (random_points(rng, count, 3, 5.0) for _ in range(4))
    direct, closed = length_defect(x, y, u, v)
    rel = np.max(np.abs(direct - closed) / np.maximum(length_defect_scale(x, y, u, v), 1e-300))
    xi, yi, ui, vi = isometric_quadruples(rng, iso_count)
    d_iso, _ = length_defect(xi, yi, ui, vi)
    return float(rel), float(np.max(np.abs(d_iso)))


def _random_unit_tangent(rng, x):
    """Unit tangent vector to the hyperboloid at x."""
    w = rng.standard_normal(x.shape)
    w = w + mink_product(w, x)[..., None] * x
    return w / np.sqrt(mink_product(w, w))[..., None]


def geodesic_segments(rng, count: int = 1000, samples: int = 41):
    x = random_points(rng, count, 3, 3.0)
    y = random_points(rng, count, 3, 3.0)
    wx = _random_unit_tangent(rng, x)
    wy = _random_unit_tangent(rng, y)
    L = rng.uniform(0.0, 4.0, count)
    s = np.linspace(0.0, 1.0, samples)[None, :, None] * L[:, None, None]
    ax = np.cosh(s) * x[:, None, :] + np.sinh(s) * wx[:, None, :]
    by = np.cosh(s) * y[:, None, :] + np.sinh(s) * wy[:, None, :]
    ha, hb = phi(ax, by)
    dev = max(max(chord_deviation(ha[i]), chord_deviation(hb[i])) for i in range(count))
    la = np.linalg.norm(ha[:, -1] - ha[:, 0], axis=-1)
    lb = np.linalg.norm(hb[:, -1] - hb[:, 0], axis=-1)
    return float(dev), float(np.max(np.abs(la - lb)))


def speed_equality(rng, count: int = 100, h: float = 1e-4):
    worst = 0.0
    t = np.linspace(0.1, 0.9, 9)
    for i in range(count):
        if i % 2 == 0:
            # constant-speed circle about e paired with a geodesic of the same speed
            rho, om = rng.uniform(0.2, 1.5), rng.uniform(0.5, 2.0)
            R = random_lorentz(rng, 0.0).matrix[1:, 1:]
            y = random_points(rng, 1, 3, 2.0)[0]
            w = _random_unit_tangent(rng, y[None])[0]
            sp = math.sinh(rho) * om

            def alpha(tt, rho=rho, om=om, R=R):
                p = np.stack([np.cos(om * tt), np.sin(om * tt), np.zeros_like(tt)], -1) * math.sinh(rho)
                return lift(p @ R.T)

            def beta(tt, y=y, w=w, sp=sp):
                s = (sp * tt)[..., None]
                return np.cosh(s) * y + np.sinh(s) * w
        else:
            c = rng.standard_normal((4, 3))
            A = random_lorentz(rng, 2.0)

            def alpha(tt, c=c):
                tt = np.asarray(tt)[..., None]
                return lift(c[0] + c[1] * tt + c[2] * tt ** 2 + c[3] * np.sin(3 * tt))

            def beta(tt, alpha=alpha, A=A):
                return A.apply(alpha(tt))
        s1, s2 = image_speeds(alpha, beta, t, h)
        worst = max(worst, float(np.max(np.abs(s1 - s2) / np.maximum(s1, s2))))
    return worst


def isometry_correspondence(rng, count: int = 1000, points: int = 100):
    rt, pw = 0.0, 0.0
    for _ in range(count):
        A = random_lorentz(rng, 3.0)
        B = hyp_to_euc_isometry(A)
        A2 = euc_to_hyp_isometry(B)
        rt = max(rt, float(np.max(np.abs(A.matrix - A2.matrix))))
        x = random_points(rng, points, 3, 3.0)
        yh, byh = phi(x, A.apply(x))
        pw = max(pw, float(np.max(np.abs(B.apply(yh) - byh))))
    ex = euc_to_hyp_isometry(EuclideanIsometry(np.eye(3), [1.0, 0.0, 0.0])).matrix
    want = np.eye(4)
    want[:2, :2] = [[5 / 3, 4 / 3], [4 / 3, 5 / 3]]
    return rt, pw, float(np.max(np.abs(ex - want)))


def monotonicity(rng, count: int = 10_000):
    """sign(|x^ - u^| - |y^ - v^|) = sign(d(x, u) - d(y, v))."""
    x, y, u, v = (random_points(rng, count, 3, 3.0) for _ in range(4))
    xh, yh = phi(x, y)
    uh, vh = phi(u, v)
    de = np.linalg.norm(xh - uh, axis=-1) - np.linalg.norm(yh - vh, axis=-1)
    dh = hyp_distance(x, u) - hyp_distance(y, v)
    clear = np.abs(dh) > 1e-9
    return int(np.sum(np.sign(de[clear]) != np.sign(dh[clear])))


def correspondence_routes(rng, count: int = 200):
    """B from the closed form against a least-squares fit of Phi(x, A x) samples."""
    fit_gap, inv_gap = 0.0, 0.0
    for _ in range(count):
        A = random_lorentz(rng, 3.0)
        B = hyp_to_euc_isometry(A)
        x = random_points(rng, 6, 3, 2.0)
        yh, byh = phi(x, A.apply(x))
        F = fit_euclidean_isometry(yh, byh)
        fit_gap = max(fit_gap, float(np.max(np.abs(F.rotation - B.rotation))),
                      float(np.max(np.abs(F.translation - B.translation))))
        z, bz = phi(x, A.inverse().apply(x))
        inv_gap = max(inv_gap, float(np.max(np.abs(B.inverse().apply(z) - bz))))
    return fit_gap, inv_gap


def omega_bound(rng, count: int = 100_000):
    x = random_points(rng, count, 3, 5.0)
    y = random_points(rng, count, 3, 5.0)
    a, b = phi(x, y)
    return float(np.min(omega_defect(a, b)))


def suite_pogorelov(seed: int) -> list[CheckResult]:
    out = []
    res, el = pogorelov_inverse(check_rng(seed, "pogorelov.inverse"))
    out.append(_result("pogorelov.inverse", res < 1e-9, res,
                       "Psi o Phi = id and Phi o Psi = id", "10000 pairs, d(e, x) <= 5"))
    rel, iso = length_defect_check(check_rng(seed, "pogorelov.length_defect"))
    out.append(_result("pogorelov.length_defect", rel < 1e-9 and iso < 1e-9, max(rel, iso),
                       "equal image lengths iff equal Minkowski products",
                       f"closed-form relative gap {rel:.2e}, isometric defect {iso:.2e}"))
    dev, mis = geodesic_segments(check_rng(seed, "pogorelov.geodesic_segments"))
    out.append(_result("pogorelov.geodesic_segments", dev < 1e-8 and mis < 1e-8, max(dev, mis),
                       "geodesic pairs map to equal-length segments",
                       f"chord deviation {dev:.2e}, length mismatch {mis:.2e}"))
    sp = speed_equality(check_rng(seed, "pogorelov.speed_equality"))
    out.append(_result("pogorelov.speed_equality", sp < 1e-5, sp,
                       "equal hyperbolic speeds give equal image speeds", "100 curve pairs, h=1e-4"))
    rt, pw, ex = isometry_correspondence(check_rng(seed, "pogorelov.isometry_correspondence"))
    out.append(_result("pogorelov.isometry_correspondence", rt < 1e-8 and pw < 1e-9 and ex < 1e-12,
                       max(rt, pw), "Phi(x, Ax) = (y, By) with unique B",
                       f"round trip {rt:.2e}, pointwise {pw:.2e}, boost example {ex:.2e}"))
    bad = monotonicity(check_rng(seed, "pogorelov.monotonicity"))
    out.append(_result("pogorelov.monotonicity", bad == 0, bad,
                       "image distances ordered like hyperbolic distances", "10000 quadruples"))
    fit, inv = correspondence_routes(check_rng(seed, "pogorelov.correspondence_routes"))
    out.append(_result("pogorelov.correspondence_routes", fit < 1e-8 and inv < 1e-9, max(fit, inv),
                       "B unique: closed form equals least-squares fit; A^-1 pairs with B^-1",
                       f"fit gap {fit:.2e}, inverse direction {inv:.2e}"))
    om = omega_bound(check_rng(seed, "pogorelov.omega_bound"))
    out.append(_result("pogorelov.omega_bound", om > 0, om, "|a| + |b| < 2 on the image",
                       f"min 2 - |a| - |b| = {om:.3e}"))
    return out


# ---------------------------------------------------------------- delaunay

def random_point_set(rng, n: int, kind: int):
    if kind == 0:
        pts = rng.integers(0, 4, (n, 2)).astype(float)
    elif kind == 1:
        pts = np.round(rng.random((n, 2)) * 8) / 8
    else:
        pts = rng.random((n, 2))
    uniq = []
    for p in map(tuple, pts):
        if p not in uniq:
            uniq.append(p)
    return uniq


def delaunay_oracle(rng, trials: int = 200):
    mism, done = 0, 0
    while done < trials:
        pts = random_point_set(rng, int(rng.integers(3, 13)), done % 3)
        try:
            t = delaunay_triangulate(pts)
        except ValueError:
            continue
        done += 1
        if t.triangle_set() != brute_force_delaunay(pts):
            mism += 1
    return mism


def near_degenerate_cases(rng, count: int):
    """Jittered cocircular quadruples: (float points, exact rational points)."""
    for _ in range(count):
        c = rng.standard_normal(2)
        r = rng.uniform(0.1, 10.0)
        ts = rng.integers(-50, 50, 4)
        pts = []
        for tt in ts:
            t = Fraction(int(tt), 7)
            den = 1 + t * t
            pts.append((float(c[0] + r * float((1 - t * t) / den)), float(c[1] + r * float(2 * t / den))))
        # rounding alone leaves the quadruple within a few ulps of cocircular;
        # two thirds of the cases get an extra jitter of 1e-12 or of ulp size
        mode = int(rng.integers(3))
        if mode:
            e = 1e-12 if mode == 1 else 4e-16 * (abs(c).max() + r)
            pts = [(x + rng.uniform(-e, e), y + rng.uniform(-e, e)) for x, y in pts]
        yield pts


def predicate_exactness(rng, count: int = 10_000):
    errors, naive_wrong = 0, 0
    for pts in near_degenerate_cases(rng, count):
        exact = np.sign(incircle_exact(*[[Fraction(c) for c in p] for p in pts]))
        if incircle(*pts) != exact:
            errors += 1
        if incircle_naive(*pts) != exact:
            naive_wrong += 1
    # exactly cocircular rational points must give 0
    for k in range(1, 50):
        t = [Fraction(k + j, 13) for j in range(4)]
        pts = [((1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)) for s in t]
        if incircle(*pts) != 0:
            errors += 1
    return errors, naive_wrong


def delaunay_audit(rng, trials: int = 5, n: int = 200):
    bad = 0
    for _ in range(trials):
        pts = [tuple(p) for p in np.round(rng.random((n, 2)) * 64) / 64]
        pts = list(dict.fromkeys(pts))
        bad += len(audit_delaunay(delaunay_triangulate(pts)))
    return bad


def lcr_similarity(rng, trials: int = 20):
    worst = 0.0
    for _ in range(trials):
        pts = [tuple(p) for p in rng.random((int(rng.integers(5, 40)), 2))]
        t1 = delaunay_triangulate(pts)
        img = similarity(pts, rng.uniform(0.2, 5.0), rng.uniform(0, 2 * np.pi), rng.standard_normal(2))
        t2 = delaunay_triangulate(img)
        m1, m2 = lcr_map(t1), lcr_map(t2)
        if set(m1) != set(m2):
            return math.inf
        worst = max(worst, max((abs(m1[e] - m2[e]) / m1[e] for e in m1), default=0.0))
    return worst


def flip_consistency(rng, trials: int = 20):
    """Every interior edge is locally Delaunay and its flip is not."""
    bad = 0
    for _ in range(trials):
        t = delaunay_triangulate([tuple(p) for p in rng.random((30, 2))])
        P = t.points
        for i, j in t.interior_edges():
            a, b, c, d = t.edge_quad(i, j).indices
            # quad a b c d is counterclockwise, triangles (c, a, b) and (a, c, d)
            if incircle_perturbed(P, c, a, b, d) >= 0 or incircle_perturbed(P, a, b, d, c) <= 0:
                bad += 1
    return bad


def hex_regular():
    t_exact = delaunay_triangulate(hex_lattice(3, exact=True))
    t_float = delaunay_triangulate(hex_lattice(3))
    ex = lcr_map(t_exact)
    fl = lcr_map(t_float)
    exact_ok = all(v == 1 for v in ex.values())
    err = max(abs(v - 1.0) for v in fl.values())
    interior = [v for v in range(t_exact.num_vertices) if v not in t_exact.hull_vertices()]
    deg_ok = all(t_exact.degrees()[v] == 6 for v in interior) and \
        all(t_float.degrees()[v] == 6 for v in interior)
    return exact_ok, err, deg_ok


def suite_delaunay(seed: int) -> list[CheckResult]:
    out = []
    mism = delaunay_oracle(check_rng(seed, "delaunay.oracle"))
    out.append(_result("delaunay.oracle", mism == 0, mism, "empty circumdisk for every triangle",
                       "200 random sets, n <= 12, against the O(n^4) oracle"))
    errs, naive = predicate_exactness(check_rng(seed, "delaunay.predicates"))
    out.append(_result("delaunay.predicates", errs == 0, errs, "exact in-circle predicate",
                       f"10000 near-degenerate cases; plain floating point wrong on {naive}"))
    bad = delaunay_audit(check_rng(seed, "delaunay.audit"))
    out.append(_result("delaunay.audit", bad == 0, bad, "empty circumdisk for every triangle",
                       "global exact audit, n = 200"))
    sim = lcr_similarity(check_rng(seed, "delaunay.lcr_similarity"))
    out.append(_result("delaunay.lcr_similarity", sim < 1e-12, sim,
                       "length-cross-ratio is similarity invariant"))
    flips = flip_consistency(check_rng(seed, "delaunay.flip_consistency"))
    out.append(_result("delaunay.flip_consistency", flips == 0, flips, "local Delaunay is global"))
    ex, err, deg = hex_regular()
    out.append(_result("delaunay.hex_lattice", ex and err < 1e-12 and deg, err,
                       "regular lattice has all length-cross-ratios 1",
                       f"exact mode lcr == 1: {ex}; float max |lcr - 1| = {err:.1e}; degree 6: {deg}"))
    return out


# ---------------------------------------------------------------- dome

def lcr_shear_duality(rng, trials: int = 50):
    worst, dual_bad = 0.0, 0
    for _ in range(trials):
        n = int(rng.integers(4, 31))
        P = rng.random((n, 2))
        t = delaunay_triangulate([tuple(p) for p in P])
        X = IdealPointSet.from_points(list(P[:, 0] + 1j * P[:, 1]) + ["inf"])
        h = ideal_hull(X)
        if {frozenset(f) for f in h.triangles if n not in f} != t.triangle_set():
            dual_bad += 1
        for e, v in lcr_map(t).items():
            worst = max(worst, abs(math.log(v) - math.log(shear_at_edge(h, e))))
    return worst, dual_bad


def mobius_pairs(rng, trials: int = 100):
    worst, equal = 0.0, 0
    for _ in range(trials):
        n = int(rng.integers(5, 16))
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        X = IdealPointSet.from_points(list(z))
        r = compare_domes(X, mobius_apply(MobiusMap.random(rng), X))
        equal += r.verdict == "ShearEqual"
        worst = max(worst, r.max_defect)
    return equal, worst


def perturbation_detection(rng, trials: int = 100):
    hits = 0
    for _ in range(trials):
        n = int(rng.integers(5, 16))
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        z2 = z.copy()
        z2[int(rng.integers(n))] += 1e-2 * np.exp(2j * np.pi * rng.random())
        r = compare_domes(IdealPointSet.from_points(list(z)), IdealPointSet.from_points(list(z2)))
        hits += r.max_defect > 1e-4
    return hits


def hull_audit(rng, trials: int = 20):
    worst = 0.0
    for _ in range(trials):
        z = rng.standard_normal(20) + 1j * rng.standard_normal(20)
        h = ideal_hull(IdealPointSet.from_points(list(z) + ["inf"]))
        if h.euler_characteristic() != 2 or len({v for f in h.faces for v in f}) != len(z) + 1:
            return math.inf
        worst = max(worst, float(np.max(np.abs(np.linalg.norm(h.vertices, axis=1) - 1))))
        for f, nrm in zip(h.faces, h.normals):
            off = h.vertices[list(f)] @ nrm
            worst = max(worst, float(np.ptp(off)))
    return worst


def suite_dome(seed: int) -> list[CheckResult]:
    out = []
    worst, dual = lcr_shear_duality(check_rng(seed, "dome.lcr_shear"))
    out.append(_result("dome.lcr_shear", worst < 1e-10 and dual == 0, worst,
                       "shear coordinate equals length-cross-ratio",
                       f"50 configurations, n <= 30; duality mismatches {dual}"))
    eq, worst = mobius_pairs(check_rng(seed, "dome.mobius_invariance"))
    out.append(_result("dome.mobius_invariance", eq == 100, worst,
                       "Mobius-related sets have equal shears", f"{eq}/100 ShearEqual"))
    hits = perturbation_detection(check_rng(seed, "dome.perturbation"))
    out.append(_result("dome.perturbation", hits >= 99, hits,
                       "non-Mobius perturbations change some shear", f"{hits}/100 detected"))
    res = hull_audit(check_rng(seed, "dome.hull_audit"))
    out.append(_result("dome.hull_audit", res < 1e-9, res, "hull of ideal points is convex and spherical",
                       "Euler characteristic, unit norm, face planarity"))
    return out


# ---------------------------------------------------------------- gauge

HOLE_CENTER = np.array([1.0, 0.0, 0.0])


def cube_recovery(samples: int, radius: float = 0.2, center=HOLE_CENTER) -> float:
    cube = ConvexPolytope.cube()
    s = GaugeSampleSet.from_polytope(cube, fibonacci_sphere(samples)).without_cap(center, radius)
    ext = gauge_extend(s)
    c = np.asarray(center, float) / np.linalg.norm(center)
    probe = fibonacci_sphere(20_000)
    probe = probe[np.arccos(np.clip(probe @ c, -1, 1)) <= radius]
    return float(np.max(np.abs(gauge_eval(ext, probe) / gauge_eval(cube, probe) - 1)))


def random_polytope(rng, n: int = 20) -> ConvexPolytope:
    p = rng.standard_normal((n, 3))
    p /= np.linalg.norm(p, axis=1, keepdims=True)
    return ConvexPolytope.from_vertices(p * rng.uniform(0.5, 2.0, (n, 1)) * rng.uniform(0.5, 2, 3))


def subadditivity(rng, trials: int = 10_000):
    worst = math.inf
    bodies = [random_polytope(rng) for _ in range(20)]
    for i in range(trials // 500):
        x = rng.standard_normal((500, 3)) * rng.uniform(0.01, 10, (500, 1))
        y = rng.standard_normal((500, 3)) * rng.uniform(0.01, 10, (500, 1))
        worst = min(worst, float(np.min(subadditivity_defect(bodies[i % 20], x, y))))
    return worst


def convexity(rng, trials: int = 10_000):
    worst = -math.inf
    bodies = [random_polytope(rng) for _ in range(10)]
    for i in range(trials // 1000):
        x, y = rng.standard_normal((2, 1000, 3)) * 3
        lam = rng.random((1000, 1))
        p = bodies[i % 10]
        gap = gauge_eval(p, lam * x + (1 - lam) * y) - lam[:, 0] * gauge_eval(p, x) \
            - (1 - lam[:, 0]) * gauge_eval(p, y)
        worst = max(worst, float(np.max(gap)))
    return worst


def omega_surrogate(rng, trials: int = 20):
    """Hulls of radial Pogorelov images stay inside the ball of radius 2."""
    worst = 0.0
    for _ in range(trials):
        d = fibonacci_sphere(200)
        r = rng.uniform(0.5, 6.0, len(d))
        sigma = lift(np.sinh(r)[:, None] * d)
        partner = random_points(rng, len(d), 3, 6.0)
        img = radial_image(sigma, partner)
        ext = gauge_extend(GaugeSampleSet.from_points(img))
        worst = max(worst, float(np.max(np.linalg.norm(ext.vertices, axis=1))))
    return worst


def extension_properties(rng):
    body = random_polytope(rng)
    dirs = fibonacci_sphere(300)
    s = GaugeSampleSet.from_polytope(body, dirs)
    s = GaugeSampleSet(s.directions, s.values * rng.uniform(1.0, 1.3, len(s)))
    ext = gauge_extend(s)
    below = float(np.max(gauge_eval(ext, s.directions) - s.values))
    # samples whose level-set point is a hull vertex are reproduced exactly
    verts = {tuple(v) for v in ext.vertices}
    at = [i for i, p in enumerate(s.points) if tuple(p) in verts]
    eq = float(np.max(np.abs(gauge_eval(ext, s.directions[at]) - s.values[at])))
    extra = GaugeSampleSet.from_polytope(body, rng.standard_normal((50, 3)))
    ext2 = gauge_extend(s.union(extra))
    probe = rng.standard_normal((2000, 3))
    mono = float(np.max(gauge_eval(ext2, probe) - gauge_eval(ext, probe)))
    return below, eq, mono


def random_admissible_set(rng):
    """Points in an open hemisphere: a cap of angular radius < pi/2 about a random axis."""
    axis = rng.standard_normal(3)
    axis /= np.linalg.norm(axis)
    m = int(rng.integers(1, 25))
    rad = rng.uniform(0.05, 1.5)
    u = rng.standard_normal((m, 3))
    u -= np.outer(u @ axis, axis)
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    th = rad * np.sqrt(rng.random(m))
    return np.cos(th)[:, None] * axis + np.sin(th)[:, None] * u


def hemisphere_check(rng, trials: int = 1000):
    worst_inner, worst_vi = math.inf, math.inf
    for _ in range(trials):
        a = random_admissible_set(rng)
        al = hemisphere_center(a)
        worst_inner = min(worst_inner, float(np.min(a @ al)))
        nb = min_norm_point(a)
        worst_vi = min(worst_vi, float(np.min((a - nb.beta) @ nb.beta)))
    return worst_inner, worst_vi


def interior_normal_check(rng, trials: int = 1000):
    fails = 0
    bodies = [random_polytope(rng) for _ in range(50)]
    for i in range(trials):
        b = bodies[i % 50]
        v = int(rng.integers(len(b.vertices)))
        try:
            d = interior_normal(b, v)
        except ValueError:
            fails += 1
            continue
        if not b.contains(b.vertices[v] + 1e-3 * b.diameter * d):
            fails += 1
    return fails


def suite_gauge(seed: int) -> list[CheckResult]:
    out = []
    e500, e5000 = cube_recovery(500), cube_recovery(5000)
    out.append(_result("gauge.cube_recovery", e500 < 0.02 and e5000 < 0.005, max(e500, e5000),
                       "convex extension over a removed cap",
                       f"cap radius 0.2: 500 samples {e500:.2e}, 5000 samples {e5000:.2e}"))
    sub = subadditivity(check_rng(seed, "gauge.subadditivity"))
    out.append(_result("gauge.subadditivity", sub >= -1e-12, sub, "q(x + y) <= q(x) + q(y)",
                       "10000 pairs on random polytopes"))
    below, eq, mono = extension_properties(check_rng(seed, "gauge.extension"))
    out.append(_result("gauge.extension", below <= 1e-12 and eq <= 1e-12 and mono <= 1e-12,
                       max(below, eq, mono), "extension lies below the data and grows with it",
                       f"below {below:.1e}, at vertices {eq:.1e}, monotone {mono:.1e}"))
    cv = convexity(check_rng(seed, "gauge.convexity"))
    out.append(_result("gauge.convexity", cv <= 1e-12, cv, "gauge is convex", "10000 random triples"))
    om = omega_surrogate(check_rng(seed, "gauge.omega_surrogate"))
    out.append(_result("gauge.omega_surrogate", om < 2, om, "|beta| <= 2 on the extended body",
                       "hulls of radial images of Pogorelov data"))
    inner, vi = hemisphere_check(check_rng(seed, "gauge.hemisphere"))
    out.append(_result("gauge.hemisphere", inner > 0 and vi >= -1e-10, inner,
                       "set in an open hemisphere about the nearest-point direction",
                       f"min <alpha, x> = {inner:.3e}; min <beta, x - beta> = {vi:.1e}"))
    fails = interior_normal_check(check_rng(seed, "gauge.interior_normal"))
    out.append(_result("gauge.interior_normal", fails == 0, fails,
                       "inward normal at every boundary point", "1000 random polytope vertices"))
    return out


# ---------------------------------------------------------------- surface

def cube_corners():
    c = unit_cube()
    p, q = c.vertex_point(0), c.vertex_point(6)
    return [(k, surface_distance(c, p, q, k)) for k in (1, 2, 4, 8, 16, 32)]


def random_convex_mesh(rng, n: int = 30):
    p = rng.standard_normal((n, 3))
    p /= np.linalg.norm(p, axis=1, keepdims=True)
    return convex_mesh_from_points(p * rng.uniform(0.5, 2.0, 3))


def circumference_bound(rng, meshes: int = 20):
    worst = 0.0
    for _ in range(meshes):
        s = random_convex_mesh(rng)
        for v in range(len(s.vertices)):
            inc = s.triangles[np.any(s.triangles == v, axis=1)]
            L = min(np.linalg.norm(s.vertices[t[i]] - s.vertices[t[(i + 1) % 3]])
                    for t in inc for i in range(3))
            for frac in (0.05, 0.2):
                delta = frac * L
                try:
                    c = ball_circumference(s, v, delta)
                except ValueError:
                    continue
                worst = max(worst, c / (2 * math.pi * delta))
    return worst


def puncture_check(rng, trials: int = 5):
    c = unit_cube()
    worst = 0.0
    for _ in range(trials):
        b1 = rng.dirichlet([2, 2, 2])
        b2 = rng.dirichlet([2, 2, 2])
        f = int(rng.integers(12))
        p, q = SurfacePoint.on_face(f, b1), SurfacePoint.on_face(f, b2)
        mid = 0.5 * (c.position(p) + c.position(q))
        d0, d1 = puncture_stability(c, p, q, [mid], k=32)
        worst = max(worst, abs(d1 - d0) / d0)
    # a puncture on a cross-face shortest path
    d0, d1 = puncture_stability(c, c.vertex_point(0), c.vertex_point(6), [np.array([1.0, 0.5, 0.0])],
                                k=16)
    return max(worst, abs(d1 - d0) / d0)


def double_checks(rng, trials: int = 100):
    sq = DoubledPolygon([[0, 0], [1, 0], [1, 1], [0, 1]])
    centre = double_distance(sq, SurfacePoint.on_side("+", (0.5, 0.5)), SurfacePoint.on_side("-", (0.5, 0.5)))
    same = 0.0
    for _ in range(trials):
        a, b = rng.random(2), rng.random(2)
        d = double_distance(sq, SurfacePoint.on_side("+", a), SurfacePoint.on_side("+", b))
        same = max(same, abs(d - float(np.linalg.norm(a - b))))
    errs = []
    for eps in (1e-2, 1e-3):
        slab = extrude_polygon(sq.polygon, eps, 8)
        p = SurfacePoint.on_side("+", (0.5, 0.5))
        q = SurfacePoint.on_side("-", (0.5, 0.5))
        errs.append(abs(surface_distance(slab, slab_point(slab, eps, p), slab_point(slab, eps, q)) - centre))
    return abs(centre - 1.0), same, errs[0] / errs[1]


def metric_axioms(rng, trials: int = 20):
    """Symmetry, triangle inequality, isometry invariance and k-convergence."""
    s = random_convex_mesh(rng, 16)
    R = random_lorentz(rng, 0.0).matrix[1:, 1:]
    s2 = s.transformed(R, rng.standard_normal(3))
    pts = [SurfacePoint.on_face(int(rng.integers(len(s.triangles))), rng.dirichlet([1, 1, 1]))
           for _ in range(3 * trials)]
    sym = tri = iso = 0.0
    for i in range(trials):
        p, q, r = pts[3 * i:3 * i + 3]
        pq, qp = surface_distance(s, p, q), surface_distance(s, q, p)
        qr, pr = surface_distance(s, q, r), surface_distance(s, p, r)
        sym = max(sym, abs(pq - qp))
        tri = max(tri, pr - pq - qr)
        iso = max(iso, abs(surface_distance(s2, p, q) - pq))
    mono = 0.0
    for p, q in zip(pts[:5], pts[5:10]):
        mono = max(mono, surface_distance(s, p, q, 32) - surface_distance(s, p, q, 16))
    # stabilization on the reference meshes (vertex to vertex and slab centres)
    conv = 0.0
    octa = convex_mesh_from_points(np.vstack([np.eye(3), -np.eye(3)]))
    slab = extrude_polygon([[0, 0], [1, 0], [1, 1], [0, 1]], 1e-2)
    for m in (unit_cube(), octa, slab):
        for i in range(len(m.vertices)):
            for j in range(i + 1, len(m.vertices)):
                a, b = m.vertex_point(i), m.vertex_point(j)
                d16, d32 = surface_distance(m, a, b, 16), surface_distance(m, a, b, 32)
                conv = max(conv, (d16 - d32) / d16)
    c = [slab_point(slab, 1e-2, SurfacePoint.on_side(t, (0.5, 0.5))) for t in "+-"]
    d16, d32 = surface_distance(slab, *c, k=16), surface_distance(slab, *c, k=32)
    conv = max(conv, (d16 - d32) / d16)
    return sym, tri, iso, max(mono, 0.0), conv


def suite_surface(seed: int) -> list[CheckResult]:
    out = []
    seq = cube_corners()
    d = dict(seq)
    r5 = math.sqrt(5.0)
    e8, e32 = d[8] / r5 - 1, d[32] / r5 - 1
    mono = all(b[1] <= a[1] + 1e-12 for a, b in zip(seq, seq[1:]))
    out.append(_result("surface.cube_corners", 0 <= e8 < 0.01 and 0 <= e32 < 0.002 and mono, max(e8, e32),
                       "path metric of a convex surface",
                       f"k=8 rel err {e8:.2e}, k=32 rel err {e32:.2e}, monotone under doubling {mono}"))
    sym, tri, iso, mono, conv = metric_axioms(check_rng(seed, "surface.metric_axioms"))
    out.append(_result("surface.metric_axioms", sym < 1e-12 and tri < 1e-9 and iso < 1e-10
                       and mono <= 1e-12 and conv < 1e-3,
                       max(sym, tri, iso, mono, conv), "path metric of a convex surface",
                       f"symmetry {sym:.1e}, triangle {tri:.1e}, isometry {iso:.1e}, "
                       f"increase under doubling {mono:.1e}, reference k 16->32 change {conv:.1e}"))
    w = circumference_bound(check_rng(seed, "surface.circumference"))
    out.append(_result("surface.circumference", w <= 1 + 1e-9, w, "l(circle of radius delta) <= 2 pi delta",
                       "every vertex of 20 random convex meshes"))
    p = puncture_check(check_rng(seed, "surface.puncture"))
    out.append(_result("surface.puncture", p < 1e-3, p, "distances unchanged by removing a null set",
                       "relative change from removing 1e-6 balls"))
    c, same, ratio = double_checks(check_rng(seed, "surface.double"))
    out.append(_result("surface.double", c < 1e-10 and same == 0.0 and 8.0 < ratio < 12.5, c,
                       "same-sheet paths in a double are straight",
                       f"centre-to-centre error {c:.1e}, same-sheet error {same:.1e}, slab error ratio {ratio:.3f}"))
    return out


SUITES = {
    "pogorelov": suite_pogorelov,
    "delaunay": suite_delaunay,
    "dome": suite_dome,
    "gauge": suite_gauge,
    "surface": suite_surface,
}


def run_suite(name: str, seed: int) -> list[CheckResult]:
    names = sorted(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        results.extend(SUITES[n](seed))
    return sorted(results, key=lambda r: r.name)

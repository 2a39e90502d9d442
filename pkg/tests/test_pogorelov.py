import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypconvex.errors import NotRadial, OutsideOmega, TranslationTooLarge
from hypconvex.isometry import EuclideanIsometry, boost, random_lorentz, spatial_rotation
from hypconvex.minkowski import apex, lift, random_points
from hypconvex.pogorelov import (PogorelovPair, chord_deviation, euc_to_hyp_isometry,
                                 fit_euclidean_isometry, hyp_to_euc_isometry, length_defect,
                                 map_curve_pair, min_ray_separation, omega_defect, omega_f, phi,
                                 polyline_length, psi, radial_image)

X1 = np.array([np.cosh(1.0), np.sinh(1.0), 0.0, 0.0])
TANH1 = 0.7615941559557649
TWO_TANH_HALF = 0.9242343145200195


def test_phi_examples():
    a, b = phi(apex(), apex())
    assert np.all(a == 0) and np.all(b == 0)
    a, b = phi(X1, X1)
    assert a == pytest.approx([TANH1, 0, 0], abs=1e-15) and b == pytest.approx([TANH1, 0, 0], abs=1e-15)
    a, b = phi(X1, apex())
    assert a == pytest.approx([TWO_TANH_HALF, 0, 0], abs=1e-15)
    assert np.allclose(b, 0)


def test_psi_examples():
    x, y = psi(np.zeros(3), np.zeros(3))
    assert np.allclose(x, apex()) and np.allclose(y, apex())
    assert omega_f(np.zeros(3), np.zeros(3)) == 16
    with pytest.raises(OutsideOmega):
        psi(np.array([1.2, 0, 0]), np.array([0.9, 0, 0]))


def test_inverse_pair():
    rng = np.random.default_rng(0)
    x, y = random_points(rng, 10_000, 3, 5.0), random_points(rng, 10_000, 3, 5.0)
    x2, y2 = psi(*phi(x, y))
    assert max(np.max(np.abs(x2 - x)), np.max(np.abs(y2 - y))) < 1e-9
    p = PogorelovPair.from_hyperbolic(x[0], y[0])
    assert p.residual() < 1e-9


def test_length_defect():
    rng = np.random.default_rng(1)
    x, u = random_points(rng, 1, 3, 3.0)[0], random_points(rng, 1, 3, 3.0)[0]
    assert np.allclose(length_defect(x, x, u, u), 0)
    A = random_lorentz(rng, 2.0)
    d = length_defect(x, A.apply(x), u, A.apply(u))
    assert abs(d[0]) < 1e-9 and abs(d[1]) < 1e-9


def test_geodesic_pair_maps_to_segments():
    rng = np.random.default_rng(2)
    s = np.linspace(0, 2.0, 41)[:, None]
    A = random_lorentz(rng, 1.0)
    B = random_lorentz(rng, 1.0)
    alpha = A.apply(np.cosh(s) * apex() + np.sinh(s) * np.array([0, 1.0, 0, 0]))
    beta = B.apply(np.cosh(s) * apex() + np.sinh(s) * np.array([0, 0, 1.0, 0]))
    g, d = map_curve_pair(alpha, beta)
    assert chord_deviation(g) < 1e-8 and chord_deviation(d) < 1e-8
    assert abs(polyline_length(g) - polyline_length(d)) < 1e-8
    g, d = map_curve_pair(np.repeat(X1[None], 5, 0), np.repeat(apex()[None], 5, 0))
    assert np.ptp(g, axis=0).max() == 0 and np.ptp(d, axis=0).max() == 0


def test_circles_of_equal_circumference():
    # circles of radius 1 about e and about a boosted centre, same angular speed
    t = np.linspace(0, 2 * np.pi, 9)
    h = 1e-4

    def circ(tt):
        return lift(np.sinh(1.0) * np.stack([np.cos(tt), np.sin(tt), np.zeros_like(tt)], -1))

    A = boost(1.3, [0, 0, 1])
    speeds = []
    for tt in t:
        g1, d1 = phi(circ(np.array([tt + h])), A.apply(circ(np.array([tt + h]))))
        g0, d0 = phi(circ(np.array([tt - h])), A.apply(circ(np.array([tt - h]))))
        speeds.append(np.linalg.norm(g1 - g0) / np.linalg.norm(d1 - d0))
    assert np.max(np.abs(np.array(speeds) - 1)) < 1e-5


def test_hyp_to_euc_examples():
    B = hyp_to_euc_isometry(random_lorentz(0, 0.0) @ random_lorentz(0, 0.0).inverse())
    assert np.allclose(B.rotation, np.eye(3)) and np.allclose(B.translation, 0)
    R = random_lorentz(4, 0.0)
    B = hyp_to_euc_isometry(R)
    assert np.allclose(B.rotation, R.matrix[1:, 1:], atol=1e-14) and np.allclose(B.translation, 0, atol=1e-14)
    A = boost(1.0)
    B = hyp_to_euc_isometry(A)
    assert np.abs(B.translation).max() == pytest.approx(TWO_TANH_HALF, abs=1e-14)
    x = random_points(np.random.default_rng(5), 100, 3, 3.0)
    y, by = phi(x, A.apply(x))
    assert np.max(np.abs(B.apply(y) - by)) < 1e-9


def test_euc_to_hyp_examples():
    assert np.allclose(euc_to_hyp_isometry(EuclideanIsometry(np.eye(3), np.zeros(3))).matrix, np.eye(4))
    m = euc_to_hyp_isometry(EuclideanIsometry(np.eye(3), [1.0, 0, 0])).matrix
    want = np.eye(4)
    want[:2, :2] = [[5 / 3, 4 / 3], [4 / 3, 5 / 3]]
    assert np.max(np.abs(m - want)) < 1e-12
    assert (5 / 3) ** 2 - (4 / 3) ** 2 == pytest.approx(1.0)
    # inverse consistency with the boost whose translation is 1
    t = 2 * np.arctanh(0.5)
    assert np.max(np.abs(boost(t).matrix - want)) < 1e-12
    with pytest.raises(TranslationTooLarge):
        euc_to_hyp_isometry(EuclideanIsometry(np.eye(3), [2.5, 0, 0]))


def test_two_routes_to_b_agree():
    rng = np.random.default_rng(6)
    for _ in range(50):
        A = random_lorentz(rng, 3.0)
        x = random_points(rng, 4, 3, 2.0)
        F = fit_euclidean_isometry(*phi(x, A.apply(x)))
        B = hyp_to_euc_isometry(A)
        assert np.max(np.abs(F.rotation - B.rotation)) < 1e-8
        assert np.max(np.abs(F.translation - B.translation)) < 1e-8


def test_radial_image():
    x = random_points(np.random.default_rng(7), 1, 3, 2.0)
    out = radial_image(x, x)
    d = x[0, 1:] / np.linalg.norm(x[0, 1:])
    assert np.allclose(out[0] / np.linalg.norm(out[0]), d)
    rng = np.random.default_rng(8)
    s = random_points(rng, 100, 3, 4.0)
    out = radial_image(s, random_points(rng, 100, 3, 4.0))
    assert min_ray_separation(out) > 0
    with pytest.raises(NotRadial):
        radial_image(np.vstack([X1, boost(2.0).apply(apex())]), np.vstack([X1, X1]))


def test_omega_strict():
    rng = np.random.default_rng(9)
    a, b = phi(random_points(rng, 100_000, 3, 5.0), random_points(rng, 100_000, 3, 5.0))
    assert np.all(np.linalg.norm(a, axis=1) + np.linalg.norm(b, axis=1) < 2)
    assert np.all(omega_defect(a, b) > 0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=12, max_size=12))
def test_monotonicity(c):
    x, y, u, v = (lift(np.array(c[3 * i:3 * i + 3])) for i in range(4))
    from hypconvex.minkowski import hyp_distance
    dh = hyp_distance(x, u) - hyp_distance(y, v)
    xh, yh = phi(x, y)
    uh, vh = phi(u, v)
    de = np.linalg.norm(xh - uh) - np.linalg.norm(yh - vh)
    if abs(dh) > 1e-8:
        assert np.sign(de) == np.sign(dh)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_inverse_direction_consistency(seed):
    rng = np.random.default_rng(seed)
    A = random_lorentz(rng, 3.0)
    B = hyp_to_euc_isometry(A)
    x = random_points(rng, 10, 3, 3.0)
    z, bz = phi(x, A.inverse().apply(x))
    assert np.max(np.abs(B.inverse().apply(z) - bz)) < 1e-9

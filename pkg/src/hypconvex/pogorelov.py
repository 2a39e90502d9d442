"""The Pogorelov map between pairs of hyperbolic and pairs of Euclidean points.

For x, y on the hyperboloid,

    Phi(x, y) = (2 P(x), 2 P(y)) / (x0 + y0)

where P drops the timelike coordinate.  Its image is the open domain
Omega = {(a, b) : |a| + |b| < 2}, and :func:`psi` is its inverse there.
Lorentz isometries A of H^n correspond to Euclidean isometries B of R^n
through Phi(x, A x) = (y, B y).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import (GeometryError, MismatchedSampling, NotRadial, OutsideOmega,
                     TranslationTooLarge)
from .isometry import EuclideanIsometry, LorentzIsometry
from .minkowski import apex, lift, mink_product, spatial


def phi(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = (x[..., :1] + y[..., :1])  # -<x + y, e>
    return 2.0 * x[..., 1:] / s, 2.0 * y[..., 1:] / s


def omega_defect(a, b) -> np.ndarray:
    """2 - |a| - |b|; positive exactly on Omega."""
    return 2.0 - np.linalg.norm(a, axis=-1) - np.linalg.norm(b, axis=-1)


def omega_f(a, b) -> np.ndarray:
    """f(a, b) = (|a|^2 - |b|^2)^2 - 8(|a|^2 + |b|^2) + 16, in factored form."""
    ra = np.linalg.norm(a, axis=-1)
    rb = np.linalg.norm(b, axis=-1)
    return (2 + ra + rb) * (2 - ra + rb) * (2 + ra - rb) * (2 - ra - rb)


def psi(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`phi` on Omega.

    Raises OutsideOmega when |a| + |b| >= 2 for any input row; the map
    degenerates on the boundary, so no limit is attempted there.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(omega_defect(a, b) <= 0):
        raise OutsideOmega("|a| + |b| must be < 2")
    root = np.sqrt(omega_f(a, b))[..., None]
    return lift(4.0 * a / root), lift(4.0 * b / root)


@dataclass(frozen=True, eq=False)
class PogorelovPair:
    """Matched hyperbolic and Euclidean point pairs."""

    hyp: tuple[np.ndarray, np.ndarray]
    euc: tuple[np.ndarray, np.ndarray]

    @classmethod
    def from_hyperbolic(cls, x, y) -> "PogorelovPair":
        return cls((np.asarray(x, float), np.asarray(y, float)), phi(x, y))

    @classmethod
    def from_euclidean(cls, a, b) -> "PogorelovPair":
        return cls(psi(a, b), (np.asarray(a, float), np.asarray(b, float)))

    def residual(self) -> float:
        """max deviation of the stored pair from Phi/Psi consistency."""
        a, b = phi(*self.hyp)
        x, y = psi(*self.euc)
        return float(max(np.max(np.abs(a - self.euc[0])), np.max(np.abs(b - self.euc[1])),
                         np.max(np.abs(x - self.hyp[0])), np.max(np.abs(y - self.hyp[1]))))


def length_defect(x, y, u, v) -> tuple[np.ndarray, np.ndarray]:
    """Two evaluations of |x^ - u^|^2 - |y^ - v^|^2.

    The first is computed from the images (x^, y^) = Phi(x, y) and
    (u^, v^) = Phi(u, v) directly; the second is the closed form
    -8 (<x,u> - <y,v>) / (<x + y, e> <u + v, e>).  Both vanish exactly
    when <x, u> = <y, v>.
    """
    xh, yh = phi(x, y)
    uh, vh = phi(u, v)
    direct = np.sum((xh - uh) ** 2, axis=-1) - np.sum((yh - vh) ** 2, axis=-1)
    x, y, u, v = (np.asarray(t, dtype=float) for t in (x, y, u, v))
    sxy = -(x[..., 0] + y[..., 0])
    suv = -(u[..., 0] + v[..., 0])
    closed = -8.0 * (mink_product(x, u) - mink_product(y, v)) / (sxy * suv)
    return direct, closed


def length_defect_scale(x, y, u, v) -> np.ndarray:
    """Magnitude used to turn :func:`length_defect` differences into relative ones."""
    xh, yh = phi(x, y)
    uh, vh = phi(u, v)
    return np.maximum(np.sum((xh - uh) ** 2, axis=-1), np.sum((yh - vh) ** 2, axis=-1))


def map_curve_pair(alpha, beta) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise image (P1(alpha_i, beta_i), P2(alpha_i, beta_i)) of two sampled curves."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if alpha.shape != beta.shape or alpha.ndim != 2:
        raise MismatchedSampling(f"curves sampled differently: {alpha.shape} vs {beta.shape}")
    return phi(alpha, beta)


def chord_deviation(polyline) -> float:
    """Largest distance of a polyline's points from the chord joining its ends."""
    p = np.asarray(polyline, dtype=float)
    d = p[-1] - p[0]
    L = np.linalg.norm(d)
    rel = p - p[0]
    if L == 0:
        return float(np.max(np.linalg.norm(rel, axis=-1)))
    d = d / L
    perp = rel - np.outer(rel @ d, d)
    return float(np.max(np.linalg.norm(perp, axis=-1)))


def polyline_length(polyline) -> float:
    p = np.asarray(polyline, dtype=float)
    return float(np.sum(np.linalg.norm(np.diff(p, axis=0), axis=-1)))


def image_speeds(alpha_fn, beta_fn, t, h: float = 1e-4) -> tuple[np.ndarray, np.ndarray]:
    """Central finite-difference speeds of the two image curves at times ``t``.

    ``alpha_fn`` and ``beta_fn`` map an array of times to hyperboloid points.
    """
    t = np.asarray(t, dtype=float)
    g1, d1 = phi(alpha_fn(t + h), beta_fn(t + h))
    g0, d0 = phi(alpha_fn(t - h), beta_fn(t - h))
    return (np.linalg.norm(g1 - g0, axis=-1) / (2 * h),
            np.linalg.norm(d1 - d0, axis=-1) / (2 * h))


def hyp_to_euc_isometry(A: LorentzIsometry) -> EuclideanIsometry:
    """The unique B with Phi(x, A x) = (y, B y) for every x.

    With w = A e + e, the linear part is the Lorentz map
    T x = A x - (<A x + x, e> / <w, e>) w restricted to {0} x R^n, and the
    translation is -2 (A e + <A e, e> e) / <w, e>.
    """
    a = A.matrix
    n = A.n
    e = apex(n)
    w = a @ e + e
    c = mink_product(w, e)
    # <A x + x, e> = -((A + I) x)_0
    t_full = a + np.outer(w, (a + np.eye(n + 1))[0]) / c
    alpha = -2.0 * spatial(a @ e) / c
    return EuclideanIsometry(t_full[1:, 1:], alpha)


def euc_to_hyp_isometry(B: EuclideanIsometry) -> LorentzIsometry:
    """The unique A with Psi(y, T y + alpha) = (x, A x); needs |alpha| < 2."""
    t = B.rotation
    al = B.translation
    a2 = float(al @ al)
    if a2 >= 4.0:
        raise TranslationTooLarge("translation must have norm < 2")
    n = B.n
    m = np.empty((n + 1, n + 1))
    m[0, 0] = 4.0 + a2
    m[0, 1:] = 4.0 * al @ t
    m[1:, 0] = 4.0 * al
    m[1:, 1:] = 2.0 * np.outer(al, al) @ t + (4.0 - a2) * t
    return LorentzIsometry(m / (4.0 - a2))


def fit_euclidean_isometry(src, dst) -> EuclideanIsometry:
    """Least-squares affine fit dst ~ T src + alpha, then projected to O(n).

    Needs at least n + 1 affinely independent source points.
    """
    src = np.asarray(src, dtype=float)
    dst = np.asarray(dst, dtype=float)
    design = np.hstack([src, np.ones((len(src), 1))])
    sol, *_ = np.linalg.lstsq(design, dst, rcond=None)
    t = sol[:-1].T
    u, _, vt = np.linalg.svd(t)
    return EuclideanIsometry(u @ vt, sol[-1])


def radial_image(sigma, partner) -> np.ndarray:
    """{P1(x, f(x)) : x in sigma} for a finite set radial with respect to e.

    ``partner`` is either an array of the paired points f(x) or a callable
    applied to ``sigma``.  Each output lies on the ray through P(x), so
    the output is radial with respect to the origin.
    """
    sigma = np.atleast_2d(np.asarray(sigma, dtype=float))
    fx = partner(sigma) if callable(partner) else np.asarray(partner, dtype=float)
    fx = np.atleast_2d(fx)
    if fx.shape != sigma.shape:
        raise MismatchedSampling("partner points do not match sigma")
    p = spatial(sigma)
    norms = np.linalg.norm(p, axis=1)
    if np.any(norms < config.TOL.zero_direction):
        raise GeometryError("sigma contains the apex e")
    dirs = p / norms[:, None]
    _check_distinct_rays(dirs)
    return phi(sigma, fx)[0]


def _check_distinct_rays(dirs: np.ndarray) -> None:
    tol = config.TOL.radial_angle
    # chord length between unit vectors ~ angle for small angles
    for i in range(len(dirs) - 1):
        gap = np.linalg.norm(dirs[i + 1:] - dirs[i], axis=1)
        if np.any(gap <= tol):
            j = i + 1 + int(np.argmin(gap))
            raise NotRadial(f"points {i} and {j} lie on the same ray from e")


def min_ray_separation(points) -> float:
    """Smallest angle between the rays from the origin through ``points``."""
    p = np.asarray(points, dtype=float)
    d = p / np.linalg.norm(p, axis=1, keepdims=True)
    g = np.clip(d @ d.T, -1.0, 1.0)
    np.fill_diagonal(g, -1.0)
    return float(np.arccos(np.max(g)))

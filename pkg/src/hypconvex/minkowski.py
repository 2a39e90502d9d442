"""Minkowski space R^{1,n} and the hyperboloid model of hyperbolic space.

Vectors are numpy arrays whose last axis holds ``(x0, x1, ..., xn)`` with
``x0`` the timelike coordinate.  All functions broadcast over leading axes,
so a batch of points is simply an array of shape ``(m, n + 1)``.
"""
from __future__ import annotations

import numpy as np

from . import config
from .errors import GeometryError, NotInBall, ZeroDirection


def apex(n: int = 3) -> np.ndarray:
    """The point e = (1, 0, ..., 0) of H^n."""
    e = np.zeros(n + 1)
    e[0] = 1.0
    return e


def mink_product(x, y) -> np.ndarray:
    """-x0*y0 + x1*y1 + ... + xn*yn, broadcast over leading axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return -x[..., 0] * y[..., 0] + np.sum(x[..., 1:] * y[..., 1:], axis=-1)


def spatial(x) -> np.ndarray:
    """Drop the timelike coordinate."""
    return np.asarray(x, dtype=float)[..., 1:]


def lift(p) -> np.ndarray:
    """The hyperboloid point whose spatial part is ``p``."""
    p = np.asarray(p, dtype=float)
    x0 = np.sqrt(1.0 + np.sum(p * p, axis=-1))
    return np.concatenate([x0[..., None], p], axis=-1)


def normalize(x) -> np.ndarray:
    """Rescale a future timelike vector onto the upper sheet.

    Raises GeometryError for vectors that are not future timelike.
    """
    x = np.asarray(x, dtype=float)
    q = -mink_product(x, x)
    if np.any(~np.isfinite(x)):
        raise GeometryError("non-finite coordinates")
    if np.any(q <= 0) or np.any(x[..., 0] <= 0):
        raise GeometryError("vector is not future timelike")
    return x / np.sqrt(q)[..., None]


def check_hyperboloid(x, tol: float | None = None) -> np.ndarray:
    """Validate points of H^n; returns them as a float array."""
    tol = config.TOL.hyperboloid if tol is None else tol
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)):
        raise GeometryError("non-finite coordinates")
    scale = np.maximum(1.0, x[..., 0] ** 2)
    if np.any(np.abs(mink_product(x, x) + 1.0) > tol * scale):
        raise GeometryError("point is off the hyperboloid")
    if np.any(x[..., 0] <= 0):
        raise GeometryError("point is on the lower sheet")
    return x


def hyp_distance(x, u) -> np.ndarray:
    """Hyperbolic distance acosh(-<x, u>), clamped at zero."""
    return np.arccosh(np.maximum(-mink_product(x, u), 1.0))


def geodesic_from_apex(x, t) -> np.ndarray:
    """Point of the geodesic ray from e through x at parameter t >= 0.

    Returns ((1-t) e + t x) / sqrt(-<(1-t) e + t x, (1-t) e + t x>); t = 0
    gives e and t = 1 gives x.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(np.linalg.norm(spatial(x), axis=-1) < config.TOL.zero_direction):
        raise ZeroDirection("x coincides with the apex e")
    e = apex(x.shape[-1] - 1)
    v = (1.0 - t)[..., None] * e + t[..., None] * x
    return normalize(v)


def apex_parameter(x, distance) -> np.ndarray:
    """Parameter t at which :func:`geodesic_from_apex` is ``distance`` from e."""
    x = np.asarray(x, dtype=float)
    d = hyp_distance(apex(x.shape[-1] - 1), x)
    k = np.tanh(distance)
    return k / (np.sinh(d) - k * (np.cosh(d) - 1.0))


def to_poincare(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return spatial(x) / (1.0 + x[..., :1])


def to_klein(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return spatial(x) / x[..., :1]


def _ball_norm2(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    r2 = np.sum(b * b, axis=-1)
    if np.any(r2 >= 1.0):
        raise NotInBall("coordinates are not inside the open unit ball")
    return r2


def from_poincare(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    r2 = _ball_norm2(b)
    x0 = (1.0 + r2) / (1.0 - r2)
    return np.concatenate([x0[..., None], 2.0 * b / (1.0 - r2)[..., None]], axis=-1)


def from_klein(k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    r2 = _ball_norm2(k)
    s = 1.0 / np.sqrt(1.0 - r2)
    return np.concatenate([s[..., None], k * s[..., None]], axis=-1)


def poincare_distance(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    num = 2.0 * np.sum((a - b) ** 2, axis=-1)
    den = (1.0 - np.sum(a * a, axis=-1)) * (1.0 - np.sum(b * b, axis=-1))
    return np.arccosh(1.0 + num / den)


def klein_distance(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    num = 1.0 - np.sum(a * b, axis=-1)
    den = np.sqrt((1.0 - np.sum(a * a, axis=-1)) * (1.0 - np.sum(b * b, axis=-1)))
    return np.arccosh(np.maximum(num / den, 1.0))


def random_points(rng: np.random.Generator, count: int, n: int = 3,
                  max_distance: float = 5.0) -> np.ndarray:
    """Points of H^n at hyperbolic distance at most ``max_distance`` from e.

    Directions are uniform on the sphere, distances uniform on the interval.
    """
    d = rng.uniform(0.0, max_distance, size=count)
    u = rng.standard_normal((count, n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return np.concatenate([np.cosh(d)[:, None], np.sinh(d)[:, None] * u], axis=1)

"""Lorentz transformations of R^{1,n} and Euclidean isometries of R^n."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import special_ortho_group

from . import config
from .errors import NotLorentz, NotOrthogonal, NullVector
from .minkowski import mink_product


def minkowski_metric(n: int) -> np.ndarray:
    return np.diag([-1.0] + [1.0] * n)


@dataclass(frozen=True, eq=False)
class LorentzIsometry:
    """A matrix A with A J A^T = J.

    ``require_sheet`` (default) additionally demands (A e)_0 > 0 so that A
    maps the upper sheet to itself.  Reflections such as F_e are built with
    it switched off and are meant to be composed before use.
    """

    matrix: np.ndarray
    require_sheet: bool = True

    def __post_init__(self):
        a = np.array(self.matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
            raise NotLorentz(f"expected a square matrix, got shape {a.shape}")
        j = minkowski_metric(a.shape[0] - 1)
        if np.max(np.abs(a @ j @ a.T - j)) > config.TOL.lorentz * max(1.0, np.max(np.abs(a)) ** 2):
            raise NotLorentz("matrix does not preserve the Minkowski product")
        if self.require_sheet and a[0, 0] <= 0:
            raise NotLorentz("matrix exchanges the two sheets of the hyperboloid")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] - 1

    @property
    def preserves_sheet(self) -> bool:
        return bool(self.matrix[0, 0] > 0)

    @classmethod
    def identity(cls, n: int = 3) -> "LorentzIsometry":
        return cls(np.eye(n + 1))

    def apply(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.matrix.T

    def compose(self, other: "LorentzIsometry") -> "LorentzIsometry":
        """self after other."""
        return LorentzIsometry(self.matrix @ other.matrix,
                               require_sheet=self.require_sheet and other.require_sheet)

    def inverse(self) -> "LorentzIsometry":
        j = minkowski_metric(self.n)
        return LorentzIsometry(j @ self.matrix.T @ j, require_sheet=self.require_sheet)

    def __matmul__(self, other):
        if isinstance(other, LorentzIsometry):
            return self.compose(other)
        return self.apply(other)


@dataclass(frozen=True, eq=False)
class EuclideanIsometry:
    """v -> T v + alpha with T orthogonal (reflections allowed)."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        t = np.array(self.rotation, dtype=float)
        a = np.array(self.translation, dtype=float).reshape(-1)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] != a.shape[0]:
            raise NotOrthogonal("rotation must be n x n with an n-vector translation")
        if np.max(np.abs(t.T @ t - np.eye(t.shape[0]))) > config.TOL.orthogonal:
            raise NotOrthogonal("rotation part is not orthogonal")
        t.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "rotation", t)
        object.__setattr__(self, "translation", a)

    @property
    def n(self) -> int:
        return self.rotation.shape[0]

    @classmethod
    def identity(cls, n: int = 3) -> "EuclideanIsometry":
        return cls(np.eye(n), np.zeros(n))

    def apply(self, v) -> np.ndarray:
        return np.asarray(v, dtype=float) @ self.rotation.T + self.translation

    def compose(self, other: "EuclideanIsometry") -> "EuclideanIsometry":
        """self after other."""
        return EuclideanIsometry(self.rotation @ other.rotation,
                                 self.rotation @ other.translation + self.translation)

    def inverse(self) -> "EuclideanIsometry":
        return EuclideanIsometry(self.rotation.T, -self.rotation.T @ self.translation)

    def __matmul__(self, other):
        if isinstance(other, EuclideanIsometry):
            return self.compose(other)
        return self.apply(other)


def boost(rapidity: float, direction=None, n: int = 3) -> LorentzIsometry:
    """Pure boost moving e towards ``direction`` (default: first axis)."""
    if direction is None:
        u = np.zeros(n)
        u[0] = 1.0
    else:
        u = np.asarray(direction, dtype=float)
        n = u.shape[0]
        u = u / np.linalg.norm(u)
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    m = np.eye(n + 1)
    m[0, 0] = c
    m[0, 1:] = s * u
    m[1:, 0] = s * u
    m[1:, 1:] += (c - 1.0) * np.outer(u, u)
    return LorentzIsometry(m)


def spatial_rotation(r) -> LorentzIsometry:
    r = np.asarray(r, dtype=float)
    m = np.eye(r.shape[0] + 1)
    m[1:, 1:] = r
    return LorentzIsometry(m)


def lorentz_reflection(u) -> LorentzIsometry:
    """The reflection F_u(x) = x - 2 <x,u>/<u,u> u.

    F_u swaps the sheets when u is timelike, so the result is returned with
    the sheet check disabled.
    """
    u = np.asarray(u, dtype=float)
    uu = float(mink_product(u, u))
    if abs(uu) <= config.TOL.null_vector:
        raise NullVector("<u,u> vanishes")
    j = minkowski_metric(u.shape[0] - 1)
    m = np.eye(u.shape[0]) - 2.0 * np.outer(u, j @ u) / uu
    return LorentzIsometry(m, require_sheet=False)


def random_lorentz(seed, magnitude: float, n: int = 3) -> LorentzIsometry:
    """Deterministic R1 * boost * R2 with boost rapidity uniform in [0, magnitude].

    ``seed`` may be an int or a numpy Generator.
    """
    if magnitude < 0:
        raise ValueError("magnitude must be non-negative")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    r1 = _random_rotation(rng, n)
    r2 = _random_rotation(rng, n)
    t = rng.uniform(0.0, magnitude) if magnitude > 0 else 0.0
    a = spatial_rotation(r1).matrix @ boost(t, n=n).matrix @ spatial_rotation(r2).matrix
    return LorentzIsometry(a)


def random_euclidean(seed, max_translation: float, n: int = 3) -> EuclideanIsometry:
    """Random rotation and a translation of norm uniform in [0, max_translation)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    r = _random_rotation(rng, n)
    d = rng.standard_normal(n)
    d /= np.linalg.norm(d)
    return EuclideanIsometry(r, rng.uniform(0.0, max_translation) * d)


def _random_rotation(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 1:
        return np.eye(1)
    return special_ortho_group.rvs(n, random_state=rng)

"""Exact planar orientation and in-circle predicates.

Float inputs go through a static error filter and fall back to rational
arithmetic (every double is a dyadic rational, so the fallback is exact).
Inputs that are already exact numbers (int, Fraction, :class:`QSqrt3`)
are evaluated directly.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

_EPS = 2.0 ** -53
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_BOUND = (10.0 + 96.0 * _EPS) * _EPS


class QSqrt3:
    """Exact numbers a + b*sqrt(3) with rational a, b.

    Just enough arithmetic for the predicates: the equilateral lattice has
    no rational coordinates but lives in Q(sqrt 3).
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt3(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = o.a * o.a - 3 * o.b * o.b
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        conj = QSqrt3(o.a / den, -o.b / den)
        return self * conj

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        d = self.a * self.a - 3 * self.b * self.b
        return sa if d > 0 else (-sa if d < 0 else 0)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            return float(self) - float(other)
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * 3.0 ** 0.5

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"


def is_exact(v) -> bool:
    return isinstance(v, (Rational, QSqrt3)) and not isinstance(v, bool)


def to_exact(v):
    """Exact value of a number; floats convert without rounding."""
    if is_exact(v):
        return v
    return Fraction(float(v))


def _sign(v) -> int:
    if isinstance(v, QSqrt3):
        return v.sign()
    return (v > 0) - (v < 0)


def orient2d_exact(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def incircle_exact(a, b, c, d):
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (alift * (bdx * cdy - cdx * bdy)
            + blift * (cdx * ady - adx * cdy)
            + clift * (adx * bdy - bdx * ady))


def _all_float(*pts) -> bool:
    return all(isinstance(v, float) for p in pts for v in p)


def orient2d(a, b, c) -> int:
    """+1 if a, b, c turn counterclockwise, -1 if clockwise, 0 if collinear."""
    if _all_float(a, b, c):
        left = (b[0] - a[0]) * (c[1] - a[1])
        right = (b[1] - a[1]) * (c[0] - a[0])
        det = left - right
        if abs(det) > _CCW_BOUND * (abs(left) + abs(right)):
            return 1 if det > 0 else -1
        a, b, c = ([Fraction(v) for v in p] for p in (a, b, c))
    else:
        a, b, c = ([to_exact(v) for v in p] for p in (a, b, c))
    return _sign(orient2d_exact(a, b, c))


def incircle(a, b, c, d) -> int:
    """+1 if d is strictly inside the circle through a, b, c (a, b, c counterclockwise).

    -1 if outside, 0 if the four points are cocircular.  For clockwise
    a, b, c the sign is reversed, as for the usual determinant.
    """
    if _all_float(a, b, c, d):
        adx, ady = a[0] - d[0], a[1] - d[1]
        bdx, bdy = b[0] - d[0], b[1] - d[1]
        cdx, cdy = c[0] - d[0], c[1] - d[1]
        bc = bdx * cdy - cdx * bdy
        ca = cdx * ady - adx * cdy
        ab = adx * bdy - bdx * ady
        alift = adx * adx + ady * ady
        blift = bdx * bdx + bdy * bdy
        clift = cdx * cdx + cdy * cdy
        det = alift * bc + blift * ca + clift * ab
        perm = (alift * (abs(bdx * cdy) + abs(cdx * bdy))
                + blift * (abs(cdx * ady) + abs(adx * cdy))
                + clift * (abs(adx * bdy) + abs(bdx * ady)))
        if abs(det) > _ICC_BOUND * perm:
            return 1 if det > 0 else -1
        a, b, c, d = ([Fraction(v) for v in p] for p in (a, b, c, d))
    else:
        a, b, c, d = ([to_exact(v) for v in p] for p in (a, b, c, d))
    return _sign(incircle_exact(a, b, c, d))


def incircle_naive(a, b, c, d) -> int:
    """Plain floating-point in-circle sign with no error control."""
    a, b, c, d = ([float(v) for v in p] for p in (a, b, c, d))
    return _sign(incircle_exact(a, b, c, d))


def incircle_perturbed(points, i: int, j: int, k: int, m: int) -> int:
    """In-circle sign for indexed points with ties broken symbolically.

    The lifted height |p|^2 of point p_r is lowered by eps^(2^r).  When the
    exact test returns 0, the sign is decided by the lowest-index point
    whose cofactor (an orientation of the other three) is non-zero.  The
    effect is that cocircular groups are triangulated as a fan from their
    lowest-index vertex, so a cocircular quadrilateral keeps the diagonal
    through its smallest index.
    """
    idx = (i, j, k, m)
    s = incircle(points[i], points[j], points[k], points[m])
    if s != 0:
        return s
    for pos in sorted(range(4), key=lambda r: idx[r]):
        others = [points[idx[r]] for r in range(4) if r != pos]
        o = orient2d(*others)
        if o != 0:
            # d(det)/d(w_pos) = (-1)^pos * orient(others); w_pos is lowered
            return -o if pos % 2 == 0 else o
    return 0

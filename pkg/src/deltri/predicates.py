"""Exact geometric predicates on 24-bit integer points.

Orientation, incircle and the power of a point with respect to the circle
through three points.  Every answer is exact.  Incircle and power
comparisons first evaluate in floating point against a semi-static error
bound (constant factor times a magnitude computed at run time) and fall
back to Python's exact integers only when the sign is uncertain.

Power values are kept as exact ratios ``num / den`` where ``den`` is the
orientation determinant of the three circle points.  For points translated
so that ``p`` is the origin (``a = q0 - p`` and so on) ::

    D   = |a|^2 (b x c) - |b|^2 (a x c) + |c|^2 (a x b)
    den = a x b + b x c + c x a
    power(p, circle(q0, q1, q2)) = -D / den

which is the 4x4 incircle determinant over the 3x3 orientation determinant.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields
from enum import IntEnum
from typing import NamedTuple

COORD_BITS = 24
COORD_LIMIT = 1 << COORD_BITS

# |D| < 3 * 2^49 * 2^49 for translated 24-bit inputs, and |den| < 2^49.
NUM_BOUND = 1 << 100
DEN_BOUND = 1 << 50

_EPS = sys.float_info.epsilon / 2  # unit roundoff, 2^-53
# Translated coordinates, lifts and 2x2 minors are exact in binary64; only
# the three products and two sums of the final expansion round.
_INCIRCLE_BOUND = 4 * _EPS
# ``num / den`` on Python ints is correctly rounded; the difference of two
# such quotients rounds once more.  The factor leaves a margin of two.
_RATIO_BOUND = 4 * _EPS


class CoordinateRangeError(ValueError):
    pass


class DegenerateError(ValueError):
    """Raised when a predicate needs three non-collinear points."""


class Point(NamedTuple):
    x: int
    y: int


def make_point(x: int, y: int) -> Point:
    """Build a :class:`Point`, checking the 24-bit coordinate contract."""
    if not (isinstance(x, int) and isinstance(y, int)):
        raise TypeError(f"coordinates must be integers, got {x!r}, {y!r}")
    if not (0 <= x < COORD_LIMIT and 0 <= y < COORD_LIMIT):
        raise CoordinateRangeError(f"point ({x}, {y}) outside [0, 2^{COORD_BITS})")
    return Point(x, y)


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Position(IntEnum):
    OUTSIDE = -1
    ON = 0
    INSIDE = 1


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass
class Counters:
    """Per-session predicate tallies.

    One instance belongs to one triangulation; it is not locked, so give
    each thread its own instance and combine them with :meth:`merge`.
    """

    orientation_tests: int = 0
    incircle_tests: int = 0
    power_full: int = 0
    power_updates: int = 0
    power_comparisons: int = 0
    exact_fallbacks: int = 0

    def reset(self) -> None:
        for f in fields(self):
            setattr(self, f.name, 0)

    def snapshot(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def merge(self, other: Counters) -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def __sub__(self, other: Counters) -> Counters:
        return Counters(**{f.name: getattr(self, f.name) - getattr(other, f.name)
                           for f in fields(self)})


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# -- orientation ---------------------------------------------------------


def orient_sign(a, b, c) -> int:
    # 24-bit inputs keep every intermediate well inside machine range, so
    # plain integer arithmetic is already the fast path.
    return _sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def orientation(a, b, c, counters: Counters | None = None) -> Orientation:
    if counters is not None:
        counters.orientation_tests += 1
    return Orientation(orient_sign(a, b, c))


# -- incircle --------------------------------------------------------------


def incircle_sign(a, b, c, d, counters: Counters | None = None) -> int:
    """Sign of the raw incircle determinant; positive means ``d`` is inside
    when ``(a, b, c)`` is counterclockwise.  Does not touch incircle_tests."""
    dx, dy = d
    adx = float(a[0] - dx)
    ady = float(a[1] - dy)
    bdx = float(b[0] - dx)
    bdy = float(b[1] - dy)
    cdx = float(c[0] - dx)
    cdy = float(c[1] - dy)
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    bc = bdx * cdy - bdy * cdx
    ca = cdx * ady - cdy * adx
    ab = adx * bdy - ady * bdx
    t1 = alift * bc
    t2 = blift * ca
    t3 = clift * ab
    det = t1 + t2 + t3
    bound = _INCIRCLE_BOUND * (abs(t1) + abs(t2) + abs(t3))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    if counters is not None:
        counters.exact_fallbacks += 1
    return _sign(_incircle_exact(a, b, c, d))


def _incircle_exact(a, b, c, d) -> int:
    dx, dy = d
    adx, ady = a[0] - dx, a[1] - dy
    bdx, bdy = b[0] - dx, b[1] - dy
    cdx, cdy = c[0] - dx, c[1] - dy
    return ((adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
            + (bdx * bdx + bdy * bdy) * (cdx * ady - cdy * adx)
            + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx))


def incircle(a, b, c, d, counters: Counters | None = None) -> Position:
    """Position of ``d`` relative to the circle through ``a, b, c``.

    The answer does not depend on the orientation of ``(a, b, c)``.
    """
    o = orient_sign(a, b, c)
    if o == 0:
        raise DegenerateError(f"incircle of collinear points {a}, {b}, {c}")
    if counters is not None:
        counters.incircle_tests += 1
    return Position(incircle_sign(a, b, c, d, counters) * o)


# -- power -----------------------------------------------------------------


@dataclass(frozen=True)
class PowerValue:
    """Exact ``num / den`` with the cofactors needed to swap the third point.

    ``minors`` holds ``(cx, cy, cl, c1, ex, ey, e1)`` such that for any third
    point ``r`` on the circle ::

        -num = rx*cx + ry*cy + (rx^2 + ry^2)*cl + c1
         den = rx*ex + ry*ey + e1

    They depend only on ``q0``, ``q1`` and ``p``.
    """

    num: int
    den: int
    minors: tuple[int, int, int, int, int, int, int] | None = field(
        default=None, compare=False, repr=False)
    approx: float | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.den == 0:
            raise DegenerateError("power value with zero denominator")
        if self.approx is None:
            object.__setattr__(self, "approx", self.num / self.den)

    def __neg__(self) -> PowerValue:
        return PowerValue(-self.num, self.den, self.minors, -self.approx)

    def sign(self) -> int:
        return _sign(self.num) * _sign(self.den)


def power(q0, q1, q2, p, counters: Counters | None = None) -> PowerValue:
    """Power of ``p`` with respect to the circle through ``q0, q1, q2``.

    The determinant uses the translated expansion of the incircle test:
    6 subtractions for the translations, 3 lifts (6 products, 3 sums),
    3 cross products (6 products, 3 subtractions) and the final
    combination (3 products, 2 sums), i.e. 14 additions and 15
    multiplications.  The orientation comes from the same cross products.
    """
    px, py = p
    ax, ay = q0[0] - px, q0[1] - py
    bx, by = q1[0] - px, q1[1] - py
    cx, cy = q2[0] - px, q2[1] - py
    la = ax * ax + ay * ay
    lb = bx * bx + by * by
    lc = cx * cx + cy * cy
    ab = ax * by - ay * bx
    bc = bx * cy - by * cx
    ca = cx * ay - cy * ax
    d = la * bc + lb * ca + lc * ab
    den = ab + bc + ca
    if den == 0:
        raise DegenerateError(f"power with respect to collinear {q0}, {q1}, {q2}")
    if counters is not None:
        counters.power_full += 1
    assert abs(d) < NUM_BOUND and abs(den) < DEN_BOUND
    # D = rx*m1 + ry*m2 + lr*ab in translated coordinates; rewrite for the
    # untranslated third point r.
    m1 = ay * lb - la * by
    m2 = la * bx - ax * lb
    lp = px * px + py * py
    minors = (m1 - 2 * px * ab, m2 - 2 * py * ab, ab, lp * ab - px * m1 - py * m2,
              q0[1] - q1[1], q1[0] - q0[0], q0[0] * q1[1] - q0[1] * q1[0])
    return PowerValue(-d, den, minors, -d / den)


def power_update(cached: PowerValue, q2, counters: Counters | None = None) -> PowerValue:
    """Power for a new third point, reusing the cofactors of ``cached``.

    6 additions, 7 multiplications and the one division of the float
    approximation.
    """
    if cached.minors is None:
        raise ValueError("power value carries no cached minors")
    cx, cy, cl, c1, ex, ey, e1 = cached.minors
    rx, ry = q2
    lr = rx * rx + ry * ry
    d = rx * cx + ry * cy + lr * cl + c1
    den = rx * ex + ry * ey + e1
    if den == 0:
        raise DegenerateError(f"power update with collinear third point {q2}")
    if counters is not None:
        counters.power_updates += 1
    return PowerValue(-d, den, cached.minors, -d / den)


def compare_power(v1: PowerValue, v2: PowerValue, counters: Counters | None = None) -> Order:
    return Order(compare_power_sign(v1, v2, counters))


def compare_power_sign(v1: PowerValue, v2: PowerValue, counters: Counters | None = None) -> int:
    if counters is not None:
        counters.power_comparisons += 1
    r1 = v1.approx
    r2 = v2.approx
    diff = r1 - r2
    bound = _RATIO_BOUND * (abs(r1) + abs(r2))
    if diff > bound:
        return 1
    if diff < -bound:
        return -1
    if counters is not None:
        counters.exact_fallbacks += 1
    s = _sign(v1.num * v2.den - v2.num * v1.den)
    return s if (v1.den > 0) == (v2.den > 0) else -s

"""Oracles and instance generators.

The Delaunay oracle here shares no code with :mod:`deltri.triangulation`
beyond the point type: it gift-wraps the triangulation edge by edge with
numpy, choosing for each directed edge the left point that sees the edge
under the largest angle and then certifying the circle exactly.

Generators are pure functions of their arguments.  Random draws use
``numpy.random.default_rng(seed)`` (PCG64), so instances are reproducible
across platforms and numpy versions that keep that bit generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .predicates import (COORD_LIMIT, DegenerateError, Point, _incircle_exact,
                         make_point, orient_sign)
from .triangulation import Triangulation, canonical

_FILTER = 4 * 2.0 ** -53


class OracleError(ValueError):
    """Raised when an instance cannot be generated or fails verification."""


# -- exact vectorized incircle -------------------------------------------------


def _incircle_signs(a, b, c, pts: np.ndarray) -> np.ndarray:
    """Exact sign of ``incircle(a, b, c, q)`` for every row ``q`` of ``pts``.

    Positive means inside when ``(a, b, c)`` is counterclockwise.  The float
    evaluation mirrors :func:`deltri.predicates.incircle_sign`; entries the
    filter cannot certify are redone with Python integers.
    """
    qx = pts[:, 0].astype(np.float64)
    qy = pts[:, 1].astype(np.float64)
    adx, ady = a[0] - qx, a[1] - qy
    bdx, bdy = b[0] - qx, b[1] - qy
    cdx, cdy = c[0] - qx, c[1] - qy
    t1 = (adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
    t2 = (bdx * bdx + bdy * bdy) * (cdx * ady - cdy * adx)
    t3 = (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx)
    det = t1 + t2 + t3
    bound = _FILTER * (np.abs(t1) + np.abs(t2) + np.abs(t3))
    out = np.sign(det).astype(np.int64)
    unsure = np.flatnonzero(np.abs(det) <= bound)
    for i in unsure:
        q = (int(pts[i, 0]), int(pts[i, 1]))
        e = _incircle_exact(a, b, c, q)
        out[i] = (e > 0) - (e < 0)
    return out


def _as_array(points: Sequence[Point]) -> np.ndarray:
    return np.asarray([(int(x), int(y)) for x, y in points], dtype=np.int64).reshape(-1, 2)


# -- Delaunay oracle -------------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    triangles: frozenset
    # True when some certified circle has a fourth point exactly on it; the
    # triangle set is then one of several valid answers.
    cocircular: bool


def delaunay_oracle(points: Sequence[Point]) -> OracleResult:
    """Delaunay triangles of ``points`` as canonical CCW point triples."""
    pts = list(dict.fromkeys(Point(int(x), int(y)) for x, y in points))
    n = len(pts)
    if n < 3:
        raise DegenerateError("need at least three points")
    arr = _as_array(pts)
    xs, ys = arr[:, 0], arr[:, 1]

    # An edge to a nearest neighbour is always Delaunay: the disk on it as
    # diameter is empty.
    d2 = (xs - xs[0]) ** 2 + (ys - ys[0]) ** 2
    d2[0] = np.iinfo(np.int64).max
    start = (0, int(np.argmin(d2)))

    tris: set[tuple[int, int, int]] = set()
    done: set[tuple[int, int]] = set()
    todo = [start, start[::-1]]
    cocircular = False
    while todo:
        e = todo.pop()
        if e in done:
            continue
        a, b = e
        c, on = _apex(pts, arr, a, b)
        done.add(e)
        if c is None:
            continue
        cocircular |= on
        tri = canonical(a, b, c)
        if tri in tris:
            continue
        tris.add(tri)
        done.add((b, c))
        done.add((c, a))
        todo.append((c, b))
        todo.append((a, c))
    if not tris:
        raise DegenerateError("all points are collinear")
    return OracleResult(frozenset(canonical(pts[a], pts[b], pts[c]) for a, b, c in tris),
                        cocircular)


def _apex(pts, arr, a, b):
    """Left apex of the Delaunay triangle on directed edge ``a -> b``."""
    pa, pb = pts[a], pts[b]
    ex, ey = pb[0] - pa[0], pb[1] - pa[1]
    rx, ry = arr[:, 0] - pa[0], arr[:, 1] - pa[1]
    cross = ex * ry - ey * rx  # exact in int64 for 24-bit inputs
    left = np.flatnonzero(cross > 0)
    if left.size == 0:
        return None, False
    # cot of the angle a-c-b; the largest angle has the smallest cot.
    ux, uy = (pa[0] - arr[left, 0]).astype(float), (pa[1] - arr[left, 1]).astype(float)
    vx, vy = (pb[0] - arr[left, 0]).astype(float), (pb[1] - arr[left, 1]).astype(float)
    cot = (ux * vx + uy * vy) / cross[left].astype(float)
    c = int(left[np.argmin(cot)])
    sub = arr[left]
    while True:
        s = _incircle_signs(pa, pb, pts[c], sub)
        inside = np.flatnonzero(s > 0)
        if inside.size == 0:
            break
        c = int(left[inside[np.argmin(cot[inside])]])
    full = _incircle_signs(pa, pb, pts[c], arr)
    if (full > 0).any():
        raise AssertionError(f"oracle circle through {pa}, {pb}, {pts[c]} is not empty")
    on = int((full == 0).sum()) > 3
    return c, on


def brute_force_dt(points: Sequence[Point]) -> frozenset:
    """Delaunay triangle set of ``points`` (see :func:`delaunay_oracle`)."""
    return delaunay_oracle(points).triangles


def empty_circle_triangles(points: Sequence[Point]) -> frozenset:
    """Every CCW triple whose open circumdisk contains no other point.

    Literal O(n^4) definition, for cross-checking the oracle on small sets.
    """
    pts = list(dict.fromkeys(Point(int(x), int(y)) for x, y in points))
    n = len(pts)
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = pts[i], pts[j], pts[k]
                o = orient_sign(a, b, c)
                if o == 0:
                    continue
                if o < 0:
                    b, c = c, b
                if all(_incircle_exact(a, b, c, q) <= 0 for q in pts):
                    out.add(canonical(a, b, c))
    if not out:
        raise DegenerateError("all points are collinear")
    return frozenset(out)


def empty_circle_violations(tris: Iterable[tuple], points: Sequence[Point] | np.ndarray):
    """Triangles among ``tris`` whose open circumdisk holds one of ``points``.

    Returns ``(violating, cocircular)`` where ``cocircular`` reports whether
    some fourth point lies exactly on one of the circles.
    """
    arr = points if isinstance(points, np.ndarray) else _as_array(points)
    bad = []
    cocircular = False
    for tri in tris:
        s = _incircle_signs(*tri, arr)
        if (s > 0).any():
            bad.append(tri)
        if int((s == 0).sum()) > 3:
            cocircular = True
    return bad, cocircular


# -- instances -------------------------------------------------------------


class InstanceKind(Enum):
    RANDOM_SQUARE = "square"
    LOWER_BOUND = "lowerbound"
    HELLER = "heller"
    FILE = "file"


@dataclass(frozen=True)
class InstanceSpec:
    kind: InstanceKind
    n: int = 1000
    seed: int = 0
    alpha: float | Fraction | None = None
    path: str | None = None

    def __post_init__(self):
        if self.kind in (InstanceKind.RANDOM_SQUARE, InstanceKind.LOWER_BOUND) and self.n < 3:
            raise ValueError("n must be at least 3")
        if self.alpha is not None and not self.alpha > 1:
            raise ValueError("alpha must exceed 1")
        if self.kind is InstanceKind.FILE and not self.path:
            raise ValueError("file instances need a path")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must fit in 64 bits")


def generate(spec: InstanceSpec) -> list[Point]:
    """Points of an instance.  For lower-bound instances the center comes last."""
    if spec.kind is InstanceKind.RANDOM_SQUARE:
        return gen_random_square(spec.n, spec.seed)
    if spec.kind is InstanceKind.LOWER_BOUND:
        try:
            pts, center = gen_lower_bound(spec.n, spec.alpha, spec.seed)
        except OracleError:
            # too many points for distinct radii on the grid
            pts, center = gen_lower_bound(spec.n, spec.alpha, spec.seed, distinct=False)
        return pts + [center]
    if spec.kind is InstanceKind.HELLER:
        return gen_heller()[0]
    return read_points(spec.path)


def gen_random_square(n: int, seed: int) -> list[Point]:
    """``n`` distinct points uniform on the 24-bit grid; duplicates are re-drawn."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if n > COORD_LIMIT * COORD_LIMIT // 2:
        raise ValueError("too many points for the grid")
    rng = np.random.default_rng(seed)
    seen: dict[tuple[int, int], None] = {}
    while len(seen) < n:
        xy = rng.integers(0, COORD_LIMIT, size=(n - len(seen), 2))
        for x, y in xy.tolist():
            seen.setdefault((x, y))
    return [Point(x, y) for x, y in seen]


LOWER_BOUND_RADIUS = 1 << 22
LOWER_BOUND_CENTER = Point(1 << 23, 1 << 23)


def lower_bound_alpha(n: int) -> float:
    """Largest radial spread for which the center still sees every ``q_i``."""
    return 1.0 / math.cos(math.pi / n)


def gen_lower_bound(n: int, alpha=None, seed: int = 0, attempts: int = 20,
                    distinct: bool = True):
    """Star configuration around a center ``r`` with ``2n`` neighbours.

    ``p_i`` sits at distance 1 and angle ``2 pi i / n``, ``q_i`` at distance
    ``x_i`` halfway to ``p_{i+1}``, with distinct ``x_i`` drawn in
    ``(1, alpha)``.  Unit length is ``LOWER_BOUND_RADIUS`` grid steps.  After
    rounding, every ``q_i`` must still be strictly farther from ``r`` than
    its two neighbours ``p_i`` and ``p_{i+1}``, the distances ``|q_i r|``
    must be distinct, and an exact triangulation must link ``r`` to all
    ``2n`` points; otherwise the draw is repeated in a band shrunk toward
    the middle of ``(1, alpha)``.

    With ``distinct=False`` equal rounded distances are accepted.  The grid
    only has room for a few units of radial spread once ``n`` is in the
    hundreds, so large instances need this; they keep the star shape but no
    longer define a strict order on the ``x_i``.

    Returns ``(points, center)`` with points ordered
    ``p_0, q_0, p_1, q_1, ...``.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    limit = lower_bound_alpha(n)
    alpha = limit if alpha is None else float(alpha)
    if not alpha > 1:
        raise ValueError("alpha must exceed 1")
    alpha = min(alpha, limit)
    rng = np.random.default_rng(seed)
    cx, cy = LOWER_BOUND_CENTER
    R = LOWER_BOUND_RADIUS
    lo, hi = 0.0, 1.0
    for _ in range(attempts):
        # One draw per stratum keeps the x_i distinct and spread out.
        u = rng.permutation(lo + (hi - lo) * (np.arange(n) + rng.random(n)) / n)
        xs = 1.0 + (alpha - 1.0) * u
        pts = []
        for i in range(n):
            t = 2 * math.pi * i / n
            pts.append(make_point(cx + round(R * math.cos(t)), cy + round(R * math.sin(t))))
            s = t + math.pi / n
            pts.append(make_point(cx + round(R * xs[i] * math.cos(s)),
                                  cy + round(R * xs[i] * math.sin(s))))
        if _realizes(pts, LOWER_BOUND_CENTER, distinct) and _links_all(pts, LOWER_BOUND_CENTER):
            return pts, LOWER_BOUND_CENTER
        lo, hi = (3 * lo + hi) / 4, (lo + 3 * hi) / 4
    raise OracleError(f"no valid lower-bound instance for n={n}, alpha={alpha}")


def _realizes(pts: list[Point], center: Point, distinct: bool = True) -> bool:
    """Exact check that rounding kept ``1 < x_i`` (and the ``x_i`` distinct)."""
    if len(set(pts)) != len(pts):
        return False
    d2 = [(x - center[0]) ** 2 + (y - center[1]) ** 2 for x, y in pts]
    m = len(pts)
    qs = d2[1::2]
    if distinct and len(set(qs)) != len(qs):
        return False
    return all(d2[i] > d2[i - 1] and d2[i] > d2[(i + 1) % m] for i in range(1, m, 2))


def _links_all(pts: list[Point], center: Point) -> bool:
    everything = pts + [center]
    if len(everything) <= 130:
        tris = brute_force_dt(everything)
        nbrs = {q for t in tris if center in t for q in t}
        return nbrs == set(everything)
    t = Triangulation(everything)
    v = t.index[center]
    return not t.is_hull_vertex(v) and t.degree(v) == len(pts)


# The figure gives no coordinates; these were found by a seeded random search
# over small stars around the deleted point and are re-verified exactly below.
# Output of search_heller(seed=0, k=6, tries=20000, scale=1000).
_HELLER_POINTS = ((3618, 6114), (3502, 5114), (3144, 5254), (5043, 1637),
                  (5345, 2867), (6466, 2558), (4000, 4000))
_HELLER_DELETED = (4000, 4000)


def circumradius2(a, b, c) -> Fraction:
    """Exact squared circumradius."""
    ab = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
    bc = (b[0] - c[0]) ** 2 + (b[1] - c[1]) ** 2
    ca = (c[0] - a[0]) ** 2 + (c[1] - a[1]) ** 2
    cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if cr == 0:
        raise DegenerateError("collinear points have no circumcircle")
    return Fraction(ab * bc * ca, 4 * cr * cr)


def heller_witness(points: Sequence[Point], deleted: Point):
    """Check the radius-ear failure on a star around ``deleted``.

    Returns the smallest-circumradius ear ``(q_i, q_{i+1}, q_{i+2})`` if
    its circle strictly contains another hole vertex, else ``None``.
    """
    t = Triangulation(points)
    v = t.index[deleted]
    if t.is_hull_vertex(v):
        return None
    ring = [t.point(q) for q in t.neighbors(v)]
    k = len(ring)
    ears = [(ring[i], ring[(i + 1) % k], ring[(i + 2) % k]) for i in range(k)]
    ears = [e for e in ears if orient_sign(*e) > 0]
    radii = [circumradius2(*e) for e in ears]
    best = min(radii)
    if radii.count(best) != 1:
        return None
    ear = ears[radii.index(best)]
    others = [q for q in ring if q not in ear]
    if any(_incircle_exact(*ear, q) > 0 for q in others):
        return ear
    return None


def gen_heller():
    """Frozen radius-ear counterexample: ``(points, deleted, witness)``.

    Removing ``deleted`` leaves a hole whose ear of smallest circumradius is
    not Delaunay: its circle strictly contains another hole vertex.
    """
    pts = [Point(*p) for p in _HELLER_POINTS]
    deleted = Point(*_HELLER_DELETED)
    witness = heller_witness(pts, deleted)
    if witness is None:
        raise OracleError("stored radius-ear configuration failed verification")
    return pts, deleted, witness


def search_heller(seed: int = 0, k: int = 6, tries: int = 100000, scale: int = 1000):
    """Random search used once to find the frozen configuration."""
    rng = np.random.default_rng(seed)
    c = Point(scale * 4, scale * 4)
    for _ in range(tries):
        ang = np.sort(rng.random(k)) * 2 * math.pi
        rad = scale * (1 + 2 * rng.random(k))
        pts = list(dict.fromkeys(Point(c[0] + int(round(r * math.cos(a))),
                                       c[1] + int(round(r * math.sin(a))))
                                 for a, r in zip(ang, rad)))
        if len(pts) != k:
            continue
        try:
            w = heller_witness(pts + [c], c)
        except DegenerateError:
            continue
        if w is not None:
            return pts + [c], c, w
    return None


# -- point files -------------------------------------------------------------


def read_points(path) -> list[Point]:
    """Read ``x y`` lines; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected two integers")
        try:
            out.append(make_point(int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out


def write_points(path, points: Iterable[Point], comment: str | None = None) -> None:
    lines = [f"# {c}" for c in (comment.splitlines() if comment else [])]
    lines += [f"{x} {y}" for x, y in points]
    Path(path).write_text("\n".join(lines) + "\n")

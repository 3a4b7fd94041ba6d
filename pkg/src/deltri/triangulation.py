"""Triangle-based 2D Delaunay triangulation with a symbolic infinite vertex.

Each triangle stores three vertex handles in counterclockwise order and
three neighbor handles, neighbor ``i`` being across the edge opposite
vertex ``i``.  Vertex ``0`` is the infinite vertex: every hull edge ``u->w``
(finite region on its right) is closed by the triangle ``(u, w, INFINITE)``,
so every finite vertex has a full circular link.

Insertion locates the point with a visibility walk from the most recently
created triangle, then replaces the conflict region (triangles whose open
circumdisk contains the point) by a fan.  A point on a circumcircle is not
in conflict, so the structure keeps exactly the empty-open-disk property.

Until three non-collinear points have arrived the vertices are kept
aside and the structure has no triangles; a triangulation whose points
are all collinear is never produced by deletion either
(:class:`~deltri.predicates.DegenerateError`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .predicates import (COORD_LIMIT, Counters, DegenerateError, Point,
                         incircle_sign, make_point, orient_sign)

INFINITE = 0


class DuplicatePointError(ValueError):
    pass


class VertexError(ValueError):
    """Operation on the infinite vertex or on a deleted vertex."""


@dataclass
class HoleBoundary:
    """Boundary of a polygonal hole being filled.

    ``ring`` lists the boundary vertices counterclockwise around the removed
    vertex.  ``edges`` maps every directed boundary edge ``(a, b)`` (hole on
    its left) to ``(triangle, slot)``: the live triangle on the other side
    and the neighbor slot of that triangle that faces the hole.
    """

    center: int
    ring: list[int]
    edges: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.ring)

    @property
    def on_hull(self) -> bool:
        return INFINITE in self.ring

    def outer(self, i: int) -> tuple[int, int]:
        """Outer neighbor across ring edge ``q_i q_{i+1}``."""
        k = len(self.ring)
        return self.edges[(self.ring[i], self.ring[(i + 1) % k])]


class Triangulation:
    def __init__(self, points=(), counters: Counters | None = None):
        self.counters = counters if counters is not None else Counters()
        self.points: list[Point | None] = [None]
        self.alive: list[bool] = [False]
        self.vtri: list[int] = [-1]
        self.tv: list[list[int] | None] = []
        self.tn: list[list[int] | None] = []
        self.free: list[int] = []
        self.last = -1
        self.index: dict[tuple[int, int], int] = {}
        self.n_finite_tri = 0
        self._pending: list[int] = []
        for p in points:
            self.insert(p)

    # -- bookkeeping ---------------------------------------------------

    def copy(self) -> Triangulation:
        other = Triangulation.__new__(Triangulation)
        other.counters = Counters()
        other.points = self.points[:]
        other.alive = self.alive[:]
        other.vtri = self.vtri[:]
        other.tv = [None if v is None else v[:] for v in self.tv]
        other.tn = [None if n is None else n[:] for n in self.tn]
        other.free = self.free[:]
        other.last = self.last
        other.index = dict(self.index)
        other.n_finite_tri = self.n_finite_tri
        other._pending = self._pending[:]
        return other

    @property
    def dimension(self) -> int:
        return 2 if self.last >= 0 else (1 if len(self._pending) > 1 else 0)

    @property
    def n_vertices(self) -> int:
        return len(self.index)

    def vertices(self):
        """Live finite vertex handles, in creation order."""
        return [v for v in range(1, len(self.points)) if self.alive[v]]

    def point(self, v: int) -> Point:
        return self.points[v]

    def live_triangles(self):
        return [t for t, v in enumerate(self.tv) if v is not None]

    def finite_triangles(self):
        return [t for t, v in enumerate(self.tv) if v is not None and INFINITE not in v]

    def triangle_set(self) -> set[tuple[Point, Point, Point]]:
        """Finite triangles as canonical point triples (CCW, smallest first)."""
        pts = self.points
        return {canonical(pts[a], pts[b], pts[c])
                for a, b, c in (self.tv[t] for t in self.finite_triangles())}

    def _check_vertex(self, v: int) -> None:
        if v == INFINITE:
            raise VertexError("the infinite vertex cannot be queried or removed")
        if not (0 < v < len(self.points)) or not self.alive[v]:
            raise VertexError(f"vertex {v} is not a live vertex")
        if self.dimension < 2:
            raise DegenerateError("triangulation has no triangles yet")

    # -- raw triangle store --------------------------------------------

    def _new_triangle(self, a: int, b: int, c: int) -> int:
        if self.free:
            t = self.free.pop()
            self.tv[t] = [a, b, c]
            self.tn[t] = [-1, -1, -1]
        else:
            t = len(self.tv)
            self.tv.append([a, b, c])
            self.tn.append([-1, -1, -1])
        if a != INFINITE and b != INFINITE and c != INFINITE:
            self.n_finite_tri += 1
        self.vtri[a] = t
        self.vtri[b] = t
        self.vtri[c] = t
        self.last = t
        return t

    def _kill_triangle(self, t: int) -> None:
        if INFINITE not in self.tv[t]:
            self.n_finite_tri -= 1
        self.tv[t] = None
        self.tn[t] = None
        self.free.append(t)

    def fill_triangle(self, a: int, b: int, c: int, hole: HoleBoundary) -> int:
        """Create triangle ``(a, b, c)`` inside ``hole`` and link it.

        Sides that are current hole edges are linked to the triangle across
        them; every other side becomes a hole edge of the remaining hole.
        """
        if INFINITE not in (a, b, c):
            pts = self.points
            if orient_sign(pts[a], pts[b], pts[c]) <= 0:
                raise DegenerateError(
                    f"filled triangle ({a}, {b}, {c}) is not counterclockwise")
        t = self._new_triangle(a, b, c)
        edges = hole.edges
        nbrs = self.tn[t]
        for slot, (u, w) in enumerate(((b, c), (c, a), (a, b))):
            outer = edges.pop((u, w), None)
            if outer is None:
                edges[(w, u)] = (t, slot)
            else:
                ot, oslot = outer
                nbrs[slot] = ot
                self.tn[ot][oslot] = t
        return t

    def flip(self, t: int, i: int) -> tuple[int, int]:
        """Flip the edge opposite vertex ``i`` of ``t``.

        With ``t = (a, b, c)`` (``a`` at slot ``i``) and ``u = (c, b, d)``
        across ``bc``, the result is ``(a, b, d)`` and ``(a, d, c)``; both
        handles are reused and returned in that order.
        """
        tv, tn = self.tv, self.tn
        a, b, c = tv[t][i], tv[t][(i + 1) % 3], tv[t][(i + 2) % 3]
        u = tn[t][i]
        j = tn[u].index(t)
        d = tv[u][j]
        # outer neighbors of the quadrilateral
        n_ab = tn[t][(i + 2) % 3]
        n_ca = tn[t][(i + 1) % 3]
        n_bd = tn[u][(j + 1) % 3]
        n_dc = tn[u][(j + 2) % 3]
        was_finite = (INFINITE not in tv[t]) + (INFINITE not in tv[u])
        tv[t] = [a, b, d]
        tv[u] = [a, d, c]
        tn[t] = [n_bd, u, n_ab]
        tn[u] = [n_dc, n_ca, t]
        self._relink(n_bd, u, t)
        self._relink(n_ca, t, u)
        self.n_finite_tri += (INFINITE not in tv[t]) + (INFINITE not in tv[u]) - was_finite
        for v in (a, b, d):
            self.vtri[v] = t
        self.vtri[c] = u
        return t, u

    def _relink(self, tri: int, old: int, new: int) -> None:
        ns = self.tn[tri]
        ns[ns.index(old)] = new

    # -- insertion -----------------------------------------------------

    def insert(self, p) -> int:
        """Insert a point and return its vertex handle."""
        p = make_point(int(p[0]), int(p[1]))
        if p in self.index:
            raise DuplicatePointError(f"point {tuple(p)} already present")
        v = len(self.points)
        self.points.append(p)
        self.alive.append(True)
        self.vtri.append(-1)
        self.index[p] = v
        if self.last >= 0:
            self._insert_vertex(v)
            return v
        self._pending.append(v)
        self._bootstrap()
        return v

    def _bootstrap(self) -> None:
        pending = self._pending
        if len(pending) < 3:
            return
        pts = self.points
        a, b, c = pending[0], pending[1], pending[-1]
        o = orient_sign(pts[a], pts[b], pts[c])
        if o == 0:
            return
        if o < 0:
            a, b = b, a
        hole = HoleBoundary(INFINITE, [])
        self.fill_triangle(a, b, c, hole)
        self.fill_triangle(c, b, INFINITE, hole)
        self.fill_triangle(a, c, INFINITE, hole)
        self.fill_triangle(b, a, INFINITE, hole)
        assert not hole.edges
        rest = pending[2:-1]
        self._pending = []
        for v in rest:
            self._insert_vertex(v)

    def locate(self, p) -> int:
        """Triangle whose closure contains ``p``, or an infinite triangle
        whose hull edge has ``p`` strictly outside."""
        tv, tn, pts = self.tv, self.tn, self.points
        cnt = self.counters
        t = self.last
        if t < 0 or tv[t] is None:
            t = next(i for i, v in enumerate(tv) if v is not None)
        if INFINITE in tv[t]:
            t = tn[t][tv[t].index(INFINITE)]
        came = -1
        while True:
            verts = tv[t]
            for k in range(3):
                u = tn[t][k]
                if u == came:
                    continue
                cnt.orientation_tests += 1
                if orient_sign(pts[verts[(k + 1) % 3]], pts[verts[(k + 2) % 3]], p) < 0:
                    came, t = t, u
                    break
            else:
                return t
            if INFINITE in tv[t]:
                return t

    def _in_conflict(self, t: int, p) -> bool:
        verts = self.tv[t]
        pts = self.points
        if INFINITE in verts:
            i = verts.index(INFINITE)
            u, w = pts[verts[(i + 1) % 3]], pts[verts[(i + 2) % 3]]
            self.counters.orientation_tests += 1
            o = orient_sign(u, w, p)
            if o != 0:
                return o > 0
            # on the hull line: conflict only strictly inside the segment
            return (min(u[0], w[0]) <= p[0] <= max(u[0], w[0])
                    and min(u[1], w[1]) <= p[1] <= max(u[1], w[1]))
        self.counters.incircle_tests += 1
        return incircle_sign(pts[verts[0]], pts[verts[1]], pts[verts[2]], p,
                             self.counters) > 0

    def _insert_vertex(self, v: int) -> None:
        p = self.points[v]
        t0 = self.locate(p)
        tv, tn = self.tv, self.tn
        cavity = {t0}
        stack = [t0]
        hole = HoleBoundary(v, [])
        edges = hole.edges
        while stack:
            t = stack.pop()
            verts = tv[t]
            for k in range(3):
                u = tn[t][k]
                if u in cavity:
                    continue
                a, b = verts[(k + 1) % 3], verts[(k + 2) % 3]
                if self._in_conflict(u, p):
                    cavity.add(u)
                    stack.append(u)
                else:
                    edges[(a, b)] = (u, tn[u].index(t))
        for t in cavity:
            self._kill_triangle(t)
        for a, b in list(edges):
            self.fill_triangle(a, b, v, hole)
        assert not edges

    # -- stars ---------------------------------------------------------

    def incident_triangles(self, v: int) -> list[tuple[int, int]]:
        """``(triangle, slot of v)`` pairs, counterclockwise around ``v``."""
        tv, tn = self.tv, self.tn
        t0 = self.vtri[v]
        out = []
        t = t0
        while True:
            i = tv[t].index(v)
            out.append((t, i))
            t = tn[t][(i + 1) % 3]
            if t == t0:
                return out

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.incident_triangles(v))

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        tv = self.tv
        return [tv[t][(i + 1) % 3] for t, i in self.incident_triangles(v)]

    def is_hull_vertex(self, v: int) -> bool:
        return INFINITE in self.neighbors(v)

    def star_boundary(self, v: int) -> HoleBoundary:
        """Link of ``v`` in counterclockwise order with its outer neighbors."""
        self._check_vertex(v)
        tv, tn = self.tv, self.tn
        hole = HoleBoundary(v, [])
        for t, i in self.incident_triangles(v):
            a, b = tv[t][(i + 1) % 3], tv[t][(i + 2) % 3]
            hole.ring.append(a)
            u = tn[t][i]
            hole.edges[(a, b)] = (u, tn[u].index(t))
        return hole

    def remove_star(self, v: int) -> HoleBoundary:
        """Detach every triangle incident to ``v`` and mark ``v`` deleted."""
        hole = self.star_boundary(v)
        star = self.incident_triangles(v)
        if hole.on_hull:
            finite_star = sum(1 for t, _ in star if INFINITE not in self.tv[t])
            if finite_star == self.n_finite_tri and self._collinear(
                    [q for q in hole.ring if q != INFINITE]):
                raise DegenerateError(
                    "removing this vertex leaves only collinear points")
        for t, _ in star:
            self._kill_triangle(t)
        self.alive[v] = False
        self.vtri[v] = -1
        del self.index[self.points[v]]
        if self.last >= 0 and self.tv[self.last] is None:
            self.last = next(iter(hole.edges.values()))[0]
        return hole

    def _collinear(self, vs: list[int]) -> bool:
        pts = self.points
        if len(vs) < 3:
            return True
        a, b = pts[vs[0]], pts[vs[1]]
        return all(orient_sign(a, b, pts[c]) == 0 for c in vs[2:])

    # -- validation ----------------------------------------------------

    def check_links(self) -> bool:
        tv, tn = self.tv, self.tn
        for t, verts in enumerate(tv):
            if verts is None:
                continue
            for k in range(3):
                u = tn[t][k]
                if u < 0 or tv[u] is None:
                    return False
                j = tn[u].index(t) if t in tn[u] else -1
                if j < 0:
                    return False
                a, b = verts[(k + 1) % 3], verts[(k + 2) % 3]
                if tv[u][(j + 1) % 3] != b or tv[u][(j + 2) % 3] != a:
                    return False
        for v in self.vertices():
            t = self.vtri[v]
            if self.dimension == 2 and (t < 0 or tv[t] is None or v not in tv[t]):
                return False
        return True

    def hull_vertices(self) -> list[int]:
        return [verts[(verts.index(INFINITE) + 1) % 3]
                for verts in self.tv if verts is not None and INFINITE in verts]

    def euler_ok(self) -> bool:
        n = self.n_vertices
        h = len(self.hull_vertices())
        return self.n_finite_tri == 2 * n - 2 - h

    def is_delaunay(self) -> bool:
        """Brute-force validity check.

        Links must be consistent, finite triangles counterclockwise with
        empty open circumdisks, and no vertex may lie strictly outside a
        hull edge.
        """
        if self.dimension < 2:
            return not self.tv
        if not self.check_links():
            return False
        pts = self.points
        live = [pts[v] for v in self.vertices()]
        for verts in self.tv:
            if verts is None:
                continue
            if INFINITE in verts:
                i = verts.index(INFINITE)
                u, w = pts[verts[(i + 1) % 3]], pts[verts[(i + 2) % 3]]
                if any(orient_sign(u, w, q) > 0 for q in live):
                    return False
                continue
            a, b, c = (pts[x] for x in verts)
            if orient_sign(a, b, c) <= 0:
                return False
            for q in live:
                if incircle_sign(a, b, c, q) > 0:
                    return False
        return True


def canonical(a, b, c) -> tuple:
    """Rotate a CCW triple so the smallest point comes first."""
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


__all__ = ["INFINITE", "COORD_LIMIT", "DuplicatePointError", "HoleBoundary",
           "Triangulation", "VertexError", "canonical"]

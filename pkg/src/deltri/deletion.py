"""Vertex deletion strategies.

``ear3`` fills the hole by repeatedly cutting the ear whose circle is
closest to the removed point ``p``: among counterclockwise corners
``(q_i, q_{i+1}, q_{i+2})`` of the hole boundary, the one with the smallest
``-power(p, circle)`` is an edge-free Delaunay triangle of the remaining
points.  Cutting an ear changes only its two neighbor ears, so a heap keyed
by that priority gives O(k log k) deletion with at most ``3k - 8`` power
computations (``2k - 4`` plus ``k - 4`` cheap updates when the previous
ear's power is updated incrementally).

The other strategies exist for comparison: ``flip`` (degree reduction by
edge flips, then Lawson flips), ``edge`` (recursive edge completion),
the ``small`` special cases for degrees 3 to 5, ``ear5`` (ear queue down to
a pentagon) and ``mixed`` (``flip`` below a degree threshold, ``ear5``
above it).

Hull vertices are removed with the ear queue by every strategy: ears
touching the infinite vertex are never candidates, and once no finite ear
is left the remaining convex chain is closed against the infinite vertex.
"""

from __future__ import annotations

from collections import deque

from .predicates import (Counters, DegenerateError, PowerValue, compare_power_sign,
                         incircle_sign, orient_sign, power, power_update)
from .triangulation import INFINITE, HoleBoundary, Triangulation

METHODS = ("ear3", "ear5", "flip", "edge", "mixed")


class Ear:
    __slots__ = ("v0", "v1", "v2", "index", "power", "cache", "cache_pair",
                 "prev", "next", "pos")

    def __init__(self, v0: int, v1: int, v2: int, index: int):
        self.v0 = v0
        self.v1 = v1
        self.v2 = v2
        self.index = index
        self.power: PowerValue | None = None  # None: not an ear
        self.cache: PowerValue | None = None
        self.cache_pair: tuple[int, int] | None = None
        self.prev: Ear | None = None
        self.next: Ear | None = None
        self.pos = -1

    @property
    def is_ear(self) -> bool:
        return self.power is not None

    @property
    def priority(self) -> PowerValue | None:
        """``-power``, or None for a candidate that is not an ear."""
        return None if self.power is None else -self.power

    def __repr__(self):
        pr = "NOT_AN_EAR" if self.power is None else f"{-self.power.approx:.6g}"
        return f"Ear({self.v0}, {self.v1}, {self.v2}, priority={pr})"


class EarQueue:
    """Indexed binary min-heap of ears, also linked as a ring.

    Priority is ``-power(p, circle(ear))``; non-ears sort after every
    finite priority and ties go to the smaller ring index of the middle
    vertex.
    """

    def __init__(self, points, p, counters: Counters | None = None,
                 use_updates: bool = True):
        self.points = points
        self.p = p
        self.counters = counters if counters is not None else Counters()
        self.use_updates = use_updates
        self.heap: list[Ear] = []
        self.modify_calls = 0

    @classmethod
    def build(cls, ring: list[int], points, p, counters: Counters | None = None,
              use_updates: bool = True) -> EarQueue:
        q = cls(points, p, counters, use_updates)
        k = len(ring)
        ears = [Ear(ring[i - 1], ring[i], ring[(i + 1) % k], i) for i in range(k)]
        for i, e in enumerate(ears):
            e.prev = ears[i - 1]
            e.next = ears[(i + 1) % k]
            q.evaluate(e)
        q.heap = sorted(ears, key=lambda e: e.index)
        for i, e in enumerate(q.heap):
            e.pos = i
        for i in range(k // 2 - 1, -1, -1):
            q._sift_down(i)
        return q

    def __len__(self) -> int:
        return len(self.heap)

    def ring(self) -> list[Ear]:
        if not self.heap:
            return []
        start = min(self.heap, key=lambda e: e.index)
        out = [start]
        e = start.next
        while e is not start:
            out.append(e)
            e = e.next
        return out

    # -- priorities ----------------------------------------------------

    def evaluate(self, e: Ear, reuse: bool = False) -> None:
        """Recompute the priority of ``e`` from its current vertex triple."""
        if INFINITE in (e.v0, e.v1, e.v2):
            e.power = None
            return
        pts = self.points
        a, b, c = pts[e.v0], pts[e.v1], pts[e.v2]
        self.counters.orientation_tests += 1
        if orient_sign(a, b, c) <= 0:
            e.power = None
            return
        if reuse and self.use_updates and e.cache_pair == (e.v0, e.v1):
            e.power = power_update(e.cache, c, self.counters)
        else:
            e.power = power(a, b, c, self.p, self.counters)
            e.cache = e.power
            e.cache_pair = (e.v0, e.v1)

    def _less(self, e: Ear, f: Ear) -> bool:
        if e.power is None:
            return f.power is None and e.index < f.index
        if f.power is None:
            return True
        # -power(e) < -power(f)  <=>  power(e) > power(f)
        s = compare_power_sign(e.power, f.power, self.counters)
        if s:
            return s > 0
        return e.index < f.index

    def _sift_up(self, i: int) -> None:
        h = self.heap
        e = h[i]
        while i > 0:
            parent = (i - 1) >> 1
            if not self._less(e, h[parent]):
                break
            h[i] = h[parent]
            h[i].pos = i
            i = parent
        h[i] = e
        e.pos = i

    def _sift_down(self, i: int) -> None:
        h = self.heap
        n = len(h)
        e = h[i]
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            if child + 1 < n and self._less(h[child + 1], h[child]):
                child += 1
            if not self._less(h[child], e):
                break
            h[i] = h[child]
            h[i].pos = i
            i = child
        h[i] = e
        e.pos = i

    # -- queue operations ----------------------------------------------

    def minimum(self) -> Ear:
        if not self.heap:
            raise IndexError("minimum of an empty ear queue")
        return self.heap[0]

    def modify_priority(self, e: Ear, reuse: bool = False) -> None:
        self.modify_calls += 1
        self.evaluate(e, reuse)
        self._sift_up(e.pos)
        self._sift_down(e.pos)

    def _remove(self, e: Ear) -> None:
        h = self.heap
        last = h.pop()
        if last is not e:
            h[e.pos] = last
            last.pos = e.pos
            self._sift_up(last.pos)
            self._sift_down(last.pos)
        e.pos = -1

    def delete_min(self, recompute: bool = True) -> Ear:
        """Pop the minimum ear and splice it out of the ring.

        The previous ear keeps its first two vertices and takes the popped
        ear's last vertex; the next ear takes the popped ear's first vertex.
        """
        e = self.minimum()
        self._remove(e)
        e0, e1 = e.prev, e.next
        e0.v2 = e.v2
        e0.next = e1
        e1.v0 = e.v0
        e1.prev = e0
        if recompute:
            self.modify_priority(e0, reuse=True)
            self.modify_priority(e1)
        return e


# -- dispatch ----------------------------------------------------------


def delete(t: Triangulation, v: int, method: str = "ear3", d_limit: int = 9,
           power_updates: bool = True, trace: list | None = None) -> None:
    if method == "ear3":
        delete_ear_queue(t, v, power_updates=power_updates, trace=trace)
    elif method == "ear5":
        delete_ear5(t, v, power_updates=power_updates, trace=trace)
    elif method == "flip":
        delete_flip(t, v)
    elif method == "edge":
        delete_edge_completion(t, v)
    elif method == "mixed":
        delete_mixed(t, v, d_limit, power_updates=power_updates)
    else:
        raise ValueError(f"unknown deletion method {method!r}; expected one of {METHODS}")


# -- ear queue ---------------------------------------------------------


def delete_ear_queue(t: Triangulation, v: int, power_updates: bool = True,
                     trace: list | None = None, stop: int = 3) -> None:
    """Remove ``v`` by cutting ears in priority order.

    ``trace``, when given, receives every cut ear as
    ``(v0, v1, v2, power)``.  ``stop`` is the ring size at which cutting
    stops; sizes above 3 hand the rest to the small-polygon rule.
    """
    hole = t.remove_star(v)
    fill_ear_queue(t, hole, power_updates=power_updates, trace=trace, stop=stop)


def fill_ear_queue(t: Triangulation, hole: HoleBoundary, power_updates: bool = True,
                   trace: list | None = None, stop: int = 3) -> EarQueue:
    pts = t.points
    p = pts[hole.center]
    if hole.on_hull:
        stop = 3
    q = EarQueue.build(hole.ring, pts, p, t.counters, power_updates)
    while len(q) > stop:
        e = q.minimum()
        if not e.is_ear:
            break
        # the lifting argument puts p inside every cut ear's circle
        assert e.power.sign() <= 0, f"cut ear {e} has p outside its circle"
        if trace is not None:
            trace.append((e.v0, e.v1, e.v2, e.power))
        t.fill_triangle(e.v0, e.v1, e.v2, hole)
        q.delete_min(recompute=len(q) - 1 > stop)
    ring = [e.v1 for e in q.ring()]
    if len(ring) == 3:
        t.fill_triangle(ring[0], ring[1], ring[2], hole)
    elif INFINITE in ring:
        _close_hull(t, ring, hole)
    else:
        fill_small_polygon(t, ring, hole)
    assert not hole.edges
    return q


def _close_hull(t: Triangulation, ring: list[int], hole: HoleBoundary) -> None:
    i = ring.index(INFINITE)
    chain = ring[i + 1:] + ring[:i]
    for a, b in zip(chain, chain[1:]):
        t.fill_triangle(a, b, INFINITE, hole)


def delete_ear5(t: Triangulation, v: int, power_updates: bool = True,
                trace: list | None = None) -> None:
    """Ear queue down to a pentagon, then the small-polygon rule; degrees
    up to five go straight to :func:`delete_small`."""
    if t.degree(v) <= 5 and not t.is_hull_vertex(v):
        delete_small(t, v)
    else:
        delete_ear_queue(t, v, power_updates=power_updates, trace=trace, stop=5)


# -- small degrees -----------------------------------------------------


def _apex(t: Triangulation, poly: list[int]) -> int:
    """Position in ``poly`` of the Delaunay apex over edge ``poly[0] poly[1]``.

    Candidates on the left of the edge are scanned keeping the one whose
    circle through the edge contains none of the others; one incircle test
    per candidate after the first.
    """
    pts = t.points
    cnt = t.counters
    a, b = pts[poly[0]], pts[poly[1]]
    best = -1
    for j in range(2, len(poly)):
        c = pts[poly[j]]
        cnt.orientation_tests += 1
        if orient_sign(a, b, c) <= 0:
            continue
        if best < 0:
            best = j
            continue
        cnt.incircle_tests += 1
        if incircle_sign(a, b, pts[poly[best]], c, cnt) > 0:
            best = j
    if best < 0:
        raise DegenerateError("no vertex of the hole sees its first edge")
    return best


def fill_small_polygon(t: Triangulation, ring: list[int], hole: HoleBoundary) -> None:
    """Delaunay fill of a triangle, quadrilateral or pentagon (0, 1 and at
    most 3 incircle tests)."""
    k = len(ring)
    if k == 3:
        t.fill_triangle(*ring, hole)
    elif k == 4:
        _fill_quad(t, ring, hole)
    elif k == 5:
        j = _apex(t, ring)
        t.fill_triangle(ring[0], ring[1], ring[j], hole)
        if j == 2:
            _fill_quad(t, [ring[0], ring[2], ring[3], ring[4]], hole)
        elif j == 3:
            t.fill_triangle(ring[1], ring[2], ring[3], hole)
            t.fill_triangle(ring[3], ring[4], ring[0], hole)
        else:
            _fill_quad(t, [ring[1], ring[2], ring[3], ring[4]], hole)
    else:
        raise ValueError(f"small-polygon fill needs 3 to 5 vertices, got {k}")


def _fill_quad(t: Triangulation, quad: list[int], hole: HoleBoundary) -> None:
    pts = t.points
    cnt = t.counters
    q0, q1, q2, q3 = quad
    a, b, c, d = (pts[x] for x in quad)
    cnt.orientation_tests += 2
    diag02 = orient_sign(a, b, c) > 0 and orient_sign(c, d, a) > 0
    if diag02:
        cnt.orientation_tests += 2
        if orient_sign(b, c, d) > 0 and orient_sign(d, a, b) > 0:
            cnt.incircle_tests += 1
            diag02 = incircle_sign(a, b, c, d, cnt) <= 0
    if diag02:
        t.fill_triangle(q0, q1, q2, hole)
        t.fill_triangle(q2, q3, q0, hole)
    else:
        t.fill_triangle(q1, q2, q3, hole)
        t.fill_triangle(q3, q0, q1, hole)


def delete_small(t: Triangulation, v: int) -> None:
    """Degree 3, 4 and 5 interior vertices, without power computations."""
    k = t.degree(v)
    if k > 5:
        raise ValueError(f"delete_small handles degree <= 5, vertex {v} has degree {k}")
    if t.is_hull_vertex(v):
        delete_ear_queue(t, v)
        return
    hole = t.remove_star(v)
    fill_small_polygon(t, hole.ring, hole)
    assert not hole.edges


# -- edge completion ---------------------------------------------------


def delete_edge_completion(t: Triangulation, v: int) -> None:
    """Find the Delaunay triangle on one hole edge, then recurse on the two
    sub-polygons it leaves; at most (k-2)(k-3)/2 incircle tests."""
    if t.is_hull_vertex(v):
        delete_ear_queue(t, v)
        return
    hole = t.remove_star(v)
    stack = [hole.ring]
    while stack:
        poly = stack.pop()
        if len(poly) == 3:
            t.fill_triangle(*poly, hole)
            continue
        j = _apex(t, poly)
        t.fill_triangle(poly[0], poly[1], poly[j], hole)
        if j > 2:
            stack.append(poly[1:j + 1])
        if j < len(poly) - 1:
            stack.append(poly[j:] + poly[:1])
    assert not hole.edges


# -- flips -------------------------------------------------------------


def _find_edge(t: Triangulation, a: int, b: int) -> tuple[int, int] | None:
    """``(triangle, slot)`` with directed edge ``a -> b`` opposite ``slot``."""
    tv, tn = t.tv, t.tn
    t0 = t.vtri[a]
    tri = t0
    while True:
        verts = tv[tri]
        i = verts.index(a)
        if verts[(i + 1) % 3] == b:
            return tri, (i + 2) % 3
        tri = tn[tri][(i + 1) % 3]
        if tri == t0:
            return None


def delete_flip(t: Triangulation, v: int) -> None:
    """Flip ``v`` down to degree 3, drop it, then restore the empty-circle
    property with Lawson flips restricted to the hole.

    Degree reduction flips the spokes ``v q_i`` in counterclockwise order
    from ``q_0`` and never flips ``v q_0`` unless nothing else is
    flippable, so the new diagonals fan out of ``q_0`` wherever the hole
    allows it.  Only orientation tests are needed there; the incircle tests
    all happen in the Lawson pass.
    """
    if t.is_hull_vertex(v):
        delete_ear_queue(t, v)
        return
    pts = t.points
    cnt = t.counters
    ring = t.neighbors(v)
    boundary = {(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))}
    boundary |= {(b, a) for a, b in boundary}
    link = ring[:]
    anchor = link[0]
    created: list[tuple[int, int]] = []
    i = 1
    while len(link) > 3:
        m = len(link)
        j = _next_flippable(pts, cnt, v, link, i, anchor)
        if j < 0:
            j = _next_flippable(pts, cnt, v, link, i, None)
        if j < 0:
            raise DegenerateError(f"no flippable spoke around vertex {v}")
        w, x, y = link[j - 1], link[j], link[(j + 1) % m]
        tri, slot = _find_edge(t, v, x)
        t.flip(tri, slot)
        created.append((w, y))
        del link[j]
        i = j - 1 if link[j - 1] != anchor else j
    hole = t.remove_star(v)
    t.fill_triangle(*hole.ring, hole)
    assert not hole.edges
    _lawson(t, created, boundary)


def _next_flippable(pts, cnt, v, link, start, skip) -> int:
    """First position from ``start`` whose spoke can be flipped away."""
    m = len(link)
    for step in range(m):
        j = (start + step) % m
        if link[j] == skip:
            continue
        w, x, y = link[j - 1], link[j], link[(j + 1) % m]
        cnt.orientation_tests += 2
        if (orient_sign(pts[w], pts[x], pts[y]) > 0
                and orient_sign(pts[v], pts[w], pts[y]) > 0):
            return j
    return -1


def _lawson(t: Triangulation, edges: list[tuple[int, int]], boundary: set) -> None:
    pts = t.points
    cnt = t.counters
    # First-in first-out with each undirected edge pending at most once: on
    # random inputs this needs the fewest tests of the orders tried.
    queue = deque(edges)
    pending = {frozenset(e) for e in edges}
    while queue:
        a, b = queue.popleft()
        pending.discard(frozenset((a, b)))
        found = _find_edge(t, a, b)
        if found is None:
            continue
        tri, slot = found
        c = t.tv[tri][slot]
        u = t.tn[tri][slot]
        d = t.tv[u][t.tn[u].index(tri)]
        cnt.incircle_tests += 1
        if incircle_sign(pts[a], pts[b], pts[c], pts[d], cnt) > 0:
            t.flip(tri, slot)
            for e in ((a, d), (d, b), (b, c), (c, a)):
                key = frozenset(e)
                if e not in boundary and key not in pending:
                    pending.add(key)
                    queue.append(e)


# -- mixed ---------------------------------------------------------------


def delete_mixed(t: Triangulation, v: int, d_limit: int = 9,
                 power_updates: bool = True) -> str:
    """``small`` up to degree 5, ``flip`` below ``d_limit``, ``ear5`` from
    ``d_limit`` on.  Returns the path taken."""
    if d_limit < 4:
        raise ValueError("d_limit must be at least 4")
    k = t.degree(v)
    if t.is_hull_vertex(v):
        delete_ear_queue(t, v, power_updates=power_updates)
        return "hull"
    if k <= 5:
        delete_small(t, v)
        return "small"
    if k < d_limit:
        delete_flip(t, v)
        return "flip"
    delete_ear_queue(t, v, power_updates=power_updates, stop=5)
    return "ear5"

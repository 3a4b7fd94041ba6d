import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltri.predicates import DegenerateError, orient_sign
from deltri.triangulation import (INFINITE, DuplicatePointError, HoleBoundary, Triangulation,
                                  VertexError)
from deltri.verify import empty_circle_triangles, gen_random_square


def finite_count(t):
    return sum(1 for _ in t.finite_triangles())


def infinite_count(t):
    return sum(1 for v in t.tv if v is not None and INFINITE in v)


class TestInsert:
    def test_three_points(self):
        t = Triangulation([(0, 0), (5, 0), (0, 5)])
        assert finite_count(t) == 1
        assert infinite_count(t) == 3
        assert t.check_links() and t.is_delaunay()

    def test_four_points(self):
        pts = [(0, 0), (4, 0), (0, 4), (5, 5)]
        t = Triangulation(pts)
        assert finite_count(t) == 2
        assert t.triangle_set() == empty_circle_triangles(pts)

    def test_hundred_random(self):
        t = Triangulation(gen_random_square(100, 3))
        assert t.is_delaunay() and t.euler_ok()

    def test_duplicate_rejected(self):
        t = Triangulation([(0, 0), (5, 0), (0, 5)])
        with pytest.raises(DuplicatePointError):
            t.insert((5, 0))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            Triangulation([(0, 0), (1 << 24, 0), (0, 5)])

    def test_collinear_prefix(self):
        pts = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 5), (7, 1)]
        t = Triangulation(pts)
        assert t.dimension == 2
        assert t.triangle_set() == empty_circle_triangles(pts)

    def test_all_collinear_is_one_dimensional(self):
        t = Triangulation([(0, 0), (1, 1), (2, 2)])
        assert t.dimension < 2
        assert finite_count(t) == 0

    def test_point_on_hull_edge(self):
        pts = [(0, 0), (10, 0), (0, 10), (5, 0), (3, 3)]
        t = Triangulation(pts)
        assert t.is_delaunay() and t.euler_ok()

    def test_counts_predicates(self):
        t = Triangulation(gen_random_square(50, 1))
        c = t.counters
        assert c.orientation_tests > 0 and c.incircle_tests > 0

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=3,
                    max_size=25, unique=True))
    def test_grid_points_match_definition(self, pts):
        if all(orient_sign(pts[0], pts[1], q) == 0 for q in pts):
            return
        t = Triangulation(pts)
        assert t.is_delaunay()
        assert t.check_links()
        # every triangle has an empty open circle, so it belongs to the
        # set of all such triangles (the set is larger when cocircular)
        assert t.triangle_set() <= empty_circle_triangles(pts)


class TestStar:
    def setup_method(self):
        self.t = Triangulation([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])
        self.center = self.t.index[(2, 2)]

    def test_star_boundary_interior(self):
        hole = self.t.star_boundary(self.center)
        ring = [self.t.point(q) for q in hole.ring]
        assert sorted(ring) == [(0, 0), (0, 4), (4, 0), (4, 4)]
        k = len(ring)
        assert all(orient_sign((2, 2), ring[i], ring[(i + 1) % k]) > 0 for i in range(k))
        assert not hole.on_hull and hole.degree == 4

    def test_star_boundary_hull_vertex(self):
        hole = self.t.star_boundary(self.t.index[(0, 0)])
        assert hole.ring.count(INFINITE) == 1
        assert hole.on_hull

    def test_star_boundary_degree_three(self):
        t = Triangulation([(0, 0), (9, 0), (0, 9), (2, 2)])
        assert len(t.star_boundary(t.index[(2, 2)]).ring) == 3

    def test_star_boundary_does_not_modify(self):
        before = self.t.triangle_set()
        self.t.star_boundary(self.center)
        assert self.t.triangle_set() == before

    def test_bad_vertices(self):
        with pytest.raises(VertexError):
            self.t.star_boundary(INFINITE)
        with pytest.raises(VertexError):
            self.t.star_boundary(999)

    def test_remove_star_counts(self):
        before = sum(1 for _ in self.t.live_triangles())
        k = self.t.degree(self.center)
        hole = self.t.remove_star(self.center)
        assert sum(1 for _ in self.t.live_triangles()) == before - k
        with pytest.raises(VertexError):
            self.t.star_boundary(self.center)
        # fill with a fan and check links are consistent again
        ring = hole.ring
        for i in range(1, len(ring) - 1):
            self.t.fill_triangle(ring[0], ring[i], ring[i + 1], hole)
        assert not hole.edges
        assert self.t.check_links() and self.t.euler_ok()

    def test_triangles_are_recycled(self):
        hole = self.t.remove_star(self.center)
        free = len(self.t.free)
        ring = hole.ring
        self.t.fill_triangle(ring[0], ring[1], ring[2], hole)
        assert len(self.t.free) == free - 1
        size = len(self.t.tv)
        self.t.fill_triangle(ring[0], ring[2], ring[3], hole)
        assert len(self.t.tv) == size

    def test_fan_round_trip_random(self):
        rng = random.Random(5)
        t = Triangulation(gen_random_square(60, 5))
        inner = [v for v in t.vertices() if not t.is_hull_vertex(v)]
        for v in rng.sample(inner, 10):
            u = t.copy()
            hole = u.remove_star(v)
            ring = hole.ring
            # a fan from a vertex that sees the whole hole is a valid fill;
            # the star center is not available, so fan from each ring vertex
            # only when all its triangles are counterclockwise
            for s in range(len(ring)):
                r = ring[s:] + ring[:s]
                if all(orient_sign(u.point(r[0]), u.point(r[i]), u.point(r[i + 1])) > 0
                       for i in range(1, len(r) - 1)):
                    for i in range(1, len(r) - 1):
                        u.fill_triangle(r[0], r[i], r[i + 1], hole)
                    break
            else:
                continue
            assert not hole.edges
            assert u.check_links() and u.euler_ok()


class TestFillTriangle:
    def test_three_sided_hole(self):
        t = Triangulation([(0, 0), (9, 0), (0, 9), (2, 2)])
        v = t.index[(2, 2)]
        hole = t.remove_star(v)
        assert len(hole.edges) == 3
        t.fill_triangle(*hole.ring, hole)
        assert not hole.edges
        assert t.check_links()

    def test_first_ear_links_two_sides(self):
        pts = [(0, 0), (10, 0), (13, 6), (5, 12), (1, 8), (5, 5)]
        t = Triangulation(pts)
        hole = t.remove_star(t.index[(5, 5)])
        ring = hole.ring
        assert len(ring) == 5
        before = len(hole.edges)
        t.fill_triangle(ring[0], ring[1], ring[2], hole)
        # two boundary edges consumed, one open side registered
        assert len(hole.edges) == before - 2 + 1

    def test_orientation_violation(self):
        t = Triangulation([(0, 0), (9, 0), (0, 9), (2, 2)])
        hole = t.remove_star(t.index[(2, 2)])
        a, b, c = hole.ring
        with pytest.raises(DegenerateError):
            t.fill_triangle(a, c, b, hole)


class TestIsDelaunay:
    def test_three_points(self):
        assert Triangulation([(0, 0), (1, 0), (0, 1)]).is_delaunay()

    def test_cocircular_either_diagonal(self):
        sq = [(0, 0), (2, 0), (2, 2), (0, 2)]
        t1 = Triangulation(sq)
        t2 = Triangulation(sq[1:] + sq[:1])
        assert t1.is_delaunay() and t2.is_delaunay()
        # flip the diagonal explicitly: still Delaunay
        tri = t1.finite_triangles()[0]
        for i in range(3):
            if INFINITE not in t1.tv[t1.tn[tri][i]]:
                t1.flip(tri, i)
                break
        assert t1.is_delaunay()

    def test_spoiled_by_flip(self):
        t = Triangulation(gen_random_square(10, 11))
        spoiled = False
        for tri in list(t.finite_triangles()):
            for i in range(3):
                u = t.tn[tri][i]
                if INFINITE in t.tv[u]:
                    continue
                a = t.point(t.tv[tri][i])
                b, c = t.point(t.tv[tri][(i + 1) % 3]), t.point(t.tv[tri][(i + 2) % 3])
                d = t.point(t.tv[u][t.tn[u].index(tri)])
                if orient_sign(a, b, d) > 0 and orient_sign(a, d, c) > 0:
                    t.flip(tri, i)
                    spoiled = True
                    break
            if spoiled:
                break
        assert spoiled
        assert t.check_links()
        assert not t.is_delaunay()

    def test_broken_links_detected(self):
        t = Triangulation(gen_random_square(10, 2))
        tri = t.finite_triangles()[0]
        t.tn[tri][0] = t.tn[tri][1]
        assert not t.check_links()
        assert not t.is_delaunay()


def test_copy_is_independent():
    t = Triangulation(gen_random_square(30, 4))
    u = t.copy()
    u.insert((123, 456))
    assert t.n_vertices == 30 and u.n_vertices == 31
    assert u.counters is not t.counters

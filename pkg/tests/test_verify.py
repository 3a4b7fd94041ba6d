import math
from fractions import Fraction

import numpy as np
import pytest

from deltri.deletion import delete, delete_ear_queue
from deltri.predicates import COORD_LIMIT, DegenerateError, orient_sign
from deltri.triangulation import INFINITE, Triangulation
from deltri.verify import (InstanceKind, InstanceSpec, OracleError, brute_force_dt,
                           circumradius2, delaunay_oracle, empty_circle_triangles,
                           empty_circle_violations, gen_heller, gen_lower_bound,
                           gen_random_square, generate, heller_witness, lower_bound_alpha,
                           read_points, write_points)
from oracles import circumcircle_ref, incircle_ref


class TestOracle:
    def test_three_points(self):
        assert len(brute_force_dt([(0, 0), (5, 1), (2, 7)])) == 1

    def test_four_points(self):
        tris = brute_force_dt([(0, 0), (4, 0), (0, 4), (5, 5)])
        assert len(tris) == 2
        # the diagonal avoids the circle through the other three
        assert incircle_ref((0, 0), (4, 0), (0, 4), (5, 5)) < 0
        assert ((0, 0), (4, 0), (0, 4)) in tris

    def test_collinear_rejected(self):
        with pytest.raises(DegenerateError):
            brute_force_dt([(0, 0), (1, 1), (2, 2), (5, 5)])
        with pytest.raises(DegenerateError):
            empty_circle_triangles([(0, 0), (1, 1), (2, 2)])
        with pytest.raises(DegenerateError):
            brute_force_dt([(0, 0), (1, 1)])

    @pytest.mark.parametrize("seed", range(15))
    def test_matches_literal_definition(self, seed):
        pts = gen_random_square(14, seed)
        assert brute_force_dt(pts) == empty_circle_triangles(pts)

    def test_matches_insertion(self):
        pts = gen_random_square(50, 99)
        assert brute_force_dt(pts) == Triangulation(pts).triangle_set()

    def test_euler_count(self):
        pts = gen_random_square(120, 5)
        tris = brute_force_dt(pts)
        h = len(Triangulation(pts).hull_vertices())
        assert len(tris) == 2 * len(pts) - 2 - h

    def test_circles_empty(self):
        pts = gen_random_square(80, 6)
        res = delaunay_oracle(pts)
        bad, co = empty_circle_violations(res.triangles, pts)
        assert bad == [] and not co and not res.cocircular

    def test_cocircular_flagged(self):
        res = delaunay_oracle([(0, 0), (2, 0), (2, 2), (0, 2), (1, 9)])
        assert res.cocircular
        bad, _ = empty_circle_violations(res.triangles, [(0, 0), (2, 0), (2, 2), (0, 2), (1, 9)])
        assert bad == []

    def test_violation_detected(self):
        bad, _ = empty_circle_violations([((0, 0), (4, 0), (0, 4))], [(1, 1)])
        assert bad == [((0, 0), (4, 0), (0, 4))]

    def test_large_coordinates(self):
        m = COORD_LIMIT - 1
        pts = [(0, 0), (m, 0), (m, m), (0, m), (m // 2, m // 2 + 1)]
        assert brute_force_dt(pts) == empty_circle_triangles(pts)


class TestRandomSquare:
    def test_deterministic(self):
        assert gen_random_square(500, 3) == gen_random_square(500, 3)
        assert gen_random_square(500, 3) != gen_random_square(500, 4)

    def test_range_and_distinct(self):
        pts = gen_random_square(100_000, 1)
        arr = np.asarray(pts)
        assert arr.min() >= 0 and arr.max() < COORD_LIMIT
        assert len(set(pts)) == len(pts) == 100_000

    def test_mean_degree_near_six(self):
        pts = gen_random_square(3000, 2)
        t = Triangulation(pts)
        inner = [v for v in t.vertices() if not t.is_hull_vertex(v)]
        mean = sum(t.degree(v) for v in inner) / len(inner)
        assert 5.9 <= mean <= 6.1

    def test_too_few(self):
        with pytest.raises(ValueError):
            gen_random_square(2, 0)


class TestLowerBound:
    def test_links_all(self):
        pts, c = gen_lower_bound(8, None, 1)
        t = Triangulation(pts + [c])
        assert t.degree(t.index[c]) == 16

    def test_delete_center(self):
        pts, c = gen_lower_bound(8, None, 2)
        t = Triangulation(pts + [c])
        delete_ear_queue(t, t.index[c])
        tris = t.triangle_set()
        assert tris == brute_force_dt(pts)
        # the outer ears p_i q_i p_{i+1} all appear
        n = 8
        for i in range(n):
            p, q, p1 = pts[2 * i], pts[2 * i + 1], pts[(2 * i + 2) % (2 * n)]
            assert orient_sign(p, q, p1) > 0
            assert (p, q, p1) in {tuple(_rot(tr, p)) for tr in tris if p in tr}

    def test_deterministic(self):
        assert gen_lower_bound(16, None, 5) == gen_lower_bound(16, None, 5)

    def test_shape(self):
        n = 32
        pts, c = gen_lower_bound(n, None, 0)
        r = [math.dist(p, c) for p in pts]
        unit = r[0]
        ps, qs = r[0::2], r[1::2]
        assert max(ps) - min(ps) < 2
        assert all(unit < q < unit * lower_bound_alpha(n) + 1 for q in qs)
        assert len(set(round(q) for q in qs)) == n

    def test_ring_is_convex_and_qs_outside(self):
        # below alpha every corner stays convex; each q_i still bulges out
        pts, c = gen_lower_bound(12, None, 0)
        k = len(pts)
        assert all(orient_sign(pts[i - 1], pts[i], pts[(i + 1) % k]) > 0 for i in range(k))
        d2 = [(x - c[0]) ** 2 + (y - c[1]) ** 2 for x, y in pts]
        assert all(d2[i] > d2[i - 1] and d2[i] > d2[(i + 1) % k] for i in range(1, k, 2))

    def test_large_instance(self):
        with pytest.raises(OracleError):
            gen_lower_bound(2048, None, 0, attempts=2)
        pts, c = gen_lower_bound(2048, None, 0, distinct=False)
        t = Triangulation(pts + [c])
        assert t.degree(t.index[c]) == 4096

    def test_alpha_validation(self):
        with pytest.raises(ValueError):
            gen_lower_bound(8, 0.5, 0)
        with pytest.raises(ValueError):
            gen_lower_bound(2, None, 0)

    def test_alpha_too_small_to_realize(self):
        # distinct x_i cannot fit between 1 and 1 + 1e-9 on the grid
        with pytest.raises(OracleError):
            gen_lower_bound(64, 1 + 1e-9, 0, attempts=3)


def _rot(tri, first):
    i = tri.index(first)
    return tri[i:] + tri[:i]


class TestHeller:
    def test_verifies(self):
        pts, deleted, witness = gen_heller()
        t = Triangulation(pts)
        v = t.index[deleted]
        ring = [t.point(q) for q in t.neighbors(v)]
        assert INFINITE not in t.neighbors(v)
        k = len(ring)
        ears = [(ring[i], ring[(i + 1) % k], ring[(i + 2) % k]) for i in range(k)]
        ears = [e for e in ears if orient_sign(*e) > 0]
        # minimal radius by an independent exact computation
        radii = {e: circumcircle_ref(*e)[1] for e in ears}
        assert witness in radii
        assert all(radii[witness] < r for e, r in radii.items() if e != witness)
        assert any(incircle_ref(*witness, q) > 0 for q in ring if q not in witness)

    def test_ear_queue_still_right(self):
        pts, deleted, witness = gen_heller()
        t = Triangulation(pts)
        delete_ear_queue(t, t.index[deleted])
        rest = [p for p in pts if p != deleted]
        assert t.triangle_set() == brute_force_dt(rest)
        assert witness not in t.triangle_set()

    def test_circumradius_exact(self):
        assert circumradius2((0, 0), (4, 0), (0, 4)) == 8
        assert circumradius2((0, 0), (1, 0), (0, 1)) == Fraction(1, 2)
        with pytest.raises(DegenerateError):
            circumradius2((0, 0), (1, 1), (2, 2))

    def test_no_witness_for_regular_star(self):
        pts = [(10, 0), (20, 10), (10, 20), (0, 10), (10, 10)]
        assert heller_witness(pts, (10, 10)) is None

    def test_corrupted_constant(self, monkeypatch):
        import deltri.verify as V
        monkeypatch.setattr(V, "_HELLER_POINTS",
                            ((10, 0), (20, 10), (10, 20), (0, 10), (10, 10)))
        monkeypatch.setattr(V, "_HELLER_DELETED", (10, 10))
        with pytest.raises(OracleError):
            V.gen_heller()


class TestInstances:
    def test_spec_validation(self):
        with pytest.raises(ValueError):
            InstanceSpec(InstanceKind.RANDOM_SQUARE, n=2)
        with pytest.raises(ValueError):
            InstanceSpec(InstanceKind.LOWER_BOUND, n=8, alpha=1)
        with pytest.raises(ValueError):
            InstanceSpec(InstanceKind.FILE)
        with pytest.raises(ValueError):
            InstanceSpec(InstanceKind.RANDOM_SQUARE, seed=-1)

    def test_generate(self):
        assert len(generate(InstanceSpec(InstanceKind.RANDOM_SQUARE, 50, 1))) == 50
        lb = generate(InstanceSpec(InstanceKind.LOWER_BOUND, 8, 1))
        assert len(lb) == 17
        assert generate(InstanceSpec(InstanceKind.HELLER)) == gen_heller()[0]

    def test_point_file_round_trip(self, tmp_path):
        pts = gen_random_square(40, 8)
        path = tmp_path / "pts.txt"
        write_points(path, pts, comment="forty points\nseed 8")
        text = path.read_text()
        assert text.startswith("# forty points\n# seed 8\n")
        assert read_points(path) == pts
        spec = InstanceSpec(InstanceKind.FILE, path=str(path))
        assert generate(spec) == pts

    def test_point_file_errors(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("1 2\n3\n")
        with pytest.raises(ValueError, match="bad.txt:2"):
            read_points(bad)
        bad.write_text("1 2\n-3 4\n")
        with pytest.raises(ValueError):
            read_points(bad)
        ok = tmp_path / "ok.txt"
        ok.write_text("# header\n\n1 2\n  # indented comment\n3 4\n")
        assert read_points(ok) == [(1, 2), (3, 4)]

# Walk through one ear-queue deletion, cell by cell.
#
# Run with:  python demos/ear_queue_walkthrough.py

# %% Build a small random triangulation
from deltri import Counters, Triangulation, delete, gen_random_square

pts = gen_random_square(60, seed=3)
counters = Counters()
t = Triangulation(pts, counters=counters)
print(t.n_vertices, len(t.finite_triangles()))

# %% Pick an interior vertex of high degree
inner = [v for v in t.vertices() if not t.is_hull_vertex(v)]
v = max(inner, key=t.degree)
ring = t.neighbors(v)
print("deleting", t.point(v), "of degree", len(ring))

# %% Delete it and record every ear cut along the way
counters.reset()
trace = []
delete(t, v, method="ear3", trace=trace)
for v0, v1, v2, pw in trace:
    print("cut", t.point(v0), t.point(v1), t.point(v2), "power", pw)

# %% Cost stays within 3k - 8 power computations
k = len(ring)
used = counters.power_full + counters.power_updates
print(f"k={k}: {used} power computations, budget {3 * k - 8}")
assert used <= 3 * k - 8

# %% The result is Delaunay again
print("delaunay:", t.is_delaunay(), "links consistent:", t.check_links())

# The instance that forces the ear queue to sort.
#
# A center vertex r is surrounded by n pairs (p_i, q_i).  Each q_i is the
# apex of an outer ear and the powers of those ears follow the radii x_i,
# so any correct ear order must sort the x_i.

# %% Generate a small instance
from deltri import Triangulation, delete, gen_lower_bound
from deltri.verify import LOWER_BOUND_CENTER, lower_bound_alpha

n = 16
ring_pts, center = gen_lower_bound(n, seed=1)
assert center == LOWER_BOUND_CENTER
pts = ring_pts + [center]
print("alpha =", lower_bound_alpha(n))

# %% The center links to all 2n ring points
t = Triangulation(pts)
r = t.index[center]
print("degree of center:", t.degree(r))

# %% Delete the center and watch which q's are cut first
rx, ry = center
trace = []
delete(t, r, method="ear3", trace=trace)
apex_dist = []
for _, v1, _, _ in trace:
    x, y = t.point(v1)
    apex_dist.append((x - rx) ** 2 + (y - ry) ** 2)
outer = apex_dist[:n]
print("outer-ear apex distances in pop order:")
print(outer)
print("descending:", outer == sorted(outer, reverse=True))

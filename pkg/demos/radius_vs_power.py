# Why ears are ranked by power and not by circumradius.
#
# The stored seven-point configuration has a hole whose smallest-radius ear
# is not Delaunay.  The power ranking picks a different, correct ear.

# %% Load the configuration
from deltri import Triangulation, delete, gen_heller
from deltri.predicates import _incircle_exact
from deltri.verify import circumradius2

pts, deleted, witness = gen_heller()
print("deleted vertex:", deleted)
print("smallest-radius ear:", witness)
print("its squared radius:", float(circumradius2(*witness)))

# %% The radius ear's circle swallows another hole vertex
t = Triangulation(pts)
ring = [t.point(q) for q in t.neighbors(t.index[deleted])]
inside = [q for q in ring if q not in witness and _incircle_exact(*witness, q) > 0]
print("hole vertices strictly inside its circle:", inside)

# %% Power-ordered ear cutting still yields a Delaunay triangulation
trace = []
delete(t, t.index[deleted], method="ear3", trace=trace)
first = tuple(t.point(x) for x in trace[0][:3])
print("first ear cut by power:", first)
print("delaunay:", t.is_delaunay())

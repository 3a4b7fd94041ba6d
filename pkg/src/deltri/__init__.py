"""Planar Delaunay triangulation with fast vertex deletion.

Points are pairs of 24-bit non-negative integers and every predicate is
exact.  Deleting a vertex of degree k with the ear queue costs O(k log k)
and at most 3k - 8 power computations.

>>> from deltri import Triangulation, delete
>>> t = Triangulation([(0, 0), (10, 0), (12, 7), (0, 6), (5, 3)])
>>> delete(t, t.index[(5, 3)])
>>> len(list(t.finite_triangles()))
2
"""

from .deletion import (METHODS, Ear, EarQueue, delete, delete_ear5, delete_ear_queue,
                       delete_edge_completion, delete_flip, delete_mixed, delete_small)
from .predicates import (Counters, CoordinateRangeError, DegenerateError, Order, Orientation,
                         Point, Position, PowerValue, compare_power, incircle, make_point,
                         orientation, power, power_update)
from .triangulation import (INFINITE, DuplicatePointError, HoleBoundary, Triangulation,
                            VertexError)
from .verify import (InstanceKind, InstanceSpec, brute_force_dt, delaunay_oracle,
                     gen_heller, gen_lower_bound, gen_random_square, read_points,
                     write_points)

__version__ = "0.1.0"

__all__ = [
    "METHODS", "Ear", "EarQueue", "delete", "delete_ear5", "delete_ear_queue",
    "delete_edge_completion", "delete_flip", "delete_mixed", "delete_small",
    "Counters", "CoordinateRangeError", "DegenerateError", "Order", "Orientation", "Point",
    "Position", "PowerValue", "compare_power", "incircle", "make_point", "orientation",
    "power", "power_update", "INFINITE", "DuplicatePointError", "HoleBoundary",
    "Triangulation", "VertexError", "InstanceKind", "InstanceSpec", "brute_force_dt",
    "delaunay_oracle", "gen_heller", "gen_lower_bound", "gen_random_square", "read_points",
    "write_points",
]

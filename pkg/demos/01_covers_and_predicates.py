"""
Covers of the cube and the four predicates
==========================================

Walks through the basic objects: hyperplanes with exact offsets, the
cube's vertices and edges as bitmasks, and the cover / skew / nondegenerate
/ slicing checks.
"""

# %%
# A hyperplane is an integer normal plus an exact rational offset. The
# constructor canonicalises: primitive normal, first nonzero entry positive.
from fractions import Fraction

import numpy as np

from hypercover import (
    Family,
    find_violation,
    hyperplane,
    incidence,
    is_cover,
    is_nondegenerate_cover,
    is_skew_cover,
    is_slicing_family,
    tight_cover,
    trivial_cover,
    axis_slicing_family,
)

h = hyperplane((-2, -2, 4), -2)
print(h, "| normal", h.normal, "| offset", h.offset)

# %%
# Vertices are n-bit integers (bit i holds x_{i+1}). Evaluating a plane on the
# whole cube is one vectorised pass.
from hypercover.geometry import covered_array, vertex_values

n = 3
print("values of <a,x> on the cube:", vertex_values(h.normal))
print("vertices on h:", np.flatnonzero(covered_array(h)))

# %%
# Two planes cover the cube, but only because they are parallel: every
# vertex has a neighbour on the same plane. That is the degenerate case.
triv = trivial_cover(4)
print(triv.planes)
print("cover:", is_cover(triv), "nondegenerate:", is_nondegenerate_cover(triv))
v = find_violation(triv)
print("violation at", v.vertex, "in direction", v.direction)

# %%
# The tight construction uses n skew planes and is nondegenerate.
for n in range(2, 7):
    f = tight_cover(n)
    print(n, len(f), is_cover(f), is_skew_cover(f), is_nondegenerate_cover(f))
print(tight_cover(4).planes[0])

# %%
# Incidence counts: how many planes of the family pass through each vertex.
idx = incidence(tight_cover(4))
print(idx.counts.reshape(4, 4))

# %%
# Slicing families: every edge has its endpoints strictly on opposite sides
# of some plane. The axis planes x_i = 1/2 are the obvious example.
ax = axis_slicing_family(3)
print(ax.planes, is_slicing_family(ax))
print("x1 + x2 = 1/2 alone slices every edge?",
      is_slicing_family(Family(2, [hyperplane((1, 1), Fraction(1, 2))])))

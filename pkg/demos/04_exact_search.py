"""
Exact minimum covers at small dimension
=======================================

The search module enumerates candidate planes (all affine sections of the
cube for the unrestricted modes, a coefficient box otherwise), deduplicates
them by behaviour and solves the resulting set cover exactly.
"""

# %%
from hypercover.search import (
    NONDEGENERATE,
    PLAIN,
    PUNCTURED,
    enumerate_sections,
    min_cover,
    min_slicing,
)

for n in range(1, 6):
    print(n, "sections:", len(enumerate_sections(n, False)))

# %%
# Two parallel planes always cover; nothing smaller does.
for n in range(1, 5):
    r = min_cover(n, PLAIN)
    print(n, r.minimum, r.optimal.planes)

# %%
# Every vertex except the origin: needs n planes.
for s in range(2, 5):
    r = min_cover(s, PUNCTURED)
    print(s, r.minimum, r.certified)

# %%
# Box-restricted searches report their scope.
r = min_cover(3, NONDEGENERATE, 2)
print(r.to_dict())

# %%
for C in (1, 2):
    print([min_slicing(n, C).minimum for n in range(1, 5)])

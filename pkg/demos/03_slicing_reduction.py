"""
From edge-slicing families to nondegenerate covers
==================================================

A slicing family with integer normals in [-C, C]^n turns into a
nondegenerate cover by replacing each plane with 2C integer translates.
Running the witness on the result bounds the slicing family's size.
"""

# %%
import random

from hypercover import axis_slicing_family, reduce_slicing_to_cover, run_pipeline
from hypercover.family import is_nondegenerate_cover, is_slicing_family
from hypercover.reduction import expand_hyperplane

ax = axis_slicing_family(4)
out = reduce_slicing_to_cover(ax, 1)
print(out.planes)
print("nondegenerate:", is_nondegenerate_cover(out), "| size", len(out), "= 2C|H| =", 2 * len(ax))

# %%
# One plane at a time: floor the offset, then take the translates around it.
from fractions import Fraction
from hypercover import hyperplane

rec = expand_hyperplane(hyperplane((2, -1, 1), Fraction(7, 10)), 2)
for h in rec.produced:
    print("  ", h)

# %%
# Random slicing families in the 2-box.
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from corpus import random_slicing_family  # noqa: E402

rng = random.Random(11)
for _ in range(5):
    n = rng.randint(3, 7)
    f = random_slicing_family(n, 2, rng)
    g = reduce_slicing_to_cover(f, 2)
    rep = run_pipeline(g)
    print(f"n={n} |H|={len(f)} |H'|={len(g)} slicing={is_slicing_family(f)} "
          f"|S|={len(rep.S)} certified={rep.certified}")

"""
Surveying every cograph of a given order
========================================

All cographs of order 15 are scanned through their cotrees, carrying
characteristic polynomials up the tree instead of building matrices.
"""

import time

from cospec import dgs_survey, realize
from cospec.graph import emit_graph6
from cospec.mates import complement_orbits

# %%
for n in range(10, 15):
    s = dgs_survey(n)
    print(n, s.total, s.with_mate_in_family)

# %%
t0 = time.perf_counter()
s = dgs_survey(15)
print(f"{s.total} cographs in {time.perf_counter() - t0:.1f}s")
for cls in s.classes:
    print([emit_graph6(realize(t)) for t in cls])
print("classes up to complement:", len(complement_orbits(s.classes)))

"""
Threshold graphs
================

Threshold graphs are built by adding isolated or dominating vertices.
No two share an adjacency spectrum, yet a fixed share of them collide
under the signless Laplacian.
"""

from cospec import check_lazzarin, realize_threshold
from cospec.graph import emit_graph6
from cospec.threshold import fraction_csv, fraction_row, q_collisions

# %%
print(emit_graph6(realize_threshold("iid")))  # the star K_{1,3}

# %%
print([check_lazzarin(n) for n in range(1, 11)])

# %%
print(fraction_csv(fraction_row(n) for n in range(4, 11)))

# %%
for grp in q_collisions(5):
    print([emit_graph6(g) for g in grp])

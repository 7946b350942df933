"""
Counting hierarchies and cographs
=================================

A hierarchy is a rooted tree with no unary vertices; a cograph is a
hierarchy plus a root label.  Counts come from an Euler-transform
recurrence and are checked against brute-force generation.
"""

from cospec import count_avoiding, count_cographs, count_hierarchies, enumerate_hierarchies
from cospec.enumeration import containment_fraction

# %%
# The first fifteen hierarchy counts, and those avoiding a two-leaf subtree
print(list(count_hierarchies(15)))
print(list(count_avoiding(15, 2)))

# %%
# Generation and counting agree
for n in range(1, 10):
    print(n, sum(1 for _ in enumerate_hierarchies(n)), count_hierarchies(n)[n])

# %%
# Every hierarchy of size >= 2 carries two cographs (root U or J)
print("cographs of order 15:", count_cographs(15))

# %%
# Share of hierarchies containing a fixed size-9 subtree grows very slowly
for n in (9, 20, 50, 100, 200):
    print(n, float(containment_fraction(n, 9)))

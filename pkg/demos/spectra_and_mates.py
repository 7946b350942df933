"""
Generalized spectra and cospectral mates
========================================

Two graphs are generalized cospectral when both they and their complements
share characteristic polynomials.  A non-cograph mate of one order-9 cograph
lets any cotree containing that cograph's cotree be given a mate.
"""

import random
from pathlib import Path

from cospec import (BasePair, are_isomorphic, construct_mate, gen_spectrum, induced_p4_exists,
                    parse_graph6, realize, verify_union_join)
from cospec.graph import path_graph
from cospec.sampling import random_cotree_containing

DATA = Path(__file__).resolve().parents[1] / "data"

# %%
# The smallest pair of generalized cospectral cographs has 15 vertices
g = parse_graph6("N]?GWWGAGP@FAMAM@F?")
h = parse_graph6("Ns_??KF@oK?p@a@b_po")
print(gen_spectrum(g) == gen_spectrum(h), are_isomorphic(g, h))
print("p :", gen_spectrum(g).p)
print("pc:", gen_spectrum(g).pc)

# %%
# The order-9 base pair (see ``cospec discover``): L is P4-free, R is not
base = BasePair.load(DATA / "basepair.txt")
print(base.dump())
print(induced_p4_exists(base.L), induced_p4_exists(base.R))

# %%
# Swap the matching subtree of a larger cotree for R
rng = random.Random(1)
t = random_cotree_containing(base.tstar, 20, rng)
mate = construct_mate(t, base)
print(t)
print(gen_spectrum(realize(t)) == gen_spectrum(mate), are_isomorphic(realize(t), mate))

# %%
# Union and join with any third graph keep the pair cospectral
print(verify_union_join(base.L, base.R, path_graph(4)))

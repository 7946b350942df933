"""
Radii and growth constants
==========================

Hierarchy counts grow like ``C * rho**-n * n**-1.5``.  The radius ``rho``
solves a one-dimensional equation built from the exact coefficient table;
forbidding one size-m subtree nudges ``rho`` up by a tiny amount.
"""

import mpmath as mp

from cospec import growth_constant, half_threshold, mate_fraction_asymptote
from cospec.acceptance import fit_errors

# %%
for m in (None, 2, 9, 15):
    est = growth_constant(m)
    print(f"m={m}: rho={mp.nstr(est.rho, 17)}  C={mp.nstr(est.C, 17)}")

# %%
# Ratio of the two radii and the size at which half of all hierarchies
# contain the pattern (exponential factor only)
for m in (9, 15):
    print(m, mp.nstr(mate_fraction_asymptote(m).ratio_base, 16), half_threshold(m))

# %%
# The leading-term estimate against exact counts
errs = fit_errors(None)
for n in (300, 350, 400):
    print(n, mp.nstr(errs[n], 5))

"""
Which heights occur for a fixed smallest prime?
===============================================

For fixed p, list every height A(pqr) over a box of primes q < r. This is
evidence only: a finite box proves nothing about the maximum.
"""

# %%
from cycloheights.constructions import explore_M

for p, q_max, r_max in [(3, 60, 60), (5, 40, 120), (7, 30, 120)]:
    res = explore_M(p, q_max, r_max)
    print(p, res.attained, "full interval" if res.full_interval else "gaps", res.witnesses)

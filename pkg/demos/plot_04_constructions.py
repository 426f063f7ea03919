"""
Triples of prescribed height
============================

For an odd prime p, choosing q = 2 (mod p) and r = (pq +- 1)/2 (mod pq)
gives height (p+1)/2. The same recipe works for odd composite p with
explicit q = 2 + (2k+1)p and r = (pq+1)/2 + l*pq.
"""

# %%
from cycloheights import height, lemma1_triple, lemma2_range, lemma4_triple

for p in (3, 5, 7, 11, 13):
    c = lemma1_triple(p)
    print(p, c.triple.as_tuple(), c.detail["r_sign"], "predicted", c.predicted_height, "computed", height(c.triple).height)

# %%
for p, k, l in [(9, 0, 0), (15, 0, 0), (15, 1, 2)]:
    c = lemma4_triple(p, k, l)
    print(c.triple.as_tuple(), "->", height(c.triple).height)

# %%
# Starting from a prime p, a whole range of heights is reachable.
for p in (3, 5, 11, 101):
    print(p, lemma2_range(p).heights)

"""
Jump sequences and a prime chain
================================

Replacing the smallest entry s by s + qr changes the height by 0 or 1.
Iterating (p, q, r) -> (q, r, p + qr) gives a nondecreasing height sequence.
"""

# %%
from cycloheights.constructions import jump_probe, jump_sequence, prime_chain

seq = jump_sequence((3, 7, 11), 3)
print("heights:", seq.heights, "stop:", seq.stop_reason)
for step in seq.steps:
    print(step.before.as_tuple(), "->", step.after.as_tuple(), "jumped" if step.jumped else "")

# %%
# The prime version takes the smallest prime in the class instead of p + qr.
chain = prime_chain((3, 7, 11), 2)
for t, h in chain.links:
    print(t.as_tuple(), h)

# %%
print(jump_probe(7, 11, 3))
print(jump_probe(3, 5, 2))

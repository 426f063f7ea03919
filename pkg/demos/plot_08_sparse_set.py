"""
A sparse set of primes
======================

Three families of primes grow fast enough that their union has fewer than
log x elements up to x, once a few small elements are dropped, while still
containing the residue classes the witness recipe needs.
"""

# %%
from cycloheights.sparse import (
    build_sparse_set,
    check_bound_everywhere,
    check_P_properties,
    count_P,
    family_threshold,
    trim_small,
)

S = build_sparse_set(10**6)
for name, run in S.runs.items():
    print(name, run.values, "(saturated)" if run.saturated else "")
print("complete up to", S.covered_to)

# %%
T = trim_small(S)
print("removed:", T.removed)
print("failures up to 10^6:", check_bound_everywhere(T, 10**6))
for x in (100, 10**4, 10**6):
    rep = count_P(x, T)
    print(x, rep.count, round(rep.log_x, 2), rep.bound_ok)

# %%
print("x0 for q/r:", family_threshold(T, "qr", T.covered_to))
print("x0 for p:", family_threshold(T, "p", T.covered_to))

# %%
rep = check_P_properties(9, 1, S)
print(rep.p1, rep.p2, rep.p3)

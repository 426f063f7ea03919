"""
Cross-checking against the slow oracle
======================================

The oracle divides x^n - 1 by the smaller cyclotomic factors with exact
integer long division. It shares no code with the fast kernels.
"""

# %%
import time

from cycloheights import inclusion_exclusion_coeffs, phi_coeffs
from cycloheights.oracle import oracle_inclusion_exclusion, oracle_phi

t0 = time.perf_counter()
mismatches = [n for n in range(1, 1001) if oracle_phi(n).tolist() != phi_coeffs(n).tolist()]
print(f"n <= 1000: {len(mismatches)} mismatches in {time.perf_counter() - t0:.1f}s")

# %%
for t in [(3, 5, 7), (9, 11, 50), (5, 7, 53), (4, 9, 25)]:
    same = oracle_inclusion_exclusion(t).tolist() == inclusion_exclusion_coeffs(t).tolist()
    print(t, "agree" if same else "DISAGREE")

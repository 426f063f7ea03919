"""
Coefficients and heights
========================

Cyclotomic polynomials up to n = 104 only have coefficients in {-1, 0, 1}.
The first larger coefficient shows up at n = 105.
"""

# %%
from cycloheights import height, phi_coeffs, reduce_to_core

print("Phi_15:", phi_coeffs(15).tolist())

small = [height(n).height for n in range(1, 105)]
print("largest height for n <= 104:", max(small))

rec = height(105)
print(f"A(105) = {rec.height}, first reached at x^{rec.extremal_index}")

# %%
# Powers of a prime and a factor 2 do not change the height: the polynomial
# for n is a stretched (and possibly sign-twisted) copy of the one for its
# odd squarefree core.
for n in (12, 210, 4 * 105, 9 * 35):
    red = reduce_to_core(n)
    print(f"n = {n}: core {red.core}, heights {red.height_n} and {red.height_core}")

# %%
# Ternary triples need not be prime. Any pairwise coprime p, q, r > 2 define
# an inclusion-exclusion polynomial; for three primes it is Phi_pqr.
print("A(3,7,11) =", height((3, 7, 11)).height)
print("A(9,11,50) =", height((9, 11, 50)).height)
print("A(7,11,157) =", height((7, 11, 157)).height)

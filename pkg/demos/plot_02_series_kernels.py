"""
Truncated series with binomial factors
======================================

Every polynomial here is a product of factors (1 - x^k) and their inverses,
evaluated as a truncated power series with two strided numpy kernels.
"""

# %%
import numpy as np

from cycloheights.cyclo import ternary_factors
from cycloheights.series import apply_factors, div_binomial, max_abs, mul_binomial, one, stream_max_abs

s = one(10)
s = div_binomial(s, 3)
print("1/(1-x^3):", s.tolist())
print("times (1-x^3):", mul_binomial(s, 3).tolist())

# %%
# The ternary product uses a fixed factor order. Dense evaluation keeps the
# whole buffer; streaming keeps only ring buffers as long as each stride and
# gives the same height and first extremal index.
p, q, r = 11, 157, 3461
length = (p - 1) * (q - 1) * (r - 1) + 1
factors = ternary_factors(p, q, r)
print("factors:", factors)
print("dense :", max_abs(apply_factors(length, factors)))
print("stream:", stream_max_abs(length, factors, block=1 << 16))

# %%
# Self-reciprocity holds for every triple we have computed.
c = apply_factors(length, factors).coeffs
print("palindromic:", bool(np.array_equal(c, c[::-1])))

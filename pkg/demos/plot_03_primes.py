"""
Primes in arithmetic progressions
=================================

Every construction picks the smallest prime in some residue class above a
bound. Primality is a deterministic Miller-Rabin test, exact below 2^64.
"""

# %%
from cycloheights.primes import APQuery, is_prime, next_prime_in_ap, small_primes

print(is_prime(3461), is_prime(3215031751), is_prime(2**61 - 1))
print("primes below 50:", small_primes(50))

# %%
# The smallest prime = 3 (mod 77) above 11:
print(next_prime_in_ap(APQuery(3, 77, 11)))

# %%
# A search cap turns an unlucky progression into a clear error instead of a hang.
from cycloheights.errors import SearchExhaustedError

try:
    next_prime_in_ap(APQuery(3, 115, 3, search_cap=200), stage="p")
except SearchExhaustedError as exc:
    print("gave up:", exc)

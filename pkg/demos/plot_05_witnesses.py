"""
Witnesses for every target height
=================================

With p' = 2h - 1 pick primes q = 2 (mod p'), r = (p'q+1)/2 (mod p'q) and
p = p' (mod qr). The resulting ternary cyclotomic polynomial has height h or
h + 1. Each certificate is re-verified from scratch.
"""

# %%
from cycloheights import theorem1_witness, verify_certificate

for h in range(1, 8):
    cert = theorem1_witness(h)
    print(h, cert.triple, cert.computed_height, cert.case.value, verify_certificate(cert) or "ok")

# %%
# Forcing p > p' keeps the minimum prime large; the height is still h or h+1.
cert = theorem1_witness(2, strict_larger_p=True)
print(cert.triple, cert.computed_height)

# %%
# Scan several admissible choices for instances of both outcomes.
from cycloheights.constructions import scan_b2_cases

for row in scan_b2_cases(3, n_q=2, n_r=2, n_p=1, max_degree=3_000_000):
    print(row)

"""Slow reference arithmetic on exact integer polynomials.

Nothing here touches :mod:`cycloheights.series`; coefficients are Python
integers in plain lists and every quotient comes from schoolbook long
division whose remainder is checked to be zero. Used to cross-check the
fast kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConsistencyError, DomainError

PHI_LIMIT = 10**5
IE_LIMIT = 10**6
_INT64 = 2**63


@dataclass(frozen=True)
class DensePoly:
    """Integer polynomial, constant term first, no trailing zeros."""

    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        for i, v in enumerate(c):
            if not -_INT64 <= v < _INT64:
                raise OverflowError(f"coefficient {i} does not fit in 64 bits")
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def height(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def tolist(self):
        return list(self.coeffs)


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def binomial(k: int) -> list[int]:
    """``x**k - 1``."""
    c = [0] * (k + 1)
    c[0], c[k] = -1, 1
    return c


def poly_mul(a, b) -> list[int]:
    """Schoolbook product, skipping zero terms of either factor."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    bt = [(j, v) for j, v in enumerate(b) if v]
    for i, u in enumerate(a):
        if u:
            for j, v in bt:
                out[i + j] += u * v
    return _trim(out)


def poly_divmod(num, den) -> tuple[list[int], list[int]]:
    """Long division over the integers; the divisor must be monic up to sign."""
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = den[-1]
    if lead not in (1, -1):
        raise DomainError("divisor must have leading coefficient +-1")
    rem = list(num)
    dn = len(den) - 1
    if len(rem) - 1 < dn:
        return [], _trim(rem)
    quo = [0] * (len(rem) - dn)
    lower = [(j, v) for j, v in enumerate(den[:-1]) if v]
    for i in range(len(rem) - 1, dn - 1, -1):
        c = rem[i]
        if not c:
            continue
        c *= lead
        base = i - dn
        quo[base] = c
        rem[i] = 0
        for j, v in lower:
            rem[base + j] -= c * v
    return _trim(quo), _trim(rem[:dn])


def exact_div(num, den) -> list[int]:
    quo, rem = poly_divmod(num, den)
    if rem:
        raise ConsistencyError(f"nonzero remainder of degree {len(rem) - 1} in exact division")
    return quo


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _smallest_prime_factor(n):
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


@lru_cache(maxsize=None)
def _phi(n: int) -> tuple:
    if n == 1:
        return (-1, 1)
    # x^n - 1 = (x^{n/p} - 1) * prod of Phi_d over the divisors d of n
    # that do not divide n/p; divide those out one at a time. The smallest
    # p leaves the least dense division work.
    p = _smallest_prime_factor(n)
    cur = exact_div(binomial(n), binomial(n // p))
    for d in _divisors(n):
        if d != n and (n // p) % d != 0:
            cur = exact_div(cur, _phi(d))
    return tuple(cur)


def oracle_phi(n: int) -> DensePoly:
    """n-th cyclotomic polynomial by divisor recursion on ``x**n - 1``."""
    if int(n) != n or not 1 <= n <= PHI_LIMIT:
        raise DomainError(f"oracle_phi handles 1 <= n <= {PHI_LIMIT}, got {n}")
    return DensePoly(_phi(int(n)))


def oracle_inclusion_exclusion(t) -> DensePoly:
    """``Q_{p,q,r}`` by multiplying out the numerator and dividing by each denominator factor."""
    p, q, r = (int(v) for v in t)
    if min(p, q, r) <= 2 or math.gcd(p, q) != 1 or math.gcd(q, r) != 1 or math.gcd(p, r) != 1:
        raise DomainError(f"({p}, {q}, {r}) is not a pairwise coprime triple of integers > 2")
    if p * q * r > IE_LIMIT:
        raise DomainError(f"oracle_inclusion_exclusion needs pqr <= {IE_LIMIT}, got {p * q * r}")
    num = binomial(p * q * r)
    for k in (p, q, r):
        num = poly_mul(num, binomial(k))
    for k in (p * q, q * r, r * p, 1):
        num = exact_div(num, binomial(k))
    return DensePoly(tuple(num))

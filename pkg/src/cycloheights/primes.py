"""Exact primality for 64-bit integers and capped prime searches in progressions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError, SearchExhaustedError

UINT64_LIMIT = 2**64
DEFAULT_AP_CAP = 2**40
SIEVE_LIMIT = 10**9

_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
# The first twelve primes are a strong-pseudoprime witness set for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for all ``0 <= n < 2**64``."""
    n = int(n)
    if n < 0 or n >= UINT64_LIMIT:
        raise DomainError(f"is_prime is defined on 64-bit nonnegative integers, got {n}")
    if n < 2:
        return False
    for p in _SMALL:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_strong_probable_prime(n, a, d, s) for a in _MR_BASES)


@dataclass(frozen=True)
class APQuery:
    """Smallest prime ``> lower_bound`` with ``p = residue (mod modulus)``, at most ``search_cap``."""

    residue: int
    modulus: int
    lower_bound: int
    search_cap: int = DEFAULT_AP_CAP

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError(f"modulus must be positive, got {self.modulus}")
        if self.residue < 0:
            raise DomainError(f"residue must be nonnegative, got {self.residue}")
        if self.search_cap <= self.lower_bound:
            raise DomainError("search_cap must exceed lower_bound")
        if math.gcd(self.residue % self.modulus, self.modulus) != 1:
            raise DomainError(
                f"class {self.residue} mod {self.modulus} is not coprime to the modulus"
            )


def next_prime_in_ap(query: APQuery, stage: str | None = None) -> int:
    """Linear scan ``a, a+m, a+2m, ...`` for the first prime above the lower bound."""
    a, m = query.residue % query.modulus, query.modulus
    lo = query.lower_bound
    cap = min(query.search_cap, UINT64_LIMIT - 1)
    if lo < a:
        c = a
    else:
        c = a + ((lo - a) // m + 1) * m
    while c <= cap:
        if is_prime(c):
            return c
        c += m
    if query.search_cap > cap:
        raise OverflowError(f"search for {a} mod {m} stepped past 64 bits")
    raise SearchExhaustedError(
        f"no prime = {a} mod {m} in ({lo}, {query.search_cap}]", stage=stage
    )


def small_primes(limit: int, max_limit: int = SIEVE_LIMIT) -> list[int]:
    """All primes ``<= limit`` by an odd-only sieve of Eratosthenes."""
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    if limit > max_limit:
        raise ResourceError(f"sieve limit {limit} exceeds the configured maximum {max_limit}")
    # sieve[i] represents 2*i + 1
    size = (limit - 1) // 2 + 1
    sieve = np.ones(size, dtype=bool)
    sieve[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if sieve[i]:
            p = 2 * i + 1
            sieve[p * p // 2 :: p] = False
    return [2] + (2 * np.flatnonzero(sieve) + 1).tolist()


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for the sizes used here."""
    n = int(n)
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result

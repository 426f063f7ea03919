"""Coefficients and heights of cyclotomic and ternary inclusion-exclusion polynomials.

Both families are products of binomials. For squarefree ``m > 1``

    Phi_m(x) = prod_{d | m} (1 - x**d) ** mu(m / d)

(the signs of ``x**d - 1`` cancel because there are as many factors up as
down), and for pairwise coprime ``p, q, r > 2``

    Q_{p,q,r}(x) = (1-x^pqr)(1-x^p)(1-x^q)(1-x^r) / ((1-x^pq)(1-x^qr)(1-x^rp)(1-x)).

Either product is expanded as a truncated power series of length
``degree + 1``; the result is exact because the true quotient is a
polynomial of that degree. General ``n`` goes through its radical:
``Phi_n(x) = Phi_rad(n)(x ** (n / rad(n)))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Union

import numpy as np

from . import config
from .errors import DomainError, ResourceError
from .primes import factorize
from .series import CoeffSeries, apply_factors, max_abs, stream_max_abs


@dataclass(frozen=True)
class TernaryTriple:
    """Pairwise coprime integers, each greater than 2."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        vals = (self.p, self.q, self.r)
        for v in vals:
            if int(v) != v or v <= 2:
                raise DomainError(f"triple entries must be integers > 2, got {vals}")
        for a, b in combinations(vals, 2):
            if math.gcd(a, b) != 1:
                raise DomainError(f"triple {vals} is not pairwise coprime: gcd({a}, {b}) = {math.gcd(a, b)}")
        if self.degree >= 2**63 - 1:
            raise DomainError(f"degree of {vals} does not fit in 64 bits")

    @property
    def degree(self) -> int:
        return (self.p - 1) * (self.q - 1) * (self.r - 1)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def __iter__(self):
        return iter(self.as_tuple())


Subject = Union[int, TernaryTriple, tuple]


@dataclass(frozen=True)
class HeightRecord:
    subject: Union[int, tuple]
    height: int
    degree: int
    extremal_index: int
    method: str = "dense"

    def as_dict(self):
        subj = self.subject if isinstance(self.subject, int) else list(self.subject)
        key = "n" if isinstance(self.subject, int) else "triple"
        return {
            key: subj,
            "height": self.height,
            "degree": self.degree,
            "extremal_index": self.extremal_index,
            "method": self.method,
        }


def radical(n: int) -> int:
    return math.prod(factorize(n)) if n > 1 else 1


def mobius_factors(m: int) -> list[tuple[str, int]]:
    """Binomial factors of ``Phi_m`` for squarefree ``m > 1``, muls and divs interleaved."""
    primes = sorted(factorize(m))
    if math.prod(primes) != m:
        raise DomainError(f"{m} is not squarefree")
    ups, downs = [], []
    for size in range(len(primes) + 1):
        for combo in combinations(primes, size):
            d = m // math.prod(combo)
            (ups if size % 2 == 0 else downs).append(d)
    ups.sort()
    downs.sort()
    out = []
    for u, d in zip(ups, downs):
        out += [("mul", u), ("div", d)]
    return out


def ternary_factors(p: int, q: int, r: int) -> list[tuple[str, int]]:
    # canonical order; the pqr factor comes last (it never touches the retained terms)
    return [
        ("mul", p), ("div", 1),
        ("mul", q), ("div", p * q),
        ("mul", r), ("div", q * r),
        ("div", r * p), ("mul", p * q * r),
    ]


def _check_budget(length: int, budget: int | None):
    budget = config.get_config().buffer_budget if budget is None else budget
    if length > budget:
        raise ResourceError(f"{length} coefficients exceed the buffer budget of {budget}")


def _squarefree_phi(m: int) -> CoeffSeries:
    if m == 1:
        return CoeffSeries(np.array([-1, 1], dtype=np.int64))
    deg = math.prod(p - 1 for p in factorize(m))
    return apply_factors(deg + 1, mobius_factors(m))


def phi_coeffs(n: int, budget: int | None = None) -> CoeffSeries:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    n = int(n)
    m = radical(n)
    stretch = n // m
    deg = stretch * math.prod(p - 1 for p in factorize(m)) if m > 1 else 1
    _check_budget(deg + 1, budget)
    base = _squarefree_phi(m)
    if stretch == 1:
        return base
    out = np.zeros(deg + 1, dtype=np.int64)
    out[::stretch] = base.coeffs
    return CoeffSeries(out)


def _as_triple(t) -> TernaryTriple:
    return t if isinstance(t, TernaryTriple) else TernaryTriple(*t)


def inclusion_exclusion_coeffs(t, budget: int | None = None) -> CoeffSeries:
    """Coefficients of ``Q_{p,q,r}`` for a pairwise coprime triple."""
    t = _as_triple(t)
    _check_budget(t.degree + 1, budget)
    return apply_factors(t.degree + 1, ternary_factors(*t))


def _conventional(vals):
    small = [v for v in vals if v in (1, 2)]
    if not small:
        return None
    if len(small) > 1:
        raise DomainError(f"at most one conventional entry (1 or 2) is allowed, got {vals}")
    a, b = [v for v in vals if v not in (1, 2)]
    if a <= 2 or b <= 2 or math.gcd(a, b) != 1:
        raise DomainError(f"the other two entries must be coprime and > 2, got {vals}")
    s = small[0]
    if s == 1:
        return HeightRecord(tuple(vals), 0, 0, 0, "convention")
    return HeightRecord(tuple(vals), 1, (a - 1) * (b - 1), 0, "convention")


def height(subject: Subject, method: str = "auto", budget: int | None = None) -> HeightRecord:
    """Height (largest coefficient magnitude) of ``Phi_n`` or of ``Q_{p,q,r}``.

    ``subject`` is an integer ``n`` or a triple. A triple containing 1 or 2
    gets the conventional value ``A(p,q,1) = 0``, ``A(p,q,2) = 1``.
    ``method`` is ``"dense"``, ``"stream"`` or ``"auto"``; auto streams only
    when the dense buffer would exceed the budget.
    """
    if method not in ("auto", "dense", "stream"):
        raise DomainError(f"unknown method {method!r}")
    cfg = config.get_config()
    budget = cfg.buffer_budget if budget is None else budget

    if isinstance(subject, (int, np.integer)):
        n = int(subject)
        if n < 1:
            raise DomainError(f"n must be a positive integer, got {n}")
        m = radical(n)
        stretch = n // m
        if m == 1:
            return HeightRecord(n, 1, 1, 0)
        base_deg = math.prod(p - 1 for p in factorize(m))
        length, factors = base_deg + 1, mobius_factors(m)
        label, deg = n, base_deg * stretch
    else:
        vals = tuple(int(v) for v in subject)
        if len(vals) != 3:
            raise DomainError(f"a triple needs three entries, got {vals}")
        conv = _conventional(vals)
        if conv is not None:
            return conv
        t = _as_triple(vals)
        length, factors = t.degree + 1, ternary_factors(*t)
        label, deg, stretch = vals, t.degree, 1

    use_stream = method == "stream" or (method == "auto" and length > budget)
    if use_stream:
        value, idx = stream_max_abs(length, factors, block=cfg.stream_block, budget=budget)
        kind = "stream"
    else:
        _check_budget(length, budget)
        value, idx = max_abs(apply_factors(length, factors))
        kind = "dense"
    return HeightRecord(label, value, deg, idx * stretch, kind)


@dataclass(frozen=True)
class CoreReduction:
    n: int
    core: int
    height_n: int
    height_core: int

    @property
    def same_height(self) -> bool:
        return self.height_n == self.height_core


def reduce_to_core(n: int) -> CoreReduction:
    """Odd squarefree core of ``n`` together with both heights for comparison."""
    if int(n) != n or n < 3:
        raise DomainError(f"reduce_to_core needs n >= 3, got {n}")
    n = int(n)
    rad = radical(n)
    core = rad // 2 if rad % 2 == 0 and rad > 2 else rad
    return CoreReduction(n, core, max_abs(phi_coeffs(n))[0], max_abs(phi_coeffs(core))[0])

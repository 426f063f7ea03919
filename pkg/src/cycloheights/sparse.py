"""A thin set of primes that still supports every witness construction.

Three families are generated, always taking the smallest admissible prime:

* ``q_n``: ``q_1 = 5``, then ``q_n = 2 (mod 1*3*...*(2n+1))`` above ``q_{n-1}``;
* ``r_n``: ``r_1 = 5``, then ``r_n = (M+1)/2 (mod M)`` above ``max(M, r_{n-1})``
  with ``M = 1*3*...*(2n+1)``;
* ``p_n(a)``: with ``pi_k`` the smallest odd prime above ``a**a``,
  ``p_1(a) = a (mod pi_k)`` above ``pi_k**3`` and
  ``p_{n+1}(a) = a (mod pi_k * ... * pi_{k+n})`` above ``p_n(a)**3``.

Everything lives in 64 bits; a family whose next element cannot be reached
below ``2**64`` stops with ``saturated=True``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DomainError, SearchExhaustedError
from .primes import UINT64_LIMIT, APQuery, is_prime, next_prime_in_ap

INT64_MAX = 2**63 - 1


class Family(str, enum.Enum):
    Q_SEQ = "Q_SEQ"
    R_SEQ = "R_SEQ"
    P_SEQ = "P_SEQ"


@dataclass(frozen=True)
class SparseSetElement:
    value: int
    family: Family
    index: int
    modulus_used: int
    a: int | None = None

    def to_json(self):
        d = {"value": self.value, "family": self.family.value, "index": self.index, "modulus_used": self.modulus_used}
        if self.a is not None:
            d["a"] = self.a
        return d


@dataclass
class FamilyRun:
    elements: list[SparseSetElement]
    saturated: bool = False
    notice: str | None = None

    @property
    def values(self):
        return [e.value for e in self.elements]


def odd_factorial(n: int) -> int:
    """``1 * 3 * 5 * ... * (2n+1)``, required to fit a signed 64-bit integer."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    out = math.prod(range(1, 2 * n + 2, 2))
    if out > INT64_MAX:
        raise OverflowError(f"odd_factorial({n}) = {out} does not fit in 64 bits")
    return out


def _search(residue, modulus, lower):
    if lower >= UINT64_LIMIT - 1:
        raise OverflowError("lower bound already past 64 bits")
    return next_prime_in_ap(APQuery(residue, modulus, lower, UINT64_LIMIT))


def gen_q_sequence(count: int) -> FamilyRun:
    if count < 1:
        raise DomainError("count must be >= 1")
    run = FamilyRun([SparseSetElement(5, Family.Q_SEQ, 1, 1)])
    for n in range(2, count + 1):
        try:
            m = odd_factorial(n)
            v = _search(2, m, run.elements[-1].value)
        except OverflowError as exc:
            run.saturated, run.notice = True, f"q_{n}: {exc}"
            break
        run.elements.append(SparseSetElement(v, Family.Q_SEQ, n, m))
    return run


def gen_r_sequence(count: int) -> FamilyRun:
    if count < 1:
        raise DomainError("count must be >= 1")
    run = FamilyRun([SparseSetElement(5, Family.R_SEQ, 1, 1)])
    for n in range(2, count + 1):
        try:
            m = odd_factorial(n)
            v = _search((m + 1) // 2, m, max(m, run.elements[-1].value))
        except OverflowError as exc:
            run.saturated, run.notice = True, f"r_{n}: {exc}"
            break
        run.elements.append(SparseSetElement(v, Family.R_SEQ, n, m))
    return run


def base_prime(a: int) -> int:
    """Smallest odd prime exceeding ``a**a``."""
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    c = a**a + 1
    while c == 2 or not is_prime(c):
        c += 1
    return c


def _next_prime(c):
    c += 1
    while not is_prime(c):
        c += 1
    return c


def gen_p_sequence(a: int, count: int) -> FamilyRun:
    if count < 1:
        raise DomainError("count must be >= 1")
    pk = base_prime(a)
    run = FamilyRun([])
    modulus, top, lower = pk, pk, pk**3
    for n in range(1, count + 1):
        if n > 1:
            top = _next_prime(top)
            modulus *= top
            lower = run.elements[-1].value ** 3
        try:
            v = _search(a, modulus, lower)
        except OverflowError as exc:
            run.saturated, run.notice = True, f"p_{n}({a}): {exc}"
            break
        run.elements.append(SparseSetElement(v, Family.P_SEQ, n, modulus, a))
    return run


# -- the assembled set -----------------------------------------------------


@dataclass
class SparseSet:
    """Union of the generated families, complete for all values ``<= covered_to``."""

    elements: list[SparseSetElement]
    covered_to: int
    runs: dict = field(default_factory=dict)
    removed: list[int] = field(default_factory=list)

    @property
    def values(self) -> list[int]:
        return sorted({e.value for e in self.elements})

    def family_values(self, family: Family) -> list[int]:
        return sorted({e.value for e in self.elements if e.family == family})

    def dump(self, x_max: int | None = None):
        """Elements sorted by value, family tags kept; shared values appear once per family."""
        for e in sorted(self.elements, key=lambda e: (e.value, e.family.value)):
            if x_max is None or e.value <= x_max:
                yield e


def _run_until(gen, x_max, *args):
    count = 1
    while True:
        run = gen(*args, count)
        if run.saturated or run.elements and run.elements[-1].value > x_max:
            return run
        count += 1


def build_sparse_set(x_max: int) -> SparseSet:
    """Generate every family far enough that the set is complete up to ``x_max``."""
    if x_max < 1:
        raise DomainError("x_max must be positive")
    runs = {"q": _run_until(gen_q_sequence, x_max), "r": _run_until(gen_r_sequence, x_max)}
    a = 1
    while base_prime(a) ** 3 < x_max:
        runs[f"p{a}"] = _run_until(gen_p_sequence, x_max, a)
        a += 1
    covered = min(
        UINT64_LIMIT - 1 if run.saturated else run.elements[-1].value for run in runs.values()
    )
    # families for a' >= a start above base_prime(a)**3
    covered = min(covered, base_prime(a) ** 3)
    elements = [e for run in runs.values() for e in run.elements]
    return SparseSet(elements, covered, runs)


@dataclass(frozen=True)
class CountReport:
    x: int
    count: int
    log_x: float
    bound_ok: bool
    count_qr: int
    count_p: int
    half_log_x: float

    @property
    def qr_ok(self):
        return self.count_qr < self.half_log_x

    @property
    def p_ok(self):
        return self.count_p < self.half_log_x


def count_P(x: int, generated: SparseSet) -> CountReport:
    """Number of distinct set elements ``<= x`` against ``log x`` (natural log)."""
    if x > generated.covered_to:
        raise DomainError(
            f"set is only complete up to {generated.covered_to}; build it with x_max >= {x}"
        )
    vals = [v for v in generated.values if v <= x]
    qr = {e.value for e in generated.elements if e.family != Family.P_SEQ and e.value <= x}
    pv = {e.value for e in generated.elements if e.family == Family.P_SEQ and e.value <= x}
    lg = math.log(x) if x > 0 else float("-inf")
    return CountReport(x, len(vals), lg, len(vals) < lg, len(qr), len(pv), lg / 2)


def _violations(values):
    """Sorted element values at which the running count reaches ``log`` of the value."""
    v = np.asarray(values, dtype=np.float64)
    counts = np.arange(1, v.size + 1)
    return counts >= np.log(v)


def trim_small(generated: SparseSet) -> SparseSet:
    """Drop the fewest smallest elements so ``count(x) < log x`` for all ``3 <= x <= covered_to``.

    The counting function only steps up at element values, so checking at
    each element (where the log is smallest for that count) covers every x.
    """
    vals = [v for v in generated.values if v <= generated.covered_to]
    drop = 0
    while drop < len(vals) and _violations(vals[drop:]).any():
        drop += 1
    gone = set(vals[:drop])
    kept = [e for e in generated.elements if e.value not in gone]
    return SparseSet(kept, generated.covered_to, generated.runs, sorted(generated.removed + list(gone)))


def check_bound_everywhere(generated: SparseSet, x_hi: int, x_lo: int = 3) -> list[int]:
    """Integers ``x`` in ``[x_lo, x_hi]`` with ``count_P(x) >= log x`` (empty means the bound holds)."""
    if x_hi > generated.covered_to:
        raise DomainError(f"set is only complete up to {generated.covered_to}")
    xs = np.arange(x_lo, x_hi + 1, dtype=np.int64)
    vals = np.asarray(generated.values, dtype=np.int64)
    counts = np.searchsorted(vals, xs, side="right")
    bad = xs[counts >= np.log(xs.astype(np.float64))]
    return bad.tolist()


def family_threshold(generated: SparseSet, family: str, x_hi: int) -> int | None:
    """Smallest ``x_0`` such that the family's count stays below ``(1/2) log x`` on ``[x_0, x_hi]``.

    ``family`` is ``"qr"`` (the q and r sequences together) or ``"p"``.
    Returns ``None`` when the bound fails at ``x_hi`` itself.
    """
    if family == "qr":
        vals = sorted({e.value for e in generated.elements if e.family != Family.P_SEQ})
    elif family == "p":
        vals = sorted({e.value for e in generated.elements if e.family == Family.P_SEQ})
    else:
        raise DomainError(f"family must be 'qr' or 'p', got {family!r}")
    vals = [v for v in vals if v <= x_hi]
    half = lambda x: math.log(x) / 2  # noqa: E731
    if len(vals) >= half(x_hi):
        return None
    # scan the step points downward; the count on [v_i, v_{i+1}) is i + 1
    x0 = 3
    for i in range(len(vals) - 1, -1, -1):
        if i + 1 >= half(vals[i]):
            # fails at vals[i]; holds from the first x where log x / 2 > i + 1
            x0 = max(vals[i] + 1, math.floor(math.exp(2 * (i + 1))) + 1)
            break
    return x0


@dataclass
class PropertyReport:
    m: int
    a: int
    p1: str
    p1_checked: list
    p2: str
    p2_checked: list
    p3: str
    p3_mechanism: list
    p3_set_pairs: list
    threshold: int

    def to_json(self):
        return self.__dict__.copy()


def _status(checks):
    if not checks:
        return "inconclusive"
    return "verified" if all(ok for *_, ok in checks) else "violated"


def check_P_properties(m: int, a: int, generated: SparseSet) -> PropertyReport:
    """Check the three set properties on whatever the generated depth reaches.

    ``p1``/``p2`` look at every generated ``q_n``/``r_n`` whose modulus is a
    multiple of ``m``. ``p3`` takes ``C_a = a**a + 1``; pairs of primes dividing a
    generated ``p_n(a)`` modulus are checked for a family element in
    ``a (mod qr)``, and separately every pair of set members ``>= C_a`` that is
    reachable that way. Nothing reached means "inconclusive", never "verified".
    """
    if m < 3 or m % 2 == 0:
        raise DomainError(f"m must be an odd integer >= 3, got {m}")
    p1 = [
        (e.index, e.value, e.value % m == 2 % m)
        for e in generated.elements
        if e.family == Family.Q_SEQ and e.index >= 2 and e.modulus_used % m == 0
    ]
    p2 = [
        (e.index, e.value, e.value % m == (m + 1) // 2 % m)
        for e in generated.elements
        if e.family == Family.R_SEQ and e.index >= 2 and e.modulus_used % m == 0
    ]
    c_a = a**a + 1
    fam = [e for e in generated.elements if e.family == Family.P_SEQ and e.a == a]
    mech, set_pairs = [], []
    if fam:
        deepest = max(fam, key=lambda e: e.index).modulus_used
        mod_primes, c = [base_prime(a)], base_prime(a)
        while math.prod(mod_primes) < deepest:
            c = _next_prime(c)
            mod_primes.append(c)
        for q, r in combinations(mod_primes, 2):
            hit = next((e.value for e in fam if (e.value - a) % (q * r) == 0), None)
            mech.append((q, r, hit, hit is not None))
        members = [v for v in generated.values if v >= c_a and deepest % v == 0]
        for q, r in combinations(members, 2):
            hit = next((e.value for e in fam if (e.value - a) % (q * r) == 0), None)
            set_pairs.append((q, r, hit, hit is not None))
    p3 = _status(set_pairs) if set_pairs else ("inconclusive" if _status(mech) != "violated" else "violated")
    return PropertyReport(m, a, _status(p1), p1, _status(p2), p2, p3, mech, set_pairs, c_a)


def lemma5_triple(h: int, generated: SparseSet) -> tuple[int, int, int]:
    """Pick ``q``, ``r``, ``p`` from the set in that order, as in the witness recipe.

    ``q = 2 (mod p')`` and ``r = (p'q+1)/2 (mod p'q)`` with ``q, r >= C_{p'}``,
    then ``p = p' (mod qr)``; smallest choice at every stage. Raises
    :class:`SearchExhaustedError` naming the stage that has no candidate.
    """
    pp = 2 * h - 1
    c = pp**pp + 1
    vals = generated.values
    qs = [v for v in vals if v >= c and v % 2 and (v - 2) % pp == 0]
    for q in qs:
        rs = [v for v in vals if v >= c and v != q and (2 * v - (pp * q + 1)) % (2 * pp * q) == 0]
        for r in rs:
            ps = [v for v in vals if v not in (q, r) and (v - pp) % (q * r) == 0]
            if ps:
                return ps[0], q, r
    stage = "q" if not qs else "r/p"
    raise SearchExhaustedError(f"no admissible triple for h = {h} inside the generated set", stage=stage)

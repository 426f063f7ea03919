"""Constructive recipes for ternary triples of prescribed height.

Everything here produces concrete triples and then measures their heights
with :func:`cycloheights.cyclo.height`; predictions are never trusted
without a computation backing them.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

from . import config
from .cyclo import TernaryTriple, height
from .errors import ConsistencyError, DomainError, ResourceError, SearchExhaustedError
from .primes import APQuery, is_prime, next_prime_in_ap, small_primes


def _cap(value):
    return config.get_config().ap_cap if value is None else int(value)


def _odd_class(residue: int, modulus: int) -> tuple[int, int]:
    """Fold ``x = residue (mod modulus)`` with ``x odd`` for an odd modulus."""
    residue %= modulus
    if residue % 2 == 0:
        residue += modulus
    return residue % (2 * modulus), 2 * modulus


@dataclass(frozen=True)
class Construction:
    triple: TernaryTriple
    predicted_height: int
    detail: dict = field(default_factory=dict)


def lemma1_triple(p: int, q_cap: int | None = None, r_cap: int | None = None) -> Construction:
    """Smallest prime triple of the form ``q = 2 (mod p)``, ``r = (pq +- 1)/2 (mod pq)``.

    ``q > p`` and ``r > pq`` are primes; the height is predicted to be ``(p+1)/2``.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    q_cap, r_cap = _cap(q_cap), _cap(r_cap)
    if q_cap <= p:
        raise SearchExhaustedError(f"q cap {q_cap} leaves no room above p = {p}", stage="q")
    q = next_prime_in_ap(APQuery(2, p, p, q_cap), stage="q")
    pq = p * q
    if r_cap <= pq:
        raise SearchExhaustedError(f"r cap {r_cap} leaves no room above pq = {pq}", stage="r")
    found = {}
    cap = r_cap
    for sign in (+1, -1):
        try:
            found[sign] = next_prime_in_ap(APQuery((pq + sign) // 2, pq, pq, cap), stage="r")
            cap = found[sign] - 1
        except SearchExhaustedError:
            pass
        if cap <= pq:
            break
    if not found:
        raise SearchExhaustedError(f"no r in either class mod {pq} up to {r_cap}", stage="r")
    sign = min(found, key=found.get)
    return Construction(TernaryTriple(p, q, found[sign]), (p + 1) // 2, {"r_sign": "+" if sign > 0 else "-"})


def lemma4_triple(p: int, k: int, l: int) -> Construction:
    """``q = 2 + (2k+1)p`` and ``r = (pq+1)/2 + l*pq`` for an odd ``p >= 3`` (any odd number)."""
    if p < 3 or p % 2 == 0:
        raise DomainError(f"p must be an odd integer >= 3, got {p}")
    if k < 0 or l < 0:
        raise DomainError("k and l must be nonnegative")
    q = 2 + (2 * k + 1) * p
    pq = p * q
    r = (pq + 1) // 2 + l * pq
    for a, b, names in ((p, q, "p,q"), (q, r, "q,r"), (p, r, "p,r")):
        if math.gcd(a, b) != 1:
            raise DomainError(f"pair ({names}) = ({a}, {b}) is not coprime")
    return Construction(TernaryTriple(p, q, r), (p + 1) // 2, {"k": k, "l": l})


class Lemma2Range(NamedTuple):
    h_min: int
    h_max: int

    @property
    def heights(self) -> list[int]:
        return list(range(self.h_min, self.h_max + 1))


def lemma2_range(p: int) -> Lemma2Range:
    """Heights ``(p+1)/2 <= h <= (p+1)/2 + x_p`` with ``x_p`` the larger root of ``4x^2 + 2x + 3 - p``.

    ``x_p = (sqrt(4p - 11) - 1) / 4``, and ``floor(x_p) = (isqrt(4p - 11) - 1) // 4``
    because the thresholds of the floor sit at integers.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    h_min = (p + 1) // 2
    return Lemma2Range(h_min, h_min + (math.isqrt(4 * p - 11) - 1) // 4)


class Case(str, enum.Enum):
    EXACT_H = "EXACT_H"
    H_PLUS_ONE = "H_PLUS_ONE"


@dataclass(frozen=True)
class WitnessCertificate:
    target_h: int
    p_prime: int
    q: int
    r: int
    p: int
    computed_height: int
    case: Case
    strict_larger_p: bool
    search_caps_used: dict

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def to_json(self) -> dict:
        d = asdict(self)
        d["case"] = self.case.value
        return d


def witness_primes(h: int, strict_larger_p: bool = False, q_cap=None, r_cap=None, p_cap=None):
    """Select ``q``, then ``r``, then ``p``, each the smallest admissible prime."""
    if int(h) != h or h < 1:
        raise DomainError(f"target height must be a positive integer, got {h}")
    pp = 2 * h - 1
    q_cap, r_cap, p_cap = _cap(q_cap), _cap(r_cap), _cap(p_cap)
    res, mod = _odd_class(2, pp)
    q = next_prime_in_ap(APQuery(res, mod, pp, q_cap), stage="q")
    res, mod = _odd_class((pp * q + 1) // 2, pp * q)
    r = next_prime_in_ap(APQuery(res, mod, q, r_cap), stage="r")
    allow_equal = is_prime(pp) and not strict_larger_p
    p = next_prime_in_ap(APQuery(pp, 2 * q * r, pp - 1 if allow_equal else pp, p_cap), stage="p")
    return pp, q, r, p, {"q_cap": q_cap, "r_cap": r_cap, "p_cap": p_cap}


def theorem1_witness(
    h: int,
    strict_larger_p: bool = False,
    q_cap: int | None = None,
    r_cap: int | None = None,
    p_cap: int | None = None,
    method: str = "auto",
) -> WitnessCertificate:
    """Prime triple with ``q = 2 (mod p')``, ``r = (p'q+1)/2 (mod p'q)``, ``p = p' (mod qr)``.

    Here ``p' = 2h - 1``. The height of ``Phi_pqr`` is computed and must be
    ``h`` or ``h + 1``. For ``h = 1`` the rule reads ``p = 1 (mod qr)``, which always gives height 1.
    """
    pp, q, r, p, caps = witness_primes(h, strict_larger_p, q_cap, r_cap, p_cap)
    rec = height((p, q, r), method=method)
    if rec.height == h:
        case = Case.EXACT_H
    elif rec.height == h + 1:
        case = Case.H_PLUS_ONE
    else:
        raise ConsistencyError(f"A({p}*{q}*{r}) = {rec.height}, outside {{{h}, {h + 1}}}")
    caps["height_method"] = rec.method
    return WitnessCertificate(h, pp, q, r, p, rec.height, case, bool(strict_larger_p), caps)


def verify_certificate(cert: WitnessCertificate, method: str = "auto") -> list[str]:
    """Recheck a certificate from scratch; returns the list of failed checks."""
    pp, q, r, p = cert.p_prime, cert.q, cert.r, cert.p
    failures = []
    if pp != 2 * cert.target_h - 1:
        failures.append("p_prime != 2h - 1")
    if (q - 2) % pp:
        failures.append("q != 2 mod p'")
    if (2 * r - (pp * q + 1)) % (2 * pp * q):
        failures.append("r != (p'q+1)/2 mod p'q")
    if (p - pp) % (q * r):
        failures.append("p != p' mod qr")
    if not all(is_prime(v) for v in (q, r, p)):
        failures.append("q, r, p are not all prime")
    recomputed = height((p, q, r), method=method).height
    if recomputed != cert.computed_height:
        failures.append(f"recomputed height {recomputed} != {cert.computed_height}")
    if recomputed not in (cert.target_h, cert.target_h + 1):
        failures.append("height outside {h, h+1}")
    return failures


# -- jumps -----------------------------------------------------------------


@dataclass(frozen=True)
class JumpStep:
    before: TernaryTriple
    after: TernaryTriple
    height_before: int
    height_after: int

    @property
    def jumped(self) -> bool:
        return self.height_after == self.height_before + 1

    def to_json(self):
        return {
            "before": list(self.before),
            "after": list(self.after),
            "height_before": self.height_before,
            "height_after": self.height_after,
            "jumped": self.jumped,
        }


@dataclass
class JumpSequence:
    start: TernaryTriple
    start_height: int
    steps: list[JumpStep]
    stop_reason: str | None = None

    @property
    def heights(self) -> list[int]:
        return [self.start_height] + [s.height_after for s in self.steps]

    def to_json(self):
        return {
            "start": list(self.start),
            "heights": self.heights,
            "steps": [s.to_json() for s in self.steps],
            "stop_reason": self.stop_reason,
        }


def jump_sequence(start, steps: int, method: str = "auto") -> JumpSequence:
    """Iterate ``(p, q, r) -> (q, r, p + q*r)`` and record heights.

    The start must satisfy ``2 < p < q < r`` and be pairwise coprime. The
    sequence stops early (with ``stop_reason`` set) when a height no longer
    fits the buffer budget.
    """
    t = start if isinstance(start, TernaryTriple) else TernaryTriple(*start)
    if not t.p < t.q < t.r:
        raise DomainError(f"start triple must be increasing, got {t.as_tuple()}")
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    seq = JumpSequence(t, height(t, method=method).height, [])
    cur, h = t, seq.start_height
    for _ in range(steps):
        nxt = TernaryTriple(cur.q, cur.r, cur.p + cur.q * cur.r)
        try:
            h_next = height(nxt, method=method).height
        except ResourceError as exc:
            seq.stop_reason = f"resource: {exc}"
            break
        if h_next - h not in (0, 1):
            raise ConsistencyError(f"height went {h} -> {h_next} along {cur.as_tuple()} -> {nxt.as_tuple()}")
        seq.steps.append(JumpStep(cur, nxt, h, h_next))
        cur, h = nxt, h_next
    return seq


class JumpProbe(NamedTuple):
    h_base: int
    h_shifted: int
    jumped: bool


def jump_probe(q: int, r: int, s: int, method: str = "auto") -> JumpProbe:
    """Compare ``A(q, r, s)`` with ``A(q, r, s + qr)``."""
    if math.gcd(s, q) != 1 or math.gcd(s, r) != 1:
        raise DomainError(f"s = {s} must be coprime to q = {q} and r = {r}")
    base = height((q, r, s), method=method).height
    shifted = height((q, r, s + q * r), method=method).height
    if s > max(q, r):
        if shifted != base:
            raise ConsistencyError(f"periodicity broken: A({q},{r},{s}) = {base}, shifted {shifted}")
    elif not base <= shifted <= base + 1:
        raise ConsistencyError(f"jump bound broken: A({q},{r},{s}) = {base}, shifted {shifted}")
    return JumpProbe(base, shifted, shifted == base + 1)


@dataclass
class ChainResult:
    links: list[tuple[TernaryTriple, int]]
    stop_reason: str | None = None

    @property
    def heights(self):
        return [h for _, h in self.links]

    def to_json(self):
        return {
            "links": [{"triple": list(t), "height": h} for t, h in self.links],
            "stop_reason": self.stop_reason,
        }


def prime_chain(start, steps: int, cap: int | None = None, method: str = "auto") -> ChainResult:
    """Prime version of the jump recurrence.

    ``(p, q, r) -> (q, r, p*)`` where ``p*`` is the smallest prime
    ``= p (mod qr)`` above ``r``.
    """
    t = start if isinstance(start, TernaryTriple) else TernaryTriple(*start)
    if not all(is_prime(v) for v in t):
        raise DomainError(f"chain start must consist of primes, got {t.as_tuple()}")
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    out = ChainResult([(t, height(t, method=method).height)])
    cur = t
    for _ in range(steps):
        try:
            nxt_p = next_prime_in_ap(APQuery(cur.p, cur.q * cur.r, cur.r, _cap(cap)), stage="chain")
            nxt = TernaryTriple(cur.q, cur.r, nxt_p)
            h = height(nxt, method=method).height
        except (ResourceError, SearchExhaustedError) as exc:
            out.stop_reason = f"{type(exc).__name__}: {exc}"
            break
        prev = out.links[-1][1]
        if h - prev not in (0, 1):
            raise ConsistencyError(f"chain height went {prev} -> {h} at {nxt.as_tuple()}")
        out.links.append((nxt, h))
        cur = nxt
    return out


# -- empirical exploration -------------------------------------------------


@dataclass
class ExploreResult:
    p: int
    attained: list[int]
    max_h: int
    witnesses: dict[int, tuple[int, int, int]]
    pairs_checked: int
    skipped: list[tuple[int, int]]
    label: str = "evidence"

    @property
    def full_interval(self) -> bool:
        return bool(self.attained) and self.attained == list(range(1, self.max_h + 1))

    def to_json(self):
        return {
            "label": self.label,
            "p": self.p,
            "attained": self.attained,
            "max_h": self.max_h,
            "full_interval": self.full_interval,
            "witnesses": {str(h): list(t) for h, t in self.witnesses.items()},
            "pairs_checked": self.pairs_checked,
            "skipped": [list(x) for x in self.skipped],
        }


def _pair_height(args):
    p, q, r = args
    try:
        return height((p, q, r), method="dense").height
    except ResourceError:
        return None


def explore_M(p: int, q_max: int, r_max: int, workers: int = 1) -> ExploreResult:
    """Every height ``A(pqr)`` over primes ``q < r``, ``q <= q_max``, ``r <= r_max``, both odd and ``!= p``.

    Pairs whose dense buffer would exceed the budget are listed in
    ``skipped`` rather than computed.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    top = max(q_max, r_max)
    primes = [x for x in small_primes(top) if x > 2 and x != p] if top >= 2 else []
    jobs = [(p, q, r) for q in primes if q <= q_max for r in primes if q < r <= r_max]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            heights = list(pool.map(_pair_height, jobs, chunksize=16))
    else:
        heights = [_pair_height(j) for j in jobs]
    witnesses: dict[int, tuple[int, int, int]] = {}
    skipped = []
    for job, h in zip(jobs, heights):
        if h is None:
            skipped.append(job[1:])
        elif h not in witnesses:
            witnesses[h] = job
    attained = sorted(witnesses)
    return ExploreResult(p, attained, max(attained, default=0), dict(sorted(witnesses.items())), len(jobs), skipped)


def scan_b2_cases(h: int, n_q: int = 2, n_r: int = 2, n_p: int = 2, max_degree: int | None = None) -> list[dict]:
    """Look for concrete instances of both outcomes ``A(pqr) = h`` and ``h + 1``.

    Walks the first ``n_q`` admissible ``q``, the first ``n_r`` admissible ``r``
    for each, then ``p = p'`` (when ``p'`` is prime) and the first ``n_p``
    primes ``p = p' (mod qr)`` above ``p'``. Triples whose degree exceeds
    ``max_degree`` (default: the buffer budget) are reported without a height.
    """
    if h < 1:
        raise DomainError("h must be positive")
    pp = 2 * h - 1
    limit = config.get_config().buffer_budget if max_degree is None else max_degree
    cap = config.get_config().ap_cap
    rows = []
    q = pp
    for _ in range(n_q):
        res, mod = _odd_class(2, pp)
        q = next_prime_in_ap(APQuery(res, mod, q, cap), stage="q")
        r = q
        for _ in range(n_r):
            res, mod = _odd_class((pp * q + 1) // 2, pp * q)
            r = next_prime_in_ap(APQuery(res, mod, r, cap), stage="r")
            ps = [pp] if is_prime(pp) else []
            p = pp
            for _ in range(n_p):
                p = next_prime_in_ap(APQuery(pp, 2 * q * r, p, cap), stage="p")
                ps.append(p)
            for p in ps:
                deg = (p - 1) * (q - 1) * (r - 1)
                row = {"h": h, "p": p, "q": q, "r": r, "degree": deg, "height": None, "case": None}
                if deg <= limit:
                    a = height((p, q, r)).height
                    row["height"] = a
                    row["case"] = Case.EXACT_H.value if a == h else Case.H_PLUS_ONE.value if a == h + 1 else "VIOLATION"
                rows.append(row)
    return rows

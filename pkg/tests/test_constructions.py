import json
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cycloheights import config
from cycloheights.constructions import (
    Case,
    explore_M,
    jump_probe,
    jump_sequence,
    lemma1_triple,
    lemma2_range,
    lemma4_triple,
    prime_chain,
    scan_b2_cases,
    theorem1_witness,
    verify_certificate,
)
from cycloheights.cyclo import height
from cycloheights.errors import DomainError, SearchExhaustedError
from cycloheights.oracle import oracle_inclusion_exclusion, oracle_phi


def first_prime(pred, start):
    c = start + 1
    while not (sympy.isprime(c) and pred(c)):
        c += 1
    return c


# -- lemma1_triple ---------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_lemma1_against_brute_scan(p):
    c = lemma1_triple(p)
    q = first_prime(lambda x: x % p == 2, p)
    pq = p * q
    r = first_prime(lambda x: x % pq in ((pq + 1) // 2, (pq - 1) // 2), pq)
    assert c.triple.as_tuple() == (p, q, r)
    assert c.predicted_height == (p + 1) // 2
    assert height(c.triple).height == c.predicted_height


def test_lemma1_examples():
    c3, c5 = lemma1_triple(3), lemma1_triple(5)
    assert c3.triple.as_tuple() == (3, 5, 23) and c3.detail["r_sign"] == "+"
    assert c5.triple.as_tuple() == (5, 7, 53) and c5.predicted_height == 3
    assert oracle_inclusion_exclusion((5, 7, 53)).height == 3


def test_lemma1_cap():
    with pytest.raises(SearchExhaustedError) as exc:
        lemma1_triple(3, q_cap=4)
    assert exc.value.stage == "q"
    with pytest.raises(SearchExhaustedError) as exc:
        lemma1_triple(3, r_cap=22)
    assert exc.value.stage == "r"


def test_lemma1_rejects_composite():
    with pytest.raises(DomainError):
        lemma1_triple(9)


# -- lemma4_triple ---------------------------------------------------------


@pytest.mark.parametrize(
    "p,k,l,triple", [(3, 0, 1, (3, 5, 23)), (9, 0, 0, (9, 11, 50)), (3, 0, 0, (3, 5, 8))]
)
def test_lemma4_examples(p, k, l, triple):
    c = lemma4_triple(p, k, l)
    assert c.triple.as_tuple() == triple
    assert height(c.triple).height == c.predicted_height == (p + 1) // 2


def test_lemma4_composite_by_oracle():
    assert oracle_inclusion_exclusion((9, 11, 50)).height == 5


@given(st.integers(1, 100).map(lambda v: 2 * v + 1), st.integers(0, 100), st.integers(0, 100))
def test_lemma4_always_coprime(p, k, l):
    # 2r = 1 (mod pq) and q = 2 (mod p), so the coprimality check never fires for odd p
    t = lemma4_triple(p, k, l).triple
    assert math.gcd(t.p, t.q) == math.gcd(t.q, t.r) == math.gcd(t.p, t.r) == 1


def test_lemma4_rejects_even_or_negative():
    with pytest.raises(DomainError):
        lemma4_triple(4, 0, 0)
    with pytest.raises(DomainError):
        lemma4_triple(3, -1, 0)


@given(st.integers(1, 12).map(lambda v: 2 * v + 1), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=30, deadline=None)
def test_lemma4_height_is_exact(p, k, l):
    try:
        c = lemma4_triple(p, k, l)
    except DomainError:
        return
    if c.triple.degree > 3 * 10**6:
        return
    assert height(c.triple).height == (p + 1) // 2


# -- lemma2_range ----------------------------------------------------------


def test_lemma2_examples():
    assert lemma2_range(3).heights == [2]
    assert lemma2_range(5).heights == [3]
    assert lemma2_range(11).heights == [6, 7]


@given(st.sampled_from(list(sympy.primerange(3, 10**5))))
def test_lemma2_matches_exact_root(p):
    # x_p = (sqrt(4p-11) - 1)/4 with sympy's exact floor
    x = (sympy.sqrt(4 * p - 11) - 1) / 4
    rng = lemma2_range(p)
    assert rng.h_min == (p + 1) // 2
    assert rng.h_max == (p + 1) // 2 + int(sympy.floor(x))


# -- witnesses -------------------------------------------------------------


@pytest.mark.parametrize(
    "h,triple", [(1, (31, 3, 5)), (2, (3, 5, 23)), (3, (5, 7, 53)), (4, (7, 23, 2657)), (6, (11, 13, 787))]
)
def test_witness(h, triple):
    cert = theorem1_witness(h)
    assert cert.triple == triple
    assert cert.computed_height in (h, h + 1)
    assert verify_certificate(cert) == []
    if sympy.isprime(2 * h - 1) and cert.p == 2 * h - 1:
        assert cert.case is Case.EXACT_H


def test_witness_h1_unit_class():
    cert = theorem1_witness(1)
    assert cert.p == first_prime(lambda x: x % 15 == 1, 1) == 31
    assert oracle_phi(465).height == 1 == cert.computed_height


def test_witness_strict():
    cert = theorem1_witness(2, strict_larger_p=True)
    assert cert.triple == (233, 5, 23)
    assert first_prime(lambda x: x % 115 == 3, 3) == 233
    assert cert.computed_height in (2, 3) and cert.strict_larger_p
    assert verify_certificate(cert) == []


def test_witness_minimality_by_brute_scan():
    for h in (2, 3, 4, 5):
        cert = theorem1_witness(h) if h != 5 else None
        pp = 2 * h - 1
        q = first_prime(lambda x: x % pp == 2, pp)
        r = first_prime(lambda x: (2 * x - (pp * q + 1)) % (pp * q) == 0, q)
        lower = pp - 1 if sympy.isprime(pp) else pp
        p = first_prime(lambda x: x % (q * r) == pp % (q * r), lower)
        if cert is not None:
            assert cert.triple == (p, q, r)
        else:
            assert (p, q, r) == (13121, 11, 149)


def test_certificate_json_round_trip():
    cert = theorem1_witness(3)
    data = json.loads(json.dumps(cert.to_json()))
    assert data["case"] == "EXACT_H" and data["p_prime"] == 5 and data["target_h"] == 3
    assert set(data) >= {"q", "r", "p", "computed_height", "strict_larger_p", "search_caps_used"}


def test_verify_detects_tampering():
    from dataclasses import replace

    cert = theorem1_witness(2)
    assert "q != 2 mod p'" in verify_certificate(replace(cert, q=7))
    assert any("recomputed" in f for f in verify_certificate(replace(cert, computed_height=3)))


def test_witness_cap_names_stage():
    with pytest.raises(SearchExhaustedError, match=r"\[p\]"):
        theorem1_witness(2, strict_larger_p=True, p_cap=200)


def test_witness_rejects_h0():
    with pytest.raises(DomainError):
        theorem1_witness(0)


def test_scan_classifies_every_row():
    rows = scan_b2_cases(2, 2, 2, 2, max_degree=2 * 10**6)
    assert rows
    for row in rows:
        if row["height"] is not None:
            assert row["case"] in (Case.EXACT_H.value, Case.H_PLUS_ONE.value)
            assert (row["p"] - 3) % (row["q"] * row["r"]) == 0


# -- jumps and chains --------------------------------------------------------


def test_jump_sequence_examples():
    seq = jump_sequence((3, 7, 11), 2)
    assert [s.after.as_tuple() for s in seq.steps] == [(7, 11, 80), (11, 80, 887)]
    assert seq.heights[0] == 1
    assert seq.heights == [1, oracle_inclusion_exclusion((7, 11, 80)).height, height((11, 80, 887)).height]
    assert all(b - a in (0, 1) for a, b in zip(seq.heights, seq.heights[1:]))

    seq = jump_sequence((3, 5, 7), 1)
    assert seq.steps[0].after.as_tuple() == (5, 7, 38)
    assert seq.heights[0] == 2 and seq.heights[1] in (2, 3)
    assert seq.heights[1] == oracle_inclusion_exclusion((5, 7, 38)).height

    assert jump_sequence((3, 7, 11), 0).heights == [1]


def test_jump_sequence_stops_on_budget():
    with config.override(buffer_budget=10_000):
        seq = jump_sequence((3, 5, 7), 5, method="dense")
    assert seq.stop_reason and seq.stop_reason.startswith("resource")
    assert len(seq.steps) < 5


def test_jump_sequence_requires_order():
    with pytest.raises(DomainError):
        jump_sequence((7, 5, 3), 1)


def test_jump_probe_examples():
    pr = jump_probe(7, 11, 3)
    assert pr.h_base == 1 and pr.h_shifted == oracle_inclusion_exclusion((7, 11, 80)).height
    assert pr.jumped == (pr.h_shifted == 2)

    assert jump_probe(5, 7, 1) == (0, 1, True)

    # 17 = 2 (mod 15); the computed height of Phi_255 is 2
    pr = jump_probe(3, 5, 2)
    assert pr.h_base == 1
    assert pr.h_shifted == oracle_phi(255).height == 2
    assert pr.jumped


def test_prime_chain_examples():
    ch = prime_chain((3, 7, 11), 2)
    assert [t.as_tuple() for t, _ in ch.links] == [(3, 7, 11), (7, 11, 157), (11, 157, 3461)]
    assert ch.heights[:2] == [1, 2]
    assert ch.heights[2] in (2, 3)
    assert prime_chain((3, 7, 11), 0).heights == [1]


def test_prime_chain_successor_is_minimal():
    assert first_prime(lambda x: x % 77 == 3, 11) == 157
    assert first_prime(lambda x: x % (157 * 11) == 7, 157) == 3461


def test_prime_chain_stops_on_cap():
    ch = prime_chain((3, 7, 11), 2, cap=200)
    assert len(ch.links) == 2 and "SearchExhausted" in ch.stop_reason


# -- exploration ------------------------------------------------------------


def test_explore_p3():
    res = explore_M(3, 60, 60)
    assert res.attained == [1, 2] and res.max_h == 2 and res.full_interval
    assert res.label == "evidence"
    primes = [x for x in sympy.primerange(5, 61)]
    assert res.pairs_checked == len(primes) * (len(primes) - 1) // 2
    for h, t in res.witnesses.items():
        assert height(t).height == h


def test_explore_p5_contains_lemma1_witness():
    res = explore_M(5, 10, 60)
    assert set(res.attained) <= {1, 2, 3}
    assert 3 in res.attained


def test_explore_empty():
    res = explore_M(3, 2, 2)
    assert res.attained == [] and res.max_h == 0 and not res.full_interval


def test_explore_parallel_matches_serial():
    a = explore_M(5, 20, 40)
    b = explore_M(5, 20, 40, workers=2)
    assert a.to_json() == b.to_json()

import itertools
from dataclasses import replace

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cycloheights.cyclo import (
    TernaryTriple,
    height,
    inclusion_exclusion_coeffs,
    phi_coeffs,
    radical,
    reduce_to_core,
)
from cycloheights.errors import DomainError, ResourceError
from cycloheights.oracle import oracle_inclusion_exclusion, oracle_phi
from cycloheights.series import apply_factors, max_abs
from cycloheights.cyclo import ternary_factors
from strategies import coprime, pairs, triples


def test_phi_examples():
    assert phi_coeffs(5).tolist() == [1, 1, 1, 1, 1]
    assert phi_coeffs(1).tolist() == [-1, 1]
    assert phi_coeffs(2).tolist() == [1, 1]
    assert 2 in np.abs(phi_coeffs(105).coeffs)


def test_phi_leading_coefficient_and_length():
    for n in range(1, 400):
        c = phi_coeffs(n)
        assert len(c) == sympy.totient(n) + 1
        assert c[len(c) - 1] == 1


def test_phi_non_squarefree_matches_sympy():
    x = sympy.Symbol("x")
    for n in (4, 8, 12, 18, 27, 50, 72, 100, 420):
        expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert phi_coeffs(n).tolist() == [int(v) for v in expected]


def test_ie_examples():
    assert inclusion_exclusion_coeffs((3, 5, 7)) == phi_coeffs(105)
    assert max_abs(inclusion_exclusion_coeffs((9, 11, 50)))[0] == 5
    assert oracle_inclusion_exclusion((9, 11, 50)).height == 5
    assert height((3, 7, 11)).height == 1


def test_ie_length_and_ends():
    c = inclusion_exclusion_coeffs((9, 11, 50))
    assert len(c) == 8 * 10 * 49 + 1
    assert c[0] == 1 and c[len(c) - 1] == 1


def test_height_examples():
    rec = height(105)
    assert rec.height == 2 and rec.degree == 48
    assert rec.extremal_index == 7 == oracle_phi(105).tolist().index(-2)
    assert height((7, 11, 157)).height == 2
    assert height(TernaryTriple(7, 11, 157)).height == 2


@pytest.mark.parametrize("t", [(3, 5, 1), (1, 3, 5), (5, 1, 3)])
def test_convention_s1(t):
    rec = height(t)
    assert (rec.height, rec.degree, rec.extremal_index) == (0, 0, 0)


def test_convention_s2():
    rec = height((3, 5, 2))
    assert (rec.height, rec.degree, rec.extremal_index) == (1, 8, 0)


def test_height_small_n():
    assert height(1).height == 1 and height(2).height == 1
    assert all(height(n).height == 1 for n in range(1, 105))


def test_height_of_prime_power_stretch():
    # Phi_{4 * 105}(x) = Phi_{210}(x^2): same height, stretched index
    assert height(420).height == 2
    assert height(420).extremal_index == 2 * height(210).extremal_index


@pytest.mark.parametrize("bad", [(2, 4, 5), (3, 6, 9), (0, 5, 7), (3, 5, 5)])
def test_triple_rejects(bad):
    with pytest.raises(DomainError):
        TernaryTriple(*bad)


def test_budget():
    with pytest.raises(ResourceError):
        phi_coeffs(105, budget=10)
    with pytest.raises(ResourceError):
        inclusion_exclusion_coeffs((3, 5, 7), budget=10)
    with pytest.raises(ResourceError):
        height((3, 5, 7), method="dense", budget=10)


def test_stream_and_dense_agree():
    for t in [(3, 5, 7), (7, 11, 157), (9, 11, 50), (13, 41, 2399)]:
        dense, stream = height(t, method="dense"), height(t, method="stream")
        assert (stream.method, dense.method) == ("stream", "dense")
        assert replace(stream, method="dense") == dense


def test_auto_streams_over_budget():
    rec = height((11, 157, 3461), budget=2_000_000)
    assert rec.method == "stream" and rec.height == 3


@pytest.mark.parametrize("n,core,h", [(12, 3, 1), (105, 105, 2), (210, 105, 2)])
def test_reduce_to_core(n, core, h):
    red = reduce_to_core(n)
    assert red.core == core
    assert red.height_n == red.height_core == h
    # independent heights from the divisor-recursion oracle
    assert oracle_phi(n).height == oracle_phi(core).height == h


def test_reduce_to_core_rejects():
    with pytest.raises(DomainError):
        reduce_to_core(2)


@given(st.integers(3, 5000))
@settings(max_examples=80)
def test_core_preserves_height(n):
    red = reduce_to_core(n)
    assert red.same_height
    assert red.core % 2 == 1 or red.core == 2
    assert radical(red.core) == red.core


@given(triples(hi=30))
@settings(max_examples=40)
def test_permutation_symmetry(t):
    base = inclusion_exclusion_coeffs(t)
    for perm in itertools.permutations(t):
        assert inclusion_exclusion_coeffs(perm) == base


@given(triples(hi=60))
@settings(max_examples=60)
def test_self_reciprocal(t):
    c = inclusion_exclusion_coeffs(t).coeffs
    assert np.array_equal(c, c[::-1])


@given(st.integers(2, 3000))
def test_value_at_one(n):
    fac = sympy.factorint(n)
    assume(all(e == 1 for e in fac.values()))
    total = int(phi_coeffs(n).coeffs.sum())
    assert total == (n if len(fac) == 1 else 1)


def test_phi_matches_sympy_squarefree_odd_omega3():
    x = sympy.Symbol("x")
    for n in (105, 165, 195, 231, 255, 273, 285, 345, 357, 385, 429, 455):
        expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert phi_coeffs(n).tolist() == [int(v) for v in expected]


@given(pairs(hi=15), st.integers(1, 40), st.integers(1, 4))
@settings(max_examples=50)
def test_periodicity(pq, s, j):
    p, q = pq
    assume(s > max(p, q) and coprime(p, q, s))
    r = s + j * p * q
    assert height((p, q, r)).height == height((p, q, s)).height


@given(pairs(hi=15), st.integers(1, 15), st.integers(1, 4))
@settings(max_examples=50)
def test_jump_bound(pq, s, j):
    p, q = pq
    assume(s < max(p, q) and coprime(p, q, s))
    r = s + j * p * q
    assume(r > max(p, q))
    a_s, a_r = height((p, q, s)).height, height((p, q, r)).height
    assert a_s <= a_r <= a_s + 1


UNIT_CLASS = [
    (p, q, j * p * q + sign)
    for p, q in itertools.combinations(sympy.primerange(3, 30), 2)
    for j in range(1, 20)
    for sign in (1, -1)
    if sympy.isprime(j * p * q + sign)
]


@given(st.sampled_from(UNIT_CLASS))
@settings(max_examples=40)
def test_unit_class_height_one(t):
    assert height(t).height == 1


def test_intermediate_magnitudes_stay_small():
    # each canonical factor applied in turn stays below 2**62 for a sample with pqr <= 1e8
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 25:
        p, q = (int(v) for v in rng.integers(3, 200, size=2))
        r = int(rng.integers(3, 10**8 // (p * q) + 1))
        if not coprime(p, q, r) or min(p, q, r) < 3 or (p - 1) * (q - 1) * (r - 1) > 3 * 10**6:
            continue
        length = (p - 1) * (q - 1) * (r - 1) + 1
        factors = ternary_factors(p, q, r)
        for i in range(1, len(factors) + 1):
            assert max_abs(apply_factors(length, factors[:i]))[0] < 2**62
        checked += 1

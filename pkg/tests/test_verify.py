from itertools import combinations

import numpy as np
import pytest

from diverge.graphs import Complete, Distance, Residue
from diverge.primes import sieve
from diverge.streams import BlockSwap, Colliding, Divergent, Identity, ResidueBlockSwap
from diverge.verify import (
    collision_scan,
    completely_different_check,
    difference_sequence,
    divergence_certificate,
    lemma_edge_law,
)
from matrix import PAIRS
from oracles import (
    naive_collisions,
    naive_complete,
    naive_diffs,
    naive_first_passage,
    primes_upto,
)


# -- difference sequences ----------------------------------------------------

def test_difference_examples():
    assert difference_sequence(Divergent(1), Divergent(2), 6).diffs.tolist() == [0, 2, 1, 4, 2, 6]
    assert difference_sequence(BlockSwap(3), BlockSwap(3), 5).diffs.tolist() == [0] * 5
    d = difference_sequence(Divergent(2), Divergent(3), 6).diffs
    assert d[1::2].tolist() == [2, 4, 6]


def test_difference_sequence_spans_chunks(monkeypatch):
    import diverge.verify as v

    monkeypatch.setattr(v, "CHUNK", 7)
    got = v.difference_sequence(Divergent(2), Colliding((2,)), 100).diffs.tolist()
    assert got == naive_diffs(Divergent(2), Colliding((2,)), 100)


# -- divergence certificates -------------------------------------------------

def test_certificate_examples():
    cert = divergence_certificate(Divergent(1), Divergent(2), 10**4, [5])
    assert cert.first_passage == {5: 14} and cert.valid
    cert = divergence_certificate(Identity(), Identity(), 100, [1])
    assert cert.first_passage == {1: None} and not cert.valid
    assert cert.status(1) == "FAILED"
    cert = divergence_certificate(Divergent(2), Divergent(3), 10**6, [100])
    assert cert.valid and cert.first_passage[100] < 10**6


def test_certificate_weak_flag():
    # diff(t) ~ t/15 for Divergent(2) vs Divergent(3): M = 300 first holds
    # for good near t ~ 4500, inside the last 10% of a 4800 horizon
    cert = divergence_certificate(Divergent(2), Divergent(3), 4800, [10, 300])
    assert cert.status(10) == "OK"
    assert cert.status(300) == "WEAK"
    assert cert.valid and not cert.strong


def test_certificate_preconditions():
    with pytest.raises(ValueError):
        divergence_certificate(Identity(), Divergent(2), 100, [5, 3])
    with pytest.raises(ValueError):
        divergence_certificate(Identity(), Divergent(2), 10, [50])


def test_certificate_chunked_scan(monkeypatch):
    import diverge.verify as v

    monkeypatch.setattr(v, "CHUNK", 13)
    diffs = naive_diffs(Divergent(2), Divergent(5), 3000)
    ths = [1, 3, 7, 20, 60, 150]
    cert = v.divergence_certificate(Divergent(2), Divergent(5), 3000, ths)
    assert cert.first_passage == {m: naive_first_passage(diffs, m) for m in ths}


def test_first_passage_monotone_in_threshold():
    ths = [1, 2, 5, 10, 50, 100]
    for i, k in combinations(range(1, 7), 2):
        cert = divergence_certificate(Divergent(i), Divergent(k), 10**6, ths)
        ts = [cert.first_passage[m] for m in ths]
        assert None not in ts
        assert ts == sorted(ts)
        assert cert.strong, (i, k, ts)


# -- collisions ----------------------------------------------------------------

def test_collision_examples():
    rep = collision_scan(Colliding((2,)), Colliding((3,)), Distance(1), 130)
    assert rep.positions.tolist() == [9, 10, 25, 26, 27, 28, 49, 50, 121, 122, 125, 126]
    assert len(collision_scan(Identity(), Identity(), Distance(1), 100)) == 0
    n = 10**4
    odd_primes = [p for p in primes_upto(100) if p > 2 and p * p <= n]
    assert len(collision_scan(Colliding((2,)), Identity(), Distance(1), n)) == 2 * len(odd_primes)


def test_collision_rows():
    rep = collision_scan(Colliding((2,)), Identity(), Distance(1), 30)
    assert list(rep.rows()) == [(9, 10, 9), (10, 9, 10), (25, 26, 25), (26, 25, 26)]


def _predicted(exponents, n):
    ps = sieve(int(n ** 0.5) + 1)[1:].tolist()
    out = set()
    for j in exponents:
        for p in ps:
            if p ** j + 1 <= n:
                out |= {p ** j, p ** j + 1}
    return out


SUPPORTS = [(j,) for j in range(2, 7)] + list(combinations(range(2, 7), 2))


def test_colliding_pairs_match_prime_prediction():
    n = 10**6
    for s1, s2 in combinations(SUPPORTS, 2):
        rep = collision_scan(Colliding(s1), Colliding(s2), Distance(1), n)
        assert len(rep) > 0
        sym = set(s1) ^ set(s2)
        assert set(rep.positions.tolist()) == _predicted(sym, n), (s1, s2)


# -- complete difference ---------------------------------------------------------

def test_complete_examples():
    assert completely_different_check(BlockSwap(1), BlockSwap(2), Complete(), 2**16).passed
    assert completely_different_check(BlockSwap(1), BlockSwap(1), Complete(), 8).at == 1
    assert completely_different_check(ResidueBlockSwap(2, 1), ResidueBlockSwap(2, 3), Residue(2), 2**12)


def test_complete_reports_first_failure():
    # both start with 1
    res = completely_different_check(Divergent(1), Divergent(2), Complete(), 100)
    assert res.at == naive_complete(Divergent(1), Divergent(2), Complete(), 100) == 1
    res = completely_different_check(BlockSwap(2), Divergent(2), Complete(), 1000)
    assert res.at == naive_complete(BlockSwap(2), Divergent(2), Complete(), 1000)


# -- even-position edge law -----------------------------------------------------

def test_edge_law_examples():
    assert lemma_edge_law(2, 3, 10**5)
    assert lemma_edge_law(1, 2, 1)
    with pytest.raises(ValueError):
        lemma_edge_law(3, 3, 10)


def test_edge_law_all_pairs_and_distinct_graphs():
    for i, k in combinations(range(1, 11), 2):
        assert lemma_edge_law(i, k, 10**5).passed
    d = difference_sequence(Divergent(3), Divergent(7), 2000).diffs[1::2]
    assert np.all(np.diff(d) > 0)


# -- oracle equivalence ------------------------------------------------------------

@pytest.mark.parametrize("c1,c2", PAIRS, ids=lambda c: c.spec())
def test_oracle_equivalence(c1, c2):
    n = 10**4
    diffs = naive_diffs(c1, c2, n)
    assert difference_sequence(c1, c2, n).diffs.tolist() == diffs
    ths = [1, 2, 5, 10, 50]
    cert = divergence_certificate(c1, c2, n, ths)
    assert cert.first_passage == {m: naive_first_passage(diffs, m) for m in ths}
    for g in (Distance(1), Distance(2), Complete(), Residue(2), Residue(3)):
        assert collision_scan(c1, c2, g, n).positions.tolist() == naive_collisions(c1, c2, g, n)
        got = completely_different_check(c1, c2, g, n)
        want = naive_complete(c1, c2, g, n)
        assert got.passed == (want is None) and got.at == want

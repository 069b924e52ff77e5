from itertools import combinations, permutations
from math import comb, factorial, log2

import numpy as np
import pytest

from diverge import _kernels
from diverge.capacity import (
    CapacityLimitError,
    CliqueTimeout,
    build_difference_graph,
    clique_search,
    g_different,
    max_clique,
    middle_binomial,
    omega_table,
    one_line,
    parse_one_line,
)
from diverge.graphs import Complete, Distance, FiniteEdges, Residue
from oracles import adjacent_naive, brute_force_omega, enumerate_clique_number

BACKENDS = sorted(_kernels.BACKENDS)
GRAPHS = [Distance(1), Distance(2), Complete(), Residue(2)]


def naive_g_different(p, r, g):
    return any(adjacent_naive(g, a, b) for a, b in zip(p, r))


def test_g_different_examples():
    assert g_different((1, 2), (2, 1), Distance(1))
    assert not g_different((1, 3, 2), (1, 3, 2), Complete())
    assert not g_different((1, 2, 3), (3, 2, 1), Distance(1))
    with pytest.raises(ValueError):
        g_different((1, 2), (1, 2, 3), Distance(1))


def test_one_line_notation():
    assert one_line((2, 4, 1, 3)) == "2413"
    assert parse_one_line("2413") == (2, 4, 1, 3)
    with pytest.raises(ValueError):
        parse_one_line("2213")


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.spec())
def test_difference_graph_matches_pair_scan(n, g):
    dg = build_difference_graph(n, g)
    perms = list(permutations(range(1, n + 1)))
    assert dg.vertices == perms
    for a, b in combinations(range(len(perms)), 2):
        assert dg.adjacency[a, b] == dg.adjacency[b, a] == naive_g_different(perms[a], perms[b], g)
    assert not dg.adjacency.diagonal().any()


def test_difference_graph_examples():
    dg = build_difference_graph(2, Distance(1))
    assert (dg.order, dg.edge_count) == (2, 1)
    dg = build_difference_graph(3, Complete())
    assert (dg.order, dg.edge_count) == (6, 15)
    dg = build_difference_graph(3, Distance(1))
    perms = list(permutations(range(1, 4)))
    expected = sum(naive_g_different(p, r, Distance(1)) for p, r in combinations(perms, 2))
    assert dg.edge_count == expected


def test_size_limit():
    with pytest.raises(CapacityLimitError):
        build_difference_graph(7, Distance(1))
    with pytest.raises(CapacityLimitError):
        omega_table(Distance(1), 8)
    with pytest.raises(ValueError):
        build_difference_graph(4, FiniteEdges(3, frozenset({(1, 2)})))


@pytest.mark.parametrize("backend", BACKENDS)
def test_max_clique_examples(backend):
    assert max_clique(build_difference_graph(3, Complete()), backend=backend).omega == 6
    assert max_clique(build_difference_graph(2, Distance(1)), backend=backend).omega == 2
    res = max_clique(build_difference_graph(4, Distance(1)), backend=backend)
    assert res.omega == 6 == comb(4, 2)
    assert res.rate == pytest.approx(log2(6) / 4)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.spec())
def test_oracle_equivalence_n3(backend, g):
    perms = list(permutations(range(1, 4)))
    want, _ = brute_force_omega(perms, lambda p, r: naive_g_different(p, r, g))
    dg = build_difference_graph(3, g)
    for sym in (True, False):
        assert max_clique(dg, backend=backend, use_symmetry=sym).omega == want


@pytest.mark.parametrize("g", GRAPHS + [Residue(3), Distance(3)], ids=lambda g: g.spec())
def test_bron_kerbosch_agrees_n4(g):
    dg = build_difference_graph(4, g)
    want = enumerate_clique_number(dg.adjacency.tolist())
    assert max_clique(dg).omega == want
    assert max_clique(dg, use_symmetry=False).omega == want


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.spec())
def test_witness_validity(g):
    for n in (2, 3, 4, 5):
        res = max_clique(build_difference_graph(n, g))
        assert len(res.witness) == res.omega == len(set(res.witness))
        for p, r in combinations(res.witness, 2):
            assert naive_g_different(p, r, g)


def test_vertex_order_independence():
    dg = build_difference_graph(5, Distance(1))
    base = max_clique(dg).omega
    rng = np.random.default_rng(2024)
    for _ in range(10):
        perm = rng.permutation(dg.order)
        relabelled = dg.adjacency[np.ix_(perm, perm)]
        assert len(clique_search(relabelled)) == base
        assert len(clique_search(relabelled, deterministic=False, seed=int(rng.integers(1000)))) == base


def test_monotone_below_complete():
    for n in (2, 3, 4, 5):
        top = max_clique(build_difference_graph(n, Complete())).omega
        assert top == factorial(n)
        for g in (Distance(1), Distance(2), Residue(2), Residue(3)):
            assert max_clique(build_difference_graph(n, g)).omega <= top


def test_deterministic_witness_is_lexicographically_least():
    # exhaustive check at n = 4 over all maximum cliques
    for g in (Distance(1), Distance(2), Residue(2)):
        dg = build_difference_graph(4, g)
        res = max_clique(dg)
        cliques = []
        adj = dg.adjacency
        idx = range(dg.order)
        for sub in combinations(idx, res.omega):
            if all(adj[a, b] for a, b in combinations(sub, 2)):
                cliques.append(sub)
                break  # combinations are generated in lexicographic order
        assert [dg.vertices[i] for i in cliques[0]] == res.witness


@pytest.mark.parametrize("backend", BACKENDS)
def test_deterministic_mode_repeatable(backend):
    dg = build_difference_graph(5, Distance(1))
    a = max_clique(dg, backend=backend)
    b = max_clique(dg, backend=backend)
    assert a.witness == b.witness
    c = max_clique(dg, backend=backend, use_symmetry=False)
    assert c.witness == a.witness


def test_seeded_mode_repeatable():
    dg = build_difference_graph(5, Residue(2))
    a = max_clique(dg, deterministic=False, seed=3)
    b = max_clique(dg, deterministic=False, seed=3)
    assert a.witness == b.witness and a.omega == max_clique(dg).omega


def test_timeout_is_reported():
    dg = build_difference_graph(6, Distance(1))
    with pytest.raises(CliqueTimeout):
        max_clique(dg, timeout_ms=1)


def test_omega_table_distance_one():
    rows = omega_table(Distance(1), 5)
    assert [r.n for r in rows] == [2, 3, 4, 5]
    assert [r.omega for r in rows] == [2, 3, 6, 10]
    assert [r.conjecture for r in rows] == [middle_binomial(n) for n in range(2, 6)]
    assert all(r.match for r in rows)


def test_omega_table_other_graphs():
    rows = omega_table(Complete(), 4)
    assert [r.omega for r in rows] == [2, 6, 24]
    rows = omega_table(Distance(2), 4)
    assert all(r.conjecture is None and r.match is None for r in rows)
    # independent check with plain Bron-Kerbosch
    assert [r.omega for r in rows] == [
        enumerate_clique_number(build_difference_graph(n, Distance(2)).adjacency.tolist()) for n in (2, 3, 4)
    ]

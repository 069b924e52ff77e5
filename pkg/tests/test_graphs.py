import numpy as np
import pytest
from hypothesis import given, strategies as st

from diverge.graphs import (
    Complete,
    Distance,
    FiniteEdges,
    Residue,
    adjacency_matrix,
    adjacent,
    adjacent_array,
    distance_partition_check,
    format_edges,
    parse_edges,
    parse_graph,
    read_edges,
)
from oracles import adjacent_naive

SPECS = [Distance(1), Distance(3), Distance(17), Complete(), Residue(2), Residue(5)]


def test_adjacent_examples():
    assert adjacent(Distance(1), 7, 8) is True
    assert adjacent(Distance(3), 5, 5) is False
    assert adjacent(Residue(2), 3, 9) is True
    assert adjacent(Residue(2), 3, 8) is False
    assert adjacent(Complete(), 4, 4) is False


@pytest.mark.parametrize("g", SPECS, ids=lambda g: g.spec())
def test_symmetric_and_irreflexive_exhaustive(g):
    m = adjacency_matrix(g, 1000)[1:, 1:]
    assert np.array_equal(m, m.T)
    assert not m.diagonal().any()


@pytest.mark.parametrize("g", SPECS, ids=lambda g: g.spec())
def test_vector_path_matches_scalar(g):
    rng = np.random.default_rng(7)
    a = rng.integers(1, 200, 2000)
    b = rng.integers(1, 200, 2000)
    got = adjacent_array(g, a, b)
    assert got.tolist() == [adjacent(g, int(x), int(y)) for x, y in zip(a, b)]
    assert got.tolist() == [adjacent_naive(g, int(x), int(y)) for x, y in zip(a, b)]


@given(st.sampled_from(SPECS), st.integers(1, 10**6), st.integers(1, 10**6))
def test_symmetry_property(g, a, b):
    assert adjacent(g, a, b) == adjacent(g, b, a)


def test_partition_examples():
    assert distance_partition_check(10, 50)
    assert distance_partition_check(1, 2)
    assert distance_partition_check(2, 3)


def test_partition_invariant():
    # A pair's membership does not depend on N, so N = 200 covers every
    # smaller N for the same kmax.
    for k in range(1, 21):
        assert distance_partition_check(k, 200)


def test_finite_edges_validation():
    with pytest.raises(ValueError):
        FiniteEdges(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        FiniteEdges(3, frozenset({(1, 4)}))
    g = FiniteEdges(4, frozenset({(2, 1), (3, 4)}))
    assert adjacent(g, 1, 2) and adjacent(g, 2, 1) and not adjacent(g, 1, 3)
    with pytest.raises(ValueError):
        adjacent(g, 1, 5)


def test_edge_file_round_trip(tmp_path):
    g = FiniteEdges(5, frozenset({(1, 2), (2, 3), (4, 5)}))
    path = tmp_path / "g.txt"
    path.write_text(format_edges(g))
    assert read_edges(path) == g
    assert parse_graph(f"file:{path}") == g
    assert parse_edges(["# comment", "3", "1 2  # edge", "", "2 3"]) == FiniteEdges(3, frozenset({(1, 2), (2, 3)}))
    with pytest.raises(ValueError):
        parse_edges(["3", "1 2 3"])


@pytest.mark.parametrize("text,expected", [
    ("distance:2", Distance(2)),
    ("complete", Complete()),
    ("residue:3", Residue(3)),
])
def test_parse_graph(text, expected):
    assert parse_graph(text) == expected
    assert parse_graph(expected.spec()) == expected


@pytest.mark.parametrize("text", ["distance", "distance:0", "residue:1", "cycle:5", "complete:3"])
def test_parse_graph_errors(text):
    with pytest.raises(ValueError):
        parse_graph(text)

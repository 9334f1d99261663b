import random
from itertools import combinations
from math import factorial

import networkx as nx
import pytest

from cyclestab.canon import canonical_key
from cyclestab.graph import make_graph
from cyclestab.harness.enumeration import (
    EnumerationError,
    GraphSource,
    enumerate_2connected,
    enumerate_connected,
    enumerate_graphs,
    random_spanning_subgraph,
)
from cyclestab.structure import is_2_connected
from reference import from_nx, nx_automorphism_count

# isomorphism-class counts, cross-checked below against independent oracles
ALL_GRAPHS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
TWO_CONNECTED = {3: 1, 4: 3, 5: 10, 6: 56, 7: 468, 8: 7123, 9: 194066}


def _atlas_keys(n, keep=lambda H: True):
    return {canonical_key(from_nx(H)) for H in nx.graph_atlas_g() if H.number_of_nodes() == n and keep(H)}


@pytest.mark.parametrize("n", range(1, 8))
def test_all_graphs_match_atlas(n, cache_dir):
    got = enumerate_graphs(n, cache_dir)
    assert len(got) == ALL_GRAPHS[n]
    assert {canonical_key(G) for G in got} == _atlas_keys(n)


@pytest.mark.parametrize("n", range(3, 8))
def test_two_connected_match_atlas(n, cache_dir):
    got = enumerate_2connected(n, cache_dir)
    assert len(got) == TWO_CONNECTED[n]
    assert {canonical_key(G) for G in got} == _atlas_keys(n, nx.is_biconnected)


def test_labelled_count_at_eight(cache_dir):
    # orbit-stabiliser: summing n!/|Aut| over the classes counts every labelled graph once
    got = enumerate_graphs(8, cache_dir)
    assert len(got) == ALL_GRAPHS[8]
    assert sum(factorial(8) // nx_automorphism_count(G) for G in got) == 2 ** 28


def test_two_connected_at_eight(cache_dir):
    got = enumerate_2connected(8, cache_dir)
    assert len(got) == TWO_CONNECTED[8]
    assert all(is_2_connected(G) for G in got)
    assert len({canonical_key(G) for G in got}) == len(got)


@pytest.mark.slow
def test_two_connected_at_nine(cache_dir):
    assert len(enumerate_2connected(9, cache_dir)) == TWO_CONNECTED[9]


@pytest.mark.parametrize("n", [4, 5])
def test_complete_against_labelled_filter(n):
    pairs = list(combinations(range(n), 2))
    keys = set()
    for mask in range(1 << len(pairs)):
        G = make_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if is_2_connected(G):
            keys.add(canonical_key(G))
    assert keys == {canonical_key(G) for G in enumerate_2connected(n)}


def test_connected_is_a_filter():
    assert len(enumerate_connected(5)) == 21


def test_cache_is_reused(tmp_path):
    first = enumerate_2connected(6, tmp_path)
    assert (tmp_path / "biconnected_6.g6").exists()
    assert enumerate_2connected(6, tmp_path) == first


def test_source_errors():
    with pytest.raises(EnumerationError):
        GraphSource("enumeration", (2,))
    with pytest.raises(EnumerationError):
        GraphSource("enumeration", (11,))
    with pytest.raises(EnumerationError):
        GraphSource("graph6")
    with pytest.raises(EnumerationError):
        GraphSource("bogus")
    with pytest.raises(EnumerationError):
        enumerate_graphs(-1)


def test_random_source_is_seeded():
    a = list(GraphSource("random", (6,), seed=3, samples=5).graphs())
    b = list(GraphSource("random", (6,), seed=3, samples=5).graphs())
    assert a == b and len(a) == 5


def test_spanning_subgraph_keeps_vertices():
    G = make_graph(5, combinations(range(5), 2))
    H = random_spanning_subgraph(G, 0.5, random.Random(1))
    assert H.n == 5 and all(G.has_edge(u, v) for u, v in H.edges())

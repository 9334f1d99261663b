import networkx as nx
import pytest
from hypothesis import given

from cyclestab.graph import complete, complete_bipartite, cycle, make_graph, path, with_edges
from cyclestab.structure import (
    capped_circumference,
    chvatal_index,
    circumference,
    components,
    cut_vertices,
    hamiltonian_cycle,
    is_2_connected,
    is_3_connected,
    is_connected,
    is_cycle_in,
    is_hamiltonian,
    is_path_in,
    k_closure,
    longest_cycle,
    longest_cycle_through_edge,
    longest_path_vertices,
    longest_xy_path,
    separating_pairs,
)
from reference import nx_circumference, nx_is_hamiltonian, nx_longest_xy_path, to_nx
from strategies import graphs

PETERSEN = make_graph(10, [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
                      + [(i, i + 5) for i in range(5)])


def test_circumference_examples():
    assert circumference(cycle(7)) == 7
    assert circumference(complete_bipartite(2, 3)) == 4
    assert circumference(path(5)) == 0
    assert circumference(PETERSEN) == 9
    assert not is_hamiltonian(PETERSEN)


def test_xy_paths_in_complete_bipartite():
    G = complete_bipartite(4, 5)
    assert longest_xy_path(G, 0, 1).length == 6
    assert longest_xy_path(G, 0, 4).length == 7
    assert longest_xy_path(G, 4, 5).length == 8


def test_connectivity_examples():
    assert is_2_connected(cycle(5)) and not is_3_connected(cycle(5))
    assert is_3_connected(complete(4))
    assert set(cut_vertices(path(4))) == {1, 2}
    assert not is_2_connected(path(3))
    assert (0, 2) in {tuple(p) for p in separating_pairs(cycle(4))}


def test_chvatal_index_example():
    assert chvatal_index(complete_bipartite(2, 3)) == 2


def test_hamiltonian_cycle_through_forced_edges():
    G = complete(5)
    cyc = hamiltonian_cycle(G, [(0, 1), (2, 3)])
    assert cyc is not None and is_cycle_in(G, cyc) and len(cyc) == 5
    pos = {v: i for i, v in enumerate(cyc)}
    for a, b in [(0, 1), (2, 3)]:
        assert abs(pos[a] - pos[b]) in (1, 4)


@given(graphs(max_n=8))
def test_circumference_matches_cycle_enumeration(G):
    length, cyc = longest_cycle(G)
    assert length == nx_circumference(G)
    if length:
        assert len(cyc) == length and is_cycle_in(G, cyc)


@given(graphs(max_n=8))
def test_capped_circumference(G):
    c = circumference(G)
    for cap in range(3, 9):
        assert capped_circumference(G, cap) == min(c, cap)


@given(graphs(min_n=1, max_n=9))
def test_connectivity_matches_networkx(G):
    H = to_nx(G)
    assert is_connected(G) == nx.is_connected(H)
    assert is_2_connected(G) == (G.n >= 3 and nx.is_biconnected(H))
    assert is_3_connected(G) == (G.n >= 4 and nx.node_connectivity(H) >= 3)
    assert len(components(G)) == nx.number_connected_components(H)


@given(graphs(min_n=2, max_n=7))
def test_longest_xy_path_matches_enumeration(G):
    for x in range(min(G.n, 3)):
        for y in range(x + 1, G.n):
            res = longest_xy_path(G, x, y)
            want = nx_longest_xy_path(G, x, y)
            assert (res.length if res.found else -1) == want
            if res.found:
                assert is_path_in(G, res.witness) and res.witness[0] == x and res.witness[-1] == y


@given(graphs(min_n=3, max_n=8))
def test_hamiltonicity_matches_enumeration(G):
    assert is_hamiltonian(G) == nx_is_hamiltonian(G)


@given(graphs(min_n=3, max_n=8))
def test_circumference_bounds_cycles_through_edges(G):
    c = circumference(G)
    for u, v in G.edges():
        assert longest_cycle_through_edge(G, u, v) <= c


@given(graphs(min_n=1, max_n=8))
def test_longest_path_is_a_path(G):
    P = longest_path_vertices(G)
    assert is_path_in(G, P)
    lengths = [len(p) for x in range(G.n) for y in range(G.n) if x != y
               for p in nx.all_simple_paths(to_nx(G), x, y)]
    assert len(P) == max(lengths + [1])


@given(graphs(min_n=3, max_n=9))
def test_closure_idempotent_and_monotone(G):
    for k in range(G.n - 1, 2 * G.n):
        C = k_closure(G, k)
        assert k_closure(C, k) == C
        assert k_closure(G, k + 1).e <= C.e
        assert all(C.has_edge(u, v) for u, v in G.edges())


def test_bad_queries_raise():
    from cyclestab.graph import GraphError

    with pytest.raises(GraphError):
        longest_xy_path(cycle(4), 1, 1)
    with pytest.raises(GraphError):
        hamiltonian_cycle(path(2))
    with pytest.raises(GraphError):
        chvatal_index(complete(4))
    assert with_edges(cycle(4), [(0, 2)]).e == 5

from math import comb

import pytest
from hypothesis import given

from cyclestab.graph import (
    GraphError,
    SimpleGraph,
    complement,
    complete,
    complete_bipartite,
    contract_edge,
    cycle,
    delete,
    disjoint_union,
    empty,
    induced_mask,
    join,
    make_graph,
    min_triangle_count,
    path,
    relabel,
    star,
    triangles_on_edge,
    with_edges,
)
from cyclestab.harness.enumeration import enumerate_graphs
from strategies import graphs, graphs_with_perm


def test_named_graph_sizes():
    assert complete(5).e == 10
    assert cycle(6).e == 6 and set(cycle(6).degrees()) == {2}
    assert path(4).e == 3
    assert complete_bipartite(3, 4).e == 12
    assert star(5).n == 6 and star(5).e == 5
    assert empty(4).e == 0


@pytest.mark.parametrize("G, edge, expected", [
    (cycle(4), (0, 1), cycle(3)),
    (complete(4), (1, 3), complete(3)),
    (path(4), (1, 2), path(3)),
])
def test_contraction_examples(G, edge, expected):
    H, new_of_old = contract_edge(G, *edge)
    assert H == expected
    assert new_of_old[edge[0]] == new_of_old[edge[1]] == min(edge)


def test_contraction_relabel_map_shifts_labels():
    G = path(5)
    H, new_of_old = contract_edge(G, 1, 2)
    assert new_of_old == [0, 1, 1, 2, 3]
    assert H == path(4)


def test_contracting_a_non_edge_fails():
    with pytest.raises(GraphError):
        contract_edge(path(4), 0, 2)


def test_invalid_rows_rejected():
    with pytest.raises(GraphError):
        make_graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        make_graph(3, [(0, 5)])
    with pytest.raises(GraphError):
        make_graph(64)


def test_triangle_counts():
    assert triangles_on_edge(complete(5), 0, 1) == 3
    assert triangles_on_edge(cycle(5), 0, 1) == 0
    assert min_triangle_count(with_edges(cycle(4), [(0, 2)])) == 1


def test_join_of_empty_graphs_is_complete_bipartite():
    assert join(empty(3), empty(5)) == complete_bipartite(3, 5)
    assert join(empty(3), empty(5)).e == 15


@given(graphs(max_n=6), graphs(max_n=6))
def test_join_edge_count(G1, G2):
    assert join(G1, G2).e == G1.e + G2.e + G1.n * G2.n
    assert disjoint_union(G1, G2).e == G1.e + G2.e


@given(graphs())
def test_complement_involution(G):
    assert complement(complement(G)) == G
    assert G.e + complement(G).e == comb(G.n, 2)


@given(graphs_with_perm(min_n=2))
def test_contraction_commutes_with_relabelling(data):
    G, perm = data
    if not G.e:
        return
    u, v = G.edges()[0]
    H, _ = contract_edge(G, u, v)
    H2, _ = contract_edge(relabel(G, perm), perm[u], perm[v])
    from cyclestab.canon import are_isomorphic

    assert are_isomorphic(H, H2)


@given(graphs(min_n=2))
def test_contraction_counts(G):
    for u, v in G.edges():
        H, _ = contract_edge(G, u, v)
        assert H.n == G.n - 1
        assert H.e == G.e - 1 - triangles_on_edge(G, u, v)


@given(graphs(min_n=1))
def test_induced_and_delete(G):
    keep = G.vertex_mask & ~1
    H, old_of_new = induced_mask(G, keep)
    assert H == delete(G, [0])[0]
    for i, a in enumerate(old_of_new):
        for j, b in enumerate(old_of_new):
            if i != j:
                assert H.has_edge(i, j) == G.has_edge(a, b)


def _contraction_monotonicity(n):
    bad = []
    for G in enumerate_graphs(n):
        if not G.e:
            continue
        delta, T = G.min_degree(), min_triangle_count(G)
        for u, v in G.edges():
            H, _ = contract_edge(G, u, v)
            if H.min_degree() < delta - 1:
                bad.append(("delta", G))
            if H.e and min_triangle_count(H) < T - 1:
                bad.append(("T", G))
    return bad


@pytest.mark.parametrize("n", range(2, 7))
def test_degree_and_triangle_monotonicity(n):
    assert _contraction_monotonicity(n) == []


def test_simplegraph_is_hashable_value():
    assert {cycle(4), cycle(4)} == {cycle(4)}
    assert isinstance(cycle(4), SimpleGraph)

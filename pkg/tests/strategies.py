from itertools import combinations

from hypothesis import strategies as st

from cyclestab.graph import make_graph


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def graphs_with_perm(draw, min_n=1, max_n=9):
    G = draw(graphs(min_n, max_n))
    perm = draw(st.permutations(list(range(G.n))))
    return G, list(perm)

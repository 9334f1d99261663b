"""Immutable simple graphs stored as adjacency bit rows.

Vertices are ``0..n-1``; ``rows[v]`` is an int whose bit ``u`` is set iff
``uv`` is an edge.  Every operation returns a new graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 63

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or invalid vertex/edge references."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, slots=True)
class SimpleGraph:
    n: int
    rows: tuple[int, ...]

    # -- basic queries -------------------------------------------------
    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    e = property(num_edges)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def min_degree(self) -> int:
        return min((r.bit_count() for r in self.rows), default=0)

    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.rows[u] >> v & 1)

    def edges(self) -> list[Edge]:
        out = []
        for u, r in enumerate(self.rows):
            for v in bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def non_edges(self) -> list[Edge]:
        out = []
        full = self.vertex_mask
        for u, r in enumerate(self.rows):
            missing = (full & ~r) >> (u + 1)
            for v in bits(missing):
                out.append((u, u + 1 + v))
        return out

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise GraphError(f"vertex {v} out of range for n={n}")


def make_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> SimpleGraph:
    """Build a graph on ``n`` vertices; repeated pairs are merged, loops rejected."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    rows = [0] * n
    for pair in edges:
        u, v = pair
        _check_vertex(n, u)
        _check_vertex(n, v)
        if u == v:
            raise GraphError(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return SimpleGraph(n, tuple(rows))


def from_rows(rows: Sequence[int], check: bool = True) -> SimpleGraph:
    n = len(rows)
    rows = tuple(rows)
    if check:
        if n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} exceeds {MAX_VERTICES}")
        full = (1 << n) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise GraphError(f"row {v} references a vertex >= {n}")
            if r >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(r):
                if not rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency {v}->{u}")
    return SimpleGraph(n, rows)


def require_edge(G: SimpleGraph, u: int, v: int) -> Edge:
    """Validate an edge reference and return it normalised as ``(min, max)``."""
    _check_vertex(G.n, u)
    _check_vertex(G.n, v)
    if not G.rows[u] >> v & 1:
        raise GraphError(f"{u}{v} is not an edge")
    return (u, v) if u < v else (v, u)


# -- named graphs -------------------------------------------------------
def empty(n: int) -> SimpleGraph:
    return make_graph(n)


def complete(n: int) -> SimpleGraph:
    full = (1 << n) - 1
    return SimpleGraph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> SimpleGraph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return make_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> SimpleGraph:
    return complete_bipartite(1, leaves)


# -- derived graphs -----------------------------------------------------
def with_edges(G: SimpleGraph, edges: Iterable[Sequence[int]]) -> SimpleGraph:
    rows = list(G.rows)
    for u, v in edges:
        _check_vertex(G.n, u)
        _check_vertex(G.n, v)
        if u == v:
            raise GraphError(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return SimpleGraph(G.n, tuple(rows))


def without_edges(G: SimpleGraph, edges: Iterable[Sequence[int]]) -> SimpleGraph:
    rows = list(G.rows)
    for u, v in edges:
        require_edge(G, u, v)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return SimpleGraph(G.n, tuple(rows))


def add_vertex(G: SimpleGraph, nbr_mask: int) -> SimpleGraph:
    """Append vertex ``n`` adjacent to the vertices in ``nbr_mask``."""
    n = G.n
    bit = 1 << n
    rows = [r | bit if nbr_mask >> v & 1 else r for v, r in enumerate(G.rows)]
    rows.append(nbr_mask)
    return SimpleGraph(n + 1, tuple(rows))


def complement(G: SimpleGraph) -> SimpleGraph:
    full = G.vertex_mask
    return SimpleGraph(G.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(G.rows)))


def relabel(G: SimpleGraph, perm: Sequence[int]) -> SimpleGraph:
    """Return the graph in which old vertex ``v`` is renamed ``perm[v]``."""
    if sorted(perm) != list(range(G.n)):
        raise GraphError("relabelling must be a permutation of the vertices")
    rows = [0] * G.n
    for v, r in enumerate(G.rows):
        m = 0
        for u in bits(r):
            m |= 1 << perm[u]
        rows[perm[v]] = m
    return SimpleGraph(G.n, tuple(rows))


def induced_mask(G: SimpleGraph, keep: int) -> tuple[SimpleGraph, list[int]]:
    """Induced subgraph on the vertex bitmask ``keep``.

    Returns the subgraph and ``old_of_new`` (new label -> old label).
    Remaining vertices keep their relative order.
    """
    old_of_new = list(bits(keep & G.vertex_mask))
    new_of_old = {v: i for i, v in enumerate(old_of_new)}
    rows = []
    for v in old_of_new:
        m = 0
        for u in bits(G.rows[v] & keep):
            m |= 1 << new_of_old[u]
        rows.append(m)
    return SimpleGraph(len(rows), tuple(rows)), old_of_new


def induced(G: SimpleGraph, S: Iterable[int]) -> tuple[SimpleGraph, list[int]]:
    S = list(S)
    for v in S:
        _check_vertex(G.n, v)
    return induced_mask(G, mask_of(S))


def delete(G: SimpleGraph, S: Iterable[int]) -> tuple[SimpleGraph, list[int]]:
    S = list(S)
    for v in S:
        _check_vertex(G.n, v)
    return induced_mask(G, G.vertex_mask & ~mask_of(S))


def contract_edge(G: SimpleGraph, u: int, v: int) -> tuple[SimpleGraph, list[int]]:
    """Contract edge ``uv``; the merged vertex takes label ``min(u, v)``.

    Labels above ``max(u, v)`` shift down by one.  Returns the contracted
    graph and ``new_of_old`` (both endpoints map to the merged vertex).
    """
    x, y = require_edge(G, u, v)
    new_of_old = [i if i < y else (x if i == y else i - 1) for i in range(G.n)]
    merged = (G.rows[x] | G.rows[y]) & ~((1 << x) | (1 << y))
    low = (1 << y) - 1
    rows = []
    for i in range(G.n):
        if i == y:
            continue
        r = merged if i == x else G.rows[i]
        if i != x and r >> y & 1:
            r = (r & ~(1 << y)) | (1 << x)
        rows.append((r & low) | ((r >> (y + 1)) << y))
    return SimpleGraph(G.n - 1, tuple(rows)), new_of_old


def join(G1: SimpleGraph, G2: SimpleGraph) -> SimpleGraph:
    """``G1 + G2``: disjoint union plus every edge between the two sides."""
    n1 = G1.n
    m1, m2 = G1.vertex_mask, G2.vertex_mask << n1
    rows = [r | m2 for r in G1.rows] + [(r << n1) | m1 for r in G2.rows]
    return from_rows(rows)


def disjoint_union(G1: SimpleGraph, G2: SimpleGraph) -> SimpleGraph:
    n1 = G1.n
    return from_rows(list(G1.rows) + [r << n1 for r in G2.rows])


def triangles_on_edge(G: SimpleGraph, u: int, v: int) -> int:
    require_edge(G, u, v)
    return (G.rows[u] & G.rows[v]).bit_count()


def min_triangle_count(G: SimpleGraph) -> int:
    """``T(G)``: the fewest triangles on any single edge."""
    best = None
    rows = G.rows
    for u, r in enumerate(rows):
        for w in bits(r >> (u + 1)):
            v = u + 1 + w
            c = (r & rows[v]).bit_count()
            if best is None or c < best:
                best = c
    if best is None:
        raise GraphError("T(G) is undefined for an edgeless graph")
    return best


def all_pairs(n: int) -> Iterator[Edge]:
    return combinations(range(n), 2)

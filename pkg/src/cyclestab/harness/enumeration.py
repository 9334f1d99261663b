"""Isomorphism-free enumeration of small graphs, plus graph sources.

Graphs are grown one vertex at a time: every graph arises from deleting a
minimum-degree vertex, so extending each parent by a new vertex whose
degree does not exceed the child's minimum degree reaches every class.
Duplicates are removed by canonical form.  A 2-connected graph minus any
vertex is connected, so the last level only extends connected parents.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from ..canon import canonical_key
from ..graph import SimpleGraph, add_vertex, from_rows, make_graph
from ..structure import _two_connected_rows, is_connected
from .graph6 import read_graph6, write_graph6

MAX_ENUMERATION_N = 10


class EnumerationError(ValueError):
    pass


def _children(parent: SimpleGraph, min_new_degree: int) -> Iterator[SimpleGraph]:
    n = parent.n
    degs = parent.degrees()
    for d in range(min_new_degree, n + 1):
        # vertices outside the new neighbourhood must already have degree >= d
        low = [u for u in range(n) if degs[u] < d]
        if any(degs[u] < d - 1 for u in low) or len(low) > d:
            continue
        forced = 0
        for u in low:
            forced |= 1 << u
        rest = [u for u in range(n) if not forced >> u & 1]
        for extra in combinations(rest, d - len(low)):
            mask = forced
            for u in extra:
                mask |= 1 << u
            yield add_vertex(parent, mask)


def _extend(parents: Iterable[SimpleGraph], keep, min_new_degree: int = 0) -> list[SimpleGraph]:
    seen: dict[tuple[int, ...], None] = {}
    for P in parents:
        for child in _children(P, min_new_degree):
            if not keep(child):
                continue
            key = canonical_key(child)
            if key not in seen:
                seen[key] = None
    return [SimpleGraph(len(k), k) for k in sorted(seen)]


def _cache_path(cache_dir: str | Path | None, name: str) -> Path | None:
    if cache_dir is None:
        return None
    p = Path(cache_dir)
    p.mkdir(parents=True, exist_ok=True)
    return p / name


def _cached(cache_dir, name: str, build) -> list[SimpleGraph]:
    path = _cache_path(cache_dir, name)
    if path is not None and path.exists():
        return list(read_graph6(path))
    graphs = build()
    if path is not None:
        tmp = path.with_suffix(".tmp")
        write_graph6(graphs, tmp)
        tmp.replace(path)
    return graphs


def _check_range(n: int, low: int) -> None:
    if not low <= n <= MAX_ENUMERATION_N:
        raise EnumerationError(f"built-in enumeration supports {low} <= n <= {MAX_ENUMERATION_N}, got {n}")


def enumerate_graphs(n: int, cache_dir: str | Path | None = None) -> list[SimpleGraph]:
    """One canonical representative per isomorphism class of ``n``-vertex graphs."""
    _check_range(n, 0)
    if n == 0:
        return [make_graph(0)]

    def build():
        return _extend(enumerate_graphs(n - 1, cache_dir), lambda G: True)

    return _cached(cache_dir, f"graphs_{n}.g6", build)


def enumerate_connected(n: int, cache_dir: str | Path | None = None) -> list[SimpleGraph]:
    _check_range(n, 1)
    return [G for G in enumerate_graphs(n, cache_dir) if is_connected(G)]


def enumerate_2connected(n: int, cache_dir: str | Path | None = None) -> list[SimpleGraph]:
    """One representative per isomorphism class of 2-connected ``n``-vertex graphs.

    Deterministic order: sorted by canonical adjacency rows.
    """
    _check_range(n, 3)

    def build():
        parents = enumerate_connected(n - 1, cache_dir)
        return _extend(parents, lambda G: _two_connected_rows(G.rows, G.n), min_new_degree=2)

    return _cached(cache_dir, f"biconnected_{n}.g6", build)


# ---------------------------------------------------------------------------
# graph sources
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GraphSource:
    """Where a sweep draws its graphs from.

    ``kind`` is one of ``enumeration`` (all 2-connected graphs for each n in
    ``n_values``), ``graph6`` (a file), ``construction-grid`` (graphs supplied
    by a callback at sweep time) or ``random`` (seeded G(n, p) samples).
    """

    kind: str
    n_values: tuple[int, ...] = ()
    path: str | None = None
    seed: int = 0
    samples: int = 0
    density: float = 0.5
    cache_dir: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("enumeration", "graph6", "random", "construction-grid"):
            raise EnumerationError(f"unknown source kind {self.kind!r}")
        if self.kind == "enumeration":
            for n in self.n_values:
                _check_range(n, 3)
        if self.kind == "graph6" and not self.path:
            raise EnumerationError("graph6 source needs a path")

    def graphs(self) -> Iterator[SimpleGraph]:
        if self.kind == "enumeration":
            for n in self.n_values:
                yield from enumerate_2connected(n, self.cache_dir)
        elif self.kind == "graph6":
            yield from read_graph6(self.path)
        elif self.kind == "random":
            rng = random.Random(self.seed)
            for n in self.n_values:
                for _ in range(self.samples):
                    yield random_graph(n, self.density, rng)
        else:
            raise EnumerationError("construction-grid sources are expanded by the sweep driver")


def random_graph(n: int, density: float, rng: random.Random) -> SimpleGraph:
    rows = [0] * n
    for u, v in combinations(range(n), 2):
        if rng.random() < density:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return from_rows(rows, check=False)


def random_spanning_subgraph(G: SimpleGraph, keep_prob: float, rng: random.Random) -> SimpleGraph:
    """Delete each edge of ``G`` independently with probability ``1 - keep_prob``."""
    rows = list(G.rows)
    for u, v in G.edges():
        if rng.random() >= keep_prob:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
    return from_rows(rows, check=False)


__all__ = [
    "EnumerationError",
    "GraphSource",
    "MAX_ENUMERATION_N",
    "enumerate_2connected",
    "enumerate_connected",
    "enumerate_graphs",
    "random_graph",
    "random_spanning_subgraph",
]

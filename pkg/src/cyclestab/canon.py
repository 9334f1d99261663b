"""Canonical labelling by partition refinement and individualization.

The search follows the classic scheme: refine an ordered vertex partition
to an equitable one, individualize a vertex of the first smallest
non-singleton cell, recurse, and keep the leaf whose relabelled adjacency
is largest.  Automorphisms discovered at equal leaves prune sibling
subtrees.  Adequate for the small graphs this package works with.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import SimpleGraph, bits


def _refine(rows, cells: list[int], queue: deque) -> list[int]:
    while queue:
        splitter = queue.popleft()
        out = []
        changed = False
        for cell in cells:
            if not cell & (cell - 1):
                out.append(cell)
                continue
            groups: dict[int, int] = {}
            for v in bits(cell):
                c = (rows[v] & splitter).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) == 1:
                out.append(cell)
                continue
            changed = True
            for c in sorted(groups):
                out.append(groups[c])
                queue.append(groups[c])
        cells = out
        if changed and len(cells) == len(rows):
            break
    return cells


def _relabelled_rows(rows, order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        m = 0
        for u in bits(rows[v]):
            m |= 1 << pos[u]
        out.append(m)
    return tuple(out)


def _orbits(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


@dataclass(frozen=True)
class CanonicalResult:
    order: tuple[int, ...]
    """``order[i]`` is the original vertex that receives canonical label ``i``."""
    rows: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    """Automorphisms found during the search (as vertex maps)."""


class _Abort(Exception):
    def __init__(self, depth: int):
        self.depth = depth


def canonical_labeling(G: SimpleGraph) -> CanonicalResult:
    rows = G.rows
    n = G.n
    if n == 0:
        return CanonicalResult((), (), ())
    best: list = [None, None]  # rows, order
    first: list = [None, None]
    first_path: list[int] = []
    gens: list[list[int]] = []

    def leaf_auto(order_a, order_b):
        g = [0] * n
        for a, b in zip(order_a, order_b):
            g[a] = b
        return g

    def common_depth(seq_a, seq_b):
        d = 0
        for x, y in zip(seq_a, seq_b):
            if x != y:
                break
            d += 1
        return d

    leaf_seq: dict[tuple, list[int]] = {}

    def search(cells: list[int], seq: list[int]):
        if len(cells) == n:
            order = [c.bit_length() - 1 for c in cells]
            enc = _relabelled_rows(rows, order)
            if first[0] is None:
                first[0], first[1] = enc, order
                first_path.extend(seq)
                best[0], best[1] = enc, order
                leaf_seq[enc] = list(seq)
                return
            for ref_enc, ref_order in ((first[0], first[1]), (best[0], best[1])):
                if enc == ref_enc:
                    gens.append(leaf_auto(order, ref_order))
                    raise _Abort(common_depth(seq, leaf_seq[ref_enc]))
            if enc > best[0]:
                best[0], best[1] = enc, order
                leaf_seq[enc] = list(seq)
            return
        size = n + 1
        idx = 0
        for i, c in enumerate(cells):
            s = c.bit_count()
            if 1 < s < size:
                size, idx = s, i
                if s == 2:
                    break
        target = cells[idx]
        depth = len(seq)
        tried: list[int] = []
        for v in bits(target):
            if tried:
                fixing = [g for g in gens if all(g[x] == x for x in seq)]
                if fixing:
                    orb = _orbits(n, fixing)
                    if any(orb[v] == orb[u] for u in tried):
                        continue
            tried.append(v)
            child = cells[:idx] + [1 << v, target & ~(1 << v)] + cells[idx + 1:]
            try:
                search(_refine(rows, child, deque([1 << v])), seq + [v])
            except _Abort as stop:
                if stop.depth < depth:
                    raise
                # the subtree under v is equivalent to one already explored

    full = (1 << n) - 1
    search(_refine(rows, [full], deque([full])), [])
    return CanonicalResult(tuple(best[1]), best[0], tuple(tuple(g) for g in gens))


def canonical_form(G: SimpleGraph) -> SimpleGraph:
    return SimpleGraph(G.n, canonical_labeling(G).rows)


def canonical_key(G: SimpleGraph) -> tuple[int, ...]:
    """Hashable isomorphism-class key (the canonical adjacency rows)."""
    return canonical_labeling(G).rows


def are_isomorphic(G1: SimpleGraph, G2: SimpleGraph) -> bool:
    if G1.n != G2.n or G1.e != G2.e or sorted(G1.degrees()) != sorted(G2.degrees()):
        return False
    return canonical_key(G1) == canonical_key(G2)


def automorphism_orbits(G: SimpleGraph) -> list[int]:
    """Orbit representative (smallest member) for each vertex.

    Orbits come from the automorphisms met during canonical search, which
    may generate only a subgroup; callers must treat them as a sound but
    possibly incomplete symmetry reduction.
    """
    res = canonical_labeling(G)
    return _orbits(G.n, [list(g) for g in res.generators])

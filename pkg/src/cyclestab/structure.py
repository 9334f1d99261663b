"""Exact structural queries: connectivity, longest cycles and paths, closures.

The cycle and path searches are depth-first branch-and-bound over simple
paths with bitmask visited sets.  Two prunings keep them practical at desk
scale: a reachability bound (the path cannot grow past the vertices still
reachable from its end) and twin symmetry (among unvisited vertices with
identical neighbourhoods only the smallest label is tried).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import GraphError, SimpleGraph, bits, mask_of


class SearchTimeout(RuntimeError):
    """A search exceeded its cancellation deadline."""


@dataclass(frozen=True)
class PathQueryResult:
    length: int | None
    witness: tuple[int, ...]

    @property
    def found(self) -> bool:
        return self.length is not None


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------
def reach(rows: Sequence[int], start: int, allowed: int) -> int:
    """Bitmask of vertices reachable from ``start`` inside ``allowed``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components(G: SimpleGraph, allowed: int | None = None) -> list[int]:
    """Connected components (as bitmasks) of the subgraph induced by ``allowed``."""
    left = G.vertex_mask if allowed is None else allowed & G.vertex_mask
    out = []
    while left:
        v = (left & -left).bit_length() - 1
        comp = reach(G.rows, v, left)
        out.append(comp)
        left &= ~comp
    return out


def _connected_mask(rows: Sequence[int], allowed: int) -> bool:
    if not allowed:
        return True
    v = (allowed & -allowed).bit_length() - 1
    return reach(rows, v, allowed) == allowed


def is_connected(G: SimpleGraph) -> bool:
    return _connected_mask(G.rows, G.vertex_mask)


def cut_vertices(G: SimpleGraph) -> set[int]:
    """Vertices whose removal increases the number of components."""
    base = len(components(G))
    full = G.vertex_mask
    return {v for v in range(G.n) if len(components(G, full & ~(1 << v))) > base}


def _two_connected_rows(rows: Sequence[int], n: int) -> bool:
    if n < 3:
        return False
    full = (1 << n) - 1
    if not _connected_mask(rows, full):
        return False
    for v in range(n):
        r = rows[v]
        if r.bit_count() < 2:
            return False
        if not _connected_mask(rows, full & ~(1 << v)):
            return False
    return True


def is_2_connected(G: SimpleGraph) -> bool:
    return _two_connected_rows(G.rows, G.n)


def separating_pairs(G: SimpleGraph) -> list[tuple[int, int]]:
    """Vertex pairs whose removal disconnects the graph."""
    full = G.vertex_mask
    out = []
    for u, v in combinations(range(G.n), 2):
        rest = full & ~(1 << u) & ~(1 << v)
        if rest and not _connected_mask(G.rows, rest):
            out.append((u, v))
    return out


def is_3_connected(G: SimpleGraph) -> bool:
    if G.n < 4 or not is_2_connected(G):
        return False
    return not separating_pairs(G)


def is_separating(G: SimpleGraph, S: Iterable[int]) -> bool:
    rest = G.vertex_mask & ~mask_of(S)
    return bool(rest) and not _connected_mask(G.rows, rest)


# ---------------------------------------------------------------------------
# search helpers
# ---------------------------------------------------------------------------
def _twin_lower(rows: Sequence[int], n: int, pool: int) -> list[int]:
    """For each vertex in ``pool``, the mask of smaller twins also in ``pool``.

    Twins are vertices with equal open or equal closed neighbourhoods; any
    path through one can be rerouted through the other.
    """
    lower = [0] * n
    seen_open: dict[int, int] = {}
    seen_closed: dict[int, int] = {}
    for v in bits(pool):
        r = rows[v]
        c = r | (1 << v)
        lower[v] = seen_open.get(r, 0) | seen_closed.get(c, 0)
        seen_open[r] = seen_open.get(r, 0) | (1 << v)
        seen_closed[c] = seen_closed.get(c, 0) | (1 << v)
    return lower


class _Deadline:
    __slots__ = ("at", "ticks")

    def __init__(self, seconds: float | None):
        self.at = None if seconds is None else time.monotonic() + seconds
        self.ticks = 0

    def check(self) -> None:
        if self.at is None:
            return
        self.ticks += 1
        if self.ticks & 0x3FF == 0 and time.monotonic() > self.at:
            raise SearchTimeout("search deadline exceeded")


# ---------------------------------------------------------------------------
# longest cycles
# ---------------------------------------------------------------------------
def longest_cycle(
    G: SimpleGraph,
    stop_at: int | None = None,
    deadline: float | None = None,
    allowed: int | None = None,
) -> tuple[int, tuple[int, ...]]:
    """Length and vertex sequence of a longest cycle (``(0, ())`` if acyclic).

    With ``stop_at`` the search returns as soon as a cycle of at least that
    length is found, so the result is exact only below ``stop_at``.
    """
    rows = G.rows
    pool = G.vertex_mask if allowed is None else allowed & G.vertex_mask
    # vertices of degree < 2 lie on no cycle
    changed = True
    while changed:
        changed = False
        for v in bits(pool):
            if (rows[v] & pool).bit_count() < 2:
                pool &= ~(1 << v)
                changed = True
    limit = pool.bit_count()
    if stop_at is None or stop_at > limit:
        stop_at = limit
    lower = _twin_lower(rows, G.n, pool)
    clock = _Deadline(deadline)
    best_len = 0
    best: list[int] = []

    for s in bits(pool):
        if lower[s]:
            continue  # a smaller twin already covered every cycle through s
        space = pool & ~((1 << (s + 1)) - 1)
        home = rows[s] & space
        if home.bit_count() < 2:
            continue
        if 1 + reach(rows, (home & -home).bit_length() - 1, space).bit_count() <= best_len:
            continue
        path = [s]

        def dfs(end: int, free: int) -> bool:
            nonlocal best_len, best
            clock.check()
            nbrs = rows[end] & free
            if len(path) >= 3 and rows[end] >> s & 1 and len(path) > best_len:
                best_len = len(path)
                best = list(path)
                if best_len >= stop_at:
                    return True
            if not nbrs:
                return False
            r = reach(rows, end, free | (1 << end)) & ~(1 << end)
            if not (r & home):
                return False
            if len(path) + r.bit_count() <= best_len:
                return False
            cand = nbrs
            for w in bits(cand):
                if lower[w] & free:
                    continue
                path.append(w)
                if dfs(w, free & ~(1 << w)):
                    return True
                path.pop()
            return False

        if dfs(s, space):
            break
    return best_len, tuple(best)


def circumference(G: SimpleGraph, deadline: float | None = None) -> int:
    return longest_cycle(G, deadline=deadline)[0]


def has_cycle_at_least(G: SimpleGraph, k: int, deadline: float | None = None) -> bool:
    if k <= 3:
        return longest_cycle(G, stop_at=3, deadline=deadline)[0] >= 3
    return longest_cycle(G, stop_at=k, deadline=deadline)[0] >= k


def capped_circumference(G: SimpleGraph, cap: int) -> int:
    """``min(c(G), cap)`` computed with early exit at ``cap``."""
    return min(longest_cycle(G, stop_at=cap)[0], cap)


# ---------------------------------------------------------------------------
# paths between fixed ends
# ---------------------------------------------------------------------------
def _xy_search(
    rows: Sequence[int],
    n: int,
    x: int,
    y: int,
    space: int,
    exact: int | None,
    deadline: float | None,
) -> tuple[int | None, tuple[int, ...]]:
    """Longest (or exactly-``exact``-edge) x,y-path with interior in ``space``."""
    space &= ~((1 << x) | (1 << y))
    lower = _twin_lower(rows, n, space)
    ybit = 1 << y
    clock = _Deadline(deadline)
    best_len: int | None = None
    best: list[int] = []
    path = [x]
    goal = exact

    def dfs(end: int, free: int) -> bool:
        nonlocal best_len, best
        clock.check()
        edges = len(path)  # edges after stepping to y
        if rows[end] & ybit:
            if goal is None:
                if best_len is None or edges > best_len:
                    best_len = edges
                    best = path + [y]
            elif edges == goal:
                best_len = edges
                best = path + [y]
                return True
        nbrs = rows[end] & free
        if not nbrs:
            return False
        r = reach(rows, end, free | (1 << end) | ybit)
        if not r & ybit:
            return False
        extra = (r & free).bit_count()
        if goal is None:
            if best_len is not None and edges + extra <= best_len:
                return False
        elif edges + extra < goal:
            return False
        elif edges >= goal:
            return False
        for w in bits(nbrs):
            if lower[w] & free:
                continue
            path.append(w)
            if dfs(w, free & ~(1 << w)):
                return True
            path.pop()
        return False

    dfs(x, space)
    return best_len, tuple(best)


def longest_xy_path(
    G: SimpleGraph, x: int, y: int, allowed: int | None = None, deadline: float | None = None
) -> PathQueryResult:
    """Longest x,y-path; interior vertices restricted to ``allowed`` if given."""
    if x == y:
        raise GraphError("longest_xy_path needs distinct endpoints")
    for v in (x, y):
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range")
    space = G.vertex_mask if allowed is None else allowed & G.vertex_mask
    length, witness = _xy_search(G.rows, G.n, x, y, space, None, deadline)
    return PathQueryResult(length, witness)


def xy_path_of_length(
    G: SimpleGraph, x: int, y: int, length: int, allowed: int | None = None
) -> tuple[int, ...] | None:
    """Some x,y-path with exactly ``length`` edges, or ``None``."""
    if x == y or length < 1:
        return None
    space = G.vertex_mask if allowed is None else allowed & G.vertex_mask
    got, witness = _xy_search(G.rows, G.n, x, y, space, length, None)
    return witness if got is not None else None


def longest_path_vertices(G: SimpleGraph) -> tuple[int, ...]:
    """A path with the maximum number of vertices (any endpoints)."""
    rows = G.rows
    if G.n == 0:
        return ()
    lower = _twin_lower(rows, G.n, G.vertex_mask)
    best: list[int] = [0]
    path: list[int] = []

    def dfs(end: int, free: int) -> bool:
        nonlocal best
        if len(path) > len(best):
            best = list(path)
            if len(best) == G.n:
                return True
        r = reach(rows, end, free | (1 << end)) & free
        if len(path) + r.bit_count() <= len(best):
            return False
        for w in bits(rows[end] & free):
            if lower[w] & free:
                continue
            path.append(w)
            if dfs(w, free & ~(1 << w)):
                return True
            path.pop()
        return False

    full = G.vertex_mask
    for s in range(G.n):
        if lower[s]:
            continue
        path[:] = [s]
        if dfs(s, full & ~(1 << s)):
            break
    return tuple(best)


def longest_cycle_through_edge(G: SimpleGraph, u: int, v: int) -> int:
    """Length of a longest cycle using edge ``uv`` (0 if none)."""
    if not G.rows[u] >> v & 1:
        raise GraphError(f"{u}{v} is not an edge")
    rows = list(G.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    length, _ = _xy_search(rows, G.n, u, v, G.vertex_mask, None, None)
    return 0 if length is None else length + 1


def cycle_of_length_through_path(G: SimpleGraph, walk: Sequence[int], length: int) -> tuple[int, ...] | None:
    """A cycle with exactly ``length`` edges containing the path ``walk``."""
    inner = mask_of(walk[1:-1])
    k = len(walk) - 1
    rest = length - k
    if rest < 1:
        return None
    a, b = walk[-1], walk[0]
    if rest == 1:
        return tuple(walk) if G.rows[a] >> b & 1 and length >= 3 else None
    space = G.vertex_mask & ~inner & ~mask_of(walk)
    got = xy_path_of_length(G, a, b, rest, allowed=space)
    if got is None:
        return None
    return tuple(walk) + got[1:-1]


# ---------------------------------------------------------------------------
# hamiltonicity, closure, Chvatal index
# ---------------------------------------------------------------------------
def k_closure(G: SimpleGraph, k: int) -> SimpleGraph:
    """Repeatedly join nonadjacent pairs with degree sum at least ``k``."""
    rows = list(G.rows)
    deg = [r.bit_count() for r in rows]
    n = G.n
    changed = True
    while changed:
        changed = False
        for u in range(n):
            for v in range(u + 1, n):
                if not rows[u] >> v & 1 and deg[u] + deg[v] >= k:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
                    deg[u] += 1
                    deg[v] += 1
                    changed = True
    return SimpleGraph(n, tuple(rows))


def hamiltonian_cycle(
    G: SimpleGraph, through: Iterable[Sequence[int]] = ()
) -> tuple[int, ...] | None:
    """A spanning cycle containing every edge in ``through``, or ``None``.

    ``through`` should be a linear forest of edges of ``G``.  This is the
    plain search; it never consults the closure shortcut.
    """
    n = G.n
    if n < 3:
        raise GraphError("hamiltonicity needs n >= 3")
    forced = [0] * n
    for u, v in through:
        if not G.rows[u] >> v & 1:
            raise GraphError(f"{u}{v} is not an edge")
        forced[u] |= 1 << v
        forced[v] |= 1 << u
    if any(f.bit_count() > 2 for f in forced):
        return None
    rows = G.rows
    if min(r.bit_count() for r in rows) < 2:
        return None
    start = next((v for v in range(n) if forced[v]), 0)
    path = [start]

    def closes(end: int) -> bool:
        if not rows[end] >> start & 1:
            return False
        left_end = forced[end] & ~(1 << path[-2])
        left_start = forced[start] & ~(1 << path[1])
        return left_end in (0, 1 << start) and left_start in (0, 1 << end)

    def dfs(end: int, free: int) -> bool:
        if not free:
            return closes(end)
        if end == start:
            must = forced[start] & -forced[start]
        else:
            must = forced[end] & ~(1 << path[-2])
        if must:
            if not must & free:
                return False
            cand = must
        else:
            cand = rows[end] & free
        if reach(rows, end, free | (1 << end)) & free != free:
            return False
        for w in bits(cand):
            if not must and forced[w].bit_count() == 2:
                continue
            path.append(w)
            if dfs(w, free & ~(1 << w)):
                return True
            path.pop()
        return False

    if dfs(start, G.vertex_mask & ~(1 << start)):
        return tuple(path)
    return None


def is_hamiltonian(G: SimpleGraph) -> bool:
    if G.n < 3:
        raise GraphError("hamiltonicity needs n >= 3")
    full = G.vertex_mask
    if all(r | (1 << v) == full for v, r in enumerate(k_closure(G, G.n).rows)):
        return True
    return hamiltonian_cycle(G) is not None


def chvatal_index(G: SimpleGraph) -> int:
    """Least ``i`` with ``d_i <= i`` and ``d_{n-i} < n - i`` (sorted degrees)."""
    n = G.n
    if n < 3:
        raise GraphError("Chvatal index needs n >= 3")
    if is_hamiltonian(G):
        raise GraphError("Chvatal index is only defined for non-hamiltonian graphs")
    d = sorted(G.degrees())
    for i in range(1, n):
        if d[i - 1] <= i and d[n - i - 1] < n - i:
            return i
    raise AssertionError("non-hamiltonian graph without a Chvatal index")


def chvatal_condition_fails(G: SimpleGraph) -> bool:
    """True iff some ``i < n/2`` has ``d_i <= i`` and ``d_{n-i} < n-i``."""
    n = G.n
    d = sorted(G.degrees())
    return any(d[i - 1] <= i and d[n - i - 1] < n - i for i in range(1, (n + 1) // 2) if 2 * i < n)


# ---------------------------------------------------------------------------
# witness validation
# ---------------------------------------------------------------------------
def is_path_in(G: SimpleGraph, walk: Sequence[int]) -> bool:
    if len(set(walk)) != len(walk):
        return False
    return all(G.rows[a] >> b & 1 for a, b in zip(walk, walk[1:]))


def is_cycle_in(G: SimpleGraph, walk: Sequence[int]) -> bool:
    return len(walk) >= 3 and is_path_in(G, walk) and bool(G.rows[walk[-1]] >> walk[0] & 1)

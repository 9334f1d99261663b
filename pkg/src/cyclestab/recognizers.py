"""Membership tests for the stability classes and the path-rich families.

Most classes are witness-definable: a small vertex set ``A`` whose removal
leaves a star forest, plus role assignments inside ``A``.  All such sets of
a given size are found by bounded branching (every non-star-forest contains
a triangle or a path on four vertices, one of whose vertices must be
removed), and then each class's conditions are tested on each set in colex
order.  The first success is returned, so results are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .constructions import h_value, half_threshold
from .graph import GraphError, SimpleGraph, bits, mask_of
from .structure import (
    _two_connected_rows,
    capped_circumference,
    components,
    cycle_of_length_through_path,
    is_2_connected,
    is_separating,
    longest_xy_path,
)


class PreconditionError(ValueError):
    """The input graph is outside the operation's stated hypotheses."""


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ClassWitness:
    """Certificate of membership.

    ``A`` is the removal (or clique) set, ``extras`` holds role assignments
    such as ``a1``, ``b1``, ``A'`` or per-component anchors.  When a concrete
    host member was built, ``host`` is it and ``embedding`` maps each vertex
    of the input to its host vertex (the identity here, since hosts are built
    on the input's vertex set).
    """

    label: str
    A: tuple[int, ...]
    extras: Mapping[str, object] = field(default_factory=dict)
    embedding: tuple[int, ...] | None = None
    host: SimpleGraph | None = None


@dataclass(frozen=True)
class BelowBound:
    edges: int
    threshold: int
    verdict: str = "BelowBound"


@dataclass(frozen=True)
class ClassMember:
    label: str
    witness: ClassWitness
    verdict: str = "ClassMember"


@dataclass(frozen=True)
class Violation:
    edges: int
    threshold: int | None
    reason: str
    verdict: str = "Violation"


Verdict = BelowBound | ClassMember | Violation


# ---------------------------------------------------------------------------
# star forests
# ---------------------------------------------------------------------------
def _obstruction(rows: Sequence[int], keep: int) -> int:
    """Vertex mask of a triangle or P4 inside ``keep``, or 0 for a star forest."""
    for u in bits(keep):
        ru = rows[u] & keep
        if ru & (ru - 1):
            for v in bits(ru):
                rv = rows[v] & keep & ~(1 << u)
                if rv:
                    other_u = ru & ~(1 << v)
                    return (1 << u) | (1 << v) | (other_u & -other_u) | (rv & -rv)
    return 0


def _is_star_forest_mask(rows: Sequence[int], keep: int) -> bool:
    return _obstruction(rows, keep) == 0


def is_star_forest(G: SimpleGraph) -> bool:
    """Every component is a star (``K1`` and ``K2`` included)."""
    return _is_star_forest_mask(G.rows, G.vertex_mask)


def star_forest_sets(G: SimpleGraph, size: int) -> list[int]:
    """All vertex masks ``A`` with ``|A| = size`` and ``G - A`` a star forest, in colex order."""
    rows = G.rows
    full = G.vertex_mask
    if size > G.n:
        return []
    cores: set[int] = set()
    seen: set[int] = set()

    def grow(A: int, budget: int) -> None:
        if A in seen:
            return
        seen.add(A)
        ob = _obstruction(rows, full & ~A)
        if not ob:
            cores.add(A)
            return
        if budget:
            for x in bits(ob):
                grow(A | (1 << x), budget - 1)

    grow(0, size)
    out: set[int] = set()
    for core in cores:
        need = size - core.bit_count()
        rest = list(bits(full & ~core))
        for extra in combinations(rest, need):
            out.add(core | mask_of(extra))
    return sorted(out)


def star_forest_witness(G: SimpleGraph, t: int) -> ClassWitness | None:
    """Smallest (then colex-first) ``A`` with ``|A| <= t`` and ``G - A`` a star forest."""
    if t < 0:
        raise GraphError("budget must be non-negative")
    for size in range(min(t, G.n) + 1):
        sets = star_forest_sets(G, size)
        if sets:
            return ClassWitness("star-forest", tuple(bits(sets[0])))
    return None


# ---------------------------------------------------------------------------
# subgraphs of H(n, k, a)
# ---------------------------------------------------------------------------
def _nonisolated(rows, keep: int) -> int:
    m = 0
    for v in bits(keep):
        if rows[v] & keep:
            m |= 1 << v
    return m


def _h_obstruction(rows, keep: int, room: int) -> int:
    """Edges of ``G[keep]`` touching more than ``room`` vertices, greedily; 0 if none."""
    touched = 0
    for u in bits(keep):
        for v in bits(rows[u] & keep & ~((1 << (u + 1)) - 1)):
            if (touched | (1 << u) | (1 << v)) != touched:
                touched |= (1 << u) | (1 << v)
                if touched.bit_count() > room:
                    return touched
    return 0


def embeds_in_H(G: SimpleGraph, k: int, a: int) -> ClassWitness | None:
    """Is ``G`` a spanning subgraph of ``H(n, k, a)``?

    Equivalent to: some ``a``-set ``A`` such that the edges of ``G - A`` span
    at most ``k - 2a`` vertices (those become ``C``).
    """
    if not (1 <= a and 2 * a < k):
        raise GraphError(f"need 1 <= a < k/2, got k={k}, a={a}")
    n = G.n
    room = k - 2 * a
    if n < a + room:
        return None
    rows = G.rows
    full = G.vertex_mask
    found: list[int] = []
    seen: set[int] = set()

    def grow(A: int, budget: int) -> None:
        if A in seen:
            return
        seen.add(A)
        ob = _h_obstruction(rows, full & ~A, room)
        if not ob:
            found.append(A)
        elif budget:
            for x in bits(ob):
                grow(A | (1 << x), budget - 1)

    grow(0, a)
    if not found:
        return None
    # colex-first valid set: each core padded with its lowest free vertices
    A = min(core | mask_of(list(bits(full & ~core))[: a - core.bit_count()]) for core in found)
    keep = full & ~A
    C = _nonisolated(rows, keep)
    for v in bits(keep & ~C):
        if C.bit_count() >= room:
            break
        C |= 1 << v
    return ClassWitness(f"H(n,{k},{a})", tuple(bits(A)), {"C": tuple(bits(C))})


# ---------------------------------------------------------------------------
# component bookkeeping for G - A
# ---------------------------------------------------------------------------
@dataclass
class _Comp:
    mask: int
    size: int
    centre: int | None
    leaves: int
    attach: int  # neighbours in A of the whole component


def _star_components(G: SimpleGraph, A: int) -> list[_Comp]:
    rows = G.rows
    keep = G.vertex_mask & ~A
    out = []
    for comp in components(G, keep):
        size = comp.bit_count()
        attach = 0
        for v in bits(comp):
            attach |= rows[v] & A
        centre = None
        leaves = 0
        if size >= 3:
            for v in bits(comp):
                if (rows[v] & comp).bit_count() >= 2:
                    centre = v
            leaves = comp & ~(1 << centre)
        out.append(_Comp(comp, size, centre, leaves, attach))
    return out


def _leaf_attach(rows, comp: _Comp, A: int) -> int:
    m = 0
    for v in bits(comp.leaves):
        m |= rows[v] & A
    return m


# ---------------------------------------------------------------------------
# classes defined through a t-set A (G2, G3, G4)
# ---------------------------------------------------------------------------
def _check_G2(G: SimpleGraph, A: int) -> dict | None:
    rows = G.rows
    comps = _star_components(G, A)
    big = [c for c in comps if c.size >= 2]
    rest = G.vertex_mask & ~A
    if not rest:
        return None
    if not big:
        b1 = (rest & -rest).bit_length() - 1
        return {"a1": min(bits(A)) if A else None, "b1": b1, "J": ()}
    if len(big) > 1:
        return None
    S = big[0]
    if S.size >= 3:
        options = [(S.centre, S.leaves)]
    else:
        u, v = bits(S.mask)
        options = [(u, 1 << v), (v, 1 << u)]
    for b1, J in options:
        seen = 0
        for c in bits(J):
            seen |= rows[c] & A
        if seen.bit_count() <= 1:
            a1 = (seen.bit_length() - 1) if seen else min(bits(A))
            return {"a1": a1, "b1": b1, "J": tuple(bits(J))}
    return None


def _check_G3(G: SimpleGraph, A: int) -> dict | None:
    rows = G.rows
    comps = _star_components(G, A)
    big = [c for c in comps if c.size >= 2]
    single = [c for c in comps if c.size == 1]
    for a1, a2 in combinations(bits(A), 2):
        pair = (1 << a1) | (1 << a2)
        anchors = {}
        ok = True
        for S in big:
            if S.attach & ~pair:
                ok = False
                break
            if S.size >= 3:
                la = _leaf_attach(rows, S, A)
                if la.bit_count() > 1:
                    ok = False
                    break
                anchors[min(bits(S.mask))] = (la.bit_length() - 1) if la else a1
        if not ok:
            continue
        free = [c for c in single if not c.attach & ~pair]
        if len(big) + len(free) // 2 >= 2:
            return {"A'": (a1, a2), "anchors": anchors,
                    "J": tuple(sorted(v for S in big for v in bits(S.mask))),
                    "paired": tuple(bits(c.mask) for c in free[: 2 * (len(free) // 2)])}
    return None


def _check_G4(G: SimpleGraph, A: int) -> dict | None:
    rows = G.rows
    anchors = {}
    for S in _star_components(G, A):
        if S.size >= 3:
            la = _leaf_attach(rows, S, A)
            if la.bit_count() > 1:
                return None
            anchors[min(bits(S.mask))] = (la.bit_length() - 1) if la else min(bits(A))
    return {"anchors": anchors}


def _first_star_witness(G: SimpleGraph, size: int, check, label: str) -> ClassWitness | None:
    for A in star_forest_sets(G, size):
        extras = check(G, A)
        if extras is not None:
            return ClassWitness(label, tuple(bits(A)), extras)
    return None


def recognize_G1(G: SimpleGraph, k: int) -> ClassWitness | None:
    t = half_threshold(k)
    w = embeds_in_H(G, k, t)
    return None if w is None else ClassWitness("G1", w.A, dict(w.extras))


def recognize_G2(G: SimpleGraph, k: int) -> ClassWitness | None:
    return _first_star_witness(G, half_threshold(k), _check_G2, "G2")


def recognize_G3(G: SimpleGraph, k: int) -> ClassWitness | None:
    t = half_threshold(k)
    if t < 2:
        return None
    return _first_star_witness(G, t, _check_G3, "G3")


def recognize_G4(G: SimpleGraph, k: int = 10) -> ClassWitness | None:
    if k != 10:
        return None
    return _first_star_witness(G, 3, _check_G4, "G4")


# ---------------------------------------------------------------------------
# classes for k = 8 built from J3-bridges (G5 .. G8)
# ---------------------------------------------------------------------------
_BRIDGE_SIZES = {"G5": 3, "G6": 4, "G7": 4, "G8": 5}


def _bridge_shapes(G: SimpleGraph, A: int):
    """Attachment pairs of the components of ``G - A`` when they fit the class shape.

    Returns ``(bridges, isolated)``, lists of ``(component mask, pair mask)``,
    or ``None`` if some component cannot be a J3-bridge or an isolated vertex
    with exactly two neighbours in ``A``.
    """
    rows = G.rows
    bridges, isolated = [], []
    for S in _star_components(G, A):
        if S.size == 1:
            if S.attach.bit_count() != 2:
                return None
            isolated.append((S.mask, S.attach))
            continue
        if S.size >= 3:
            la = _leaf_attach(rows, S, A)
            if la.bit_count() != 1:
                return None
            for v in bits(S.leaves):
                if rows[v] & A != la:
                    return None
        if S.attach.bit_count() != 2:
            return None
        bridges.append((S.mask, S.attach))
    return bridges, isolated


def _host_ok(G: SimpleGraph, A: int, extra_edges: Sequence[tuple[int, int]]) -> SimpleGraph | None:
    rows = list(G.rows)
    for u in bits(A):
        rows[u] |= A & ~(1 << u)
    for u, v in extra_edges:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    H = SimpleGraph(G.n, tuple(rows))
    if not _two_connected_rows(H.rows, H.n) or capped_circumference(H, 8) >= 8:
        return None
    return H


def _check_bridge_class(G: SimpleGraph, A: int, label: str, reading: str) -> tuple[dict, SimpleGraph] | None:
    shapes = _bridge_shapes(G, A)
    if shapes is None:
        return None
    bridges, isolated = shapes
    Avs = list(bits(A))
    bridge_pairs = {p for _, p in bridges}
    iso_pairs = [p for _, p in isolated]

    def finish(extras, extra_edges=()):
        H = _host_ok(G, A, extra_edges)
        return None if H is None else (extras, H)

    if label == "G5":
        for a1 in Avs:
            bit = 1 << a1
            if all(p & bit for p in bridge_pairs) and all(p & bit for p in iso_pairs):
                got = finish({"a1": a1})
                if got:
                    return got
        return None
    if len(bridge_pairs) > 1:
        return None
    if bridge_pairs:
        choices = list(bridge_pairs)
    else:
        choices = [(1 << x) | (1 << y) for x, y in combinations(Avs, 2)]
    for P0 in choices:
        ends = tuple(bits(P0))
        if label == "G8":
            if all(p == P0 for p in iso_pairs):
                got = finish({"A'": ends})
                if got:
                    return got
            continue
        if label == "G6":
            for a1 in ends:
                hits = [bool(p >> a1 & 1) for p in iso_pairs]
                if not any(hits) or (reading == "every" and not all(hits)):
                    continue
                got = finish({"A'": ends, "a1": a1, "reading": reading})
                if got:
                    return got
            continue
        # G7: isolated vertices see the other two clique vertices, or pair up on A'
        others = A & ~P0
        on_ends = [m for m, p in isolated if p == P0]
        if any(p not in (P0, others) for p in iso_pairs) or len(on_ends) % 2:
            continue
        verts = [m.bit_length() - 1 for m in on_ends]
        matching = list(zip(verts[0::2], verts[1::2]))
        got = finish({"A'": ends, "paired": tuple(matching)}, matching)
        if got:
            return got
    return None


def recognize_bridge_class(G: SimpleGraph, label: str, reading: str = "some") -> ClassWitness | None:
    """Subgraph-of-member test for ``G5`` .. ``G8`` (input assumed 2-connected)."""
    s = _BRIDGE_SIZES[label]
    for A in star_forest_sets(G, s):
        got = _check_bridge_class(G, A, label, reading)
        if got is not None:
            extras, H = got
            return ClassWitness(label, tuple(bits(A)), extras, tuple(range(G.n)), H)
    return None


# ---------------------------------------------------------------------------
# class lists and the stability verdict
# ---------------------------------------------------------------------------
def class_list(k: int) -> list[str]:
    """Ordered class labels whose subgraphs make up the extremal family for ``k``."""
    if k < 4:
        raise PreconditionError("class lists start at k = 4")
    if k == 4:
        return []
    if k == 5:
        return ["G1"]
    if k == 6:
        return ["G1", "G2"]
    if k == 7:
        return ["H(n,7,3)", "G1(n,6)", "G2(n,6)", "G3(n,6)"]
    if k == 8:
        return ["G1", "G2", "G3", "G5", "G6", "G7", "G8"]
    if k % 2:
        return ["G1"]
    if k == 10:
        return ["G1", "G2", "G3", "G4"]
    return ["G1", "G2", "G3"]


def recognize(G: SimpleGraph, label: str, k: int, g6_reading: str = "some") -> ClassWitness | None:
    """Test one class label from :func:`class_list`."""
    if label == "H(n,7,3)":
        w = embeds_in_H(G, 7, 3)
        return None if w is None else ClassWitness(label, w.A, dict(w.extras))
    base_k = k
    if label.endswith("(n,6)"):
        base_k, label_core = 6, label[:2]
    else:
        label_core = label
    if label_core == "G1":
        w = recognize_G1(G, base_k)
    elif label_core == "G2":
        w = recognize_G2(G, base_k)
    elif label_core == "G3":
        w = recognize_G3(G, base_k)
    elif label_core == "G4":
        w = recognize_G4(G, base_k)
    elif label_core in _BRIDGE_SIZES:
        w = recognize_bridge_class(G, label_core, g6_reading)
    else:
        raise GraphError(f"unknown class label {label!r}")
    if w is None:
        return None
    return ClassWitness(label, w.A, w.extras, w.embedding, w.host)


def threshold_applies(k: int) -> bool:
    return k >= 7


def stability_threshold(n: int, k: int) -> int | None:
    """``h(n, k, t - 1)`` when the edge threshold is part of the statement for ``k``."""
    if not threshold_applies(k):
        return None
    return h_value(n, k, half_threshold(k) - 1)


def match_class(G: SimpleGraph, k: int, g6_reading: str = "some") -> ClassMember | None:
    for label in class_list(k):
        w = recognize(G, label, k, g6_reading)
        if w is not None:
            return ClassMember(label, w)
    return None


def classify_stability(G: SimpleGraph, k: int, g6_reading: str = "some",
                       check_preconditions: bool = True) -> Verdict:
    """Stability dichotomy for a 2-connected graph without cycles of length >= k.

    Returns the first matching class, else ``BelowBound`` when the edge
    threshold applies and holds, else ``Violation``.
    """
    if k < 4:
        raise PreconditionError("k must be at least 4")
    if check_preconditions:
        if not is_2_connected(G):
            raise PreconditionError("input must be 2-connected")
        if capped_circumference(G, k) >= k:
            raise PreconditionError(f"input has a cycle of length at least {k}")
    hit = match_class(G, k, g6_reading)
    if hit is not None:
        return hit
    thr = stability_threshold(G.n, k) if G.n >= k else None
    e = G.e
    if thr is not None and e <= thr:
        return BelowBound(e, thr)
    if thr is None:
        return Violation(e, None, f"no class of the k={k} list contains the graph")
    return Violation(e, thr, f"e={e} exceeds h(n,k,t-1)={thr} and no class matches")


# ---------------------------------------------------------------------------
# bridges
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Bridge:
    vertices: tuple[int, ...]
    attachments: tuple[int, ...]
    kind: str  # "singleton", "J3" or "other"
    centre: int | None = None
    leaf_anchor: int | None = None


@dataclass(frozen=True)
class BridgeDecomposition:
    X: tuple[int, ...]
    bridges: tuple[Bridge, ...]
    cycle_distances: tuple[tuple[int, ...], ...] | None = None

    def distance(self, x: int, y: int) -> int:
        """Distance along the host cycle between two of its vertices."""
        if self.cycle_distances is None:
            raise GraphError("distances are defined only for cycle hosts")
        return self.cycle_distances[self.X.index(x)][self.X.index(y)]


def is_j3_bridge(G: SimpleGraph, S: int, a1: int, a2: int) -> bool:
    """Whether the vertex mask ``S`` is a J3-bridge with endpoints ``a1``, ``a2``."""
    ends = (1 << a1) | (1 << a2)
    if S & ends or not S:
        return False
    if not is_separating(G, (a1, a2)):
        return False
    rows = G.rows
    sub = S | ends
    if len(components(G, S)) != 1:
        return False
    # G[S u A'] plus a1a2 is 2-connected
    local = []
    index = {v: i for i, v in enumerate(bits(sub))}
    for v in bits(sub):
        r = rows[v] & sub
        if v == a1:
            r |= 1 << a2
        elif v == a2:
            r |= 1 << a1
        local.append(mask_of(index[u] for u in bits(r)))
    if not _two_connected_rows(local, len(local)):
        return False
    got = longest_xy_path(G, a1, a2, allowed=S)
    return got.length == 3


def _star_shape(G: SimpleGraph, S: int, X: int) -> tuple[int | None, int | None]:
    rows = G.rows
    size = S.bit_count()
    if size < 3:
        return None, None
    centre = None
    for v in bits(S):
        if (rows[v] & S).bit_count() >= 2:
            if centre is not None:
                return None, None
            centre = v
    if centre is None:
        return None, None
    leaves = S & ~(1 << centre)
    for v in bits(leaves):
        if (rows[v] & S) != 1 << centre:
            return None, None
    anchor = None
    nb = {rows[v] & X for v in bits(leaves)}
    if len(nb) == 1:
        (m,) = nb
        if m.bit_count() == 1:
            anchor = m.bit_length() - 1
    return centre, anchor


def _decompose(G: SimpleGraph, X: Sequence[int]) -> tuple[Bridge, ...]:
    xm = mask_of(X)
    rows = G.rows
    out = []
    for S in components(G, G.vertex_mask & ~xm):
        att = 0
        for v in bits(S):
            att |= rows[v] & xm
        attach = tuple(bits(att))
        if S.bit_count() == 1:
            kind = "singleton"
        elif len(attach) == 2 and is_j3_bridge(G, S, *attach):
            kind = "J3"
        else:
            kind = "other"
        centre, anchor = _star_shape(G, S, xm)
        out.append(Bridge(tuple(bits(S)), attach, kind, centre, anchor))
    return tuple(out)


def j3_bridges(G: SimpleGraph, pair: Sequence[int]) -> BridgeDecomposition:
    """Bridges of a two-vertex set, each tagged ``J3`` when it qualifies."""
    pair = tuple(pair)
    if len(pair) != 2 or pair[0] == pair[1]:
        raise GraphError("j3_bridges needs exactly two distinct vertices")
    for v in pair:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range")
    return BridgeDecomposition(pair, _decompose(G, pair))


def cycle_bridges(G: SimpleGraph, cycle: Sequence[int]) -> BridgeDecomposition:
    """Bridges of a cycle (given in cyclic order) with the cyclic distance table."""
    X = tuple(cycle)
    r = len(X)
    dist = tuple(tuple(min(abs(j - i), r - abs(j - i)) for j in range(r)) for i in range(r))
    return BridgeDecomposition(X, _decompose(G, X), dist)


# ---------------------------------------------------------------------------
# property W
# ---------------------------------------------------------------------------
def property_W_anchors(H: SimpleGraph, length: int) -> dict[int, int] | None:
    """An anchor ``w`` for every vertex ``z`` witnessing property W, or ``None``."""
    if length < 3:
        raise GraphError("cycle length must be at least 3")
    anchors = {}
    for z in range(H.n):
        nbrs = list(bits(H.rows[z]))
        if not nbrs:
            return None
        chosen = None
        for w in nbrs:
            if all(cycle_of_length_through_path(H, (w, z, w2), length) is not None
                   for w2 in nbrs if w2 != w):
                chosen = w
                break
        if chosen is None:
            return None
        anchors[z] = chosen
    return anchors


def property_W(H: SimpleGraph, length: int) -> bool:
    """Every vertex has an anchor neighbour such that each other neighbour closes a
    cycle of exactly ``length`` edges through the two-edge path anchor, vertex, neighbour."""
    return property_W_anchors(H, length) is not None


# ---------------------------------------------------------------------------
# containment of path-rich family members
# ---------------------------------------------------------------------------
def _best_side(rows, A: int, pool: int, size: int, t: int, exclude: int = 0) -> tuple[int, int] | None:
    """Pick ``size`` vertices of ``pool`` with most neighbours in ``A``; return (mask, missing)."""
    cand = sorted(((t - (rows[v] & A).bit_count(), v) for v in bits(pool & ~exclude)))
    if len(cand) < size:
        return None
    chosen = cand[:size]
    return mask_of(v for _, v in chosen), sum(m for m, _ in chosen)


def _contains_complete_bipartite_minus(G: SimpleGraph, t: int, b_size: int, budget: int) -> dict | None:
    rows = G.rows
    full = G.vertex_mask
    for Avs in combinations(range(G.n), t):
        A = mask_of(Avs)
        got = _best_side(rows, A, full & ~A, b_size, t)
        if got and got[1] <= budget:
            return {"A": Avs, "B": tuple(bits(got[0]))}
    return None


def _contains_F2(G: SimpleGraph, t: int) -> dict | None:
    rows = G.rows
    full = G.vertex_mask
    budget = t - 4
    for Avs in combinations(range(G.n), t):
        A = mask_of(Avs)
        for c1 in bits(full & ~A):
            for a1 in bits(rows[c1] & A):
                for b1 in bits(rows[c1] & full & ~A):
                    miss_b1 = (A & ~rows[b1] & ~(1 << a1)).bit_count()
                    if miss_b1 > budget:
                        continue
                    pool = full & ~A & ~(1 << c1) & ~(1 << b1)
                    got = _best_side(rows, A, pool, t + 1, t)
                    if got and got[1] + miss_b1 <= budget:
                        return {"A": Avs, "B": (b1,) + tuple(bits(got[0])), "a1": a1, "b1": b1, "c1": c1}
    return None


def _contains_attachment_family(G: SimpleGraph, t: int, shape: str) -> dict | None:
    """``F3`` (disjoint 2-sets) or ``F4'`` (equal 3-sets) attachment members."""
    rows = G.rows
    full = G.vertex_mask
    budget = t - 4 if shape == "F3" else 0
    for c1, c2 in G.edges():
        for first, second in ((c1, c2), (c2, c1)):
            n1 = rows[first] & ~(1 << second)
            n2 = rows[second] & ~(1 << first)
            if shape == "F3":
                pairs = [(s1, s2) for s1 in combinations(bits(n1), 2) for s2 in combinations(bits(n2), 2)
                         if not set(s1) & set(s2)]
            else:
                pairs = [(s, s) for s in combinations(bits(n1 & n2), 3)]
            for s1, s2 in pairs:
                core = mask_of(s1) | mask_of(s2)
                pool_a = full & ~core & ~(1 << c1) & ~(1 << c2)
                for extra in combinations(bits(pool_a), t - core.bit_count()):
                    A = core | mask_of(extra)
                    got = _best_side(rows, A, pool_a & ~A, t, t)
                    if got and got[1] <= budget:
                        return {"A": tuple(bits(A)), "B": tuple(bits(got[0])), "c1": first, "c2": second,
                                "A1": s1, "A2": s2}
    return None


def _contains_F4(G: SimpleGraph) -> dict | None:
    rows = G.rows
    for Avs in combinations(range(G.n), 3):
        common = G.vertex_mask
        for a in Avs:
            common &= rows[a]
        W = list(bits(common))
        if len(W) < 6:
            continue
        wm = mask_of(W)
        edges = [(u, v) for u in W for v in bits(rows[u] & wm) if v > u]
        for trio in combinations(edges, 3):
            vs = {x for e in trio for x in e}
            if len(vs) == 6:
                return {"A": Avs, "B": tuple(sorted(vs)), "matching": trio}
    return None


FAMILY_NAMES = ("F0", "F1", "F2", "F3", "F4")


def contains_family_member(G: SimpleGraph, family: str, t: int) -> dict | None:
    """Roles of an embedded member of ``family`` (``F4`` covers both 4-families), or ``None``."""
    if family == "F0":
        return _contains_complete_bipartite_minus(G, t, t + 1, t - 3)
    if family == "F1":
        return _contains_complete_bipartite_minus(G, t, t + 2, t - 4)
    if family == "F2":
        return _contains_F2(G, t)
    if family == "F3":
        return _contains_attachment_family(G, t, "F3")
    if family == "F4":
        if t != 4:
            return None
        got = _contains_F4(G)
        if got is not None:
            return {"member": "F4", **got}
        got = _contains_attachment_family(G, 4, "F4'")
        return None if got is None else {"member": "F4'", **got}
    raise GraphError(f"unknown family {family!r}")


def contains_any_family(G: SimpleGraph, families: Sequence[str], t: int) -> tuple[str, dict] | None:
    for fam in families:
        got = contains_family_member(G, fam, t)
        if got is not None:
            return fam, got
    return None

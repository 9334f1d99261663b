"""Safe contractions, the edge-contraction procedure, and its audits.

The procedure shrinks a dense 2-connected graph without long cycles while
keeping it 2-connected and above the stability edge threshold:

* ``R1`` stop once the graph has ``k`` vertices;
* ``R2`` contract an edge on at most ``t - 2`` triangles whose contraction
  stays 2-connected (fewest triangles first, then an endpoint of smallest
  degree, then lexicographic);
* ``R3`` otherwise, when ``j >= k + t - 1``, delete a ``K_{t-1}`` component
  hanging off a separating edge;
* ``R4`` otherwise stop.

Every step is recorded so a trace can be replayed and audited.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .canon import automorphism_orbits, canonical_key
from .constructions import h_value, half_threshold
from .graph import SimpleGraph, bits, contract_edge, induced_mask
from .recognizers import PreconditionError, contains_any_family, embeds_in_H, contains_family_member
from .structure import (
    _two_connected_rows,
    capped_circumference,
    components,
    is_2_connected,
    longest_cycle_through_edge,
    circumference,
    separating_pairs,
)


# ---------------------------------------------------------------------------
# single contractions
# ---------------------------------------------------------------------------
def _contracts_2_connected(G: SimpleGraph, u: int, v: int) -> bool:
    H, _ = contract_edge(G, u, v)
    return _two_connected_rows(H.rows, H.n)


def non_dominated_neighbours(G: SimpleGraph, v: int) -> list[int]:
    """``W(v)``: neighbours ``w`` whose closed neighbourhood misses part of ``N[v]``."""
    closed_v = G.rows[v] | (1 << v)
    return [w for w in bits(G.rows[v]) if closed_v & ~(G.rows[w] | (1 << w))]


def safe_partner(G: SimpleGraph, v: int) -> int:
    """A neighbour ``w`` of ``v`` such that contracting ``vw`` keeps 2-connectivity.

    Neighbours in ``W(v)`` are preferred; within each group the smallest
    label wins.
    """
    if G.n < 4 or not is_2_connected(G):
        raise PreconditionError("safe_partner needs a 2-connected graph on at least 4 vertices")
    preferred = non_dominated_neighbours(G, v)
    rest = [w for w in bits(G.rows[v]) if w not in preferred]
    for w in preferred + rest:
        if _contracts_2_connected(G, v, w):
            return w
    raise PreconditionError(f"no neighbour of {v} gives a 2-connected contraction")


@dataclass(frozen=True)
class ContractionStep:
    graph: SimpleGraph
    edge: tuple[int, int]
    triangles: int
    new_of_old: tuple[int, ...]


def guarded_choices(G: SimpleGraph) -> list[tuple[int, int]]:
    """All edges tied for best under: 2-connected result, fewest triangles, smallest endpoint degree."""
    rows = G.rows
    best_key = None
    best: list[tuple[int, int]] = []
    for u, v in G.edges():
        if not _contracts_2_connected(G, u, v):
            continue
        key = ((rows[u] & rows[v]).bit_count(), min(rows[u].bit_count(), rows[v].bit_count()))
        if best_key is None or key < best_key:
            best_key, best = key, [(u, v)]
        elif key == best_key:
            best.append((u, v))
    return best


def guarded_contraction_step(G: SimpleGraph) -> ContractionStep:
    """Contract the lexicographically first edge among :func:`guarded_choices`."""
    if not is_2_connected(G):
        raise PreconditionError("input must be 2-connected")
    choices = guarded_choices(G)
    if not choices:
        raise PreconditionError("no edge contraction keeps the graph 2-connected")
    u, v = choices[0]
    H, new_of_old = contract_edge(G, u, v)
    return ContractionStep(H, (u, v), (G.rows[u] & G.rows[v]).bit_count(), tuple(new_of_old))


def low_degree_lemma_holds(G_prime: SimpleGraph, h: int) -> bool:
    """Check the low-degree transfer property for every tie-optimal guarded contraction.

    If contracting leaves at least ``h`` vertices of degree at most ``h``,
    then ``G'`` is ``K_{h+2}`` or already has a vertex of degree at most ``h``.
    """
    complete = G_prime.n == h + 2 and G_prime.e == comb(h + 2, 2)
    if complete or G_prime.min_degree() <= h:
        return True
    for u, v in guarded_choices(G_prime):
        H, _ = contract_edge(G_prime, u, v)
        if sum(1 for d in H.degrees() if d <= h) >= h:
            return False
    return True


def longest_cycles_avoid_separating_edges(G: SimpleGraph) -> bool:
    """No longest cycle has two consecutive vertices forming a separating set."""
    c = circumference(G)
    for u, v in separating_pairs(G):
        if G.has_edge(u, v) and longest_cycle_through_edge(G, u, v) >= c:
            return False
    return True


# ---------------------------------------------------------------------------
# the procedure
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class StepRecord:
    rule: str
    edge: tuple[int, int] | None = None
    removed: tuple[int, ...] = ()
    triangles: int | None = None
    n_before: int = 0
    n_after: int = 0
    e_before: int = 0
    e_after: int = 0
    two_connected_before: bool = True
    two_connected_after: bool = True

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "edge": list(self.edge) if self.edge else None,
            "removed": list(self.removed),
            "triangles": self.triangles,
            "n_before": self.n_before,
            "n_after": self.n_after,
            "e_before": self.e_before,
            "e_after": self.e_after,
            "two_connected_before": self.two_connected_before,
            "two_connected_after": self.two_connected_after,
        }


@dataclass(frozen=True)
class ProcedureTrace:
    k: int
    initial: SimpleGraph
    final: SimpleGraph
    steps: tuple[StepRecord, ...]
    graphs: tuple[SimpleGraph, ...] = field(repr=False, default=())
    within_hypotheses: bool = True
    notes: tuple[str, ...] = ()

    @property
    def t(self) -> int:
        return half_threshold(self.k)

    @property
    def m(self) -> int:
        return self.final.n


def _r2_candidates(G: SimpleGraph, t: int) -> tuple[int, int] | None:
    rows = G.rows
    best_key = None
    best = None
    for u, v in G.edges():
        tri = (rows[u] & rows[v]).bit_count()
        if tri > t - 2:
            continue
        key = (tri, min(rows[u].bit_count(), rows[v].bit_count()), u, v)
        if best_key is not None and key >= best_key:
            continue
        if _contracts_2_connected(G, u, v):
            best_key, best = key, (u, v)
    return best


def r2_applies(G: SimpleGraph, t: int) -> bool:
    return _r2_candidates(G, t) is not None


def _r3_candidate(G: SimpleGraph, t: int) -> tuple[tuple[int, int], int] | None:
    rows = G.rows
    size = t - 1
    for u, v in G.edges():
        comps = components(G, G.vertex_mask & ~((1 << u) | (1 << v)))
        if len(comps) < 3:
            continue
        for comp in sorted(comps):
            if comp.bit_count() != size:
                continue
            if all((rows[x] & comp) == comp & ~(1 << x) for x in bits(comp)):
                return (u, v), comp
    return None


def basic_procedure(G: SimpleGraph, k: int) -> ProcedureTrace:
    """Run the contraction procedure on ``G`` and return the full trace."""
    if k < 5:
        raise PreconditionError("the procedure needs k >= 5 so that t - 1 >= 1")
    n = G.n
    if n < k:
        raise PreconditionError(f"need n >= k, got n={n}, k={k}")
    if not is_2_connected(G):
        raise PreconditionError("input must be 2-connected")
    if capped_circumference(G, k) >= k:
        raise PreconditionError(f"input has a cycle of length at least {k}")
    t = half_threshold(k)
    notes = []
    within = G.e >= h_value(n, k, t - 1) + 1
    if not within:
        notes.append(f"out of theorem hypotheses: e={G.e} <= h(n,k,t-1)={h_value(n, k, t - 1)}")
    steps = []
    graphs = [G]
    cur = G
    while True:
        j = cur.n
        if j == k:
            steps.append(StepRecord("R1", n_before=j, n_after=j, e_before=cur.e, e_after=cur.e))
            break
        edge = _r2_candidates(cur, t)
        if edge is not None:
            u, v = edge
            nxt, _ = contract_edge(cur, u, v)
            steps.append(StepRecord("R2", edge=edge, triangles=(cur.rows[u] & cur.rows[v]).bit_count(),
                                    n_before=j, n_after=nxt.n, e_before=cur.e, e_after=nxt.e,
                                    two_connected_before=True,
                                    two_connected_after=_two_connected_rows(nxt.rows, nxt.n)))
            cur = nxt
            graphs.append(cur)
            continue
        r3 = _r3_candidate(cur, t) if j >= k + t - 1 else None
        if r3 is not None:
            edge, comp = r3
            nxt, _ = induced_mask(cur, cur.vertex_mask & ~comp)
            steps.append(StepRecord("R3", edge=edge, removed=tuple(bits(comp)), n_before=j, n_after=nxt.n,
                                    e_before=cur.e, e_after=nxt.e, two_connected_before=True,
                                    two_connected_after=_two_connected_rows(nxt.rows, nxt.n)))
            cur = nxt
            graphs.append(cur)
            continue
        steps.append(StepRecord("R4", n_before=j, n_after=j, e_before=cur.e, e_after=cur.e))
        break
    return ProcedureTrace(k, G, cur, tuple(steps), tuple(graphs), within, tuple(notes))


def replay(trace: ProcedureTrace) -> SimpleGraph:
    """Recompute the final graph from the initial graph and the recorded steps."""
    cur = trace.initial
    for st in trace.steps:
        if st.rule == "R2":
            cur, _ = contract_edge(cur, *st.edge)
        elif st.rule == "R3":
            mask = 0
            for v in st.removed:
                mask |= 1 << v
            cur, _ = induced_mask(cur, cur.vertex_mask & ~mask)
    return cur


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class AuditReport:
    checks: int
    violations: tuple[str, ...]
    final_structure: str
    within_hypotheses: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_trace(trace: ProcedureTrace, k: int | None = None, family_check: bool = False) -> AuditReport:
    """Re-verify every invariant the procedure is meant to keep.

    Per step: edge threshold ``e >= h(j, k, t-1) + 1``, 2-connectivity,
    no cycle of length ``>= k``, the R2 edge loss equals ``T + 1`` and is at
    most ``t - 1``, the R3 loss is at most ``C(t+1, 2) - 1``, and no R2 step
    follows an R3 step (nor is R2 admissible afterwards).  Final graph: it
    embeds in ``H(m, k, t)``, or ``m > k = 10`` and it contains ``F4``.  With
    ``family_check`` the final graph must also contain a path-rich family
    member (``F0`` for odd ``k``, one of ``F1 .. F4`` for even ``k``).
    """
    k = trace.k if k is None else k
    t = half_threshold(k)
    bad: list[str] = []
    checks = 0
    graphs = list(trace.graphs) if trace.graphs else _replay_all(trace)
    if graphs and graphs[-1] != trace.final:
        bad.append("replay does not reproduce the recorded final graph")
    seen_r3 = False
    gi = 0
    for idx, st in enumerate(trace.steps):
        cur = graphs[gi]
        checks += 1
        if st.rule in ("R1", "R4"):
            continue
        nxt = graphs[gi + 1]
        gi += 1
        j = nxt.n
        if st.n_before != cur.n or st.n_after != nxt.n or st.e_before != cur.e or st.e_after != nxt.e:
            bad.append(f"step {idx}: recorded counts disagree with the graphs")
        if not _two_connected_rows(nxt.rows, nxt.n):
            bad.append(f"step {idx}: result is not 2-connected")
        if capped_circumference(nxt, k) >= k:
            bad.append(f"step {idx}: result has a cycle of length >= {k}")
        if j >= k and nxt.e < h_value(j, k, t - 1) + 1:
            bad.append(f"step {idx}: e={nxt.e} below h({j},{k},{t - 1})+1")
        loss = cur.e - nxt.e
        if st.rule == "R2":
            if seen_r3:
                bad.append(f"step {idx}: R2 applied after R3")
            if st.triangles is None or loss != st.triangles + 1:
                bad.append(f"step {idx}: R2 lost {loss} edges, expected T+1")
            if loss > t - 1:
                bad.append(f"step {idx}: R2 lost {loss} > t-1 edges")
            if nxt.n != cur.n - 1:
                bad.append(f"step {idx}: R2 must remove exactly one vertex")
        elif st.rule == "R3":
            seen_r3 = True
            if loss > comb(t + 1, 2) - 1:
                bad.append(f"step {idx}: R3 lost {loss} > C(t+1,2)-1 edges")
            if nxt.n != cur.n - (t - 1):
                bad.append(f"step {idx}: R3 must remove t-1 vertices")
            if r2_applies(nxt, t):
                bad.append(f"step {idx}: R2 admissible right after R3")
    final = graphs[-1] if graphs else trace.final
    checks += 1
    m = final.n
    structure = "n/a"
    if k >= 9 and m >= k:
        if embeds_in_H(final, k, t) is not None:
            structure = f"subgraph of H({m},{k},{t})"
        elif m > k == 10 and (contains_family_member(final, "F4", 4) or {}).get("member") == "F4":
            structure = "contains F4"
        else:
            structure = "neither"
            bad.append(f"final graph on {m} vertices is not in H({m},{k},{t}) and lacks F4")
        if family_check:
            checks += 1
            fams = ("F0",) if k % 2 else ("F1", "F2", "F3", "F4")
            if contains_any_family(final, fams, t) is None:
                bad.append("final graph contains no path-rich family member")
    return AuditReport(checks, tuple(bad), structure, trace.within_hypotheses)


def _replay_all(trace: ProcedureTrace) -> list[SimpleGraph]:
    cur = trace.initial
    out = [cur]
    for st in trace.steps:
        if st.rule == "R2":
            cur, _ = contract_edge(cur, *st.edge)
            out.append(cur)
        elif st.rule == "R3":
            mask = 0
            for v in st.removed:
                mask |= 1 << v
            cur, _ = induced_mask(cur, cur.vertex_mask & ~mask)
            out.append(cur)
    return out


def forge_trace(initial: SimpleGraph, k: int, edges: Sequence[tuple[int, int]]) -> ProcedureTrace:
    """Build a trace that contracts the given edges in order, with no rule checks.

    Useful as a negative control for :func:`audit_trace`.
    """
    cur = initial
    steps = []
    graphs = [cur]
    for u, v in edges:
        nxt, _ = contract_edge(cur, u, v)
        steps.append(StepRecord("R2", edge=(u, v), triangles=(cur.rows[u] & cur.rows[v]).bit_count(),
                                n_before=cur.n, n_after=nxt.n, e_before=cur.e, e_after=nxt.e,
                                two_connected_before=_two_connected_rows(cur.rows, cur.n),
                                two_connected_after=_two_connected_rows(nxt.rows, nxt.n)))
        cur = nxt
        graphs.append(cur)
    return ProcedureTrace(k, initial, cur, tuple(steps), tuple(graphs), True, ("forged",))


# ---------------------------------------------------------------------------
# reversing contractions: vertex splits
# ---------------------------------------------------------------------------
def vertex_splits(F: SimpleGraph, u: int):
    """Yield every graph ``F'`` with ``F'/xy = F`` obtained by splitting ``u`` into adjacent ``x, y``.

    ``x`` keeps label ``u`` and ``y`` becomes the new vertex ``n``.  Each
    neighbour of ``u`` goes to ``x``, to ``y``, or to both; assignments that
    differ only by swapping ``x`` and ``y`` are produced once.
    """
    nbrs = list(bits(F.rows[u]))
    d = len(nbrs)
    n = F.n
    seen = set()
    for code in range(3 ** d):
        to_x = to_y = 0
        c = code
        for w in nbrs:
            r = c % 3
            c //= 3
            if r != 1:
                to_x |= 1 << w
            if r != 0:
                to_y |= 1 << w
        key = (to_x, to_y)
        if (to_y, to_x) in seen:
            continue
        seen.add(key)
        rows = list(F.rows)
        for w in nbrs:
            rows[w] &= ~(1 << u)
            if to_x >> w & 1:
                rows[w] |= 1 << u
            if to_y >> w & 1:
                rows[w] |= 1 << n
        rows[u] = to_x | (1 << n)
        rows.append(to_y | (1 << u))
        yield SimpleGraph(n + 1, tuple(rows))


@dataclass(frozen=True)
class SplitReport:
    family: str
    k: int
    hosts: int
    splits: int
    qualifying: int
    violations: tuple[SimpleGraph, ...]


def _supergraphs(H: SimpleGraph, extra: int) -> list[SimpleGraph]:
    from itertools import combinations

    out = {}
    missing = H.non_edges()
    for r in range(extra + 1):
        for add in combinations(missing, r):
            rows = list(H.rows)
            for a, b in add:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
            F = SimpleGraph(H.n, tuple(rows))
            out.setdefault(canonical_key(F), F)
    return [out[key] for key in sorted(out)]


def split_preservation_check(member: SimpleGraph, k: int, family: str = "", extra_edges: int = 2) -> SplitReport:
    """Exhaustive vertex-split check over supergraphs of ``member`` with few extra edges.

    For every 2-connected ``F`` (``member`` plus at most ``extra_edges`` new
    edges, same vertex set) with no cycle of length ``>= k``, and every
    2-connected split ``F'`` with no such cycle either, ``F'`` must contain a
    member of the path-rich family union for ``k``.
    """
    if k not in (9, 10):
        raise PreconditionError("split preservation is checked for k in {9, 10}")
    t = half_threshold(k)
    fams = ("F0",) if k % 2 else ("F1", "F2", "F3", "F4")
    hosts = splits = qualifying = 0
    bad: list[SimpleGraph] = []
    checked: dict[tuple, bool] = {}
    for F in _supergraphs(member, extra_edges):
        if not _two_connected_rows(F.rows, F.n) or capped_circumference(F, k) >= k:
            continue
        hosts += 1
        orbit = automorphism_orbits(F)
        for u in range(F.n):
            if orbit[u] != u:
                continue
            for Fp in vertex_splits(F, u):
                splits += 1
                if not _two_connected_rows(Fp.rows, Fp.n) or capped_circumference(Fp, k) >= k:
                    continue
                qualifying += 1
                key = canonical_key(Fp)
                if key not in checked:
                    checked[key] = contains_any_family(Fp, fams, t) is not None
                    if not checked[key]:
                        bad.append(Fp)
    return SplitReport(family, k, hosts, splits, qualifying, tuple(bad))

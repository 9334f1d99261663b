"""Classical hamiltonicity and long-path theorems, checked over small graphs.

Each check returns a :class:`VerificationReport`.  ``passed`` counts graphs
that meet the hypotheses and the conclusion; graphs outside the hypotheses
are ``not-applicable``.
"""
from __future__ import annotations

import random
import time
from itertools import combinations
from math import comb

from ..canon import are_isomorphic, canonical_key
from ..constructions import build_H, ell_value
from ..graph import SimpleGraph, bits, complete_bipartite, without_edges
from ..structure import (
    capped_circumference,
    chvatal_condition_fails,
    hamiltonian_cycle,
    is_3_connected,
    is_cycle_in,
    k_closure,
    longest_xy_path,
)
from .enumeration import enumerate_2connected, enumerate_graphs
from .graph6 import encode
from .report import NOT_APPLICABLE, PASSED, VIOLATION, Outcome, VerificationReport

_OK = Outcome(PASSED)
_NA = Outcome(NOT_APPLICABLE)


def _fail(msg: str) -> Outcome:
    return Outcome(VIOLATION, diagnosis=msg)


def _finish(report: VerificationReport, start: float) -> VerificationReport:
    report.runtime_ms = int((time.perf_counter() - start) * 1000)
    return report


def _is_complete(G: SimpleGraph) -> bool:
    return G.e == comb(G.n, 2)


def _ham(G: SimpleGraph, through=()) -> bool:
    return hamiltonian_cycle(G, through) is not None


def erdos_hamiltonicity(n_values=range(3, 9), cache_dir=None) -> VerificationReport:
    """Minimum degree ``d`` and more than ``ell(n, d)`` edges force a spanning cycle."""
    start = time.perf_counter()
    rep = VerificationReport("erdos-hamiltonicity", {"n_values": list(n_values)})
    for n in n_values:
        for G in enumerate_graphs(n, cache_dir):
            delta = G.min_degree()
            ds = [d for d in range(1, delta + 1) if n > 2 * d and G.e > ell_value(n, d)]
            if not ds:
                rep.record(n, 0, _NA)
            elif _ham(G):
                rep.record(n, 0, _OK)
            else:
                rep.record(n, 0, _fail(f"delta={delta}, e={G.e} > ell(n,{ds[0]}) but not hamiltonian"), encode(G))
    return _finish(rep, start)


def nonhamiltonian_edge_bound(n_values=range(5, 10), cache_dir=None) -> VerificationReport:
    """2-connected non-hamiltonian graphs: assert ``e <= ell(n, 2)``; report the simpler closed form.

    The closed form ``C(n-2, 2) + 4`` (with equality only for ``H(n, n, 2)``)
    is compared per ``n`` and any gap is written to the report notes rather
    than counted as a violation.
    """
    start = time.perf_counter()
    rep = VerificationReport("nonhamiltonian-edge-bound", {"n_values": list(n_values)})
    for n in n_values:
        ell = ell_value(n, 2)
        simple = comb(n - 2, 2) + 4
        top = -1
        extremal: list[SimpleGraph] = []
        for G in enumerate_2connected(n, cache_dir):
            if _ham(G):
                rep.record(n, 0, _NA)
                continue
            if G.e > ell:
                rep.record(n, 0, _fail(f"e={G.e} > ell(n,2)={ell}"), encode(G))
            else:
                rep.record(n, 0, _OK, edges=G.e)
            if G.e > top:
                top, extremal = G.e, [G]
            elif G.e == top:
                extremal.append(G)
        H2 = build_H(n, n, 2).graph
        only_H2 = len(extremal) == 1 and are_isomorphic(extremal[0], H2)
        status = "matches" if top == simple and only_H2 else "differs"
        rep.notes.append(
            f"n={n}: max e={top}, ell(n,2)={ell}, C(n-2,2)+4={simple}, "
            f"extremal graphs={len(extremal)} ({', '.join(encode(G) for G in extremal)}); closed form {status}"
        )
    return _finish(rep, start)


def dirac_bound(n_values=range(3, 9), cache_dir=None) -> VerificationReport:
    """2-connected graphs have ``c(G) >= min(n, 2 delta)``."""
    start = time.perf_counter()
    rep = VerificationReport("dirac", {"n_values": list(n_values)})
    for n in n_values:
        for G in enumerate_2connected(n, cache_dir):
            need = min(n, 2 * G.min_degree())
            if capped_circumference(G, need) >= need:
                rep.record(n, 0, _OK)
            else:
                rep.record(n, 0, _fail(f"circumference below min(n, 2 delta)={need}"), encode(G))
    return _finish(rep, start)


def _random_path(G: SimpleGraph, rng: random.Random) -> list[int]:
    v = rng.randrange(G.n)
    path = [v]
    used = 1 << v
    target = rng.randint(2, G.n)
    while len(path) < target:
        options = list(bits(G.rows[path[-1]] & ~used))
        if not options:
            break
        v = rng.choice(options)
        path.append(v)
        used |= 1 << v
    return path


def kopylov_path_lemma(n_values=range(3, 8), paths_per_graph: int = 8, seed: int = 0,
                       cache_dir=None) -> VerificationReport:
    """An x,y-path ``P`` on ``l`` vertices gives ``c(G) >= min(l, d(x,P) + d(y,P))`` (sampled paths)."""
    start = time.perf_counter()
    rng = random.Random(seed)
    rep = VerificationReport("kopylov-path-lemma", {"n_values": list(n_values), "paths_per_graph": paths_per_graph,
                                                    "seed": seed}, coverage_mode="sampled")
    for n in n_values:
        for G in enumerate_2connected(n, cache_dir):
            for _ in range(paths_per_graph):
                P = _random_path(G, rng)
                if len(P) < 2:
                    rep.record(n, 0, _NA)
                    continue
                on = 0
                for v in P:
                    on |= 1 << v
                x, y = P[0], P[-1]
                need = min(len(P), (G.rows[x] & on).bit_count() + (G.rows[y] & on).bit_count())
                if capped_circumference(G, need) >= need:
                    rep.record(n, 0, _OK)
                else:
                    rep.record(n, 0, _fail(f"path {P} forces a cycle of length {need}"), encode(G))
    return _finish(rep, start)


def chvatal_degree_condition(n_values=range(3, 9), cache_dir=None) -> VerificationReport:
    """Non-hamiltonian graphs have some ``i < n/2`` with ``d_i <= i`` and ``d_{n-i} < n-i``."""
    start = time.perf_counter()
    rep = VerificationReport("chvatal", {"n_values": list(n_values)})
    for n in n_values:
        for G in enumerate_graphs(n, cache_dir):
            if _ham(G):
                rep.record(n, 0, _NA)
            elif chvatal_condition_fails(G):
                rep.record(n, 0, _OK)
            else:
                rep.record(n, 0, _fail("non-hamiltonian yet no index i < n/2 exists"), encode(G))
    return _finish(rep, start)


def bondy_chvatal_closure(n_values=range(3, 9), cache_dir=None) -> VerificationReport:
    """A graph is hamiltonian exactly when its ``n``-closure is."""
    start = time.perf_counter()
    rep = VerificationReport("bondy-chvatal", {"n_values": list(n_values)})
    for n in n_values:
        for G in enumerate_graphs(n, cache_dir):
            cl = k_closure(G, n)
            ham_cl = _is_complete(cl) or _ham(cl)
            if not ham_cl:
                rep.record(n, 0, _NA)
                continue
            cyc = hamiltonian_cycle(G)
            if cyc is not None and is_cycle_in(G, cyc) and len(cyc) == n:
                rep.record(n, 0, _OK)
            else:
                rep.record(n, 0, _fail("closure is hamiltonian but the graph is not"), encode(G))
    return _finish(rep, start)


def enomoto_paths(n_values=range(5, 9), cache_dir=None) -> VerificationReport:
    """3-connected graphs with non-adjacent degree sums at least ``s`` have x,y-paths of length ``>= s - 2``."""
    start = time.perf_counter()
    rep = VerificationReport("enomoto", {"n_values": list(n_values)})
    for n in n_values:
        for G in enumerate_2connected(n, cache_dir):
            if not is_3_connected(G):
                rep.record(n, 0, _NA)
                continue
            deg = G.degrees()
            sums = [deg[u] + deg[v] for u, v in G.non_edges()]
            s = min([n] + sums)
            if s < 5:
                rep.record(n, 0, _NA)
                continue
            short = next(((x, y) for x, y in combinations(range(n), 2)
                          if longest_xy_path(G, x, y).length < s - 2), None)
            if short is None:
                rep.record(n, 0, _OK)
            else:
                rep.record(n, 0, _fail(f"s={s}: longest path between {short} is shorter than s-2"), encode(G))
    return _finish(rep, start)


def linear_forests(G: SimpleGraph, size: int, max_components: int | None = None):
    """Edge sets of ``size`` edges forming a linear forest (optionally with few components)."""
    for F in combinations(G.edges(), size):
        deg: dict[int, int] = {}
        parent: dict[int, int] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        ok = True
        for u, v in F:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
            ru, rv = find(u), find(v)
            if deg[u] > 2 or deg[v] > 2 or ru == rv:
                ok = False
                break
            parent[ru] = rv
        if not ok:
            continue
        if max_components is not None and len({find(v) for v in deg}) > max_components:
            continue
        yield F


def _cycle_uses(cyc, F) -> bool:
    n = len(cyc)
    on = {frozenset((cyc[i], cyc[(i + 1) % n])) for i in range(n)}
    return all(frozenset(e) in on for e in F)


def posa_prescribed_edges(n_values=range(3, 8), max_forest: int = 2, cache_dir=None) -> VerificationReport:
    """Degree sums ``>= n + k`` on non-edges give a spanning cycle through any ``k``-edge linear forest."""
    start = time.perf_counter()
    rep = VerificationReport("posa", {"n_values": list(n_values), "max_forest": max_forest})
    for n in n_values:
        for G in enumerate_graphs(n, cache_dir):
            deg = G.degrees()
            slack = min((deg[u] + deg[v] for u, v in G.non_edges()), default=None)
            for k in range(0, min(max_forest, n - 1) + 1):
                if slack is not None and slack < n + k:
                    rep.record(n, k, _NA)
                    continue
                for F in linear_forests(G, k):
                    cyc = hamiltonian_cycle(G, F)
                    if cyc is not None and _cycle_uses(cyc, F):
                        rep.record(n, k, _OK)
                    else:
                        rep.record(n, k, _fail(f"no spanning cycle through {list(F)}"), encode(G))
    return _finish(rep, start)


def bipartite_prescribed_edges(s_values=(4, 5)) -> VerificationReport:
    """Dense subgraphs of ``K_{s,s}`` have spanning cycles through short linear forests.

    Hosts have at least ``s^2 - s + 2 + i`` edges for ``i`` in {1, 2};
    forests have at most ``2i`` edges and at most two components.  Hosts are
    taken up to isomorphism.
    """
    start = time.perf_counter()
    rep = VerificationReport("bipartite-prescribed-edges", {"s_values": list(s_values)})
    for s in s_values:
        base = complete_bipartite(s, s)
        for i in (1, 2):
            hosts: dict[tuple, SimpleGraph] = {}
            for r in range(0, s - 2 - i + 1):
                for gone in combinations(base.edges(), r):
                    K = without_edges(base, gone)
                    hosts.setdefault(canonical_key(K), K)
            for key in sorted(hosts):
                K = hosts[key]
                for size in range(0, 2 * i + 1):
                    for F in linear_forests(K, size, max_components=2):
                        cyc = hamiltonian_cycle(K, F)
                        if cyc is not None and _cycle_uses(cyc, F):
                            rep.record(2 * s, i, _OK)
                        else:
                            rep.record(2 * s, i, _fail(f"no spanning cycle through {list(F)}"), encode(K))
    return _finish(rep, start)


def classical_suite(n_max: int = 8, cache_dir=None, seed: int = 0) -> list[VerificationReport]:
    """All classical checks at the default desk scale (``n_max`` caps the enumerations)."""
    top = n_max + 1
    return [
        erdos_hamiltonicity(range(3, top), cache_dir),
        nonhamiltonian_edge_bound(range(5, max(top, 10)), cache_dir),
        dirac_bound(range(3, top), cache_dir),
        kopylov_path_lemma(range(3, min(top, 8)), seed=seed, cache_dir=cache_dir),
        chvatal_degree_condition(range(3, top), cache_dir),
        bondy_chvatal_closure(range(3, top), cache_dir),
        enomoto_paths(range(5, top), cache_dir),
        posa_prescribed_edges(range(3, min(top, 8)), cache_dir=cache_dir),
        bipartite_prescribed_edges(),
    ]

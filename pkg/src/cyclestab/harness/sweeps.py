"""Theorem sweeps: per-graph predicates, graph streams, and a deterministic driver."""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from functools import partial
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, Sequence

from ..canon import are_isomorphic
from ..constructions import build_H, h_value, half_threshold
from ..graph import SimpleGraph, add_vertex
from ..recognizers import (
    ClassMember,
    BelowBound,
    classify_stability,
    class_list,
    embeds_in_H,
    match_class,
    star_forest_witness,
)
from ..structure import (
    _two_connected_rows,
    capped_circumference,
    is_3_connected,
    is_connected,
    longest_path_vertices,
)
from .enumeration import (
    GraphSource,
    enumerate_graphs,
    random_spanning_subgraph,
)
from .graph6 import encode
from .grid import class_members
from .report import (
    BELOW_BOUND,
    CLASS_MEMBER,
    NOT_APPLICABLE,
    PASSED,
    VIOLATION,
    Outcome,
    VerificationReport,
)

STABILITY_MODES = ("theorem-t3", "theorem-main", "theorem-t3small", "corollary-3con", "corollary-c7")


class SweepError(ValueError):
    pass


# ---------------------------------------------------------------------------
# stability predicates
# ---------------------------------------------------------------------------
def stability_hypotheses(mode: str, n: int, k: int) -> bool:
    """Whether ``(n, k)`` lies in the range the statement behind ``mode`` covers."""
    t = half_threshold(k)
    if mode == "theorem-t3small":
        return 4 <= k <= 8 and n >= k
    if mode == "theorem-t3":
        return k >= 5 and n >= 3 * t
    if mode == "theorem-main":
        return k >= 9 and 2 * n >= 3 * k
    if mode == "corollary-3con":
        return k >= 11 and 2 * n >= 3 * k
    if mode == "corollary-c7":
        return k == 7 and n >= 8
    raise SweepError(f"unknown stability mode {mode!r}")


def _check_mode_k(mode: str, k: int) -> None:
    if mode not in STABILITY_MODES:
        raise SweepError(f"unknown stability mode {mode!r}")
    ok = {
        "theorem-t3small": 4 <= k <= 8,
        "theorem-t3": k >= 5,
        "theorem-main": k >= 9,
        "corollary-3con": k >= 11,
        "corollary-c7": k == 7,
    }[mode]
    if not ok:
        raise SweepError(f"mode {mode} does not cover k={k}")


def _t3_conclusion(G: SimpleGraph, k: int) -> str | None:
    t = half_threshold(k)
    if k % 2 and k != 7:
        return f"H(n,{k},{t})" if embeds_in_H(G, k, t) is not None else None
    return "star-forest" if star_forest_witness(G, t) is not None else None


def _main_conclusion(G: SimpleGraph, k: int, g6_reading: str) -> str | None:
    hit = match_class(G, k, g6_reading)
    return None if hit is None else hit.label


def stability_outcome(G: SimpleGraph, k: int, mode: str, g6_reading: str = "some") -> tuple[Outcome, tuple]:
    """Evaluate the statement behind ``mode`` on one graph.

    Graphs outside the statement's hypotheses (wrong range, not 2-connected,
    a cycle of length ``>= k``) are ``not-applicable``.  The edge test runs
    before the circumference test because it is much cheaper.
    """
    n = G.n
    if not stability_hypotheses(mode, n, k):
        return Outcome(NOT_APPLICABLE, diagnosis="outside parameter range"), ()
    if not _two_connected_rows(G.rows, n):
        return Outcome(NOT_APPLICABLE, diagnosis="not 2-connected"), ()
    if mode == "corollary-3con" and not is_3_connected(G):
        return Outcome(NOT_APPLICABLE, diagnosis="not 3-connected"), ()
    t = half_threshold(k)
    e = G.e
    if mode == "corollary-c7":
        thr = (5 * n - 6) // 2 - 1
    elif mode == "theorem-t3small" and k <= 6:
        thr = None
    else:
        thr = h_value(n, k, t - 1)
    if thr is not None and e <= thr:
        return Outcome(BELOW_BOUND), ()
    if capped_circumference(G, k) >= k:
        return Outcome(NOT_APPLICABLE, diagnosis=f"has a cycle of length >= {k}"), ()
    if mode == "theorem-t3small":
        verdict = classify_stability(G, k, g6_reading, check_preconditions=False)
        if isinstance(verdict, ClassMember):
            return Outcome(CLASS_MEMBER, verdict.label), ()
        if isinstance(verdict, BelowBound):
            return Outcome(BELOW_BOUND), ()
        return Outcome(VIOLATION, diagnosis=verdict.reason), ()
    if mode in ("corollary-3con", "corollary-c7"):
        if embeds_in_H(G, k, t) is not None:
            return Outcome(CLASS_MEMBER, f"H(n,{k},{t})"), ()
        return Outcome(VIOLATION, diagnosis=f"e={e} > {thr} but not a subgraph of H(n,{k},{t})"), ()
    # the two general statements; on their common range both are evaluated
    t3 = _t3_conclusion(G, k) if stability_hypotheses("theorem-t3", n, k) else None
    main = _main_conclusion(G, k, g6_reading) if stability_hypotheses("theorem-main", n, k) else None
    extras: tuple = ()
    if stability_hypotheses("theorem-t3", n, k) and stability_hypotheses("theorem-main", n, k):
        extras = (("overlap", {(True, True): "both", (True, False): "t3-only",
                               (False, True): "main-only", (False, False): "neither"}[(t3 is not None, main is not None)]),)
    label = t3 if mode == "theorem-t3" else main
    if label is not None:
        return Outcome(CLASS_MEMBER, label), extras
    return Outcome(VIOLATION, diagnosis=f"e={e} > h(n,k,t-1)={thr} and the {mode} conclusion fails"), extras


def roundtrip_outcome(G: SimpleGraph, k: int, mode: str, g6_reading: str = "some") -> tuple[Outcome, tuple]:
    """For subgraphs of constructed members: must be recognised, and must satisfy ``mode`` when it applies."""
    hit = match_class(G, k, g6_reading)
    if hit is None:
        return Outcome(VIOLATION, diagnosis="subgraph of a class member is not recognised"), ()
    if mode is not None and stability_hypotheses(mode, G.n, k):
        out, extras = stability_outcome(G, k, mode, g6_reading)
        if out.kind == VIOLATION:
            return out, extras
    return Outcome(CLASS_MEMBER, hit.label), ()


# ---------------------------------------------------------------------------
# Kopylov's maximum
# ---------------------------------------------------------------------------
def kopylov_bound(n: int, k: int) -> int:
    t = half_threshold(k)
    return max(h_value(n, k, 2), h_value(n, k, t))


def kopylov_outcome(G: SimpleGraph, k: int) -> tuple[Outcome, tuple]:
    n = G.n
    if not (n >= k >= 5) or not _two_connected_rows(G.rows, n):
        return Outcome(NOT_APPLICABLE, diagnosis="outside hypotheses"), ()
    if capped_circumference(G, k) >= k:
        return Outcome(NOT_APPLICABLE, diagnosis=f"has a cycle of length >= {k}"), ()
    bound = kopylov_bound(n, k)
    e = G.e
    if e > bound:
        return Outcome(VIOLATION, diagnosis=f"e={e} exceeds max(h(n,k,2), h(n,k,t))={bound}"), ()
    if e < bound:
        return Outcome(PASSED), ()
    t = half_threshold(k)
    for a in sorted({2, t}):
        if h_value(n, k, a) == bound and are_isomorphic(G, build_H(n, k, a).graph):
            return Outcome(CLASS_MEMBER, f"H(n,k,{a})"), ()
    return Outcome(VIOLATION, diagnosis=f"e={e} attains the bound but is not H(n,k,2) or H(n,k,t)"), ()


# ---------------------------------------------------------------------------
# paths
# ---------------------------------------------------------------------------
def apex(G: SimpleGraph) -> SimpleGraph:
    return add_vertex(G, G.vertex_mask)


def path_outcome(G: SimpleGraph, k: int) -> tuple[Outcome, tuple]:
    """Path statements for a connected graph: the edge bound for ``P_k`` and the path stability clauses."""
    n = G.n
    if n < 2 or not is_connected(G):
        return Outcome(NOT_APPLICABLE, diagnosis="not connected"), ()
    longest = len(longest_path_vertices(G))
    has_pk = longest >= k
    e = G.e
    problems = []
    if 2 * e > (k - 2) * n and not has_pk:
        problems.append(f"e={e} > (k-2)n/2 but the longest path has {longest} vertices")
    if n + 1 >= 3 and has_pk != (capped_circumference(apex(G), k + 1) >= k + 1):
        problems.append("path/apex-cycle equivalence fails")
    t = k // 2
    label = None
    if t >= 2 and n >= 3 * t - 1 and n >= k and not has_pk and e > h_value(n + 1, k + 1, t - 1) - n:
        if k % 2 == 0 and k != 6:
            direct = embeds_in_H(G, k, t - 1) is not None
            label = f"H(n,{k},{t - 1})"
        else:
            direct = star_forest_witness(G, t - 1) is not None
            label = "star-forest"
        via_apex = _t3_conclusion(apex(G), k + 1) is not None
        if not direct:
            problems.append(f"no P_k, e above the path threshold, and clause {label} fails")
        if not via_apex:
            problems.append("apex graph fails the cycle stability conclusion")
    if problems:
        return Outcome(VIOLATION, diagnosis="; ".join(problems)), ()
    if label is not None:
        return Outcome(CLASS_MEMBER, label), ()
    return Outcome(PASSED), ()


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SweepItem:
    graph: SimpleGraph
    k: int


def _evaluate(predicate: Callable, item: SweepItem) -> tuple[int, int, Outcome, tuple, int, str | None]:
    out, extras = predicate(item.graph, item.k)
    g6 = encode(item.graph) if out.kind == VIOLATION else None
    return item.graph.n, item.k, out, extras, item.graph.e, g6


def run_sweep(theorem: str, params: dict, items: Iterable[SweepItem], predicate: Callable,
              jobs: int = 1, coverage_mode: str = "exhaustive", chunksize: int = 64) -> VerificationReport:
    """Evaluate ``predicate`` on every item and fold the outcomes, in input order, into a report.

    With ``jobs > 1`` items are evaluated in worker processes; results are
    consumed in submission order so serial and parallel runs agree.
    """
    start = time.perf_counter()
    report = VerificationReport(theorem, params, coverage_mode)
    extras_tally: Counter = Counter()
    fn = partial(_evaluate, predicate)
    if jobs > 1:
        with Pool(jobs) as pool:
            results: Iterator = pool.imap(fn, items, chunksize)
            _fold(report, results, extras_tally)
    else:
        _fold(report, map(fn, items), extras_tally)
    for (name, value), count in sorted(extras_tally.items()):
        report.notes.append(f"{name} {value}: {count}")
    report.runtime_ms = int((time.perf_counter() - start) * 1000)
    return report


def _fold(report: VerificationReport, results, extras_tally: Counter) -> None:
    for n, k, out, extras, edges, g6 in results:
        report.record(n, k, out, g6, edges)
        for ex in extras:
            extras_tally[ex] += 1


def _source_graphs(source: GraphSource, connected_only: bool = False) -> Iterator[SimpleGraph]:
    if source.kind == "enumeration" and connected_only:
        for n in source.n_values:
            for G in enumerate_graphs(n, source.cache_dir):
                if is_connected(G):
                    yield G
    else:
        yield from source.graphs()


def _coverage(source: GraphSource) -> str:
    return {"enumeration": "exhaustive", "graph6": "file", "random": "sampled",
            "construction-grid": "property-based"}[source.kind]


def grid_items(k: int, n_values: Sequence[int], samples: int, seed: int,
               reading: str = "every", limit_per_class: int | None = None) -> Iterator[SweepItem]:
    """Constructed members of every class for ``k``, then seeded random spanning subgraphs.

    ``samples`` subgraphs are drawn per class, cycling through that class's
    members; edges are kept with probability drawn from a fixed ladder.
    """
    ladder = (0.75, 0.85, 0.9, 0.95, 0.98)
    for label in class_list(k):
        members = [m.graph for n in n_values for m in class_members(label, n, k, limit_per_class, reading)]
        for G in members:
            yield SweepItem(G, k)
        if not members:
            continue
        rng = random.Random(f"{seed}:{k}:{label}")
        for i in range(samples):
            G = members[i % len(members)]
            yield SweepItem(random_spanning_subgraph(G, ladder[i % len(ladder)], rng), k)


def verify_stability_sweep(source: GraphSource, k: int, mode: str, jobs: int = 1,
                           g6_reading: str = "some") -> VerificationReport:
    _check_mode_k(mode, k)
    params = {"mode": mode, "k": k, "source": source.kind, "n_values": list(source.n_values),
              "g6_reading": g6_reading}
    if source.kind == "construction-grid":
        params.update(samples=source.samples, seed=source.seed)
        items = grid_items(k, source.n_values, source.samples, source.seed)
        predicate = partial(_roundtrip, mode=mode, g6_reading=g6_reading)
    else:
        items = (SweepItem(G, k) for G in _source_graphs(source))
        predicate = partial(_stability, mode=mode, g6_reading=g6_reading)
    return run_sweep(f"stability:{mode}", params, items, predicate, jobs, _coverage(source))


def _stability(G, k, mode, g6_reading):
    return stability_outcome(G, k, mode, g6_reading)


def _roundtrip(G, k, mode, g6_reading):
    return roundtrip_outcome(G, k, mode, g6_reading)


def verify_kopylov_sweep(source: GraphSource, k: int, jobs: int = 1) -> VerificationReport:
    """Kopylov's edge maximum; for exhaustive sources the maximum must also be attained."""
    params = {"k": k, "source": source.kind, "n_values": list(source.n_values)}
    items = (SweepItem(G, k) for G in _source_graphs(source))
    report = run_sweep("kopylov", params, items, kopylov_outcome, jobs, _coverage(source))
    if source.kind == "enumeration":
        for n in source.n_values:
            if n < k:
                continue
            bound = kopylov_bound(n, k)
            got = report.cells.get((n, k))
            top = got.max_edges if got else None
            if top != bound:
                report.violations.append({"graph6": "", "n": n, "k": k,
                                          "diagnosis": f"enumerated maximum {top} differs from {bound}"})
    return report


def verify_path_theorems(source: GraphSource, k: int, jobs: int = 1) -> VerificationReport:
    params = {"k": k, "source": source.kind, "n_values": list(source.n_values)}
    items = (SweepItem(G, k) for G in _source_graphs(source, connected_only=True))
    return run_sweep("paths", params, items, path_outcome, jobs, _coverage(source))


def recheck_violations(report: VerificationReport, predicate: Callable) -> list[bool]:
    """Re-run ``predicate`` on each stored counterexample; ``True`` where it fails again."""
    from .graph6 import decode

    out = []
    for v in report.violations:
        if not v["graph6"]:
            out.append(True)
            continue
        res, _ = predicate(decode(v["graph6"]), v["k"])
        out.append(res.kind == VIOLATION)
    return out


__all__ = [
    "STABILITY_MODES",
    "SweepError",
    "SweepItem",
    "apex",
    "grid_items",
    "kopylov_bound",
    "kopylov_outcome",
    "path_outcome",
    "recheck_violations",
    "roundtrip_outcome",
    "run_sweep",
    "stability_hypotheses",
    "stability_outcome",
    "verify_kopylov_sweep",
    "verify_path_theorems",
    "verify_stability_sweep",
]

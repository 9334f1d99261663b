"""Acceptance criteria, one test per criterion, each with its time budget.

The terminal summary prints one PASS/FAIL line per criterion.
"""
import time
from itertools import combinations

import networkx as nx
import pytest

from cyclestab.canon import are_isomorphic, canonical_key
from cyclestab.constructions import FFamilySpec, build_F_member, build_H, ell_value, h_value, half_threshold
from cyclestab.contraction import (
    audit_trace,
    basic_procedure,
    longest_cycles_avoid_separating_edges,
    low_degree_lemma_holds,
    safe_partner,
    split_preservation_check,
)
from cyclestab.graph import add_vertex, complete, contract_edge, cycle, min_triangle_count
from cyclestab.harness.enumeration import GraphSource, enumerate_2connected, enumerate_graphs
from cyclestab.harness.graph6 import decode, encode
from cyclestab.harness.grid import construction_grid
from cyclestab.harness.oracles import classical_suite
from cyclestab.harness.sweeps import (
    kopylov_bound,
    verify_kopylov_sweep,
    verify_stability_sweep,
)
from cyclestab.recognizers import class_list
from cyclestab.structure import capped_circumference, circumference, is_2_connected, longest_xy_path
from reference import to_nx


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.perf_counter()

    def check(self):
        spent = time.perf_counter() - self.start
        assert spent < self.seconds, f"took {spent:.1f}s, budget {self.seconds}s"


@pytest.mark.criterion(1, "formula identities")
def test_formula_identities():
    budget = Budget(1)
    assert h_value(7, 7, 2) == 14
    assert h_value(8, 8, 2) == 19
    for n in range(8, 21):
        assert h_value(n, 7, 2) == 2 * n
        assert h_value(n, 8, 2) == 2 * n + 3
    for t in range(2, 7):
        for n in range(max(8, 2 * t + 2), 21):
            assert h_value(n, 2 * t + 2, t) == h_value(n, 2 * t + 1, t) + 1
            if t >= 2:
                assert h_value(n, 2 * t + 2, t - 1) == h_value(n, 2 * t + 1, t - 1) + 3
                assert h_value(n, 2 * t + 1, t) - h_value(n, 2 * t + 1, t - 1) == n - t - 3
                assert h_value(n, 2 * t + 2, t) - h_value(n, 2 * t + 2, t - 1) == n - t - 5
    budget.check()


@pytest.mark.criterion(2, "constructor and formula agree")
def test_constructor_formula_agreement():
    budget = Budget(5)
    for k in range(3, 13):
        for a in range(1, (k + 1) // 2):
            for n in range(k, 41):
                assert build_H(n, k, a).graph.e == h_value(n, k, a)
    for n in range(5, 21):
        assert ell_value(n, 2) == max(build_H(n, n, 2).graph.e, build_H(n, n, half_threshold(n)).graph.e)
    budget.check()


@pytest.mark.criterion(3, "extremal circumference")
def test_extremal_circumference():
    budget = Budget(120)
    for k in range(5, 11):
        t = half_threshold(k)
        for n in range(k, 15):
            G = build_H(n, k, t).graph
            assert circumference(G) == k - 1, (n, k)
            assert is_2_connected(G)
    members = 0
    for k in range(5, 11):
        for label, lc in construction_grid(k, range(k, k + 4)):
            assert capped_circumference(lc.graph, k) < k, (k, label, encode(lc.graph))
            members += 1
    assert members > 0
    budget.check()


def _sweep(n, k, mode, cache_dir, reading="some"):
    src = GraphSource("enumeration", (n,), cache_dir=cache_dir)
    return verify_stability_sweep(src, k, mode, g6_reading=reading)


@pytest.mark.criterion(4, "stability: exhaustive k <= 8, property-based k in {9, 10}")
def test_stability(cache_dir):
    budget = Budget(3600)
    failures = []
    for k in range(4, 9):
        for n in range(k, 10):
            rep = _sweep(n, k, "theorem-t3small", cache_dir)
            assert rep.checked == len(enumerate_2connected(n, cache_dir))
            failures += rep.violations
    for n in (8, 9):
        failures += _sweep(n, 8, "theorem-t3small", cache_dir, reading="every").violations
    for k, ns in ((9, (14, 15, 16)), (10, (15, 16))):
        rep = verify_stability_sweep(GraphSource("construction-grid", ns, samples=100_000, seed=0), k,
                                     "theorem-main")
        assert rep.coverage_mode == "property-based"
        assert rep.checked >= 100_000 * len(class_list(k))
        failures += rep.violations
    assert failures == []
    budget.check()


@pytest.mark.criterion(5, "maximum edge count for c < k")
def test_kopylov_maximum(cache_dir):
    budget = Budget(1800)
    for k in range(5, 9):
        src = GraphSource("enumeration", tuple(range(k, 10)), cache_dir=cache_dir)
        rep = verify_kopylov_sweep(src, k)
        assert rep.violations == []
        for n in range(k, 10):
            assert rep.cells[(n, k)].max_edges == kopylov_bound(n, k)
    budget.check()


@pytest.mark.criterion(6, "dense graphs with c < 7 embed in H(n,7,3)")
def test_corollary_c7(cache_dir):
    budget = Budget(1800)
    for n, floor in ((8, 17), (9, 19)):
        assert (5 * n - 6) // 2 == floor
        rep = _sweep(n, 7, "corollary-c7", cache_dir)
        assert rep.violations == []
        assert rep.totals().labels["H(n,7,3)"] > 0
    budget.check()


def _monotone_under_contraction(G):
    delta, T = G.min_degree(), min_triangle_count(G)
    for u, v in G.edges():
        H, _ = contract_edge(G, u, v)
        if H.min_degree() < delta - 1 or (H.e and min_triangle_count(H) < T - 1):
            return False
    return True


@pytest.mark.criterion(7, "contraction lemma suite")
def test_contraction_lemmas(cache_dir):
    budget = Budget(1200)
    for n in range(4, 9):
        for G in enumerate_2connected(n, cache_dir):
            for v in range(n):
                assert is_2_connected(contract_edge(G, v, safe_partner(G, v))[0])
            assert longest_cycles_avoid_separating_edges(G), encode(G)
            if n <= 7:
                assert low_degree_lemma_holds(G, 2) and low_degree_lemma_holds(G, 3), encode(G)
    for n in range(2, 8):
        for G in enumerate_graphs(n, cache_dir):
            if G.e:
                assert _monotone_under_contraction(G), encode(G)
    budget.check()


def _procedure_inputs(k):
    """In-hypothesis grid members, plus each one grown by a vertex of degree two."""
    t = half_threshold(k)
    seen = set()
    for label, lc in construction_grid(k, range(k, 17)):
        G = lc.graph
        if G.e < h_value(G.n, k, t - 1) + 1:
            continue
        yield label, G
        if G.n >= 16:
            continue
        for u, v in combinations(range(G.n), 2):
            grown = add_vertex(G, (1 << u) | (1 << v))
            key = canonical_key(grown)
            if key in seen or grown.e < h_value(grown.n, k, t - 1) + 1:
                continue
            seen.add(key)
            if capped_circumference(grown, k) < k:
                yield label + "+v", grown


@pytest.mark.criterion(8, "procedure audits on the construction grid")
def test_procedure_audits():
    budget = Budget(300)
    audited = 0
    seen = set()
    for k in (9, 10):
        for label, G in _procedure_inputs(k):
            trace = basic_procedure(G, k)
            assert trace.within_hypotheses
            audit = audit_trace(trace)
            assert audit.ok, (k, label, encode(G), audit.violations)
            assert audit.final_structure != "neither"
            audited += 1
            seen.update(s.rule for s in trace.steps)
    print(f"audited {audited} traces; rules used: {sorted(seen)}")
    assert audited > 27
    assert {"R1", "R2", "R4"} <= seen
    budget.check()


def _path_profile(lc):
    G = lc.graph
    part = {}
    for name in ("A", "B", "C"):
        for v in lc.parts.get(name, ()):
            part[v] = name
    lengths = {}
    for x, y in combinations(range(G.n), 2):
        lengths[(x, y)] = longest_xy_path(G, x, y).length
    return G, part, lengths


def _members_t4():
    f0 = [FFamilySpec("F0")] + [FFamilySpec("F0", 4, ((i, j),)) for i in range(4) for j in range(5)]
    return f0 + [FFamilySpec(f) for f in ("F1", "F2", "F3", "F4", "F4'")]


# frozen exact profiles: lengths per unordered pair of part names
PROFILES = {
    "F0": {("A", "A"): {6}, ("A", "B"): {7}, ("B", "B"): {8}},
    "F1": {("A", "A"): {6}, ("A", "B"): {7}, ("B", "B"): {8}},
    "F2": {("A", "A"): {7}, ("A", "B"): {7, 8}, ("B", "B"): {9}, ("A", "C"): {8}, ("B", "C"): {8, 9}},
    "F3": {("A", "A"): {7}, ("A", "B"): {8}, ("B", "B"): {9}, ("A", "C"): {8}, ("C", "C"): {8},
           ("B", "C"): {9}},
    "F4'": {("A", "A"): {7}, ("A", "B"): {8}, ("B", "B"): {9}, ("A", "C"): {8}, ("C", "C"): {8},
            ("B", "C"): {9}},
    "F4": {("A", "A"): {6}, ("A", "B"): {8}, ("B", "B"): {8}},
}


@pytest.mark.criterion(9, "path-rich family path profile")
def test_path_profile():
    budget = Budget(600)
    t = 4
    for spec in _members_t4():
        lc = build_F_member(spec)
        G, part, lengths = _path_profile(lc)
        fam = spec.family
        A = set(lc.parts["A"])
        pairs = set(lengths)
        assert min(lengths.values()) >= 2 * t - 2
        below_odd = {p for p, ln in lengths.items() if ln < 2 * t - 1}
        below_even = {p for p, ln in lengths.items() if ln < 2 * t}
        in_A = {p for p in pairs if set(p) <= A}
        touches_A = {p for p in pairs if set(p) & A}
        # pairs with no path of length 2t-1
        assert below_odd == (in_A if fam in ("F0", "F1", "F4") else set()), (fam, spec.deletions)
        # pairs with no path of length 2t
        if fam == "F0":
            assert below_even <= pairs and below_even == touches_A
        elif fam == "F1":
            assert below_even == touches_A
        elif fam == "F2":
            a1b1 = tuple(sorted((lc.vertex("a1"), lc.vertex("b1"))))
            assert below_even == in_A | {a1b1}
        else:
            assert below_even == in_A
        got = {}
        for (x, y), ln in lengths.items():
            key = tuple(sorted((part[x], part[y])))
            got.setdefault(key, set()).add(ln)
        assert got == PROFILES[fam], (fam, got)
    budget.check()


SPLIT_MEMBERS = [("F0", 9, ()), ("F0", 9, ((0, 0),)), ("F1", 10, ()), ("F2", 10, ()), ("F3", 10, ()),
                 ("F4", 10, ()), ("F4'", 10, ())]


@pytest.mark.criterion(10, "vertex splits keep a family member")
def test_split_preservation():
    budget = Budget(1800)
    total = 0
    for fam, k, deletions in SPLIT_MEMBERS:
        member = build_F_member(FFamilySpec(fam, 4, deletions)).graph
        rep = split_preservation_check(member, k, fam, extra_edges=2)
        assert rep.violations == (), (fam, [encode(g) for g in rep.violations])
        assert rep.qualifying > 0
        total += rep.splits
    assert total > 0
    budget.check()


@pytest.mark.criterion(11, "classical oracle suite")
def test_classical_oracles(cache_dir):
    budget = Budget(1800)
    reports = classical_suite(8, cache_dir, seed=0)
    names = {r.theorem for r in reports}
    assert "nonhamiltonian-edge-bound" in names
    for rep in reports:
        assert rep.violations == [], (rep.theorem, rep.violations[:3])
        assert rep.checked > 0
    nonham = next(r for r in reports if r.theorem == "nonhamiltonian-edge-bound")
    notes = [n for n in nonham.notes if n.startswith("n=")]
    assert len(notes) == 5
    for note in notes:
        print(note)
    budget.check()


@pytest.mark.criterion(12, "graph6 round trip")
def test_graph6_round_trip(cache_dir):
    budget = Budget(60)
    for n in range(1, 8):
        for G in enumerate_graphs(n, cache_dir):
            assert decode(encode(G)) == G
    for G in (complete(3), cycle(4)):
        assert encode(G) == nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()
    assert are_isomorphic(decode("Bw"), complete(3)) and are_isomorphic(decode("Cl"), cycle(4))
    budget.check()

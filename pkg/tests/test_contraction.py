import pytest
from hypothesis import given

from cyclestab.constructions import FFamilySpec, build_F_member, build_H, h_value
from cyclestab.contraction import (
    audit_trace,
    basic_procedure,
    forge_trace,
    guarded_choices,
    guarded_contraction_step,
    longest_cycles_avoid_separating_edges,
    low_degree_lemma_holds,
    r2_applies,
    replay,
    safe_partner,
    split_preservation_check,
    vertex_splits,
)
from cyclestab.graph import add_vertex, complete, contract_edge, cycle, make_graph, mask_of, path
from cyclestab.harness.enumeration import enumerate_2connected
from cyclestab.recognizers import PreconditionError
from cyclestab.structure import is_2_connected
from samples import r3_blob_graph
from strategies import graphs


def test_safe_partner_examples():
    assert safe_partner(complete(4), 2) in (0, 1, 3)
    assert safe_partner(cycle(4), 0) == 1
    with pytest.raises(PreconditionError):
        safe_partner(path(4), 0)
    with pytest.raises(PreconditionError):
        safe_partner(complete(3), 0)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_safe_partner_exists(n):
    for G in enumerate_2connected(n):
        for v in range(n):
            w = safe_partner(G, v)
            assert is_2_connected(contract_edge(G, v, w)[0])


def test_guarded_step_examples():
    step = guarded_contraction_step(complete(4))
    assert step.graph == complete(3)
    c5 = guarded_contraction_step(cycle(5))
    assert c5.graph == cycle(4) and c5.edge == (0, 1) and c5.triangles == 0
    assert len(guarded_choices(cycle(5))) == 5
    with pytest.raises(PreconditionError):
        guarded_contraction_step(path(3))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_lemma_checks_small(n):
    for G in enumerate_2connected(n):
        assert longest_cycles_avoid_separating_edges(G)
        for h in (2, 3):
            assert low_degree_lemma_holds(G, h)


def test_n_equals_k_stops_at_once():
    G = build_H(9, 9, 4).graph
    trace = basic_procedure(G, 9)
    assert [s.rule for s in trace.steps] == ["R1"] and trace.m == 9


def test_extremal_graph_stops_by_r4():
    G = build_H(14, 9, 4).graph
    trace = basic_procedure(G, 9)
    assert [s.rule for s in trace.steps] == ["R4"]
    assert trace.final == G and trace.within_hypotheses
    audit = audit_trace(trace)
    assert audit.ok and audit.final_structure == "subgraph of H(14,9,4)"


def test_pendant_pair_on_the_clique_side():
    H13 = build_H(13, 9, 4)
    A = H13.part("A")
    G = add_vertex(H13.graph, mask_of(A[:2]))
    trace = basic_procedure(G, 9)
    rules = [s.rule for s in trace.steps]
    assert rules == ["R2", "R4"]
    assert 13 in trace.steps[0].edge and trace.steps[0].triangles == 1
    assert trace.m == 13 and trace.final == H13.graph
    assert audit_trace(trace).ok


def test_pendant_pair_on_the_independent_side_is_rejected():
    H13 = build_H(13, 9, 4)
    B = H13.part("B")
    G = add_vertex(H13.graph, mask_of(B[:2]))
    with pytest.raises(PreconditionError):
        basic_procedure(G, 9)


def test_r3_removes_a_blob():
    G = r3_blob_graph()
    trace = basic_procedure(G, 9)
    assert not trace.within_hypotheses
    assert any(n.startswith("out of theorem hypotheses") for n in trace.notes)
    assert [s.rule for s in trace.steps] == ["R3", "R4"]
    assert trace.steps[0].edge == (0, 1) and trace.steps[0].removed == (2, 3, 4)
    assert not r2_applies(trace.final, 4)
    assert replay(trace) == trace.final


def test_forged_trace_is_flagged():
    G = make_graph(6, [(0, 1), (0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)])
    audit = audit_trace(forge_trace(G, 5, [(0, 1)]))
    assert any("not 2-connected" in v for v in audit.violations)


def test_edge_bound_step():
    assert h_value(14, 9, 3) - h_value(13, 9, 3) == 3


def test_procedure_preconditions():
    with pytest.raises(PreconditionError):
        basic_procedure(cycle(8), 4)
    with pytest.raises(PreconditionError):
        basic_procedure(cycle(7), 9)
    with pytest.raises(PreconditionError):
        basic_procedure(cycle(10), 9)


@given(graphs(min_n=7, max_n=9))
def test_procedure_is_deterministic_and_replayable(G):
    k = G.n
    if not is_2_connected(G):
        return
    try:
        t1 = basic_procedure(G, k)
    except PreconditionError:
        return
    t2 = basic_procedure(G, k)
    assert [s.as_dict() for s in t1.steps] == [s.as_dict() for s in t2.steps]
    assert replay(t1) == t1.final == t2.final
    seen_r3 = False
    for s in t1.steps:
        seen_r3 |= s.rule == "R3"
        assert not (seen_r3 and s.rule == "R2")


def test_vertex_splits_contract_back():
    F = cycle(5)
    splits = list(vertex_splits(F, 0))
    # two neighbours, each to x, y or both, modulo swapping x and y
    assert len(splits) == 5
    for Fp in splits:
        assert Fp.n == 6 and contract_edge(Fp, 0, 5)[0] == F


def test_split_check_on_smallest_member():
    F0 = build_F_member(FFamilySpec("F0")).graph
    bare = split_preservation_check(F0, 9, "F0", extra_edges=0)
    assert bare.hosts == 1 and bare.splits > 0 and not bare.violations
    wider = split_preservation_check(F0, 9, "F0", extra_edges=1)
    assert wider.hosts > 1 and wider.qualifying > 0 and not wider.violations
    with pytest.raises(PreconditionError):
        split_preservation_check(cycle(5), 7)

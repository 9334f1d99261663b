import networkx as nx
import pytest
from hypothesis import given

from cyclestab.graph import complete, cycle, make_graph
from cyclestab.harness.graph6 import Graph6Error, decode, encode, read_graph6, write_graph6
from reference import to_nx
from strategies import graphs


def test_known_strings():
    assert encode(complete(3)) == "Bw"
    assert encode(cycle(4)) == "Cl"
    assert decode(">>graph6<<Bw") == complete(3)


@given(graphs(max_n=20))
def test_matches_networkx_encoder(G):
    ref = nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()
    assert encode(G) == ref
    assert decode(ref) == G


def test_file_round_trip(tmp_path):
    gs = [cycle(5), complete(4), make_graph(1)]
    p = tmp_path / "g.g6"
    assert write_graph6(gs, p) == 3
    assert list(read_graph6(p)) == gs


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x7f", "~??", "Bx"])
def test_malformed_records(bad):
    with pytest.raises(Graph6Error):
        decode(bad)


def test_bad_line_reports_location(tmp_path):
    p = tmp_path / "bad.g6"
    p.write_text("Bw\nB!\n")
    with pytest.raises(Graph6Error, match=":2:"):
        list(read_graph6(p))


def test_too_large_to_encode():
    with pytest.raises(Graph6Error):
        encode(make_graph(63))

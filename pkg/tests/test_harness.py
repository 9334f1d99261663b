import csv
import io
import json
from functools import partial

import pytest

from cyclestab.cli import main, parse_n_range, parse_stars, UsageError
from cyclestab.constructions import build_H
from cyclestab.graph import cycle, make_graph
from samples import r3_blob_graph
from cyclestab.harness.enumeration import GraphSource
from cyclestab.harness.graph6 import encode, write_graph6
from cyclestab.harness.report import (
    CSV_COLUMNS,
    Outcome,
    VerificationReport,
    emit_report,
    load_report,
    report_csv,
    report_json,
)
from cyclestab.harness.sweeps import (
    SweepItem,
    kopylov_bound,
    kopylov_outcome,
    recheck_violations,
    run_sweep,
    stability_outcome,
    verify_kopylov_sweep,
    verify_stability_sweep,
)


def _strip_runtime(d):
    d = dict(d)
    d.pop("runtime_ms")
    return d


def test_report_field_order_and_round_trip(tmp_path):
    rep = VerificationReport("demo", {"k": 7}, "exhaustive")
    rep.record(8, 7, Outcome("passed"), edges=10)
    rep.record(8, 7, Outcome("class-member", "G1"), edges=17)
    rep.record(9, 7, Outcome("violation", diagnosis="boom"), "Bw", edges=3)
    text = report_json(rep)
    assert list(json.loads(text)) == ["schema_version", "theorem", "params", "counts", "violations",
                                      "runtime_ms", "coverage_mode", "notes"]
    p = tmp_path / "r.json"
    emit_report(rep, "json", p)
    assert report_json(load_report(p)) == text
    assert not rep.ok and rep.checked == 3


def test_empty_report():
    rep = VerificationReport("empty", {})
    d = rep.as_dict()
    assert d["counts"]["checked"] == 0 and d["violations"] == [] and rep.ok


def test_csv_has_one_row_per_cell():
    rep = VerificationReport("demo", {}, "sampled")
    for n in (7, 8):
        rep.record(n, 6, Outcome("below-bound"))
    rows = list(csv.reader(io.StringIO(report_csv(rep))))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 3
    assert rows[1][:3] == ["demo", "7", "6"]


def test_bad_schema_version_rejected():
    d = VerificationReport("x", {}).as_dict()
    d["schema_version"] = 99
    with pytest.raises(ValueError):
        VerificationReport.from_dict(d)


def _always_fails(G, k):
    return Outcome("violation", diagnosis="forced"), ()


def test_forced_violation_is_stored_and_rechecked():
    rep = run_sweep("forced", {}, [SweepItem(cycle(5), 6)], _always_fails)
    assert rep.violations == [{"graph6": encode(cycle(5)), "n": 5, "k": 6, "diagnosis": "forced"}]
    assert recheck_violations(rep, _always_fails) == [True]
    assert recheck_violations(rep, partial(stability_outcome, mode="theorem-t3small")) == [False]


def test_serial_equals_parallel(cache_dir):
    src = GraphSource("enumeration", (6, 7), cache_dir=cache_dir)
    a = verify_stability_sweep(src, 6, "theorem-t3small", jobs=1)
    b = verify_stability_sweep(src, 6, "theorem-t3small", jobs=2)
    assert _strip_runtime(a.as_dict()) == _strip_runtime(b.as_dict())


def test_stability_and_kopylov_small(cache_dir):
    src = GraphSource("enumeration", (6, 7), cache_dir=cache_dir)
    rep = verify_stability_sweep(src, 6, "theorem-t3small")
    assert rep.ok and rep.checked == 56 + 468
    kop = verify_kopylov_sweep(src, 6)
    assert kop.ok
    assert kop.cells[(7, 6)].max_edges == kopylov_bound(7, 6)
    out, _ = kopylov_outcome(build_H(7, 6, 2).graph, 6)
    assert out.kind != "violation"


def test_parsers():
    assert parse_n_range("5..7") == (5, 6, 7) == parse_n_range("5-7")
    assert parse_n_range("4,9") == (4, 9) and parse_n_range("8") == (8,)
    assert parse_stars("3,2@1,3:0-2@1")[2].ends == (0, 2)
    with pytest.raises(UsageError):
        parse_n_range("a..b")


def test_cli_exit_codes(tmp_path, capsys, cache_dir):
    assert main(["construct", "H", "--n", "9", "--k", "7", "--a", "3"]) == 0
    assert capsys.readouterr().out.strip() == encode(build_H(9, 7, 3).graph)
    assert main(["check", encode(build_H(9, 7, 3).graph), "--k", "7"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "ClassMember"
    out = tmp_path / "r.json"
    assert main(["verify", "--mode", "theorem-t3small", "--k", "5", "--n-range", "5..6",
                 "--cache-dir", cache_dir, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["counts"]["violations"] == 0
    g6 = tmp_path / "g.g6"
    write_graph6([make_graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 3)])], g6)
    assert main(["verify", "--mode", "theorem-t3small", "--k", "7", "--n-range", "7",
                 "--source", "graph6", "--file", str(g6), "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith(",".join(CSV_COLUMNS))
    # below the edge threshold, so the audit reports the bound as broken
    assert main(["procedure", encode(r3_blob_graph()), "--k", "9", "--trace", str(tmp_path / "t.json")]) == 1
    assert "R3" in capsys.readouterr().out
    assert json.loads((tmp_path / "t.json").read_text())["k"] == 9
    assert main(["verify", "--mode", "theorem-t3small", "--k", "7", "--n-range", "7",
                 "--source", "graph6", "--file", str(tmp_path / "missing.g6")]) == 2
    assert main(["construct", "H", "--n", "5", "--k", "7", "--a", "3"]) == 2
    assert main(["check", "B!"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2

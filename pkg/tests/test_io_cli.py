import json

import pytest

from broomlab.cli import main
from broomlab.generators import petersen
from broomlab.graph_io import (
    GraphParseError,
    read_graph,
    render_graph,
    write_graph,
)
from broomlab.graphs import Graph


def test_dimacs_triangle(tmp_path):
    text = "c comment\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
    f = tmp_path / "t.col"
    f.write_text(text)
    g = read_graph(f)
    assert g.n == 3 and g.m == 3


def test_edgelist_header_only(tmp_path):
    f = tmp_path / "empty.edges"
    f.write_text("4 0\n")
    g = read_graph(f)
    assert g.n == 4 and g.m == 0


def test_round_trip_identity(tmp_path):
    g = petersen()
    for fmt, name in (("edgelist", "p.edges"), ("dimacs", "p.col")):
        f = tmp_path / name
        write_graph(g, f, fmt)
        first = f.read_bytes()
        again = read_graph(f, fmt)
        assert again == g
        write_graph(again, f, fmt)
        assert f.read_bytes() == first


def test_parse_errors_name_lines(tmp_path):
    cases = [
        ("bad.col", "p edge 3 1\ne 1 1\n", "self-loop"),
        ("bad2.col", "e 1 2\n", "before problem"),
        ("bad3.col", "p edge 2 1\ne 1 5\n", "out of range"),
        ("bad4.col", "p edge 2 1\nq 1 2\n", "unknown record"),
        ("bad5.col", "p edge 2 2\ne 1 2\n", "promises"),
        ("bad6.edges", "2\n", "header"),
        ("bad7.edges", "2 1\n0 0\n", "self-loop"),
    ]
    for name, text, fragment in cases:
        f = tmp_path / name
        f.write_text(text)
        with pytest.raises(GraphParseError) as err:
            read_graph(f)
        assert fragment in str(err.value)


def test_render_graph_sorted():
    g = Graph(3, [(2, 1), (1, 0)])
    assert render_graph(g) == "3 2\n0 1\n1 2\n"
    assert render_graph(g, "dimacs") == "p edge 3 2\ne 1 2\ne 2 3\n"


# --- CLI ----------------------------------------------------------------------


def run_cli(*argv):
    return main(list(argv))


def test_cli_gen_analyze_constants(tmp_path, capsys):
    graph_file = tmp_path / "pet.edges"
    code = run_cli(
        "gen", "--family", "fixture", "--params", '{"id": "petersen"}',
        "--out", str(graph_file),
    )
    assert code == 0
    report_file = tmp_path / "report.json"
    code = run_cli(
        "analyze", "--graph", str(graph_file), "--delta", "1",
        "--tau", "3", "--out", str(report_file),
    )
    assert code == 0
    report = json.loads(report_file.read_text())
    assert report["results"]["omega"]["value"] == 2
    assert report["results"]["chi"]["value"] == 3
    assert report["results"]["chi_ball_2"]["value"] == 3
    assert report["results"]["t_free"]["value"] is True
    # Any edge carries a (1,2)-core, but the girth rules out (2,2).
    assert report["results"]["best_core"]["a"] == 1

    ledger_file = tmp_path / "ledger.json"
    code = run_cli(
        "constants", "--delta", "1", "--tau", "1", "--beta", "2",
        "--zeta", "3", "--out", str(ledger_file),
    )
    assert code == 0
    payload = json.loads(ledger_file.read_text())
    values = {e["key"]: e["decimal"] for e in payload["entries"]}
    assert values["gamma"] == "9"
    assert values["epsilon"] == "27"
    assert values["strong_contacts.s"] == "498"


def test_cli_pipeline_and_audit(tmp_path):
    graph_file = tmp_path / "g.edges"
    assert run_cli(
        "gen", "--family", "fixture", "--params", '{"id": "c4_pendant_path"}',
        "--out", str(graph_file),
    ) == 0
    out = tmp_path / "trace.json"
    assert run_cli(
        "pipeline", "--graph", str(graph_file), "--out", str(out),
    ) == 0
    trace = json.loads(out.read_text())
    names = [s["name"] for s in trace["trace"]["stages"]]
    assert names == ["extract", "clean1", "clean2", "privatize", "clean3"]
    assert trace["trace"]["leftover_core_free"] is True
    audit_out = tmp_path / "audit.json"
    assert run_cli(
        "audit", "--graph", str(graph_file), "--out", str(audit_out),
    ) == 0
    audit = json.loads(audit_out.read_text())
    assert audit["audit"]["core_contacts"]["status"] == "pass"


def test_cli_lemma_check(tmp_path):
    out = tmp_path / "suite.json"
    code = run_cli(
        "lemma-check", "--suite", "digraph", "--trials", "20",
        "--seed", "7", "--out", str(out),
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["ok"] is True and payload["trials"] == 40


def test_cli_survey(tmp_path):
    manifest = {
        "analysis": {"delta": 1, "beta": 2},
        "instances": [
            {"id": "pet", "family": "fixture", "params": {"id": "petersen"}},
            {"id": "c7", "family": "cycle", "params": {"n": 7}},
            {"id": "big", "family": "erdos_renyi",
             "params": {"n": 120, "p": 0.2}, "seed": 3},
        ],
    }
    mfile = tmp_path / "manifest.json"
    mfile.write_text(json.dumps(manifest))
    out = tmp_path / "rows.csv"
    assert run_cli("survey", "--manifest", str(mfile), "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 4  # header + one row per instance, refusals included
    assert lines[0].startswith("id,family,n,omega,chi,t_free,error")
    assert lines[1].startswith("pet,fixture,10,2,3,True,")
    assert lines[2].startswith("c7,cycle,7,2,3,False,")
    assert "exceeds solver limit" in lines[3]


def test_cli_exit_codes(tmp_path):
    missing = run_cli("analyze", "--graph", str(tmp_path / "nope.edges"))
    assert missing == 2
    bad = tmp_path / "bad.edges"
    bad.write_text("not a header\n")
    assert run_cli("analyze", "--graph", str(bad)) == 2
    big = tmp_path / "big.edges"
    write_graph(Graph(70, [(i, i + 1) for i in range(69)]), big)
    assert run_cli("analyze", "--graph", str(big)) == 3
    assert run_cli("analyze", "--graph", str(big), "--solver-limit", "70") == 0


def test_cli_suite_failure_exit_code(tmp_path, monkeypatch):
    import broomlab.suites as suites
    from broomlab.suites import SuiteResult

    def always_fails(trials=1, seed=0):
        return SuiteResult("rigged", trials, failures=["boom"])

    monkeypatch.setitem(suites.SUITES, "rigged", always_fails)
    out = tmp_path / "fail.json"
    code = run_cli("lemma-check", "--suite", "rigged", "--out", str(out))
    assert code == 4
    assert json.loads(out.read_text())["ok"] is False


def test_cli_determinism(tmp_path):
    for name in ("a", "b"):
        graph_file = tmp_path / f"{name}.edges"
        assert run_cli(
            "gen", "--family", "erdos_renyi", "--params",
            '{"n": 14, "p": 0.3}', "--seed", "5", "--out", str(graph_file),
        ) == 0
        assert run_cli(
            "analyze", "--graph", str(graph_file),
            "--out", str(tmp_path / f"{name}.json"),
        ) == 0
        assert run_cli(
            "constants", "--delta", "1", "--tau", "1",
            "--out", str(tmp_path / f"{name}_ledger.json"),
        ) == 0
    assert (tmp_path / "a.edges").read_bytes() == (tmp_path / "b.edges").read_bytes()
    a = json.loads((tmp_path / "a.json").read_text())
    b = json.loads((tmp_path / "b.json").read_text())
    a["instance"].pop("graph")
    b["instance"].pop("graph")
    assert a == b
    assert (tmp_path / "a_ledger.json").read_bytes() == (
        tmp_path / "b_ledger.json"
    ).read_bytes()

import json
import subprocess
import sys

import pytest

from mixramsey.cli import run
from mixramsey.constructions import eoo_construction_1
from mixramsey.graphio import graph_from_json, save_graph


def call(capsys, *argv):
    status = run(list(argv))
    out = capsys.readouterr()
    return status, json.loads(out.out), out.err


@pytest.fixture
def eoo_file(tmp_path):
    p = tmp_path / "eoo.json"
    save_graph(eoo_construction_1(8, 7, 7), p)
    return str(p)


def test_construct_and_verify(capsys, tmp_path):
    out = tmp_path / "g.json"
    status = run(["construct", "--family", "eoo1", "--params", "8,7,7", "--out", str(out)])
    assert status == 0
    doc = json.loads(out.read_text())
    assert doc["n"] == 28 and doc["meta"]["command"] == "construct"
    assert graph_from_json(doc) == eoo_construction_1(8, 7, 7)
    status, cert, _ = call(capsys, "verify-lb", "--graph", str(out), "--targets", "C8:red,C7:blue,C7:green")
    assert status == 0 and cert["verified"] and cert["claim"]["N"] == 29
    assert cert["meta"]["seed"] == 0 and cert["meta"]["budget"] > 0


def test_refuted_lower_bound_exits_1(capsys, eoo_file):
    status, cert, _ = call(capsys, "verify-lb", "--graph", eoo_file, "--targets", "C7:red,C7:blue,C7:green")
    assert status == 1 and not cert["verified"]


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3,\n "r": 1,\n "edges": [}')
    status, doc, err = call(capsys, "detect-cycle", "--graph", str(bad), "--colour", "red", "--length", "3")
    assert status == 1
    assert doc["message"].startswith(f"{bad}:3:")
    assert "invalid JSON" in err


def test_byte_identical_reruns(tmp_path, eoo_file):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(["verify-lb", "--graph", eoo_file, "--targets", "C8,C7,C7", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_only_on_request(capsys, eoo_file):
    _, doc, _ = call(capsys, "detect-cycle", "--graph", eoo_file, "--colour", "red", "--length", "8")
    assert "timing" not in doc and doc["status"] == "absent"
    _, doc, _ = call(capsys, "detect-cycle", "--graph", eoo_file, "--colour", "red", "--length", "7",
                     "--timing")
    assert "timing" in doc and doc["status"] == "found" and len(doc["cycle"]) == 7


def test_detect_cycle_budget(capsys, tmp_path):
    import networkx as nx
    from mixramsey.core import EdgeColouring
    P = nx.petersen_graph()
    g = EdgeColouring.from_function(10, 2, lambda u, v: 0 if P.has_edge(u, v) else 1)
    p = tmp_path / "p.json"
    save_graph(g, p)
    status, doc, _ = call(capsys, "detect-cycle", "--graph", str(p), "--colour", "0", "--length", "10",
                          "--budget", "2")
    assert status == 2 and doc["status"] == "budget-exhausted"


def test_matching_and_decompose(capsys, eoo_file):
    status, doc, _ = call(capsys, "matching", "--graph", eoo_file, "--colour", "red", "--odd",
                          "--min-vertices", "6")
    assert status == 0 and doc["matching"]["vertex_count"] == 6 and doc["claim"]["verified"]
    status, doc, _ = call(capsys, "matching", "--graph", eoo_file, "--colour", "red", "--min-vertices", "8")
    assert status == 1
    status, doc, _ = call(capsys, "decompose", "--graph", eoo_file, "--colour", "blue", "--m", "5")
    assert status == 0 and len(doc["v_prime"]) == 28 and all(doc["report"]["conditions"].values())
    status, doc, _ = call(capsys, "decompose", "--graph", eoo_file, "--colour", "red", "--m", "5")
    assert status == 1 and doc["counterexample"]["vertex_count"] == 6


def test_structure_search_and_verify(capsys, tmp_path, eoo_file):
    status, doc, _ = call(capsys, "structure", "--graph", eoo_file, "--class", "L", "--params", "x=7,c=0")
    assert status == 0 and doc["found"]
    w = doc["witness"]
    wf = tmp_path / "w.json"
    wf.write_text(json.dumps({k: w[k] for k in ("X1", "X2", "Y1", "Y2")}))
    status, doc, _ = call(capsys, "structure", "--graph", eoo_file, "--class", "L",
                          "--params", "x=7,c=0", "--witness", str(wf))
    assert status == 0 and doc["verified"]
    swapped = {"X1": w["X1"], "X2": w["Y1"], "Y1": w["X2"], "Y2": w["Y2"]}
    wf.write_text(json.dumps(swapped))
    status, doc, _ = call(capsys, "structure", "--graph", eoo_file, "--class", "L",
                          "--params", "x=7,c=0", "--witness", str(wf))
    assert status == 1 and not doc["conditions"]["(iii)(b)"]
    status, doc, _ = call(capsys, "structure", "--graph", eoo_file, "--class", "L", "--params", "x=8,c=0")
    assert status == 0 and not doc["found"] and doc["exhaustive"]


def test_classify_d(capsys, tmp_path):
    p = tmp_path / "g.json"
    save_graph(eoo_construction_1(4, 5, 5), p)
    status, doc, _ = call(capsys, "classify-d", "--graph", str(p), "--alpha1", "7/6", "--alpha2", "1",
                          "--alpha3", "1", "--eta", "1/10000000000000000000000000000000000000000", "--k", "3")
    assert status == 0 and doc["outcome"] == "(vi)"
    assert doc["witness"]["class"] == "L"


def test_reduce_and_blowup(capsys, tmp_path):
    from mixramsey.core import EdgeColouring
    size = 10
    g = EdgeColouring.from_function(2 * size, 2, lambda u, v: 0 if (u < size) != (v < size) else 1)
    gp = tmp_path / "g.json"
    save_graph(g, gp)
    part = tmp_path / "pi.json"
    part.write_text(json.dumps({"V0": [], "parts": [list(range(size)), list(range(size, 2 * size))]}))
    status, doc, _ = call(capsys, "reduce", "--graph", str(gp), "--partition", str(part),
                          "--eps", "1/10", "--xi", "1/2")
    assert status == 0 and doc["edges"] == [[0, 1, [0]]] and doc["provenance"]["mode"] == "exact"
    mp = tmp_path / "m.json"
    mp.write_text("[[0, 1]]")
    status, doc, _ = call(capsys, "blowup", "--graph", str(gp), "--partition", str(part), "--matching",
                          str(mp), "--length", "12", "--colour", "red")
    assert status == 0 and doc["length"] == 12
    status, doc, _ = call(capsys, "blowup", "--graph", str(gp), "--partition", str(part), "--matching",
                          str(mp), "--length", "13", "--colour", "red")
    assert status == 1 and doc["error"] == "ParityError"
    status, doc, _ = call(capsys, "reduce", "--graph", str(gp), "--eps", "1/10", "--xi", "1/2")
    assert status == 1


def test_search_ramsey(capsys):
    status, doc, _ = call(capsys, "search-ramsey", "--targets", "C4,C5", "--range", "5..8")
    assert status == 0 and doc["exact"] and doc["lower"] == 7
    status, doc, _ = call(capsys, "search-ramsey", "--targets", "C4,C5", "--range", "6..8", "--budget", "3")
    assert status == 2


def test_bad_arguments(capsys):
    status, doc, _ = call(capsys, "construct", "--family", "nope", "--params", "1")
    assert status == 1
    status, doc, _ = call(capsys, "construct", "--family", "eoo1", "--params", "7,5,5")
    assert status == 1 and doc["error"] == "ParameterError"
    with pytest.raises(SystemExit):
        run(["construct", "--family", "eoo1", "--params", "8,7,7", "--budget", "0"])


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "mixramsey", "construct", "--family", "even2",
                          "--params", "8"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["n"] == 10

import json
import subprocess
import sys

import pytest

from sl2act import graded_o as go
from sl2act import linear_category as lc
from sl2act import tl_diagram as tl
from sl2act.cli import main

CUP = json.dumps(tl.to_json(tl.cup()))
CAP = json.dumps(tl.to_json(tl.cap()))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hom_table_rows(capsys):
    code, out, _ = run(capsys, "hom-table", "--bound", "6", "--format", "json")
    assert code == 0
    rows = {(r["m"], r["n"]): r for r in json.loads(out)}
    assert (rows[(3, 3)]["dim"], rows[(3, 3)]["oracle"], rows[(3, 3)]["match"]) == (5, 5, True)
    assert (rows[(1, 2)]["dim"], rows[(1, 2)]["oracle"]) == (0, 0)
    assert (rows[(0, 6)]["dim"], rows[(0, 6)]["oracle"]) == (5, 5)


def test_hom_table_text_and_guard(capsys):
    code, out, _ = run(capsys, "hom-table", "--bound", "2")
    assert code == 0 and "match" in out and len(out.splitlines()) == 10
    code, _, err = run(capsys, "hom-table", "--bound", "17")
    assert code == 2 and "bound" in err


def test_compose_loop_and_zigzag(capsys):
    code, out, _ = run(capsys, "compose", CUP, CAP)
    assert code == 0
    assert tl.from_json(json.loads(out)) == tl.identity(0)
    first = json.dumps(tl.to_json(tl.tensor(tl.cup(), tl.identity(1))))
    second = json.dumps(tl.to_json(tl.tensor(tl.identity(1), tl.cap())))
    code, out, _ = run(capsys, "compose", first, second)
    assert json.loads(out)["zero"] is True


def test_compose_linear(capsys):
    e = lc.HomElement.from_diagram(tl.compose(tl.cup(), tl.cap()), "1/2")
    code, out, _ = run(capsys, "compose", json.dumps(lc.to_json(e)), json.dumps(lc.to_json(e)))
    assert code == 0
    assert lc.from_json(json.loads(out)) == e.scale("1/2")


def test_compose_mismatch(capsys):
    code, _, err = run(capsys, "compose", CAP, CAP)
    assert code == 2 and "cannot compose" in err


def test_tensor(capsys):
    code, out, _ = run(capsys, "tensor", CUP, CAP)
    assert code == 0
    d = tl.from_json(json.loads(out))
    assert (d.m, d.n) == (2, 2)


def test_malformed_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "compose", str(bad), CAP)[0] == 2
    assert run(capsys, "compose", str(tmp_path / "missing.json"), CAP)[0] == 2
    crossing = json.dumps({"bottom": 4, "top": 0, "pairs": [["b0", "b2"], ["b1", "b3"]]})
    assert run(capsys, "tensor", crossing, CAP)[0] == 2


def test_crystal_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "crystal", "tensor", "b1", "b1")
    assert code == 0
    path = tmp_path / "b11.json"
    path.write_text(out)
    code, out, _ = run(capsys, "crystal", "decompose", str(path))
    assert json.loads(out) == {"0": 1, "2": 1}
    code, out, _ = run(capsys, "crystal", "dot", "b2")
    assert out.count("[label=\"(") == 3 and out.count("->") == 2


def test_crystal_defect_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"elements": [{"id": "a", "wt": 1}, {"id": "b", "wt": -1}], "f": {"a": "b"}}))
    code, _, err = run(capsys, "crystal", "decompose", str(path))
    assert code == 2 and "axiom (4)" in err


def test_act(capsys):
    X = go.OZObject({-1: go.GradedVS({0: 1})})
    code, out, _ = run(capsys, "act", CUP, json.dumps(go.object_to_json(X)))
    assert code == 0
    g = go.morphism_from_json(json.loads(out))
    assert g == go.eta(X)


def test_verify_suites(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "counterexample", "isomorphism", "--format", "json", "--output", str(report))
    assert code == 0
    data = json.loads(report.read_text())
    assert data["ok"] and [s["suite"] for s in data["suites"]] == ["counterexample", "isomorphism"]
    assert data["suites"][0]["details"]["end_b1^3"] == 17
    code, out, _ = run(capsys, "verify", "equivalence", "--bound", "6")
    assert code == 0 and out.startswith("PASS equivalence")
    assert run(capsys, "verify", "nonsense")[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from sl2act import verify

    monkeypatch.setattr(verify, "counterexample", lambda: verify.SuiteResult("counterexample", False, 0.0, {}, ["x"]))
    code, out, _ = run(capsys, "verify", "counterexample")
    assert code == 1 and out.startswith("FAIL")


def test_stdin_pipe_and_determinism():
    cmd = [sys.executable, "-m", "sl2act"]
    first = subprocess.run(cmd + ["crystal", "tensor", "b1", "b1"], capture_output=True, text=True, check=True)
    second = subprocess.run(cmd + ["crystal", "decompose", "-"], input=first.stdout, capture_output=True,
                            text=True, check=True)
    assert json.loads(second.stdout) == {"0": 1, "2": 1}
    again = subprocess.run(cmd + ["crystal", "dot", "b1*b1"], capture_output=True, text=True, check=True)
    again2 = subprocess.run(cmd + ["crystal", "dot", "b1*b1"], capture_output=True, text=True, check=True)
    assert again.stdout == again2.stdout


@pytest.mark.parametrize("argv", [["crystal", "tensor", "b1", "b2"], ["tensor", CUP, CUP], ["compose", CAP, CUP]])
def test_json_output_round_trips(capsys, argv):
    code, out, _ = run(capsys, *argv)
    obj = json.loads(out)
    if argv[0] == "crystal":
        from sl2act import crystals as cr
        assert cr.to_json(cr.from_json(obj)) == obj
    else:
        assert tl.to_json(tl.from_json(obj)) == obj

import json
import subprocess
import sys

import pytest

from kgraph.cli import main
from kgraph.corpus import NAMED
from kgraph.kgf import document_from_graph, format_kgf


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, build in NAMED.items():
        path = tmp_path / f"{name}.kgf"
        path.write_text(format_kgf(document_from_graph(build(), name)))
        out[name] = str(path)
    bad = tmp_path / "bad.kgf"
    bad.write_text("kgraph k=2 name=bad\nvertex v\nedge a color=1 range=v source=v\nedge b color=2 range=v source=v\n")
    out["bad"] = str(bad)
    broken = tmp_path / "broken.kgf"
    broken.write_text("kgraph k=1 name=broken\nvertex v\nedge e colour=1 range=v source=v\n")
    out["broken"] = str(broken)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_verify_single_edge(capsys, files):
    code, out, _ = run(capsys, "verify", files["g2"])
    assert code == 0
    assert "span: 5 = 5" in out


def test_verify_loop_is_a_precondition_failure(capsys, files):
    code, _, err = run(capsys, "verify", files["g3"])
    assert code == 4
    assert "CyclicGraph" in err and "v -> v" in err
    code, doc = run_json(capsys, "verify", files["g3"])
    assert code == 4
    assert doc["error"]["kind"] == "CyclicGraph" and doc["error"]["cycle"] == ["v", "v"]


def test_tlambda_output_validates(capsys, files, tmp_path):
    out = tmp_path / "t.kgf"
    code, text, _ = run(capsys, "tlambda", files["g4"], "-o", str(out))
    assert code == 0
    assert "not locally convex" in text
    assert "vertex b:v" in out.read_text()
    code, _, _ = run(capsys, "validate", str(out))
    assert code == 0


def test_validate_failures(capsys, files):
    code, out, _ = run(capsys, "validate", files["bad"])
    assert code == 2 and "MissingSquare" in out
    code, _, err = run(capsys, "validate", files["broken"])
    assert code == 1 and "line 3" in err
    code, _, err = run(capsys, "validate", files["bad"] + ".missing")
    assert code == 1
    code, _, _ = run(capsys, "verify", files["bad"])
    assert code == 2


def test_analyze(capsys, files):
    code, doc = run_json(capsys, "analyze", files["g3"], "--pair-bound", "2", "--witness-bound", "3")
    assert code == 0
    data = doc["report"]["data"]
    assert ["e", "e.e"] in data["aperiodicity"]["failures"]
    assert data["sources"] == {"v": "NoUpToBound((2,))"}
    code, doc = run_json(capsys, "analyze", files["g2"])
    assert doc["report"]["data"]["exhaustive_sets"] == {"v": [["e"]], "w": []}
    assert doc["report"]["data"]["sources"]["w"] == "Yes((1,))"


def test_bad_bounds(capsys, files):
    code, _, err = run(capsys, "analyze", files["g4"], "--pair-bound", "1,2,3")
    assert code == 4 and "2 non-negative integers" in err
    code, _, _ = run(capsys, "analyze", files["g4"], "--pair-bound", "x")
    assert code == 4


def test_export_dot(capsys, files, tmp_path):
    code, out, _ = run(capsys, "export-dot", files["g4"])
    assert code == 0 and out.startswith('digraph "g4"')
    target = tmp_path / "g4.dot"
    code, _, _ = run(capsys, "export-dot", files["g4"], "-o", str(target))
    assert code == 0 and 'label="b color=2"' in target.read_text()
    code, doc = run_json(capsys, "export-dot", files["g4"])
    assert doc["report"]["data"]["dot"].startswith("digraph")


@pytest.mark.parametrize("command", ["validate", "analyze", "verify", "export-dot"])
def test_json_is_versioned_and_deterministic(capsys, files, command):
    target = files["square"]
    first = run(capsys, command, target, "--json")
    second = run(capsys, command, target, "--json")
    assert first == second
    doc = json.loads(first[1])
    assert doc["schema"] == 1 and doc["command"] == command and doc["exit_code"] == first[0]


def test_relation_failure_exit_code(capsys, files, monkeypatch):
    from kgraph import cli
    from kgraph.reports import Report

    def failing(g, pair_bound=None):
        rep = Report("forced")
        rep.add("always fails", False)
        return rep

    monkeypatch.setattr(cli, "verify_isomorphism", failing)
    code, _, _ = run(capsys, "verify", files["g2"])
    assert code == 3


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "kgraph", "verify", files["g2"]], capture_output=True, text=True)
    assert proc.returncode == 0 and "span: 5 = 5" in proc.stdout

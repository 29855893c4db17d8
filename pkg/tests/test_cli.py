import json
import subprocess
import sys

import pytest

from modlat.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def spec(tmp_path):
    def write(text, name="m.yaml"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_semisimple(spec, capsys):
    path = spec("semisimple: [{type: S, mult: 2, q: 2}, {type: T, mult: 1, q: 2}]\n")
    code, out, _ = run(capsys, "enumerate", path)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["total"] == 10 and doc["strata"] == [1, 4, 4, 1]
    assert doc["schema_version"] == 1


def test_enumerate_chain_with_listing(spec, capsys):
    code, out, _ = run(capsys, "enumerate", "--list", spec("explicit: {moduli: [8]}\n"))
    doc = json.loads(out)
    assert code == EXIT_OK and doc["total"] == 4 and doc["strata"] == [1, 1, 1, 1]
    assert [s["order"] for s in doc["submodules"]] == [1, 2, 4, 8]


def test_malformed_file_reports_position(spec, capsys):
    code, _, err = run(capsys, "enumerate", spec("explicit: {moduli: [6]}\n"))
    assert code == EXIT_USAGE and "m.yaml:1:" in err and "prime power" in err
    code, _, err = run(capsys, "enumerate", spec("semisimple: [{type: S\n"))
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "enumerate", "/nonexistent/x.yaml")
    assert code == EXIT_USAGE and "cannot read" in err


def test_graph_dot_and_json(spec, capsys):
    path = spec("explicit: {moduli: [8]}\n")
    code, out, _ = run(capsys, "graph", path)
    assert code == EXIT_OK and out.startswith("graph")
    assert out.count("--") == 1
    assert sum(1 for line in out.splitlines() if "label=" in line) == 2
    code, out, _ = run(capsys, "graph", "--format", "json", spec("semisimple: [{type: S, mult: 2, q: 2}]\n"))
    doc = json.loads(out)
    assert len(doc["vertices"]) == 3 and doc["edges"] == []
    assert set(doc["vertices"][0]) == {"id", "label", "length"}


def test_graph_output_is_deterministic(spec, capsys, tmp_path):
    path = spec("semisimple: [{type: S, mult: 3, q: 2}]\n")
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    assert main(["graph", path, "-o", str(a)]) == EXIT_OK
    assert main(["graph", path, "-o", str(b), "--backend", "numpy"]) == EXIT_OK
    assert a.read_text() == b.read_text()


def test_graph_bad_format(spec, capsys):
    code, _, err = run(capsys, "graph", "--format", "yaml", spec("explicit: {moduli: [8]}\n"))
    assert code == EXIT_USAGE and "unsupported format" in err


def test_invariants_three_s(spec, capsys):
    code, out, _ = run(capsys, "invariants", spec("semisimple: [{type: S, mult: 3, q: 2}]\n"))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert (doc["gamma"], doc["chi"], doc["planar"], doc["connected"], doc["diameter"]) == (3, 7, False, True, 2)
    assert doc["formulas"]["chi"] == 7
    assert all(v in (True, None) for v in doc["agreement"].values())


def test_invariants_cut_vertex_is_socle(spec, capsys):
    code, out, _ = run(capsys, "invariants", spec("explicit: {moduli: [4, 2]}\n"))
    doc = json.loads(out)
    assert doc["cut_vertices"] == ["<(2,0),(0,1)>"]
    assert doc["verdicts"]["cut_vertices"] == doc["cut_vertices"]
    assert doc["omega"] == 4 and doc["planar"] is True


def test_invariants_trivial_graph(spec, capsys):
    code, out, _ = run(capsys, "invariants", spec("explicit: {moduli: [9]}\n"))
    doc = json.loads(out)
    assert (doc["vertices"], doc["edges"], doc["chi"], doc["gamma"]) == (1, 0, 1, 1)


def test_bound_exceeded_exits_2(spec, capsys, monkeypatch):
    monkeypatch.setenv("MODLAT_MAX_ORDER", "16")
    code, _, err = run(capsys, "enumerate", spec("explicit: {moduli: [32]}\n"))
    assert code == EXIT_USAGE


def test_explore(spec, capsys):
    code, out, _ = run(capsys, "explore", spec("semisimple: [{type: S, mult: 2, q: 2}, {type: T, mult: 2, q: 2}]\n"))
    doc = json.loads(out)
    assert code == EXIT_OK and doc["vertices"] == 23
    code, _, err = run(capsys, "explore", spec("semisimple: [{type: S, mult: 3, q: 2}]\n"))
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "explore", spec("explicit: {moduli: [8]}\n"))
    assert code == EXIT_USAGE


def test_verify_only(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--only", "Thm4.4", "--jobs", "1", "-o", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert [c["id"] for c in doc["checks"]] == ["Thm4.4"]
    code, _, err = run(capsys, "verify", "--only", "NoSuchThm")
    assert code == EXIT_USAGE and "NoSuchThm" in err
    assert main(["verify", "--jobs", "0"]) == EXIT_USAGE


def test_verify_failure_exits_1(capsys, monkeypatch):
    from modlat import harness

    monkeypatch.setattr(harness, "run_all", lambda *a, **k: {"status": "fail"})
    code, out, _ = run(capsys, "verify", "--jobs", "1")
    assert code == EXIT_FAIL


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["--help"]) == EXIT_OK
    code, out, _ = run(capsys, "checks")
    assert code == EXIT_OK and "Thm4.4" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "modlat", "checks"], capture_output=True, text=True)
    assert r.returncode == 0 and "Lem5.1" in r.stdout

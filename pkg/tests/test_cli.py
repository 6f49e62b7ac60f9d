from __future__ import annotations

import json

import pytest

from sniplab import witnesses
from sniplab.cli import run, verify_paper_report
from sniplab.ratmat import RationalMatrix
from sniplab.rgraph import complete_graph, family
from sniplab.xixi import XiXiReport

from conftest import J


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def _json(out: str):
    return json.loads(out[out.index("{"):])


@pytest.fixture
def files(tmp_path):
    return {
        "A0": _write(tmp_path, "a0.json", RationalMatrix(witnesses.A0).to_json()),
        "J3": _write(tmp_path, "j3.json", J(3).to_json()),
        "K3": _write(tmp_path, "k3.json", complete_graph(3).to_json()),
        "K4": _write(tmp_path, "k4.json", complete_graph(4).to_json()),
        "paw": _write(tmp_path, "paw.json", family("Paw").with_root(3).to_json()),
        "bad": _write(tmp_path, "bad.json", {"rows": 1, "cols": 1, "entries": [["1/0"]]}),
        "dir": tmp_path,
    }


def test_pair(files, capsys):
    assert run(["pair", "-m", files["A0"], "-i", "0"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "(3,2) downer"
    assert _json(out) == {"pair": [3, 2], "index": "downer"}


def test_minor_graph6(capsys):
    assert run(["minor", "--host", "Bw", "--host-root", "0", "--pattern", "A_", "--pattern-root", "0"]) == 0
    out = capsys.readouterr().out
    assert "contains: true" in out
    assert _json(out)["contains"] is True


def test_snip_all_methods(files, capsys):
    assert run(["snip", "-m", files["A0"], "-g", files["K4"], "-i", "0", "--method", "all"]) == 0
    doc = _json(capsys.readouterr().out)
    assert doc["agree"] and set(doc["snip"].values()) == {True}


def test_sap_recipe_schur(files, capsys):
    assert run(["sap", "-m", files["J3"], "-g", files["K3"]]) == 0
    assert _json(capsys.readouterr().out)["sap"] is True
    assert run(["recipe", "-m", files["J3"], "-g", files["K3"]]) == 1  # dependent columns
    assert "NotABasis" in capsys.readouterr().err
    assert run(["schur", "-m", files["J3"], "--alpha", "0"]) == 0
    doc = _json(capsys.readouterr().out)
    assert RationalMatrix.from_json(doc) == RationalMatrix.zeros(2, 2)


def test_staircase(files, capsys):
    assert run(["staircase", "-m", files["J3"], "-i", "0", "-g", files["K3"]]) == 0
    doc = _json(capsys.readouterr().out)
    assert doc["start"] == [2, 1]
    assert [s["pair"] for s in doc["steps"]][-1] == [0, 0]


def test_search_and_enumerate(files, capsys):
    assert run(["search", "-g", files["K3"], "--pair", "1,1", "--snip"]) == 0
    doc = _json(capsys.readouterr().out)
    assert doc["found"] and doc["certificate"]["pair"] == [1, 1]
    assert run(["enumerate", "-g", "@"]) == 0
    doc = _json(capsys.readouterr().out)
    assert sorted(tuple(p["pair"]) for p in doc["pairs"]) == [(0, 0), (1, 0)]


def test_xixi_round_trip(files, capsys, tmp_path):
    out = str(tmp_path / "rep.json")
    assert run(["xixi", "-g", files["paw"], "--budget", "2000", "--out", out]) == 0
    text = capsys.readouterr().out
    assert "minor value      3" in text
    with open(out) as fh:
        rep = XiXiReport.from_json(json.load(fh))
    assert rep.minor_value == 3 and rep.certified_lower == 3
    assert rep.to_json() == json.load(open(out))


def test_seed_environment(files, capsys, monkeypatch):
    monkeypatch.setenv("SNIPLAB_SEED", "17")
    assert run(["search", "-g", files["K4"], "--pair", "2,2", "--samples", "300", "--compact"]) == 0
    first = capsys.readouterr().out
    assert run(["search", "-g", files["K4"], "--pair", "2,2", "--samples", "300", "--compact"]) == 0
    assert capsys.readouterr().out == first


def test_usage_errors(files, capsys):
    assert run([]) == 2
    assert run(["pair", "-i", "0"]) == 2
    assert "--matrix" in capsys.readouterr().err
    assert run(["pair", "-m", "missing.json", "-i", "0"]) == 2
    assert run(["search", "-g", files["K3"], "--pair", "0,2"]) == 2
    assert run(["snip", "-m", files["J3"], "-g", files["K3"], "--method", "nope"]) == 2


def test_domain_errors(files, capsys):
    assert run(["pair", "-m", files["bad"], "-i", "0"]) == 1
    assert "ParseError" in capsys.readouterr().err
    assert run(["schur", "-m", files["A0"], "--alpha", "0,1"]) == 1
    assert "SingularBlock" in capsys.readouterr().err
    assert run(["minor", "--host", "Bx", "--pattern", "A_"]) == 1


def test_verify_paper_report():
    rep = verify_paper_report()
    assert rep["ok"]
    ids = {r["id"] for r in rep["matrices"]}
    assert ids == {"A0", "A1", "B0", "B1", "B2", "B3"}
    assert all(r["pair"] == [3, 2] and r["snip_direct"] for r in rep["matrices"] if not r["cut_vertex"])
    assert json.loads(json.dumps(rep, sort_keys=True)) == rep

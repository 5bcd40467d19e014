import json

import pytest

from rghw.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gv_example(capsys):
    code, out, _ = run(capsys, "gv", "--q", "2", "--n", "4", "--k1", "2", "--k2", "0", "--t", "1", "--d", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["certified"] is True
    assert (rep["lhs"], rep["rhs"]) == ("6", "35")


def test_gv_max_d(capsys):
    code, out, _ = run(capsys, "gv", "--q", "2", "--n", "4", "--k1", "2", "--k2", "0", "--t", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["max_d"] == 3
    assert rep["certified"] == {"1": True, "2": True, "3": True, "4": False}


def test_singleton_pair_verify(capsys):
    code, out, _ = run(capsys, "lemma3", "--q", "2", "--n", "4", "--k1", "2", "--k2", "1", "--verify")
    assert code == 0
    rep = json.loads(out)
    assert rep["t"] == 1 and rep["M_t"] == 3 and rep["ok"]


def test_missing_pair(capsys):
    code, out, err = run(capsys, "rghw", "--pair", "missing.json")
    assert code == 2
    assert "missing.json" in err and "Traceback" not in err


def test_malformed_pair(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "rghw", "--pair", str(p))[0] == 2
    p.write_text('{"n": 3}')
    assert run(capsys, "sss-audit", "--pair", str(p))[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "gv", "--q", "2")[0] == 2
    assert run(capsys, "rghw", "--pair", "x", "--unknown")[0] == 2
    assert run(capsys, "bounds", "--curve", "eq102", "--t", "2")[0] == 2


def test_precondition_and_budget(tmp_path, capsys):
    code, _, err = run(capsys, "gv", "--q", "2", "--n", "4", "--k1", "2", "--k2", "0", "--t", "2")
    assert code == 3 and "t <=" in err
    assert run(capsys, "gv", "--q", "6", "--n", "4", "--k1", "2", "--k2", "0", "--t", "1")[0] == 3
    assert run(capsys, "bounds", "--curve", "corollary1", "--tau", "0", "--r1", "0.5", "--r2", "0.2")[0] == 3
    pair = tmp_path / "p.json"
    assert run(capsys, "lemma3", "--q", "2", "--n", "6", "--k1", "3", "--k2", "1", "--out", str(pair))[0] == 0
    code, _, err = run(capsys, "rghw", "--pair", str(pair), "--budget", "2")
    assert code == 4 and "Traceback" not in err


def test_budget_env(tmp_path, capsys, monkeypatch):
    pair = tmp_path / "p.json"
    run(capsys, "lemma3", "--q", "2", "--n", "6", "--k1", "3", "--k2", "1", "--out", str(pair))
    monkeypatch.setenv("RGHW_BUDGET", "2")
    assert run(capsys, "rghw", "--pair", str(pair))[0] == 4


def test_rghw_and_audit(tmp_path, capsys):
    pair = tmp_path / "p.json"
    run(capsys, "lemma3", "--q", "3", "--n", "5", "--k1", "3", "--k2", "1", "--out", str(pair))
    code, out, _ = run(capsys, "rghw", "--pair", str(pair))
    assert code == 0 and json.loads(out)["profile"][-1] == 4
    code, out, _ = run(capsys, "rghw", "--pair", str(pair), "--t", "2")
    assert json.loads(out)["M_t"] == 4
    code, out, _ = run(capsys, "sss-audit", "--pair", str(pair), "--seed", "3")
    rep = json.loads(out)
    assert code == 0 and rep["match"] and rep["roundtrip"]["seed"] == 3


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--curve", "eq102", "--t", "2", "--q", "4", "--r1", "0")
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.8435826, abs=1e-6)
    code, out, _ = run(capsys, "bounds", "--curve", "alpha", "--grid", "0.5")
    assert out == "delta,value\n0.000000000,1.000000000\n0.500000000,0.500000000\n1.000000000,0.000000000\n"
    code, out, _ = run(capsys, "bounds", "--curve", "corollary1", "--tau", "0.1", "--r1", "0.6", "--r2", "0.3")
    assert json.loads(out)["value"] == pytest.approx(0.5)


def test_comparison_table_out(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "fig1", "--step", "0.1", "--out", str(a))[0] == 0
    assert run(capsys, "fig1", "--step", "0.1", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().count(b"\n") == 12


def test_gv_audit_cmd(capsys):
    code, out, _ = run(capsys, "gv-audit", "--max-n", "4", "--samples", "200")
    assert code == 0
    assert out.splitlines()[0].startswith("n,k1,k2,t,d,certified")
    assert "4,2,0,1,3,1,2,2,impossible,UNSOUND" in out

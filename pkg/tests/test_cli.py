import csv
import io
import json
import subprocess
import sys

import pytest

from spectral_extremal.cli import LIMIT_COLUMNS, dumps, run
from spectral_extremal.constructions import extremal_delta3
from spectral_extremal.io import read_graph, write_graph
from spectral_extremal.spectral import perron


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_construct_then_lambda(tmp_path, capsys):
    out = tmp_path / "g.g6"
    assert run(["construct", "--delta", "3", "--n", "13", "--out", str(out)]) == 0
    meta = _json(capsys)
    assert meta["schema"] == 1 and meta["n"] == 13
    assert read_graph(out) == extremal_delta3(13)
    assert run(["lambda", "--in", str(out)]) == 0
    rep = _json(capsys)
    assert rep["lambda1"] == pytest.approx(perron(extremal_delta3(13), 1e-13).lambda1, abs=1e-11)
    assert rep["residual"] <= 1e-12


def test_construct_other_families(tmp_path, capsys):
    out = tmp_path / "h.txt"
    assert run(["construct", "--delta", "5", "--n", "61", "--family", "h", "--out", str(out)]) == 0
    assert _json(capsys)["degrees"][-1] == 4
    assert run(["construct", "--delta", "4", "--family", "g", "--k", "3", "--p", "2", "--out", str(out)]) == 0
    assert _json(capsys)["n"] == 11
    assert run(["construct", "--delta", "5", "--n", "20", "--out", str(out)]) == 2
    assert run(["construct", "--delta", "3", "--n", "5", "--out", str(out)]) == 2
    assert run(["construct", "--delta", "3", "--n", "5", "--allow-small", "--out", str(out)]) == 0


def test_oracle_matches_construction(capsys):
    assert run(["oracle", "--delta", "3", "--n", "9"]) == 0
    rep = _json(capsys)
    assert rep["matches_construction"] is True
    assert len(rep["witnesses"]) == 1
    assert all(a["s_is_clique"] for a in rep["structure_audit"])
    assert run(["oracle", "--delta", "4", "--n", "9"]) == 2


def test_limits_csv_and_json(tmp_path, capsys):
    js = tmp_path / "v.json"
    assert run(["limits", "--delta", "3", "--ns", "201", "401", "801", "1601", "--json", str(js)]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == LIMIT_COLUMNS
    assert len(rows) == 5
    verdict = json.loads(js.read_text())
    assert verdict["schema"] == 1 and verdict["verdict"] is True


def test_limits_failure_exit(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"bands": {"limit": 1e-5}}))
    assert run(["limits", "--delta", "3", "--ns", "201", "401", "801", "1601", "--config", str(cfg)]) == 1


def test_counterexample(capsys):
    assert run(["counterexample", "--delta", "53", "--k", "20"]) == 0
    rep = _json(capsys)
    assert rep["violated"] is True and rep["diameter_ok"] is True
    assert run(["counterexample", "--delta", "53", "--k-max", "30"]) == 0
    assert _json(capsys)["violated"] is True


def test_audit(tmp_path, capsys):
    from spectral_extremal.certificates import demo_host

    p = tmp_path / "g.txt"
    write_graph(extremal_delta3(20), p)
    assert run(["audit", "--in", str(p)]) == 0
    rep = _json(capsys)
    assert rep["violations"] == [] and rep["structure_audit"]["s_is_clique"]
    host, _ = demo_host("M4")
    write_graph(host, p)
    assert run(["audit", "--in", str(p), "--identities"]) == 1
    rep = _json(capsys)
    assert [v["pattern"] for v in rep["violations"]] == ["M4"]
    assert rep["identities"][0]["hypothesis_met"] is True


def test_polysuite(capsys):
    assert run(["polysuite"]) == 0
    assert _json(capsys)["all_hold"] is True


def test_check_switch(tmp_path, capsys):
    p = tmp_path / "g.txt"
    write_graph(extremal_delta3(9), p)
    g = extremal_delta3(9)
    from spectral_extremal.switching import iter_rotations, iter_switches

    m = next(iter_switches(g))
    assert run(["check-switch", "--in", str(p), "--move", f"{m.s},{m.t},{m.v},{m.u}"]) == 0
    rep = _json(capsys)
    assert rep["degrees_preserved"] is True
    assert set(rep) >= {"proper", "lambda_before", "lambda_after", "connected_after"}
    r = next(iter_rotations(g))
    assert run(["check-switch", "--in", str(p), "--rotate", f"{r.u},{r.v},{r.w}"]) == 0
    assert _json(capsys)["degrees_preserved"] is False
    assert run(["check-switch", "--in", str(p), "--move", "0,0,0,0"]) == 2
    assert run(["check-switch", "--in", str(p), "--move", "1,2"]) == 2


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["nope"]) == 2
    assert run(["polysuite", "--bogus"]) == 2
    assert run(["lambda", "--in", "/nonexistent/file"]) == 2


def test_float_format():
    assert dumps({"a": 0.1, "b": [1, True, None], "c": float("nan")}) == '{"a": 0.10000000000000001, "b": [1, true, null], "c": null}'


def test_byte_identical_outputs(tmp_path):
    cmd = [sys.executable, "-m", "spectral_extremal", "oracle", "--delta", "3", "--n", "8"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--threads", "2"], capture_output=True, check=True).stdout
    assert a == b
    cmd = [sys.executable, "-m", "spectral_extremal", "limits", "--delta", "4", "--ns", "200", "400", "800", "1600"]
    assert subprocess.run(cmd, capture_output=True).stdout == subprocess.run(cmd, capture_output=True).stdout

from __future__ import annotations

import io
import json
from pathlib import Path


from qhomfly.algebra import LinkPoly
from qhomfly.cli import EXIT_COMPUTE, EXIT_OK, EXIT_USAGE, run
from qhomfly.oracles import t2_formula

CHAIN2 = Path(__file__).resolve().parents[1] / "scripts" / "data" / "chain2.json"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_and_oracle_agree():
    c1, o1, _ = call("eval", "--braid", "1 1", "--color", "1")
    c2, o2, _ = call("oracle", "t2", "--c", "2", "--color", "1")
    assert c1 == c2 == EXIT_OK
    assert o1 == o2
    assert "a^(-1)" in o1


def test_json_round_trip():
    code, out, _ = call("eval", "--braid", "1 1 1", "--color", "2", "--format", "json")
    assert code == EXIT_OK
    assert LinkPoly.from_json(json.loads(out)) == t2_formula(3, 2)


def test_ehrhart_chain_of_two():
    code, out, _ = call("ehrhart", "--poset", str(CHAIN2), "--check-reciprocity", "3")
    assert code == EXIT_OK
    assert "W(3) = 4 + 3*q^(-1) + 2*q^(-2) + q^(-3)" in out
    assert "interior W(3) = q^(-1)" in out
    assert "reciprocity: ok" in out


def test_usage_errors_echo_input():
    code, _, err = call("eval", "--braid", "1 ?", "--color", "1")
    assert code == EXIT_USAGE and "1 ?" in err
    assert call("eval", "--braid", "1", "--color", "0")[0] == EXIT_USAGE
    assert call("frobnicate")[0] == EXIT_USAGE
    assert call("ehrhart", "--poset", "/nonexistent.json")[0] == EXIT_USAGE
    assert call("head", "--braid", "1 -1", "--color", "1")[0] == EXIT_USAGE


def test_resolution_guard_is_a_computation_error(monkeypatch):
    monkeypatch.setenv("HOMFLY_MAX_RESOLUTIONS", "3")
    code, _, err = call("eval", "--braid", "1 1", "--color", "1")
    assert code == EXIT_COMPUTE
    assert "exceeds" in err


def test_bounds_head_slopes_json():
    code, out, _ = call("bounds", "--braid", "1 1 1", "--color", "1", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["a_attained"] is True
    code, out, _ = call("head", "--braid", "1 1", "--color", "2", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["prune_verified"] is True
    code, out, _ = call("slopes", "--braid", "-1 -1", "--max-color", "2", "--format", "json")
    assert code == EXIT_OK and [e["maxdeg_q"] for e in json.loads(out)["entries"]] == ["0", "1"]


def test_antisymmetric_flag():
    code, out, _ = call("eval", "--braid", "1 1", "--color", "1", "--antisymmetric", "--format", "json")
    assert code == EXIT_OK
    assert LinkPoly.from_json(json.loads(out)).subst_q_inv() == t2_formula(2, 1)

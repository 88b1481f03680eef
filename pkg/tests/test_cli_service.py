import json

import pytest
from click.testing import CliRunner

from citor.cli import main
from citor.corpus import data_root, fragment_matches, list_cases


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def all_output(result):
    try:
        return result.output + result.stderr
    except ValueError:
        return result.output


def fixture(rel):
    return str(data_root() / rel)


NODE = fixture("rings/node.json")
RX = fixture("modules/node/rx.json")
RX2 = fixture("modules/node/rx2.json")


def test_tor_cli_table():
    r = invoke("tor", "--ring", NODE, "--M", RX, "--N", RX2, "--bound", "8")
    assert r.exit_code == 0
    assert "1  1  0" in r.output  # Tor_1 has length 1, dim 0


def test_tor_cli_json_deterministic():
    args = ("--json", "tor", "--ring", NODE, "--M", RX, "--N", RX2, "--bound", "8")
    a, b = invoke(*args), invoke(*args)
    assert a.exit_code == 0
    assert a.output == b.output  # byte-identical
    rep = json.loads(a.output)
    assert rep["lengths"][1:] == [1, 0, 1, 0, 1, 0, 1, 0]


def test_theta_cli():
    r = invoke("--json", "theta", "--ring", NODE, "--M", RX, "--N", RX)
    rep = json.loads(r.output)
    assert rep["value"] == {"num": "-1", "den": "1"}
    assert rep["window"]  # periodicity certificate present


def test_missing_file_exits_1():
    r = invoke("tor", "--ring", NODE, "--M", "/nonexistent.json", "--N", RX2)
    assert r.exit_code == 1
    assert "not found" in all_output(r)


def test_malformed_module_exits_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"gens": [0], "relations": [["x", "y"]]}))
    r = invoke("tor", "--ring", NODE, "--M", str(bad), "--N", RX2)
    assert r.exit_code == 1
    assert "relation" in all_output(r)


def test_bound_env_override(monkeypatch):
    monkeypatch.setenv("CITOR_BOUND", "3")
    r = invoke("--json", "tor", "--ring", NODE, "--M", RX, "--N", RX2)
    rep = json.loads(r.output)
    assert rep["bound"] == 3


def test_check_exit_codes():
    r = invoke(
        "check", "depth-formula",
        "--ring", NODE,
        "--M", fixture("modules/node/rxpy.json"),
        "--N", RX, "--bound", "8",
    )
    assert r.exit_code == 0
    assert "certified" in r.output


def test_corpus_list_cli():
    r = invoke("corpus", "list")
    assert r.exit_code == 0
    assert "node-remark" in r.output


def test_corpus_run_fast_cli():
    r = invoke("corpus", "run", "--tags", "fast")
    assert r.exit_code == 0
    assert "RED ALARM" not in r.output


def test_corpus_run_unknown_tag_exits_1():
    r = invoke("corpus", "run", "--tags", "no-such-tag")
    assert r.exit_code == 1


def test_corrupted_fixture_reports_diff(post):
    """A deliberately wrong expectation fails with a value diff."""
    from citor.corpus import CorpusCase, run_case

    case = CorpusCase(
        id="corrupted",
        ring="rings/node.json",
        tags=["fast"],
        operations=[
            {"op": "theta", "M": "modules/node/rx.json", "N": "modules/node/rx.json",
             "source": "trivial", "expect": {"value": {"num": "7", "den": "1"}}}
        ],
    )
    result = run_case(case, post)
    assert not result.passed
    assert any("expected" in d for o in result.ops for d in o.diff)


def test_fragment_matching():
    assert fragment_matches({"a": 1}, {"a": 1, "b": 2}) == []
    assert fragment_matches({"a": [1, 2]}, {"a": [1, 2, 3]}) != []
    assert fragment_matches({"a": {"b": None}}, {"a": {"b": None}}) == []


def test_corpus_files_round_trip():
    """Every corpus input file parses, re-serializes canonically, re-parses equal."""
    for sub in ("rings", "cases"):
        for p in sorted((data_root() / sub).glob("*.json")):
            data = json.loads(p.read_text())
            canon = json.dumps(data, sort_keys=True, indent=2)
            assert json.loads(canon) == data
    for p in sorted((data_root() / "modules").rglob("*.json")):
        data = json.loads(p.read_text())
        assert json.loads(json.dumps(data, sort_keys=True)) == data


def test_every_case_has_sources():
    for case in list_cases():
        for op in case.operations:
            assert op["source"] in ("literature", "derived", "trivial")


def test_service_rejects_bad_ring(post):
    status, body = post("/tor", {
        "ring": {"p": 101, "vars": [{"name": "x"}, {"name": "y"}], "relations": ["x^2+y"]},
        "M": {"gens": [0], "relations": []},
        "N": {"gens": [0], "relations": []},
    })
    assert status == 400


def test_service_rejects_unknown_theorem(post, ring_specs):
    status, _ = post("/check", {
        "ring": ring_specs["node"],
        "M": {"gens": [0], "relations": []},
        "theorem": "no-such-theorem",
    })
    assert status == 400


def test_service_theta_non_hypersurface_422(post, ring_specs):
    status, body = post("/theta", {
        "ring": ring_specs["dim0"],
        "M": {"gens": [0], "relations": [["x"], ["y"]]},
        "N": {"gens": [0], "relations": [["x"], ["y"]]},
    })
    assert status == 422
    assert "NotHypersurface" in body["detail"]

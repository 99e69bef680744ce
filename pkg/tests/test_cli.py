"""CLI contract: exit codes, deterministic bytes, golden corpus."""

import json
from pathlib import Path

from stabloci.cli import EXIT_BOUNDS, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, run
from stabloci.corpus import render_corpus

REPO = Path(__file__).resolve().parent.parent
CORPUS = REPO / "corpus"


def corpus_path(name: str) -> str:
    return str(CORPUS / name)


def test_stability_rows_match_document_panel():
    code, out = run(["stability", "--action", corpus_path("torus_line.json")])
    assert code == EXIT_OK
    payload = json.loads(out)
    rows = {r["point"]: r["status"] for r in payload["rows"]}
    assert rows["ones"] == "stable"
    assert rows["middle"] == "strictly-semistable"
    assert rows["low"] == "unstable"
    assert rows["high"] == "unstable"


def test_graded_report_on_cubics():
    code, out = run(["graded", "--action", corpus_path("jordan_3.json"), "--chi", "-2"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["conditions"]["cstar"]["verdict"] == "holds"
    assert payload["conditions"]["cstar"]["exact"] is True
    rows = {r["point"]: r["status"] for r in payload["rows"]}
    assert rows["distinct_finite"] == "stable"
    assert rows["triple_free"] == "unstable"
    assert rows["triple_at_infinity"] == "unstable"


def test_invariants_sl2_table():
    code, out = run(["invariants", "--sl2", "4", "--max-degree", "6"])
    assert code == EXIT_OK
    payload = json.loads(out)
    dims = [row["dim"] for row in payload["dimensions"]]
    assert dims == [0, 1, 1, 1, 1, 2]
    assert all(row["dim"] == row["oracle"] for row in payload["dimensions"])


def test_invariants_action_table():
    code, out = run(
        ["invariants", "--action", corpus_path("jordan_3.json"), "--max-degree", "4"]
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert [row["dim"] for row in payload["dimensions"]] == [1, 2, 3, 5]
    assert [row["new_generators"] for row in payload["dimensions"]] == [1, 1, 1, 1]
    rows = {r["point"]: r["nonvanishing"] for r in payload["rows"]}
    assert rows["generic"] is True
    assert rows["double_at_infinity"] is False


def test_hatstable_trivial_grading():
    code, out = run(
        ["hatstable", "--action", corpus_path("torus_line.json"), "--q", "1/2"]
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    rows = {r["point"]: r["status"] for r in payload["rows"]}
    assert rows["ones"] == "stable"
    assert rows["low"] == "unstable"


def test_exit_code_parse_error():
    code, out = run(["stability", "--action", "does_not_exist.json"])
    assert code == EXIT_PARSE
    assert "parse error" in out


def test_exit_code_precondition():
    code, out = run(["graded", "--action", corpus_path("torus_line.json")])
    assert code == EXIT_PRECONDITION
    assert "grading" in out


def test_exit_code_bounds():
    code, out = run(
        ["strata", "--action", corpus_path("jordan_3.json"), "--subset-cap", "2"]
    )
    assert code == EXIT_BOUNDS
    assert "cap" in out


def test_json_byte_identical_across_runs():
    argv = ["graded", "--action", corpus_path("jordan_3.json"), "--chi", "-2", "--seed", "5"]
    first = run(argv)
    second = run(argv)
    assert first == second
    argv2 = ["strata", "--action", corpus_path("torus_rank2.json"), "--seed", "5"]
    assert run(argv2) == run(argv2)


def test_json_roundtrips_bit_exactly():
    code, out = run(["strata", "--action", corpus_path("torus_line.json")])
    assert code == EXIT_OK
    payload = json.loads(out)
    again = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    assert again == out


def test_examples_match_committed_golden_files(tmp_path):
    code, out = run(["examples", "--out", str(tmp_path)])
    assert code == EXIT_OK
    for name, text in render_corpus():
        regenerated = (tmp_path / name).read_text()
        committed = (CORPUS / name).read_text()
        assert regenerated == text == committed, name


def test_text_format_renders():
    code, out = run(
        ["stability", "--action", corpus_path("torus_line.json"), "--format", "text"]
    )
    assert code == EXIT_OK
    assert out.startswith("# stability")
    assert "elapsed_s" in out


def test_inline_points():
    code, out = run(
        [
            "stability",
            "--action",
            corpus_path("torus_line.json"),
            "--points",
            "probe:1,0,1/2",
        ]
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert any(r["point"] == "probe" for r in payload["rows"])

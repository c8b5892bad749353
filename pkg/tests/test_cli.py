import io
import json
from pathlib import Path

import jsonschema
import pytest

from symorbits import cli

ROOT = Path(__file__).resolve().parents[1]
SCHEMAS = ROOT / "docs" / "schemas" / f"v{cli.SCHEMA_VERSION}"
GOLDEN = ROOT / "data" / "tables" / "v1"


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def validate(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema).validate(doc)


def test_cohom_example():
    code, doc = run_json("cohom", "--space", "SL(3,R)/SO0(1,2)")
    assert code == 0
    assert (doc["cohom_K"], doc["cohom_L"]) == (2, 1)
    validate(doc, "cohom")


def test_sl2_roots():
    code, doc = run_json("roots", "--space", "SL(2,R)/SO0(1,1)")
    assert code == 0
    assert len(doc["roots"]) == 1 and doc["roots"][0]["mult"] == 1
    assert doc["completeness"] == {"dim_q": 2, "sum": 2}
    validate(doc, "roots")


@pytest.mark.parametrize(
    "argv, schema",
    [
        (("pairs", "--space", "SL(3,R)/SO0(1,2)"), "pairs"),
        (("pairs", "--space", "SL(3,R)/SO0(1,2)", "--sigma-prime", "theta"), "pairs"),
        (("pairs", "--algebra", "sl(3,R)", "--sigma", "signature(1,2)"), "pairs"),
        (("roots", "--space", "SU(1,2)/SO0(1,2)", "--within", "q&f"), "roots"),
        (("spectrum", "--space", "SL(3,R)/SO0(1,2)", "--w", "0.3,0.5", "--a", "1,0.2"), "spectrum"),
        (("spectrum", "--space", "SL(3,R)/SO0(1,2)", "--sigma-prime", "theta", "--w", "0.3,0.1", "--a", "0.7,0.2"), "spectrum"),
        (("spectrum", "--space", "SL(4,R)/SO0(2,2)", "--sigma-prime", "Sp(2,R)"), "spectrum"),
        (("focal", "--space", "SL(2,R)/SO0(1,1)", "--w", "0.4", "--a", "1", "--window", "4", "--scan"), "focal"),
        (("cohom", "--space", "Sp(2,C)/Sp(1,1)"), "cohom"),
        (("table", "--id", "2", "--bound", "2"), "table"),
        (("verify", "--suite", "roots", "--max-dim", "10"), "verify"),
    ],
)
def test_outputs_match_schema(argv, schema):
    code, doc = run_json(*argv)
    assert code == 0, doc
    assert doc["schema_version"] == cli.SCHEMA_VERSION
    validate(doc, schema)


def test_determinism():
    argv = ("focal", "--space", "SU(1,2)/SO0(1,2)", "--w", "0.3,0.2", "--a", "1,0.5", "--scan")
    assert run(*argv) == run(*argv)
    argv = ("verify", "--suite", "spectrum", "--max-dim", "8")
    assert run(*argv) == run(*argv)


def test_seed_changes_random_paths():
    a = run("verify", "--suite", "jacobi", "--max-dim", "8", "--seed", "1")[1]
    b = run("verify", "--suite", "jacobi", "--max-dim", "8", "--seed", "2")[1]
    assert a != b


def test_computation_error_exit_code():
    code, doc = run_json("spectrum", "--space", "SL(3,R)/SO0(1,2)", "--w", "0,0", "--a", "1,0")
    assert code == 1
    assert doc["error"]["code"] == "SingularDirection"
    validate(doc, "error")


def test_unknown_space_is_computation_error():
    code, doc = run_json("cohom", "--space", "E6/F4")
    assert code == 1
    validate(doc, "error")


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("frobnicate",),
        ("table", "--id", "9"),
        ("table",),
        ("roots",),
        ("spectrum", "--space", "SL(3,R)/SO0(1,2)", "--w", "x,y", "--a", "1,0"),
        ("focal", "--space", "SL(2,R)/SO0(1,1)", "--w", "0.4", "--a", "1", "--window", "-1"),
        ("roots", "--space", "SL(3,R)/SO0(1,2)", "--algebra", "sl(3,R)"),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, text = run(*argv)
    assert code == 2
    assert text == ""


def test_verify_all_passes():
    code, doc = run_json("verify", "--suite", "all", "--max-dim", "20")
    assert code == 0, [c for c in doc["checks"] if not c["ok"]]
    assert doc["ok"]
    assert {c["suite"] for c in doc["checks"]} == {"roots", "spectrum", "focal", "hermann", "jacobi"}


def test_table_csv_equals_golden():
    code, text = run("table", "--id", "1", "--bound", "6", "--csv")
    assert code == 0
    golden = (GOLDEN / "table1.csv").read_text()
    diff = sorted(set(text.splitlines()) ^ set(golden.splitlines()))
    assert text == golden, diff

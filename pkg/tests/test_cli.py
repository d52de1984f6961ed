import json
from pathlib import Path

import pytest

from twocells.cli import main

DATA = Path(__file__).parent / "data"


def run(tmp_path, *argv):
    out = tmp_path / "out.txt"
    code = main([*map(str, argv), "-o", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


SL2_QUERY = json.loads((DATA / "sl2_ef.json").read_text())


def test_cells_dual_numbers(tmp_path):
    code, text = run(tmp_path, "cells", DATA / "dual_numbers.json")
    assert code == 0
    report = json.loads(text)
    assert report["J"] == [["1_{1}"], ["F^{1,1}_{1,1}"]]
    assert all(c["strongly_regular"] for c in report["j_cells"])


def test_cells_on_a_multisemigroup(tmp_path):
    code, text = run(tmp_path, "cells", DATA / "left_zero.json")
    assert code == 0
    report = json.loads(text)
    assert report["L"] == [["a", "b"]] and report["R"] == [["a"], ["b"]]


def test_validate_bad_table(tmp_path):
    code, text = run(tmp_path, "validate", DATA / "bad.json")
    assert code == 1
    report = json.loads(text)
    assert report["valid"] is False and len(report["violating_triple"]) == 3
    code, text = run(tmp_path, "validate", DATA / "two_dual_numbers.json")
    assert code == 0


def test_normalform_example(tmp_path):
    code, text = run(tmp_path, "normalform", DATA / "sl2_ef.json")
    assert code == 0
    report = json.loads(text)
    assert report["zero"] is False
    assert [(t["f_part"], t["e_part"], t["multiplicity"]) for t in report["normal_form"]] == [([], [], "1+q^2")]


def test_normalform_zero_and_negative(tmp_path):
    q = json.loads(json.dumps(SL2_QUERY))
    q["word"]["gens"] = [["E", 1, 0]]
    code, text = run(tmp_path, "normalform", write(tmp_path, q))
    assert code == 2 and json.loads(text)["zero"] is True
    q = json.loads(json.dumps(SL2_QUERY))
    q["highest_weights"] = [{"lambda": [3]}]
    q["word"]["source_beta"] = [2]
    path = write(tmp_path, q)
    assert run(tmp_path, "normalform", path)[0] == 1
    code, text = run(tmp_path, "normalform", path, "--allow-negative")
    assert code == 0 and "-q^2" in text


def test_enumerate_and_adjoint(tmp_path):
    code, text = run(tmp_path, "enumerate", DATA / "sl2_enumerate.json")
    assert code == 0 and json.loads(text)["count"] == 2
    code, text = run(tmp_path, "adjoint", DATA / "sl2_ef.json")
    assert code == 0
    assert [g[:2] for g in json.loads(text)["adjoint"]["gens"]] == [["E", 1], ["F", 1]]
    q = json.loads(json.dumps(SL2_QUERY))
    q.update({"highest_weights": [{"lambda": [2]}, {"lambda": [1]}], "src_beta": [0], "tgt_beta": [0], "tgt_index": 2})
    code, text = run(tmp_path, "enumerate", write(tmp_path, q))
    assert code == 2 and json.loads(text)["count"] == 0


def test_oracle_verb(tmp_path):
    code, text = run(tmp_path, "oracle", DATA / "sl2_ef.json")
    assert code == 0
    report = json.loads(text)
    assert report["agrees_with_normal_form"] is True
    assert report["matrix"][0][0] == "2"


def test_projbicat_verbs(tmp_path):
    code, text = run(tmp_path, "duflo", DATA / "dual_numbers.json")
    assert code == 0 and json.loads(text)["duflo"][0]["duflo"] == "F^{1,1}_{1,1}"
    code, text = run(tmp_path, "mmult", DATA / "two_dual_numbers.json")
    assert code == 0 and json.loads(text)["m_constant_on_rcells"] is True
    code, text = run(tmp_path, "cellrep", DATA / "dual_numbers.json")
    assert code == 0 and json.loads(text)["rows"][0]["dim"] == 2
    code, text = run(tmp_path, "cellrep", DATA / "graded_dual_numbers.json", "--graded", "--format", "csv")
    assert code == 0 and text.splitlines()[-1].endswith(",1+q^2")
    code, text = run(tmp_path, "gradedhom", DATA / "graded_dual_numbers.json", "--format", "csv")
    assert code == 0 and text.splitlines()[0] == "lcell,src,tgt,laurent"
    assert run(tmp_path, "gradedhom", DATA / "dual_numbers.json")[0] == 1


def test_eggbox_formats(tmp_path):
    code, text = run(tmp_path, "eggbox", DATA / "left_zero.json")
    assert code == 0 and text.startswith("digraph")
    code, text = run(tmp_path, "eggbox", DATA / "left_zero.json", "--format", "csv")
    assert text.splitlines() == ["jcell,row,col,elements", "a,0,0,a", "a,1,0,b"]


@pytest.mark.parametrize(
    "verb,name",
    [("cells", "two_dual_numbers.json"), ("normalform", "sl2_ef.json"), ("eggbox", "dual_numbers.json"),
     ("enumerate", "sl2_enumerate.json"), ("cellrep", "two_dual_numbers.json")],
)
def test_reports_are_deterministic(tmp_path, verb, name):
    first = run(tmp_path, verb, DATA / name, "--seed", "7")
    second = run(tmp_path, verb, DATA / name, "--seed", "7")
    assert first == second


@pytest.mark.parametrize(
    "verb,payload,path",
    [
        ("cells", {"elements": ["a"], "table": {"a,a": [3]}}, "$.table.a,a[0]"),
        ("cells", {"elements": ["a"]}, "$"),
        ("normalform", {**SL2_QUERY, "word": {"source_beta": [0], "gens": [["E", "x", 0]]}}, "$.word.gens[0][1]"),
        ("cellrep", {"algebras": [{"basis": ["1"], "mul": {"1,1": {"1": 1}}, "idempotents": "e"}]}, "$.algebras[0].idempotents"),
    ],
)
def test_schema_errors_carry_paths(tmp_path, capsys, verb, payload, path):
    code, _ = run(tmp_path, verb, write(tmp_path, payload))
    assert code == 1
    err = capsys.readouterr().err
    assert "schema error at" in err and path in err


def test_bad_inputs(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert main(["cells", str(missing)]) == 1
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["cells", str(broken)]) == 1
    with pytest.raises(SystemExit):
        main(["frobnicate", str(broken)])

import json
import subprocess
import sys

import pytest

from gapvira.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_bracket(capsys):
    code, doc, _ = run(capsys, "bracket", "--p", "3", "L[3]", "L[-3]")
    assert code == 0 and doc["verb"] == "bracket"
    assert doc["result"] == "-6*L[0]"
    code, doc, _ = run(capsys, "bracket", "--p", "3", "L[6]", "L[-6]")
    assert doc["result"] == "-12*L[0] + 1/2*C[0]"
    code, doc, _ = run(capsys, "bracket", "--p", "3", "--family", "np", "N[1,2]", "N[2,-2]")
    assert doc["result"] == "2*K[1]"


def test_normal_form(capsys):
    code, doc, _ = run(capsys, "normal-form", "--p", "3", "L[1]*L[-1]")
    assert code == 0
    assert {(tuple(t["word"]), tuple(t["central"].items())) for t in doc["json"]} == {
        (("L[-1]", "L[1]"), ()), ((), (("1", 1),))}


def test_graded_dim_backends_agree(capsys):
    _, a, raw_a = run(capsys, "graded-dim", "--p", "2", "--upto", "2")
    _, b, _ = run(capsys, "graded-dim", "--p", "2", "--upto", "2", "--backend", "generating")
    assert a["result"] == b["result"] == {"0": 1, "1/2": 1, "1": 2, "3/2": 3, "2": 5}
    assert list(a["result"]) == ["0", "1/2", "1", "3/2", "2"]


def test_singular(capsys):
    code, doc, _ = run(capsys, "singular", "--p", "2", "--l0", "1/2", "--h", "3", "--grade", "1/2")
    assert code == 0 and doc["result"]["dimension"] == 1
    assert doc["result"]["basis"][0][0]["word"] == ["L[-1]"]


def test_act_on_verma(capsys):
    vec = json.dumps([{"word": ["L[-2]"], "key": [], "coeff": "1"}])
    code, doc, _ = run(capsys, "act", "--module", "verma", "--p", "2", "--l0", "1/2", "--h", "5/7",
                       "--vector", vec, "L[2]")
    assert code == 0
    assert doc["result"] == [{"key": [], "coeff": "40/7", "word": []}]


R_SPEC = json.dumps({"p": 3, "d": [0, -1], "theta": {"1": 2, "2": 3}})


def test_reduce(capsys):
    vec = json.dumps([{"iexp": {"-1": 1}, "jexp": {"-3": 1}, "key": 0, "coeff": "1"}])
    code, doc, _ = run(capsys, "reduce", "--module", "ind-r", "--spec", R_SPEC, "--vector", vec)
    assert code == 0
    res = doc["result"]
    assert [s["operator"] for s in res["steps"]] == ["L[4]", "L[6]"]
    assert res["base_vector"] == [{"key": 0, "coeff": "24"}]


def test_reduce_strict_reports_off_prediction(capsys):
    spec = json.dumps({"p": 3, "d": [0, 0], "theta": {"1": 2, "2": 3}})
    vec = json.dumps([{"iexp": {"-1": 2}, "key": 0, "coeff": "4"}, {"iexp": {"-2": 1}, "key": 2, "coeff": "-5"},
                      {"key": 1, "coeff": "5"}, {"key": 4, "coeff": "1"}])
    code, doc, _ = run(capsys, "reduce", "--module", "ind-r", "--spec", spec, "--vector", vec)
    assert code == 0 and doc["result"]["off_prediction"] == 1
    code, doc, _ = run(capsys, "reduce", "--module", "ind-r", "--spec", spec, "--vector", vec, "--strict")
    assert code == 1 and doc["error"] == "ReductionError"


def test_verify(capsys):
    code, doc, _ = run(capsys, "verify", "jacobi", "--p", "4", "--window", "4")
    assert code == 0 and doc["result"]["passed"]
    code, doc, _ = run(capsys, "verify", "reduction", "--p", "3", "--seed", "1")
    assert code == 2 and not doc["result"]["passed"]
    code, doc, _ = run(capsys, "verify", "nonsense")
    assert code == 1 and doc["error"] == "UsageError"


def test_whittaker_check(capsys):
    code, doc, _ = run(capsys, "whittaker-check", "--p", "2", "--phi", "L[1]=1,L[2]=0,L[4]=3", "--window", "3")
    assert code == 0
    rep = doc["result"]
    assert rep["d"] == [2] and rep["d_inferred"] is True and rep["found"] is True
    code, doc, _ = run(capsys, "whittaker-check", "--p", "2", "--phi", "L[3]=1")
    assert code == 1


def test_qmod_validate(capsys, tmp_path):
    good = {"p": 2, "k": 2, "d": [0], "S": [[1, 2], [2]], "theta": {"0,2": 1, "1,2": 1}}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(good))
    code, doc, _ = run(capsys, "qmod", "validate", "--spec", str(path))
    assert code == 0 and doc["result"]["valid"] is True
    bad = dict(good, S=[[1, 2], [1]], theta={"0,2": 1, "1,1": 1})
    code, doc, _ = run(capsys, "qmod", "validate", "--spec", json.dumps(bad))
    assert code == 0 and doc["result"]["valid"] is False
    assert doc["result"]["violations"][0].startswith("top:")


def test_extract_n(capsys):
    code, doc, _ = run(capsys, "extract-n", "--module", "ind-r", "--spec", R_SPEC, "--degree", "3", "--bound", "12")
    assert code == 0 and doc["result"]["r"] == [0, 0, 1] and doc["result"]["found"]


def test_errors_are_json(capsys):
    code, doc, _ = run(capsys, "bracket", "--p", "3", "L[1] +", "L[2]")
    assert code == 1 and doc["error"] == "TextError" and "column 7" in doc["detail"]
    code, doc, _ = run(capsys, "bracket", "L[1]", "L[2]")
    assert code == 1 and "--p" in doc["detail"]
    code, doc, _ = run(capsys, "graded-dim", "--p", "2")
    assert code == 1 and doc["error"] == "UsageError"
    code, doc, _ = run(capsys, "act", "--module", "ind-r", "--spec", "/nonexistent.json", "L[1]")
    assert code == 1
    code, doc, _ = run(capsys, "reduce", "--module", "ind-r", "--spec", '{"d": [0, 0]}')
    assert code == 1 and doc["detail"] == "--spec is missing p"
    code, doc, _ = run(capsys, "reduce", "--p", "3", "--module", "ind-r", "--spec",
                       '{"d": [0, 0], "theta": {"1": 2, "2": 3}}', "--vector", '{"terms": []}')
    assert code == 1 and "JSON list" in doc["detail"]


def test_spec_takes_p_from_the_command_line(capsys):
    spec = json.dumps({"d": [0, 0], "theta": {"1": 2, "2": 3}})
    code, doc, _ = run(capsys, "act", "--p", "3", "--module", "ind-r", "--spec", spec, "L[0]")
    assert code == 0 and doc["inputs"]["module"] == "Ind(R, p=3, d=(0, 0))"


def test_output_is_deterministic(capsys):
    args = ("extract-n", "--module", "ind-r", "--spec", R_SPEC, "--degree", "2", "--bound", "9")
    _, _, first = run(capsys, *args)
    _, _, second = run(capsys, *args)
    assert first == second


def test_pretty_and_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 3}))
    code, doc, raw = run(capsys, "bracket", "--config", str(cfg), "--pretty", "L[3]", "L[-3]")
    assert code == 0 and doc["result"] == "-6*L[0]" and "\n  " in raw


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gapvira.cli", "bracket", "--p", "2", "L[1]", "L[-1]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == "C[1]"

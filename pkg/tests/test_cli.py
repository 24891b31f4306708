import csv
import json

import pytest

from symfueter.cli import main
from symfueter.fueter import build_M_by_iteration, is_monogenic, random_spinor
from symfueter.polyspinor import SpinorFunction


def run(tmp_path, *argv, name="out"):
    out = tmp_path / name
    code = main([*argv, "--output", str(out)])
    return code, out.read_text() if out.exists() else None


def test_gen_monogenic(tmp_path):
    code, text = run(tmp_path, "gen-monogenic", "--n", "2", "--ell", "4")
    doc = json.loads(text)
    assert code == 0
    assert doc["certification"] == {"monogenic": True, "residual_terms": 0}
    assert doc["vanished"] is False
    f = SpinorFunction.from_json(doc["spinor"])
    assert is_monogenic(f) and f.xy_degrees() == [2]


def test_gen_monogenic_vanishing_and_identity_power(tmp_path):
    code, text = run(tmp_path, "gen-monogenic", "--n", "2", "--ell", "0")
    assert code == 0 and json.loads(text)["vanished"] is True
    code, text = run(tmp_path, "gen-monogenic", "--n", "1", "--ell", "3")
    assert SpinorFunction.from_json(json.loads(text)["spinor"]) == build_M_by_iteration(3)


def test_cap_violation_exits_nonzero(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SYMFUETER_MAX_ELL", "3")
    code, _ = run(tmp_path, "gen-monogenic", "--n", "2", "--ell", "4")
    assert code != 0
    assert "cap" in capsys.readouterr().err


def _table(tmp_path, p_max):
    code, text = run(tmp_path, "tables", "--p-max", str(p_max))
    assert code == 0
    return list(csv.DictReader(text.splitlines()))


def test_tables(tmp_path):
    assert _table(tmp_path, 0) == [{"p": "0", "j": "0", "gamma_re": "1/1", "gamma_im": "0/1", "bessel": "1/1"}]
    rows = _table(tmp_path, 1)
    assert [(r["gamma_re"], r["gamma_im"]) for r in rows if r["p"] == "1"] == [("0/1", "-1/1")] * 2
    assert len(_table(tmp_path, 8)) == 45


def test_tables_json(tmp_path):
    code, text = run(tmp_path, "tables", "--p-max", "2", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["rows"][-1] == {"p": 2, "j": 2, "gamma_re": "-6/1", "gamma_im": "0/1", "bessel": "3/1"}


@pytest.mark.parametrize("argv", [
    ["sl2", "--n", "3"],
    ["comm-lemma", "--n", "2", "--a-max", "6"],
    ["classical-fueter", "--m", "4", "--k-max", "8"],
    ["dual-raising", "--n", "2", "--alpha", "3/2"],
    ["gegenbauer", "--m", "6", "--k-max", "2"],
])
def test_check_examples(tmp_path, argv):
    code, text = run(tmp_path, "check", *argv)
    doc = json.loads(text)
    assert code == 0 and doc["all_pass"]
    assert doc["suite"] == argv[0]
    assert all(set(c) >= {"inputs", "pass"} for c in doc["cases"])


def test_check_is_deterministic_and_parallel_safe(tmp_path):
    argv = ["check", "fischer", "--n", "2", "--trials", "2", "--seed", "9"]
    _, a = run(tmp_path, *argv, name="a")
    _, b = run(tmp_path, *argv, name="b")
    _, c = run(tmp_path, *argv, "--parallel", "2", name="c")
    assert a == b == c


def test_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["check", "no-such-suite"])
    assert exc.value.code != 0


def test_decompose(tmp_path):
    src = tmp_path / "in.json"
    src.write_text(json.dumps(random_spinor(2, 3, seed=5).to_json()))
    code, text = run(tmp_path, "decompose", "--input", str(src))
    doc = json.loads(text)
    assert code == 0 and doc["reconstructed"] and all(p["monogenic"] for p in doc["parts"])


def test_decompose_rejects_bad_input(tmp_path):
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"n": 1, "terms": []}))
    assert main(["decompose", "--input", str(src)]) == 2


@pytest.mark.parametrize("op", ["e1bar-power", "fueter", "gegenbauer", "raise"])
def test_classical(tmp_path, op):
    code, text = run(tmp_path, "classical", op, "--m", "4", "--k", "3")
    doc = json.loads(text)
    assert code == 0 and doc["all_pass"]
    if op == "gegenbauer":
        assert doc["fueter_constant"] == {"re": "-2/1", "im": "0/1"}


def test_operator(tmp_path):
    code, text = run(tmp_path, "operator", "Ds", "--n", "1")
    assert code == 0 and json.loads(text)["text"] == "-dx1*dq1 + (i)*q1*dy1"
    code, text = run(tmp_path, "operator", "Z", "--n", "2", "--j", "2", "--alpha", "1/2")
    assert code == 0 and json.loads(text)["operator"]["n"] == 2


def test_csv_only_for_tables(capsys):
    assert main(["operator", "Xs", "--n", "1", "--format", "csv"]) == 2


def test_stdout_when_no_output(capsys):
    assert main(["tables", "--p-max", "0"]) == 0
    assert capsys.readouterr().out.startswith("p,j,gamma_re")

import json

import pytest

from terwcodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_info(capsys):
    code, out, _ = run(capsys, "group-info", "--group", "II", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == 192 and rep["classCount"] == 32
    assert all(v["agrees"] for v in rep["paperAgrees"].values())


def test_generator_file(capsys, tmp_path):
    f = tmp_path / "gens.json"
    f.write_text('[[["1", "0"], ["0", "1"]]]')
    code, out, _ = run(capsys, "group-info", "--generators", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 1
    f.write_text('[[["1", "0"],\n ["0", "oops"]]]')
    code, _, err = run(capsys, "group-info", "--generators", str(f))
    assert code == 2 and "line 2" in err


def test_unknown_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["molien", "--group", "I", "--bogus"])
    assert exc.value.code == 2


def test_molien_text(capsys):
    code, out, _ = run(capsys, "molien", "--group", "I", "--terms", "9")
    assert code == 0 and "coefficients: [1, 0, 1, 0, 1, 0, 1, 0, 2]" in out


def test_terwilliger(capsys):
    code, out, _ = run(capsys, "terwilliger", "--group", "IV", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["dimT"] == 44 and rep["degrees"] == [2, 2, 6]


def test_terwilliger_iii_flags_degrees(capsys):
    code, out, _ = run(capsys, "terwilliger", "--group", "III", "--format", "json")
    rep = json.loads(out)
    deg = rep["paperAgrees"]["degrees"]
    assert code == 0 and rep["dimT"] == 300 and not deg["agrees"] and "360" in deg["note"]


def test_code_fixture(capsys):
    code, out, _ = run(capsys, "code", "--fixture", "hamming8", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["type"]["euclidean"] == "II" and rep["invariance"]["passed"]
    assert rep["enumerator"]["text"] == "1 * x^8 + 14 * x^4 y^4 + 1 * y^8"


def test_code_file(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text('{"q": 3, "rows": [[1, 0, 1, 1], [0, 1, 1, 2]]}')
    code, out, _ = run(capsys, "code", "--code-file", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["type"]["euclidean"] == "III"


def test_epoly(capsys):
    code, out, _ = run(capsys, "epoly", "--group", "II", "--degree", "24", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    cmp = rep["paperAgrees"]["printedForm"]
    assert cmp["mismatches"] == [{"monomial": "x^24 y^0", "computed": "1025/6144", "printed": "1/6144"}]


def test_invariants_custom_group(capsys, tmp_path):
    f = tmp_path / "g.json"
    f.write_text('[[["0", "1"], ["1", "0"]]]')
    code, out, _ = run(capsys, "invariants", "--generators", str(f), "--format", "json", "--terms", "20")
    rep = json.loads(out)
    assert code == 0 and rep["certificate"]["passed"]
    assert rep["certificate"]["generatorsDegrees"] == [1, 2]


def test_verify_all_thread_independent(capsys, monkeypatch):
    outs = []
    for threads in ("1", "2", "8"):
        code, out, _ = run(capsys, "verify-all", "--group", "IV", "--format", "json", "--threads", threads)
        assert code == 0
        outs.append(out)
    monkeypatch.setenv("TERWILLIGER_THREADS", "3")
    code, out, _ = run(capsys, "verify-all", "--group", "IV", "--format", "json")
    outs.append(out)
    assert len(set(outs)) == 1
    assert json.loads(outs[0])["ok"]

import json

import pytest

from hopfva.cli import main


def fixture(tmp_path, name, *extra):
    path = tmp_path / (name.replace(":", "_").replace("*", "dual") + "-" + "-".join(extra) + ".json")
    assert main(["fixture", name, *extra, "-o", str(path)]) == 0
    return str(path)


def run(tmp_path, *argv):
    rep = tmp_path / "report.json"
    code = main([*argv, "-r", str(rep)])
    return code, json.loads(rep.read_text())


def test_fixture_to_stdout(capsys):
    assert main(["fixture", "heisenberg", "--D", "2"]) == 0
    out = capsys.readouterr()
    assert json.loads(out.out)["kind"] == "algebra"
    assert json.loads(out.err)["kind"] == "report"


def test_check_vertex_passes(tmp_path):
    alg = fixture(tmp_path, "heisenberg", "--D", "3")
    code, doc = run(tmp_path, "check", alg, "--suite", "vertex")
    assert code == 0 and doc["verdict"] == "pass" and doc["exit_status"] == 0
    assert doc["result"]["algebra"]["dim"] == 7
    assert len(doc["inputs"]["algebra"]) == 64


def test_smash_vertex_fails_slocal_passes(tmp_path):
    alg = fixture(tmp_path, "differential", "--D", "2")
    act = fixture(tmp_path, "action:swap", "--D", "2")
    smash = str(tmp_path / "smash.json")
    assert main(["smash", alg, "--hopf", "kZ2", "--action", act, "-o", smash, "-r", str(tmp_path / "r.json")]) == 0
    code, doc = run(tmp_path, "check", smash, "--suite", "vertex", "--pairs", "all")
    assert code == 1
    witness = next(c["witness"] for c in doc["checks"] if c["verdict"] == "fail")
    assert witness is not None
    code, doc = run(tmp_path, "check", smash, "--suite", "slocal", "--pairs", "12", "--seed", "1")
    assert code == 0


def test_iso_check_thm35(tmp_path):
    alg = fixture(tmp_path, "heisenberg", "--D", "4")
    act = fixture(tmp_path, "action:charge-conjugation", "--D", "4")
    code, doc = run(tmp_path, "iso-check", "thm35", alg, "--hopf", "kZ2", "--action", act)
    assert code == 0
    assert doc["result"]["dims"] == [10, 10]
    assert doc["result"]["verified_products"] == 100


def test_iso_check_cor47(tmp_path):
    alg = fixture(tmp_path, "heisenberg", "--D", "3")
    act = fixture(tmp_path, "action:charge-conjugation", "--D", "3")
    code, doc = run(tmp_path, "iso-check", alg, "cor47", "--group", "Z2", "--action", act)
    assert code == 0
    assert doc["result"]["verified_products"] == {"matrix": 256, "double_smash": 256}


def test_integral_and_non_normalizable(tmp_path):
    code, doc = run(tmp_path, "integral", "--hopf", "kS3")
    assert code == 0
    assert all(c == [1, 6] for _, c in doc["result"]["integral"]["t"])
    code, doc = run(tmp_path, "integral", "--hopf", "sweedler")
    assert code == 0 and doc["result"]["integral"]["normalized"] is False


def test_make_e(tmp_path):
    alg = fixture(tmp_path, "heisenberg", "--D", "3")
    act = fixture(tmp_path, "action:charge-conjugation", "--D", "3")
    code, doc = run(tmp_path, "make-e", alg, "--hopf", "kZ2", "--action", act)
    assert code == 0
    assert doc["result"]["e"] == [["1#e", [1, 2]], ["1#g", [1, 2]]]
    code, doc = run(tmp_path, "make-e", alg, "--hopf", "kZ2", "--action", act, "--c", "a[1]=1")
    assert code == 1 and doc["checks"][-1]["name"] == "NotUnitized"


def test_zhu_profiles(tmp_path):
    alg = fixture(tmp_path, "heisenberg", "--D", "3")
    out = tmp_path / "a.json"
    assert main(["zhu", alg, "-o", str(out), "-r", str(tmp_path / "r.json")]) == 0
    assert json.loads(out.read_text())["kind"] == "assoc"
    code, doc = run(tmp_path, "zhu", alg, "--profile", "exp:1")
    assert code == 2 and doc["verdict"] == "inconclusive"


def test_fixed_and_matrix_and_double(tmp_path):
    alg = fixture(tmp_path, "heisenberg", "--D", "3")
    act = fixture(tmp_path, "action:charge-conjugation", "--D", "3")
    code, doc = run(tmp_path, "fixed", alg, "--hopf", "kZ2", "--action", act)
    assert code == 0 and doc["result"]["fixed"]["dim"] == 3
    code, doc = run(tmp_path, "matrix", alg, "--n", "2", "--sample", "40")
    assert code == 0 and doc["result"]["carrier"]["dim"] == 28
    code, doc = run(tmp_path, "double-smash", alg, "--group", "Z2", "--action", act)
    assert code == 0 and doc["result"]["carrier"]["dim"] == 28


def test_hopf_and_module_suites(tmp_path):
    assert run(tmp_path, "check", "--suite", "hopf", "--hopf", "kS3*")[0] == 0
    alg = fixture(tmp_path, "heisenberg", "--D", "2")
    mod = fixture(tmp_path, "module:regular", "--D", "2")
    code, doc = run(tmp_path, "check", alg, "--suite", "module", "--module", mod)
    assert code == 0 and doc["result"]["module"]["kind"] == "left"


def test_quantum_commands(tmp_path):
    tw = fixture(tmp_path, "twisted", "--D", "2")
    assert run(tmp_path, "check", tw, "--suite", "quantum")[0] == 0
    act = fixture(tmp_path, "action:x-parity", "--D", "2")
    code, doc = run(tmp_path, "smash", tw, "--hopf", "kZ2", "--action", act, "--pairs", "10")
    assert code == 0 and doc["result"]["h_order"] == 2
    dn = fixture(tmp_path, "dual-numbers-braided")
    sw = fixture(tmp_path, "action:sweedler")
    code, doc = run(tmp_path, "smash", dn, "--hopf", "sweedler", "--action", sw)
    assert code == 1
    assert doc["checks"][-1]["name"] == "BraidingIncompatible"
    assert doc["checks"][-1]["witness"] == ["e", "x", "e"]


def test_reports_are_reproducible(tmp_path):
    alg = fixture(tmp_path, "differential", "--D", "2")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["check", alg, "--suite", "field", "--sample", "30", "--seed", "4", "-r", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["check", "--suite", "nonsense", "x.json"],
    ["frobnicate"],
    [],
    ["check", "missing.json", "--suite", "field"],
    ["fixture", "nope"],
    ["check", "--suite", "field", "x.json", "--sample", "-3"],
])
def test_usage_errors_exit_3(argv, capsys):
    assert main(argv) == 3


def test_malformed_document_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1, "kind": "algebra"')
    assert main(["check", str(bad), "--suite", "field"]) == 3
    assert "line 1" in capsys.readouterr().err

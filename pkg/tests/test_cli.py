import json
import subprocess
import sys

import pytest

from nicerat.cli import main
from nicerat.families import AnalysisReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "--num", "x^2-5x+4", "--den", "x")
    assert code == 0
    assert "2 real critical points at x=-2,x=2" in out
    assert "no real points of inflexion" in out


def test_analyze_pq43_r32_json_roundtrip(capsys):
    code, out, _ = run(capsys, "analyze", "--num", "[476280,10566,165,1]", "--den", "[0,110,1]", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1 and doc["command"] == "analyze"
    rep = AnalysisReport.from_json(doc["payload"])
    assert [int(q) for q in rep.critical.rationals] == [-126, -90, -70, 66]
    assert rep.zeros.rationals == [-108]
    _, again, _ = run(capsys, "analyze", "--num", "[476280,10566,165,1]", "--den", "[0,110,1]", "--json")
    assert again == out


@pytest.mark.parametrize("argv", [
    ["analyze", "--num", "x", "--den", "0"],
    ["analyze", "--num", "x+y", "--den", "x"],
    ["family", "check", "R99", "--params", "a=1"],
    ["family", "check", "R22_INT", "--params", "a=1,b=2,c=3"],
    ["family", "search", "R21_INT", "--bound", "5", "--require", "nice-things"],
    ["ec", "pq", "--p", "1", "--q", "1"],
    ["ec", "verify", "--b", "0", "--c", "-1"],
    ["family"],
])
def test_validation_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error:" in err and "usage:" in err


def test_family_list_and_check(capsys):
    code, out, _ = run(capsys, "family", "list")
    assert code == 0 and "R23_RUSIN" in out
    code, out, _ = run(capsys, "family", "check", "R22_INT", "--params", "a=1,b=5,c=21")
    assert code == 0 and "witness 40" in out


def test_family_search_csv(capsys):
    code, out, _ = run(capsys, "family", "search", "R21_INT", "--bound", "5", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("a,b")
    assert "1,4" in lines


def test_family_search_json_deterministic(capsys):
    argv = ["family", "search", "R12_CPLX", "--bound", "12", "--require", "integer-inflexion", "--json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    doc = json.loads(a)
    assert doc["schema_version"] == 1


def test_family_emit(capsys):
    code, out, _ = run(capsys, "family", "emit", "R21_INT", "--params", "a=1,b=4", "--latex")
    assert code == 0 and out.strip() == r"\frac{z^2-(2n+5)z+n^2+5n+4}{z-n}"
    code, out, _ = run(capsys, "family", "emit", "R21_INT", "--params", "a=1,b=4", "--numeric", "3")
    assert code == 0 and "(z^2-11z+28)/(z-3)" in out
    code, out, _ = run(capsys, "family", "emit", "R21_INT", "--params", "a=1,b=4", "--shift", "m")
    assert code == 0 and "(z^2-(2m+5)z+m^2+5m+4)/(z-m)" in out
    code, _, err = run(capsys, "family", "emit", "R21_INT", "--params", "a=1,b=4", "--shift", "3")
    assert code == 1 and "--numeric" in err


def test_family_audit(capsys):
    code, out, _ = run(capsys, "family", "audit", "R22_INT", "--samples", "20")
    assert code == 0 and "0 disagreements" in out


def test_ec_pq_and_verify(capsys):
    code, out, _ = run(capsys, "ec", "pq", "--p", "4", "--q", "3")
    assert code == 0
    assert "(142, 30, 70, -110)" in out
    assert "(x^3+165x^2+10566x+476280)/(x^2+110x)" in out
    code, out, _ = run(capsys, "ec", "verify", "--b", "1491/3025", "--c", "9116/6655", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["presented"]["function"] == "(x^3+165x^2+10566x+476280)/(x^2+110x)"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nicerat", "family", "list"], capture_output=True, text=True)
    assert res.returncode == 0 and "R21_INT" in res.stdout

import json
import subprocess
import sys

import pytest

from awdelta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


MODULE = ["--n", "1", "--q", "2", "--a", "2", "--b", "1", "--c", "1"]


def test_build(capsys):
    code, out, _ = run(capsys, "build", *MODULE)
    assert code == 0
    doc = json.loads(out)
    assert doc["A"]["entries"] == ["2/1", "0/1", "1/1", "17/4"]
    assert doc["B"]["entries"] == ["5/2", "-9/8", "0/1", "5/2"]
    assert doc["module"]["a"] == "2/1"


def test_build_is_byte_stable(capsys):
    first = run(capsys, "build", "--n", "2", "--q", "1+i", "--a", "3", "--b", "1/2", "--c", "i")[1]
    second = run(capsys, "build", "--n", "2", "--q", "1+i", "--a", "3", "--b", "1/2", "--c", "i")[1]
    assert first == second


def test_irreducible_reports_agreement(capsys):
    code, out, _ = run(capsys, "irreducible", "--n", "1", "--q", "2", "--a", "1", "--b", "1", "--c", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["criterion"] is False and doc["oracle"] is False


def test_verify_and_verma(capsys):
    code, out, _ = run(capsys, "verify", *MODULE)
    assert code == 0 and json.loads(out)
    code, _, _ = run(capsys, "verify", *MODULE, "--depth", "6", "--lambda", "8")
    assert code == 0
    code, out, _ = run(capsys, "verma", *MODULE, "--depth", "4", "--lambda", "3")
    assert code == 0
    assert json.loads(out)["A"]["rows"] == 4


def test_classify_and_iso(capsys):
    code, out, _ = run(capsys, "classify", "--n", "2", "--q", "2", "--a", "3", "--b", "2", "--c", "5", "--seed", "4")
    assert code == 0
    assert json.loads(out)["expected_orbit"]
    code, out, _ = run(capsys, "iso", *MODULE, "--other", "1/2,1,1")
    assert code == 0 and json.loads(out)["isomorphic"]


def test_classify_from_file(capsys, tmp_path):
    _, out, _ = run(capsys, "build", *MODULE)
    path = tmp_path / "rep.json"
    path.write_text(out)
    code, out, _ = run(capsys, "classify", "--rep", str(path))
    assert code == 0


def test_bases_single_element(capsys):
    code, out, _ = run(capsys, "bases", "--n", "2", "--q", "2", "--a", "3", "--b", "5", "--c", "7", "--element", "1,-1,t")
    assert code == 0
    rows = json.loads(out)["bases"]
    assert len(rows) == 1 and rows[0]["matches"] and "transition" in rows[0]


def test_awpoly(capsys):
    code, out, _ = run(
        capsys, "awpoly", "--lambda", "3", "--q", "2", "--a", "3", "--b", "5", "--c", "7", "--i", "2", "--check"
    )
    assert code == 0
    assert json.loads(out)["operator_check"] is True


def test_leonard_and_unitary(capsys):
    code, out, _ = run(capsys, "leonard", "--n", "2", "--q", "2", "--a", "3", "--b", "5", "--c", "7", "--direct")
    assert code == 0 and json.loads(out)["triple"]
    args = ["unitary", "--n", "2", "--q", "exp(0.4)", "--a", "exp(0.3)", "--b", "exp(-0.3)", "--c", "exp(0.5)"]
    code, out, _ = run(capsys, *args)
    assert code == 0 and json.loads(out)["ok"]
    code, _, _ = run(capsys, *args, "--tol", "1e-30")
    assert code == 1


def test_uq_commands(capsys):
    code, out, _ = run(capsys, "uq", "standard", "--n", "1", "--q", "2")
    assert code == 0 and json.loads(out)["casimir"] == "17/9"
    code, out, _ = run(capsys, "uq", "realize", "--n", "1", "--q", "2", "--a", "3", "--b", "5", "--c", "7")
    assert code == 0 and json.loads(out)["found"]
    code, out, _ = run(capsys, "uq", "so3", "--n", "2", "--q", "2", "--family", "nonclassical")
    assert code == 0 and json.loads(out)["ok"]


def test_cg_and_racah(capsys):
    code, out, _ = run(capsys, "cg", "--m", "1", "--n", "1", "--q", "2")
    assert code == 0
    assert json.loads(out)["multiset"] == [
        {"n": 2, "type": 1, "multiplicity": 1},
        {"n": 0, "type": 1, "multiplicity": 1},
    ]
    code, out, _ = run(capsys, "racah", "--m", "1", "--n", "1", "--p", "1", "--q", "2")
    assert code == 0
    assert json.loads(out)["tridiagonal_ok"] is True


def test_suite_subset(capsys):
    code, out, err = run(capsys, "suite", "--only", "1,2")
    assert code == 0
    assert len(json.loads(out)["criteria"]) == 2
    assert err.count("PASS") == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["build", "--n", "1"],
        ["build", "--n", "1", "--q", "1", "--a", "2", "--b", "1", "--c", "1"],
        ["build", "--n", "1", "--q", "2", "--a", "0", "--b", "1", "--c", "1"],
        ["build", "--n", "1", "--q", "2", "--a", "x", "--b", "1", "--c", "1"],
        ["leonard", "--n", "1", "--q", "2", "--a", "1", "--b", "1", "--c", "1"],
        ["uq", "so3", "--n", "1", "--q", "2", "--family", "-1,1,1"],
        ["suite", "--only", "12"],
        ["--json", "/nonexistent/request.json"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("aw:")


def test_json_request_and_out(capsys, tmp_path):
    req = tmp_path / "req.json"
    req.write_text(json.dumps({"command": "racah", "params": {"m": 1, "n": 1, "p": 0, "q": "3"}}))
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "--json", str(req), "--out", str(dest))
    assert code == 0 and out == ""
    doc = json.loads(dest.read_text())
    assert doc["dims"] == [1, 1, 0]


def test_json_request_with_options(capsys, tmp_path):
    req = tmp_path / "req.json"
    req.write_text(
        json.dumps(
            {
                "command": "uq realize",
                "params": {"n": 2, "q": "2", "a": "3", "b": "5", "c": "7"},
                "options": {"eps": -1},
            }
        )
    )
    code, out, _ = run(capsys, "--json", str(req))
    assert code == 0
    assert json.loads(out)["found"] is False


def test_json_request_needs_command(capsys, tmp_path):
    req = tmp_path / "req.json"
    req.write_text("{}")
    assert run(capsys, "--json", str(req))[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "awdelta", "build", *MODULE], capture_output=True, text=True, check=True
    )
    assert json.loads(proc.stdout)["q"] == "2/1"


def test_classify_needs_module_or_file(capsys):
    code, _, err = run(capsys, "classify", "--n", "1", "--q", "2")
    assert code == 2 and "--a" in err

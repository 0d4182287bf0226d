import csv
import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from ogs.cli import decimal_text, parse_alpha, run_cli

GOLDEN = Path(__file__).parent / "golden"


def ogs(*args, env=None):
    import os
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "ogs", *args], capture_output=True, text=True,
                          encoding="utf-8", env=full_env)


def test_orders_golden():
    res = ogs("orders", "--group", "D3 x D3")
    assert res.returncode == 0
    assert res.stdout == (GOLDEN / "orders_d3xd3.txt").read_text(encoding="utf-8")


def test_spectrum_golden():
    res = ogs("spectrum", "--group", "D3 x D3", "--matrix", "laplacian", "--method", "both", "--format", "json")
    assert res.returncode == 0
    got = json.loads(res.stdout)
    want = json.loads((GOLDEN / "spectrum_d3xd3_laplacian.json").read_text(encoding="utf-8"))
    assert got["entries"] == want["entries"]
    assert {F(e["value"]): e["multiplicity"] for e in got["entries"]} == {36: 13, 28: 14, 21: 7, 13: 1, 0: 1}
    assert [e["multiplicity"] for e in got["dense_entries"]] == [13, 14, 7, 1, 1]
    for a, b in zip(got["dense_entries"], got["entries"]):
        assert abs(a["value"] - float(F(b["value"]))) < 1e-7
    assert (got["group"], got["matrix"], got["alpha"], got["method"]) == ("D3 x D3", "laplacian", None, "both")


def test_charpoly_golden():
    res = ogs("charpoly", "--group", "D3 x D3", "--matrix", "adjacency")
    assert res.returncode == 0
    assert res.stdout == (GOLDEN / "charpoly_d3xd3_adjacency.txt").read_text(encoding="utf-8")
    assert res.stdout.strip() == "λ^4 - 32λ^3 + 18λ^2 + 1696λ + 1645"


def test_verify_golden():
    res = ogs("verify", "--claim", "thm41cubic", "--p", "3", "--k", "1", "--alpha", "0")
    assert res.returncode == 0
    assert res.stdout == (GOLDEN / "verify_thm41cubic_p3k1a0.txt").read_text(encoding="utf-8")
    assert "factor=-5" in res.stdout


@pytest.mark.parametrize("args", [
    ["orders", "--group", "D2"],
    ["orders", "--group", "D5 x"],
    ["orders"],
    ["bogus"],
    ["spectrum", "--group", "D5", "--matrix", "aalpha"],
    ["spectrum", "--group", "D5", "--alpha", "3/2"],
    ["spectrum", "--group", "D5", "--matrix", "laplacian", "--alpha", "1/2"],
    ["verify", "--claim", "thm99", "--p", "3"],
    ["verify", "--claim", "thm31", "--p", "4", "--alpha", "0"],
])
def test_usage_errors_exit_2(args, capsys):
    code = run_cli(args)
    err = capsys.readouterr().err
    assert code == 2
    assert err.strip() and len(err.strip().splitlines()) == 1


def test_missing_claim_params_fail_in_report(capsys):
    # thm41 without --k reaches the verifier, which records a FAIL entry
    assert run_cli(["verify", "--claim", "thm41", "--p", "3", "--alpha", "0"]) == 1
    assert "BadParams" in capsys.readouterr().out


def test_verify_fail_exit_1(capsys):
    # a tolerance nobody can meet forces FAIL
    code = run_cli(["verify", "--group", "D5 x D5", "--tol", "1e-300"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_finding_exit_0(capsys):
    code = run_cli(["verify", "--claim", "thm41cubic", "--p", "5", "--k", "2", "--alpha", "1/2"])
    out = capsys.readouterr().out
    assert code == 0 and "FINDING" in out and "factor=-49" in out


def test_env_tolerance(capsys):
    res = ogs("verify", "--group", "D3", env={"OGS_TOLERANCE": "1e-300"})
    assert res.returncode == 1
    res = ogs("verify", "--group", "D3", env={"OGS_TOLERANCE": "nope"})
    assert res.returncode == 2 and "OGS_TOLERANCE" in res.stderr


def test_out_file_json_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run_cli(["verify", "--claim", "cor32", "--p", "3", "--format", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert set(report) >= {"checks", "summary"}
    assert report["summary"] == {"pass": len(report["checks"]), "fail": 0, "finding": 0}
    assert "PASS" in capsys.readouterr().out


def test_spectrum_json_round_trip(capsys):
    assert run_cli(["spectrum", "--group", "D5", "--alpha", "1/3", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["alpha"] == "1/3" and obj["matrix"] == "aalpha" and obj["method"] == "structural"
    assert sum(e["multiplicity"] for e in obj["entries"]) == 10
    for e in obj["entries"]:
        if isinstance(e["value"], str):
            F(e["value"])
        else:
            assert isinstance(e["value"], float)


def test_spectrum_csv(capsys):
    assert run_cli(["spectrum", "--group", "D3 x D3", "--alpha", "1/2", "--format", "csv"]) == 0
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[0] == ["value", "multiplicity"]
    values = dict(rows[1:])
    assert values["9.5"] == "7" and values["17"] == "13" and values["13"] == "14"
    floats = [v for v in values if "." in v and v != "9.5"]
    for v in floats:
        assert len(v.replace(".", "").replace("-", "").lstrip("0")) <= 12


def test_spectrum_dense_method(capsys):
    assert run_cli(["spectrum", "--group", "D3", "--method", "dense"]) == 0
    assert "value multiplicity" in capsys.readouterr().out


def test_charpoly_json(capsys):
    assert run_cli(["charpoly", "--group", "D3", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["coefficients"] == ["1", "-3", "-3", "7"]


def test_orders_csv_and_json(capsys):
    assert run_cli(["orders", "--group", "Z2 x Z2", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "order,count\n1,1\n2,3\n"
    assert run_cli(["orders", "--group", "z2 X c2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["group"] == "Z2 x Z2"


@pytest.mark.parametrize("text,value", [
    ("1/3", F(1, 3)), ("0.25", F(1, 4)), ("0.333333333", F(1, 3)), ("1", F(1)), ("0", F(0)),
])
def test_parse_alpha(text, value):
    assert parse_alpha(text) == value


@pytest.mark.parametrize("value,text", [
    (F(19, 2), "9.5"), (F(36), "36"), (F(1, 3), "1/3"), (F(-1, 8), "-0.125"), (2 / 3, "0.666666666667"),
])
def test_decimal_text(value, text):
    assert decimal_text(value) == text

import json

import pytest

from ncg.cli import main, parse_params, field_for, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "s3.bianchi" in out.split() and "theory.dg_identities" in out.split()


def test_run_json_passing_scenario(capsys):
    code, out, _ = run(capsys, "run", "s3.bianchi", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["scenario"] == "s3.bianchi"
    assert all(c["status"] != "fail" for c in rep["checks"])


def test_run_reports_failures_with_exit_one(capsys):
    code, out, _ = run(capsys, "run", "bicross.traces")
    assert code == 1
    assert "FAIL" in out


def test_check_zero_christoffel_point(capsys):
    code, out, _ = run(capsys, "check", "--backend", "s3", "--params", "a=1,b=0,c=0,d=1,e=0",
                       "--ops", "curvature,torsion")
    assert code == 0
    assert "R(e_u) = 0" in out and "R(e_w) = 0" in out
    assert "T(e_u) = [(1)*e_v^e_w + (1)*e_w^e_v] (x) 1" in out


def test_check_json_in_an_extension_field(capsys):
    code, out, _ = run(capsys, "check", "--backend", "s3", "--params", "a=omega,b=0,c=0,d=0,e=0",
                       "--ops", "extendability,bianchi", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["field"] == "Q(omega)"
    assert [r["status"] for r in rep["results"]] == ["pass", "pass"]


def test_check_bicross_torsion(capsys):
    code, out, _ = run(capsys, "check", "--backend", "bicross", "--params", "alpha=0,beta=1/2,gamma=0",
                       "--ops", "torsion")
    assert code == 0
    assert "T(dr) = [((1/2)*r^-1)*Vol] (x) 1" in out


@pytest.mark.parametrize("argv", [
    ["run", "s3.nope"],
    ["run", "s3.calculus", "--params", "bogus=1"],
    ["run", "s3.calculus", "--seed", "-1"],
    ["run", "s3.calculus", "--seed", str(2 ** 64)],
    ["check", "--backend", "s3", "--params", "q=1"],
    ["check", "--backend", "s3", "--params", "a=omega,b=i"],
    ["check", "--backend", "s3", "--ops", "nothing"],
    ["check", "--backend", "bicross", "--params", "alpha=omega"],
    ["check", "--backend", "nowhere"],
    ["frobnicate"],
    ["run", "--unknown-flag"],
    [],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("ncg: error:")


def test_out_file_and_reproducible_output(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["run", "s3.calculus", "--seed", "5", "--no-timing", "--out", str(a)]) == 0
    assert main(["run", "s3.calculus", "--seed", "5", "--no-timing", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_param_parsing():
    assert parse_params("a=1, b = 1/2,c=omega") == {"a": "1", "b": "1/2", "c": "omega"}
    for bad in ("a", "a=", "=1", "a=1,a=2"):
        with pytest.raises(UsageError):
            parse_params(bad)
    assert field_for({"a": "2*i + 1"}, ["a"]) == "Q(i)"
    assert field_for({"a": "1/3"}, ["a"]) == "QQ"

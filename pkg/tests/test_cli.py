import json
import subprocess
import sys

import pytest

from symcomplex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_annihilate_gradient(capsys):
    code, out, _ = run(capsys, "annihilate", "grad:d=2,m=1", "--simplify", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == 1 and obj["rows"] == 1
    row = obj["symbol"]["entries"][0]
    # entries {-x2, x1} up to a common sign
    assert sorted(json.dumps(e) for e in row) in (
        sorted(json.dumps(e) for e in [[[[0, 1], "-1"]], [[[1, 0], "1"]]]),
        sorted(json.dumps(e) for e in [[[[0, 1], "1"]], [[[1, 0], "-1"]]]),
    )


def test_rank_complex_cr(capsys):
    code, out, _ = run(capsys, "rank", "cr", "--field", "complex", "--json")
    assert code == 3
    obj = json.loads(out)
    assert obj["outcome"] == "not_constant" and obj["witness"] == ["1", "i"]


def test_rank_exit_codes(capsys):
    assert run(capsys, "rank", "cr")[0] == 0
    assert run(capsys, "rank", "grad:d=3,m=1", "--field", "complex")[0] == 4
    code, out, _ = run(capsys, "rank", "pi_surrogate", "--field", "integer")
    assert code == 3 and "witness (2, 1)" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "sym_grad", "st_venant", "--points", "100")
    assert code == 0 and out.startswith("Verified")
    code, _, _ = run(capsys, "verify", "grad:d=3,m=1", "div:d=3")
    assert code != 0


def test_usage_and_parse_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate", "cr")[0] == 1
    assert run(capsys, "rank")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "rank", "cr", "--points", "0")[0] == 1
    code, out, err = run(capsys, "rank", "no_such_operator")
    assert code == 2 and out == "" and "unknown operator" in err
    bad = tmp_path / "bad.op"
    bad.write_text("operator bad { dim 2; shape 1x1; [ [x1 + x1^2] ] }\n")
    code, _, err = run(capsys, "rank", str(bad))
    assert code == 2 and "1:37" in err


def test_dsl_file_operator(capsys, tmp_path):
    f = tmp_path / "cr.op"
    f.write_text("operator cr { dim 2; shape 2x2; [ [x1, -x2], [x2, x1] ] }\n")
    assert run(capsys, "rank", str(f), "--field", "complex")[0] == 3
    f2 = tmp_path / "c.op"
    f2.write_text("operator c { dim 2; shape 1x1; [ [x1 + i*x2] ] }\n")
    assert run(capsys, "rank", str(f2))[0] == 2
    assert run(capsys, "--complex", "rank", str(f2), "--field", "complex")[0] == 3


def test_potential_pinv_augment(capsys):
    code, out, _ = run(capsys, "potential", "div:d=3", "--simplify", "--json")
    assert code == 0 and json.loads(out)["cols"] == 3
    code, out, _ = run(capsys, "pinv", "grad:d=2,m=1")
    assert code == 0 and "x1^2 + x2^2" in out
    code, out, _ = run(capsys, "--json", "augment", "sym_grad")
    assert code == 0 and json.loads(out)["r"] == 3
    assert run(capsys, "annihilate", "cr", "--json")[0] == 0


def test_solve_and_project(capsys, tmp_path):
    v = tmp_path / "v.txt"
    v.write_text("1 0 | 1/2 0 0 0\n-1 0 | 1/2 0 0 0\n")
    code, out, _ = run(capsys, "solve", "grad:d=2,m=1", "--field", str(v), "--check-kernel", "curl:d=2,m=1")
    assert code == 0 and "scale -1" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("1 0 | 0 0 1 0\n")
    code, out, err = run(capsys, "--json", "solve", "grad:d=2,m=1", "--field", str(bad))
    assert code == 3 and json.loads(out)["m"] == [1, 0] and "(1, 0)" in err
    code, out, _ = run(capsys, "project", "div:d=2", "--field", str(bad), "--json")
    assert code == 0
    assert json.loads(out)["modes"][0]["c"] == [["0", "0"], ["1", "0"]]
    code, _, err = run(capsys, "project", "div:d=2", "--field", str(tmp_path / "missing.txt"))
    assert code == 2


def test_out_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "rank", "cr", "--json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rank"] == 2


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("SYMCOMPLEX_SEED", "7")
    _, a, _ = run(capsys, "verify", "grad:d=3,m=1", "curl:d=3,m=1", "--json", "--points", "3")
    _, b, _ = run(capsys, "verify", "grad:d=3,m=1", "curl:d=3,m=1", "--json", "--points", "3", "--seed", "7")
    assert a == b


def test_deterministic_subprocess_output():
    argv = [sys.executable, "-m", "symcomplex", "--json", "--seed", "3", "rank", "sqrt2_surrogate"]
    outs = [subprocess.run(argv, capture_output=True, check=False).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]

import json
from pathlib import Path

import pytest

from curves import G2_LAMBDAS
from telescurve.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_describe_text(capsys):
    code, out, _ = run(capsys, "describe", "--seq", "4,6,5")
    assert code == 0
    assert "genus: 4" in out and "gaps: 1,2,3,7" in out and "partition: 4,1,1,1" in out


def test_describe_json(capsys):
    code, out, _ = run(capsys, "describe", "--seq", "4,6,5", "--json")
    d = json.loads(out)
    assert code == 0 and d["genus"] == 4 and d["c"] == [2, 2]
    assert [m["monomial"] for m in d["monomials"][:5]] == ["1", "x1", "x3", "x2", "x1^2"]


@pytest.mark.parametrize("argv,code,needle", [
    (["describe", "--seq", "3,4,5"], 2, "i=3"),
    (["describe", "--seq", "4,6"], 2, ""),
    (["describe", "--seq", "4,x"], 1, ""),
    (["formulas", "--seq", "4,6,5", "--k", "5"], 3, ""),
    (["formulas", "--seq", "4,6,5", "--k", "0"], 3, ""),
])
def test_exit_codes(capsys, argv, code, needle):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert needle in err


def test_argparse_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["describe"])
    assert exc.value.code == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_formulas_golden(capsys, k):
    for fmt, ext in (("text", "txt"), ("latex", "tex")):
        code, out, _ = run(capsys, "formulas", "--seq", "4,6,5", "--k", str(k), "--format", fmt)
        assert code == 0 and out == (GOLDEN / f"formulas_465_k{k}.{ext}").read_text()


def test_formulas_json(capsys):
    code, out, _ = run(capsys, "formulas", "--seq", "2,5", "--k", "2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["k"] == 2 and len(d["entries"]) == 2


def test_verify_symbolic(capsys):
    code, out, err = run(capsys, "verify", "symbolic", "--seq", "2,5", "--order", "8")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(r["passed"] for r in rows)
    assert "passed" in err


def write_spec(tmp_path, **extra):
    spec = {"sequence": [2, 5], "lambda": {k: [v, 0.0] for k, v in G2_LAMBDAS.items()}}
    spec.update(extra)
    p = tmp_path / "g2.json"
    p.write_text(json.dumps(spec))
    return p


def test_verify_numeric_deterministic(capsys, tmp_path):
    spec = write_spec(tmp_path)
    code, out1, _ = run(capsys, "verify", "numeric", "--spec", str(spec))
    assert code == 0
    code, out2, _ = run(capsys, "verify", "numeric", "--spec", str(spec))
    assert out1 == out2


def test_env_seed_overrides(capsys, tmp_path, monkeypatch):
    spec = write_spec(tmp_path)
    argv = ["verify", "numeric", "--spec", str(spec), "--checks", "parity"]
    _, a, _ = run(capsys, *argv, "--seed", "3")
    monkeypatch.setenv("TELESCURVE_SEED", "3")
    _, b, _ = run(capsys, *argv, "--seed", "99")
    assert a == b
    assert json.loads(a.splitlines()[0])["seed"] == 3


def test_periods_cache(capsys, tmp_path):
    spec = write_spec(tmp_path)
    cache = tmp_path / "periods.json"
    argv = ["verify", "numeric", "--spec", str(spec), "--periods", str(cache), "--checks",
            "inversion"]
    code, out1, _ = run(capsys, *argv)
    assert code == 0 and cache.exists()
    stamp = cache.read_text()
    code, out2, _ = run(capsys, *argv)
    assert code == 0 and out1 == out2 and cache.read_text() == stamp


def test_periods_command(capsys, tmp_path):
    spec = write_spec(tmp_path)
    out = tmp_path / "p.json"
    assert run(capsys, "periods", "--spec", str(spec), "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["sequence"] == [2, 5]


def test_spec_periods_field(capsys, tmp_path):
    spec = write_spec(tmp_path, periods="cache.json")
    code, _, _ = run(capsys, "verify", "numeric", "--spec", str(spec), "--checks", "parity")
    assert code == 0 and (tmp_path / "cache.json").exists()


def test_unsupported_numeric(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"sequence": [4, 6, 5]}))
    assert run(capsys, "verify", "numeric", "--spec", str(p))[0] == 5


@pytest.mark.parametrize("text,code", [
    ("{not json", 1),
    ('{"lambda": {}}', 1),
    ('{"sequence": "2,5"}', 1),
    ('{"sequence": [2, 5], "lambda": {"2:(0,2)": 1}}', 1),
    ('{"sequence": [2, 5], "lambda": {"bad": 1}}', 1),
    ('{"sequence": [2, 5], "lambda": {"2:(1,0)": "1/x"}}', 1),
    ('{"sequence": [4, 5, 6]}', 2),
])
def test_malformed_specs(capsys, tmp_path, text, code):
    p = tmp_path / "s.json"
    p.write_text(text)
    assert run(capsys, "verify", "symbolic", "--spec", str(p))[0] == code


def test_missing_spec_file(capsys, tmp_path):
    assert run(capsys, "verify", "symbolic", "--spec", str(tmp_path / "nope.json"))[0] == 1


def test_unknown_check(capsys):
    assert run(capsys, "verify", "symbolic", "--seq", "2,3", "--checks", "bogus")[0] == 1


def test_failed_check_exit_code(capsys, tmp_path):
    spec = write_spec(tmp_path)
    code, out, _ = run(capsys, "verify", "numeric", "--spec", str(spec), "--checks",
                       "inversion", "--tol", "1e-30")
    assert code == 4
    assert any(not json.loads(line)["passed"] for line in out.splitlines())

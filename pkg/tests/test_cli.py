import json
import subprocess
import sys

import pytest

from chevalley.cli import EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_VERIFY, main
from chevalley.rootsys import format_cartan_file, parse_type


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_a2_json(capsys):
    code, out, _ = run(capsys, "table", "A2", "--format", "json")
    assert code == EXIT_OK
    recs = json.loads(out)
    assert len(recs) == 2
    assert {"lambda": [1, 0], "mu": [0, 1], "N": 1} in recs


def test_roots_g2(capsys):
    code, out, _ = run(capsys, "roots", "G2", "--format", "csv")
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 1 + 12
    code, out, _ = run(capsys, "roots", "G2", "--format", "json")
    assert len(json.loads(out)) == 12


def test_verify_c2(capsys):
    code, out, _ = run(capsys, "verify", "C2", "--oracle", "--jacobi")
    assert code == EXIT_OK
    assert "all suites passed" in out


def test_verify_default_runs_everything(capsys):
    code, out, _ = run(capsys, "verify", "A2", "--format", "json")
    assert code == EXIT_OK
    names = {r["suite"] for r in json.loads(out)}
    assert {"jacobi", "strings", "splitting", "oracle", "height"} <= names


def test_basis_reports_frame_signs(capsys):
    code, out, _ = run(capsys, "basis", "A2", "--format", "json")
    recs = json.loads(out)
    assert [r["k_rel_frame"] for r in recs] == [1, -1, -1, -1, 1, -1]
    assert [r["gamma"] for r in recs] == [1, 1, 1, 1, 1, -1]
    assert recs[1]["d"] == 1 and recs[1]["c"] == -1 and recs[2]["d"] is None
    code, out, _ = run(capsys, "basis", "G2", "--format", "json")
    assert all(r["k_rel_frame"] is None for r in json.loads(out))


@pytest.mark.parametrize("verb", ["roots", "basis", "table"])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_name_and_file_byte_identical(capsys, tmp_path, verb, fmt):
    p = tmp_path / "a2.txt"
    p.write_text(format_cartan_file(parse_type("A2")))
    _, by_name, _ = run(capsys, verb, "A2", "--format", fmt)
    _, by_file, _ = run(capsys, verb, "--cartan", str(p), "--format", fmt)
    assert by_name == by_file


def test_out_file(capsys, tmp_path):
    p = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "B2", "--format", "csv", "--out", str(p))
    assert code == EXIT_OK and out == ""
    assert p.read_text().startswith("lambda_0,lambda_1,mu_0,mu_1,N\n")


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "roots", "Q7")[0] == EXIT_PARSE
    assert run(capsys, "roots")[0] == EXIT_PARSE
    assert run(capsys, "frobnicate", "A2")[0] == EXIT_PARSE
    assert run(capsys, "roots", "A2", "--jacobi")[0] == EXIT_PARSE
    assert run(capsys, "roots", "--cartan", str(tmp_path / "missing.txt"))[0] == EXIT_IO
    affine = tmp_path / "affine.txt"
    affine.write_text("2\n2 -2\n-2 2\n")
    code, _, err = run(capsys, "roots", "--cartan", str(affine))
    assert code == EXIT_INVALID and "finite type" in err
    assert run(capsys, "verify", "E6", "--oracle")[0] == EXIT_INVALID
    codes = {EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_VERIFY, EXIT_IO}
    assert len(codes) == 5


def test_verification_failure_exit(monkeypatch, capsys):
    import chevalley.cli as cli
    from chevalley import full_table

    def corrupted(sys, signs=None):
        t = full_table(sys)
        key = next(iter(t.entries))
        t.entries[key] *= -1
        return t

    monkeypatch.setattr(cli, "full_table", corrupted)
    code, out, _ = run(capsys, "verify", "A3", "--jacobi")
    assert code == EXIT_VERIFY and "FAILED" in out


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "chevalley.cli", "table", "A2"], capture_output=True, text=True)
    assert r.returncode == 0 and "2 ordered-triple classes" in r.stdout

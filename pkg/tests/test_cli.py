import csv
import io
import json
import subprocess
import sys

import pytest

from turanlab.cli import main, parse_params, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_helpers():
    assert parse_params("a=1,c=-0.5") == {"a": 1.0, "c": -0.5}
    assert parse_params("") == {}
    assert parse_range("0:1:0.5") == [0.0, 0.5, 1.0]
    assert parse_range("1,2.5") == [1.0, 2.5]


def test_eval_psi(capsys):
    code, out, _ = run(capsys, "eval", "psi", "--params", "a=1,c=2", "--x", "2")
    assert code == 0
    fields = dict(item.split("=") for item in out.split())
    assert float(fields["value"]) == pytest.approx(0.5, rel=1e-12)
    assert float(fields["abs_err"]) < 1e-12 and fields["status"] == "converged"


def test_eval_missing_parameter(capsys):
    code, _, err = run(capsys, "eval", "psi", "--params", "a=1", "--x", "2")
    assert code == 3 and "needs parameters" in err


def test_eval_domain_error(capsys):
    code, _, err = run(capsys, "eval", "K", "--params", "a=1", "--x", "-1")
    assert code == 3 and err.startswith("error:")


def test_turan_table(capsys):
    code, out, _ = run(capsys, "turan", "PARA", "--params", "a=1", "--x-range", "0:1:0.5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    assert float(rows[0]["delta"]) == pytest.approx(0.5707963267948966, rel=1e-10)


def test_det_direct_and_monte_carlo(capsys):
    code, out, _ = run(capsys, "det", "2", "--params", "a=1,c=0.5", "--n", "1", "--x", "1")
    assert code == 0 and "value=0.0933874337501" in out
    code, _, err = run(capsys, "det", "1", "--params", "a=1,c=0.5", "--n", "1", "--x", "1",
                       "--samples", "1000")
    assert code == 3 and "seed" in err
    code, out, _ = run(capsys, "det", "1", "--params", "a=1,c=0.5", "--n", "1", "--x", "1",
                       "--samples", "20000", "--seed", "42")
    assert code == 0 and "seed=42" in out and "std_err=" in out


def test_cm_and_am(capsys):
    code, out, _ = run(capsys, "cm", "1", "--params", "a=1,c=0.5", "--orders", "2")
    assert code == 0 and out.count("pass") == 3
    code, _, _ = run(capsys, "am", "exp", "--orders", "4")
    assert code == 0
    code, _, _ = run(capsys, "cm", "exp", "--orders", "1")
    assert code == 1


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "PSI_DIAG", "--params", "a=1,c=-1")
    assert code == 0 and "status=pass" in out


def test_convex(capsys):
    code, out, _ = run(capsys, "convex", "PSI_IN_C", "--trials", "10")
    assert code == 0 and out.startswith("PSI_IN_C: pass")


def test_sweep_exit_codes(capsys):
    code, out, _ = run(capsys, "sweep", "T32_L")
    assert code == 0 and "T32_L" in out
    code, out, _ = run(capsys, "sweep", "T21_R", "--csv")
    assert code == 1
    assert out.splitlines()[0].startswith("inequality_id,a,c")
    code, out, _ = run(capsys, "sweep", "CONJ_T21_NEG_A")
    assert code == 0 and "exploratory" in out


def test_report_json_to_stdout(capsys):
    code, out, _ = run(capsys, "report", "--format", "json", "--out", "-", "--ids", "T32_R",
                       "--no-extras")
    data = json.loads(out)
    assert code == 0
    assert data["metadata"]["seed"] == 42 and len(data["metadata"]["manifest_sha256"]) == 64
    assert data["summaries"]["T32_R"]["status"] == "pass"


def test_report_file(tmp_path, capsys):
    path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "report", "--out", str(path), "--ids", "LAGUERRE",
                       "--no-extras")
    assert code == 0 and "LAGUERRE" in out
    assert path.read_text().startswith("inequality_id,")


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "turanlab.cli", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("turanlab ")


def test_bad_subcommand_is_usage_error():
    out = subprocess.run([sys.executable, "-m", "turanlab.cli", "nope"], capture_output=True,
                         text=True)
    assert out.returncode == 2

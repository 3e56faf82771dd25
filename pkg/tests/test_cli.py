import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from cesaro_lab import cli
from cesaro_lab.fixtures import ENV_VAR
from cesaro_lab.fracdiff import ZSeq
from cesaro_lab.operators import save_matrix


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_kernel_order_one_is_all_ones(capsys):
    code, out, _ = run_cli(capsys, "kernel", "--alpha", "1", "--n-max", "5")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["n", "value"]
    assert [int(r[0]) for r in rows] == list(range(6))
    assert all(float(r[1]) == 1.0 for r in rows)


def test_kt_decay_assani_value(capsys):
    code, out, _ = run_cli(
        capsys, "kt-decay", "--fixture", "assani", "--alpha", "1", "--fn", "annihilator", "--n-max", "1000"
    )
    assert code == 0
    _, rows = parse_csv(out)
    values = {int(n): float(v) for n, v in rows}
    assert abs(values[10] - 2 / 11) <= 1e-10
    assert values[9] <= 1e-10


def test_identities_random_fixture_passes(capsys):
    code, out, _ = run_cli(
        capsys, "identities", "--fixture", "random3", "--alpha", "2", "--n-max", "100", "--assert", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert {c["identity"] for c in doc["checks"]} >= {"mean_step", "mean_shift", "homomorphism"}
    assert all(c["residual"] <= 1e-9 for c in doc["checks"])


@pytest.mark.parametrize(
    "argv",
    [
        ["kernel", "--alpha", "1", "--n-max", "40"],
        ["weyl", "--fixture", "assani", "--alpha", "0.5"],
        ["norm", "--fixture", "diag_peripheral", "--alpha", "1.5"],
        ["cesaro", "--fixture", "assani", "--alpha", "1", "--n-max", "64", "--grid", "dyadic"],
        ["kt-decay", "--fixture", "assani", "--n-max", "64", "--format", "json"],
        ["mean-diff", "--fixture", "diag_half", "--n-max", "64", "--grid", "dyadic"],
        ["ergodic", "--fixture", "diag_decay", "--n-max", "64", "--format", "json"],
        ["identities", "--fixture", "random4", "--alpha", "1.5", "--n-max", "30"],
    ],
)
def test_output_is_byte_identical(capsys, argv):
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *argv)
    assert first[0] == 0
    assert first == second


def test_full_precision_csv(capsys):
    _, out, _ = run_cli(capsys, "kernel", "--alpha", "0.5", "--n-max", "3")
    _, rows = parse_csv(out)
    assert rows[3][1] == f"{0.3125:.16e}"
    mantissa = rows[3][1].split("e")[0].replace(".", "").lstrip("-")
    assert len(mantissa) == 17


@pytest.mark.parametrize(
    "argv",
    [
        ["cesaro", "--fixture", "no_such_fixture"],
        ["cesaro"],
        ["kernel", "--alpha", "-1"],
        ["kernel", "--n-max", "0"],
        ["kernel", "--format", "xml"],
        ["bogus"],
        ["kt-decay", "--fixture", "assani", "--fn", "sine"],
        ["kt-decay", "--fixture", "assani", "--fn", "coeffs:/does/not/exist.json"],
        ["ergodic", "--fixture", "assani", "--alpha", "0.5"],
    ],
)
def test_configuration_errors_exit_one(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err


def test_assertion_failures_exit_two(capsys):
    # the Jordan block is not (C,1)-bounded, so the cesaro gate fails
    code, _, err = run_cli(capsys, "cesaro", "--fixture", "jordan1", "--n-max", "200", "--assert")
    assert code == 2 and "assertion" in err
    code, _, _ = run_cli(capsys, "cesaro", "--fixture", "jordan1", "--n-max", "200")
    assert code == 0


def test_annihilating_function_gate_passes(capsys):
    for name in ("diag_half", "diag_peripheral", "rotation", "assani"):
        code, _, _ = run_cli(capsys, "kt-decay", "--fixture", name, "--n-max", "512", "--grid", "dyadic", "--assert")
        assert code == 0


def test_numerical_errors_exit_three(capsys, monkeypatch):
    monkeypatch.setattr(np.linalg, "eig", lambda T: (np.full(len(T), 9.0), np.eye(len(T))))
    code, _, err = run_cli(capsys, "cesaro", "--fixture", "assani", "--n-max", "8")
    assert code == 3 and "numerical" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "curve.json"
    code, out, _ = run_cli(
        capsys, "mean-diff", "--fixture", "diag_half", "--n-max", "1024", "--grid", "dyadic",
        "--format", "json", "--out", str(target), "--assert",
    )
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["verdicts"] == {"decays": True, "decay_expected": True}
    assert doc["meta"]["fixture"] == "diag_half"
    assert [r[0] for r in doc["rows"]] == [2**k for k in range(11)]


def test_coefficient_file(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"coeffs": ZSeq(0, [1, 1]).to_dict()}))
    code, out, _ = run_cli(capsys, "kt-decay", "--fixture", "assani", "--fn", f"coeffs:{path}", "--n-max", "20")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[10][1]) == pytest.approx(2 / 11, abs=1e-10)
    code, out, _ = run_cli(capsys, "norm", "--fn", f"coeffs:{path}", "--alpha", "0", "--format", "json")
    assert code == 0 and json.loads(out)["norms"]["q_alpha"] == 2


def test_negative_modes_rejected(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(ZSeq(-1, [1, 1]).to_dict()))
    code, _, _ = run_cli(capsys, "kt-decay", "--fixture", "assani", "--fn", f"coeffs:{path}")
    assert code == 1


def test_fixture_env_var(tmp_path, capsys, monkeypatch):
    save_matrix(np.diag([1.0, 0.25]), tmp_path / "custom.json")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    code, out, _ = run_cli(capsys, "ergodic", "--fixture", "custom", "--n-max", "256", "--assert", "--format", "json")
    assert code == 0
    assert json.loads(out)["meta"]["fixture"] == "custom"
    code, _, _ = run_cli(capsys, "ergodic", "--fixture", "assani", "--n-max", "16")
    assert code == 1


def test_fixture_path(tmp_path, capsys):
    path = tmp_path / "m.json"
    save_matrix(np.array([[0.5]]), path)
    code, out, _ = run_cli(capsys, "cesaro", "--fixture", str(path), "--alpha", "0", "--n-max", "3")
    assert code == 0
    _, rows = parse_csv(out)
    assert [float(r[1]) for r in rows] == [1, 0.5, 0.25, 0.125]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cesaro_lab", "kernel", "--alpha", "2", "--n-max", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert [float(r[1]) for r in parse_csv(proc.stdout)[1]] == [1, 2, 3, 4]

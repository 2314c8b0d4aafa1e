import csv
import io
import json
import math
import subprocess
import sys
from fractions import Fraction as Q

import pytest

import oracles
from hyppow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_coeffs_k2_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "k2", "-n", "3")
    assert code == 0
    rows = csv_rows(out)
    assert list(rows[0]) == ["n", "exponent", "value_exact", "value_float"]
    assert [r["value_exact"] for r in rows] == ["1", "1/2", "11/32", "17/64"]
    assert [r["exponent"] for r in rows] == ["0", "2", "4", "6"]


def test_raw_triple_matches_oracle(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "1/3", "--b", "2/5", "--c", "7/4", "--power", "3", "-n", "12")
    assert code == 0
    got = [Q(r["value_exact"]) for r in csv_rows(out)]
    assert got == oracles.exact_power(Q(1, 3), Q(2, 5), Q(7, 4), 12, 3)


def test_json_and_csv_agree(capsys):
    args = ("coeffs", "--family", "legendre3", "--m", "2", "-n", "8")
    _, out_csv, _ = run(capsys, *args)
    _, out_json, _ = run(capsys, *args, "--format", "json")
    doc = json.loads(out_json)
    assert set(doc) == {"family", "params", "prefactor", "substituted", "records"}
    assert [{k: str(v) for k, v in r.items()} for r in doc["records"]] == csv_rows(out_csv)


def test_complex_backend(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "0.5+0.5i", "--b", "1", "--c", "2", "-n", "5")
    assert code == 0
    rows = csv_rows(out)
    ref = oracles.mp_power(0.5 + 0.5j, 1, 2, 5, 2)
    for r, x in zip(rows, ref):
        assert oracles.rel_err(complex(r["value_float"].replace("i", "j")), complex(x)) < 1e-13


@pytest.mark.parametrize(
    "argv",
    [
        ["coeffs", "--a", "1", "--b", "1", "--c=-2"],
        ["coeffs", "--family", "legendre2"],
        ["eval", "--family", "k2", "--z", "1.0"],
        ["coeffs", "--family", "k2", "-n", "-1"],
        ["coeffs", "--family", "nope"],
    ],
)
def test_invalid_input_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejects unknown choices itself
        code = exc.code
    assert code == 2


def test_zero_denominator_policy(capsys):
    args = ("coeffs", "--a", "1", "--b", "1", "--c=-1/2", "-n", "5")
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert json.loads(run(capsys, *args, "--format", "json")[1])["substituted"] == [3]
    code, _, err = run(capsys, *args, "--policy", "error")
    assert code == 3 and "n=2" in err


def test_eval_k2_at_zero(capsys):
    code, out, _ = run(capsys, "eval", "--family", "k2", "--z", "0", "--format", "json")
    assert code == 0
    assert float(json.loads(out)["value"]) == pytest.approx(math.pi**2 / 4, rel=1e-15)


def test_eval_e2_against_quadrature(capsys):
    code, out, _ = run(capsys, "eval", "--family", "e2", "--z", "0.5", "--format", "json")
    assert code == 0
    assert float(json.loads(out)["value"]) == pytest.approx(oracles.E_quad(0.5) ** 2, rel=1e-12)


def test_verify_pass_and_inconclusive(capsys):
    code, out, _ = run(capsys, "verify", "clausen", "--a", "1/2", "--b", "1/2", "-n", "20")
    assert code == 0 and json.loads(out)["summary"]["pass"] == 1
    code, out, _ = run(capsys, "verify", "monotonicity", "--a", "2", "--b", "1/2", "--c", "1", "-n", "20")
    assert code == 1
    assert json.loads(out)["reports"][0]["status"] == "inconclusive"


def test_verify_k_log_samples(capsys):
    code, out, _ = run(capsys, "verify", "k-log", "--samples", "0.1,0.5,0.9")
    assert code == 0
    assert json.loads(out)["summary"]["total"] == 2


def test_bench_smoke_and_fault(capsys):
    code, out, _ = run(capsys, "bench", "-N", "10", "--backend", "complex", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "k3"
    assert {r["method"] for r in doc["results"]} == {"recurrence", "cauchy-binary"}
    code, _, err = run(capsys, "bench", "-N", "10", "--backend", "complex", "--inject-fault")
    assert code == 4 and "disagrees" in err


def test_bench_rational_small(capsys):
    code, out, _ = run(capsys, "bench", "--family", "k2", "-N", "50,100", "--format", "json")
    assert code == 0
    assert [r["N"] for r in json.loads(out)["results"]] == [50, 50, 100, 100]


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HYPPOW_OUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "coeffs", "--family", "e2", "-n", "2", "--out", "sub/e2.csv")
    assert code == 0 and out == ""
    assert csv_rows((tmp_path / "sub" / "e2.csv").read_text())[1]["value_exact"] == "-1/2"


def test_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("HYPPOW_JOBS", "two")
    assert run(capsys, "verify", "ramanujan-preece")[0] == 2
    monkeypatch.setenv("HYPPOW_JOBS", "2")
    assert run(capsys, "verify", "ramanujan-preece")[0] == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hyppow.cli", "coeffs", "--family", "k2", "-n", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "1,2,1/2,0.5"

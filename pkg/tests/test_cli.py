import csv
import io
import json
import os
import subprocess
import sys

import mpmath
import pytest

from stieltjes_kit.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stream=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, json.loads(text)


def test_gamma_zeta_rows():
    code, doc = run_json("gamma", "zeta", "--n", "0..5", "--prec", "30")
    assert code == 0
    assert doc["meta"]["precision"] == 30
    rows = doc["data"]["entries"]
    assert [r["n"] for r in rows] == list(range(6))
    assert rows[0]["value_re"].startswith("0.577215664901532")
    assert set(rows[0]) == {"n", "value_re", "value_im", "error_estimate"}


def test_gamma_char_chi4():
    code, doc = run_json("gamma", "char", "--q", "4", "--index", "1", "--n", "0")
    assert code == 0
    assert doc["data"]["entries"][0]["value_re"].startswith("0.785398163")


def test_gamma_hurwitz_one_equals_zeta():
    _, a = run_json("gamma", "hurwitz", "--a", "1/1", "--n", "3")
    _, z = run_json("gamma", "zeta", "--n", "3")
    assert a["data"]["entries"] == z["data"]["entries"]


def test_bound_examples():
    code, doc = run_json("bound", "--n", "12", "--q", "1")
    assert code == 0
    assert mpmath.mpf(doc["data"]["theta"]) >= mpmath.mpf("5.1513")
    assert mpmath.mpf(doc["data"]["d_term"]) <= mpmath.mpf("0.0209")
    code, doc = run_json("bound", "--n", "1", "--q", "1")
    assert code == 2
    assert doc["error"]["hypothesis"] == "n-range"
    code, doc = run_json("bound", "--crossover", "--q", "1", "--n-max", "100")
    assert code == 0
    assert doc["data"]["crossover"] == 11 and doc["data"]["agrees_with_reported"]


def test_taylor_examples():
    code, doc = run_json("taylor", "--q", "100")
    assert code == 2 and doc["error"]["type"] == "QTooSmall"
    code, doc = run_json("taylor", "--q", "151", "--samples", "0", "--prec", "20")
    assert code == 0
    assert len(doc["data"]["samples"]) == 1 and doc["data"]["samples"][0]["s_re"] == "1"


@pytest.mark.slow
def test_taylor_eight_samples():
    code, doc = run_json("taylor", "--q", "151", "--index", "1", "--samples", "8", "--prec", "20")
    assert code == 0
    assert len(doc["data"]["samples"]) == 9 and doc["data"]["all_pass"]


def test_zerofree_examples():
    code, doc = run_json("zerofree", "--tol", "1e-6")
    assert code == 0
    assert mpmath.mpf("2.2093") <= mpmath.mpf(doc["data"]["t0"]) <= mpmath.mpf("2.2095")
    code, doc = run_json("zerofree", "--tol", "1e-6", "--at", "2.2093")
    assert code == 0
    assert abs(mpmath.mpf(doc["data"]["head"]) - mpmath.mpf("0.000941198")) < 1e-9
    assert abs(mpmath.mpf(doc["data"]["tail"]) - mpmath.mpf("0.000924993")) < 1e-9
    _, doc = run_json("zerofree", "--at", "0")
    with mpmath.workdps(60):
        assert abs(mpmath.mpf(doc["data"]["margin"]) - (1 - mpmath.euler)) < mpmath.mpf(10) ** -45


def test_zerofree_at_failing_radius():
    code, doc = run_json("zerofree", "--at", "2.3")
    assert code == 3 and doc["data"]["valid"] is False


def test_verify_minimal_and_fault():
    code, doc = run_json("verify", "--n-max", "12", "--prec", "20")
    assert code == 0
    assert all(c["passed"] for c in doc["data"]["checks"])
    code, _ = run_json("verify", "--n-max", "12", "--prec", "20", "--test-hooks", "--inject-fault", "gamma1")
    assert code == 3


def test_fault_needs_test_hooks():
    code, _ = run("verify", "--n-max", "12", "--inject-fault", "gamma1")
    assert code == 2


def test_chars_list():
    code, doc = run_json("chars", "list", "--q", "8")
    assert code == 0
    chars = doc["data"]["characters"]
    assert len(chars) == 4 and sum(c["primitive"] for c in chars) == 2


def test_csv_columns():
    code, text = run("gamma", "zeta", "--n", "0..2", "--format", "csv", "--prec", "15")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["n"] for r in rows] == ["0", "1", "2"]
    assert list(rows[0]) == ["n", "value_re", "value_im", "error_estimate"]


def test_usage_errors():
    assert run("gamma", "zeta", "--n", "5..2")[0] == 2
    assert run("gamma", "zeta", "--n", "0", "--max-n", "3", "--n", "0..9")[0] == 2
    assert run("nonsense")[0] == 2


def _subprocess(args, env=None):
    return subprocess.run([sys.executable, "-m", "stieltjes_kit", *args], capture_output=True,
                          env={**os.environ, **(env or {})}, check=False)


def test_repeat_runs_are_byte_identical():
    args = ["gamma", "char", "--q", "7", "--index", "2", "--n", "0..3", "--prec", "25", "--format", "json"]
    first, second = _subprocess(args), _subprocess(args)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_precision_from_environment():
    proc = _subprocess(["gamma", "zeta", "--n", "0", "--format", "json"], env={"SK_PRECISION": "22"})
    assert json.loads(proc.stdout)["meta"]["precision"] == 22

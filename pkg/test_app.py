#!/usr/bin/env python3
"""
End-to-end tests of the lde-pms command line: CSV layout, exit codes, determinism.
"""

import contextlib
import csv
import io
import math
import os
import sys
import tempfile

import pytest

import app


def run_cli(*argv):
    """(exit code, parsed CSV rows, stderr text)"""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = app.main(list(argv))
    return code, list(csv.reader(io.StringIO(out.getvalue()))), err.getvalue()


def test_duffing_harmonic_limit():
    code, rows, _ = run_cli("duffing", "--mu", "0", "--amplitude", "1", "--order", "5")
    assert code == 0
    assert rows[0] == ["order", "lambda", "partial_sum", "error_vs_exact"]
    assert len(rows) == 7
    for row in rows[1:]:
        assert float(row[2]) == pytest.approx(2.0 * math.pi, rel=1e-15)


def test_duffing_figure1():
    code, rows, _ = run_cli("duffing", "--mu", "1", "--amplitude", "10", "--order", "20", "--figure1")
    assert code == 0
    assert len(rows) == 1 + 3 * 21
    assert len({row[1] for row in rows[1:]}) == 3


def test_duffing_outside_certified_region():
    code, rows, err = run_cli("duffing", "--mu", "1", "--amplitude", "10", "--lambda", "1.0")
    assert code == 2
    assert rows == []
    assert "❌" in err
    code, _, _ = run_cli("duffing", "--mu", "1", "--amplitude", "10", "--lambda", "1.0", "--engine", "--order", "3")
    assert code == 2


def test_duffing_engine():
    code, rows, _ = run_cli("duffing", "--mu", "1", "--amplitude", "2", "--order", "6", "--engine")
    assert code == 0
    assert len(rows) == 8
    assert float(rows[-1][3]) < 2e-3 * float(rows[-1][2])


def test_zeta_single_value():
    code, rows, _ = run_cli("zeta", "--s", "3", "--lambda", "pms", "--terms", "100")
    assert code == 0
    header, row = rows
    assert header == ["s_real", "s_imag", "lambda", "terms", "value_real", "value_imag", "abs_error"]
    assert float(row[2]) == 0.125
    assert row[3] == "100"
    assert float(row[4]) == pytest.approx(1.2020569031595942, rel=1e-14)
    assert float(row[6]) <= 2e-14


def test_zeta_lambda_choices():
    test_cases = [
        (("--s", "3", "--lambda", "knopp"), 1.0),
        (("--s", "3", "--lambda", "small"), 1e-3),
        (("--s", "2.5", "--lambda", "pms"), 2.0 ** -2.5),
        (("--tau", "20", "--lambda", "0.3"), 0.3),
    ]
    for argv, expected in test_cases:
        code, rows, _ = run_cli("zeta", *argv)
        assert code == 0, argv
        assert float(rows[1][2]) == pytest.approx(expected, rel=1e-15), argv
    for argv in (("--tau", "20"), ("--s", "1.5"), ("--s", "3", "--lambda", "abc"), ("--s", "x+y")):
        code, _, _ = run_cli("zeta", *argv)
        assert code == 2, argv


def test_precession_default_is_mercury():
    code, rows, _ = run_cli("gr", "precess")
    assert code == 0
    assert rows[0] == ["a", "ecc", "exact", "pms", "leading"]
    assert float(rows[1][4]) == pytest.approx(4.93e-7, rel=2e-3)
    assert float(rows[1][2]) == pytest.approx(float(rows[1][3]), rel=1e-6)


def test_small_figures():
    code, rows, _ = run_cli("gr", "deflect", "--figure2", "--points", "5")
    assert code == 0
    assert rows[0] == ["r0", "exact", "pms", "asymptotic"]
    assert len(rows) == 6

    code, rows, _ = run_cli("zeta", "--figure8", "--points", "4", "--taus", "20", "30")
    assert code == 0
    assert rows[0] == ["lambda", "err_tau_20", "err_tau_30"]
    assert len(rows) == 5

    code, rows, _ = run_cli("pendulum", "--figure", "--points", "4")
    assert code == 0
    assert len(rows) == 5
    assert float(rows[-1][0]) == 2.0
    for row in rows[1:]:
        assert float(row[4]) <= 0.01


def test_deflect_needs_r0():
    code, _, err = run_cli("gr", "deflect")
    assert code == 2
    assert "--r0" in err
    code, rows, _ = run_cli("gr", "deflect", "--r0", "1e5")
    assert code == 0
    assert len(rows) == 2


def test_bad_arguments():
    test_cases = [
        (),
        ("nonsense",),
        ("duffing", "--mu", "1"),
        ("wkb", "--order", "3"),
        ("zeta", "--precision", "0"),
        ("duffing", "--mu", "-1", "--amplitude", "1"),
        ("pendulum", "--theta", "4.0"),
        ("wkb", "--levels", "-1"),
        ("wkb", "--levels", "two"),
        ("duffing", "--mu", "1", "--amplitude", "1", "--order", "-1"),
        ("pendulum", "--order", "-2"),
        ("zeta", "--terms", "-3"),
    ]
    for argv in test_cases:
        code, _, _ = run_cli(*argv)
        assert code == 2, argv


def test_output_file_is_bit_stable():
    argv = ("zeta", "--figure6", "--terms", "20")
    with tempfile.TemporaryDirectory() as tmp:
        paths = [os.path.join(tmp, f"run{i}.csv") for i in range(2)]
        for path in paths:
            code, rows, _ = run_cli(*argv, "--out", path)
            assert code == 0
            assert rows == []
        with open(paths[0], "rb") as first, open(paths[1], "rb") as second:
            content = first.read()
            assert content == second.read()
    lines = content.decode("utf-8").splitlines()
    assert lines[0] == "K,err_lambda_pms,err_lambda_small,err_direct_sum"
    assert len(lines) == 22


def test_precision_flag():
    code, rows, _ = run_cli("zeta", "--s", "3", "--lambda", "knopp", "--terms", "40", "--precision", "4")
    assert code == 0
    assert rows[1][4] == "1.202"


if __name__ == "__main__":
    import selftest

    sys.exit(1 if selftest.run_suite("app", sys.modules[__name__]) else 0)

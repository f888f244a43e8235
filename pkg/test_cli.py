"""
Tests for the command-line surface: output documents and exit codes.
"""

import json
import sys
from pathlib import Path

from mpmath import mpf
from typer.testing import CliRunner

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from qdilog.main import app
from qdilog.schemas.report import VerificationReport

runner = CliRunner()


# ================================
# EVAL
# ================================

def test_eval_li2q():
    result = runner.invoke(app, ["eval", "li2q", "--z", "0.25", "--q", "0.5", "--prec", "30"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["function"] == "li2q"
    assert document["params"] == {"z": "0.25", "q": "0.5"}
    assert document["digits"] == 30
    assert abs(mpf(document["value_re"]) - mpf("0.5489149145")) < mpf("1e-9")
    assert mpf(document["value_im"]) == 0
    assert document["terms_used"] > 0


def test_eval_at_zero():
    result = runner.invoke(app, ["eval", "li2q", "--z", "0", "--q", "0.5"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert mpf(document["value_re"]) == 0
    assert document["digits"] == 50


def test_eval_exit_codes():
    assert runner.invoke(app, ["eval", "li2q", "--z", "1.5", "--q", "0.5"]).exit_code == 3
    assert runner.invoke(app, ["eval", "nosuch", "--z", "0.5"]).exit_code == 2
    assert runner.invoke(app, ["eval", "li2q", "--z", "0.5"]).exit_code == 2
    assert runner.invoke(app, ["eval", "li2q", "--z", "0.5", "--q", "0.5", "--prec", "10"]).exit_code == 2
    assert runner.invoke(app, ["eval", "qlog", "--z", "2", "--q", "0.5"]).exit_code == 3


def test_eval_other_functions():
    cases = [
        ["hurwitz", "--s", "2", "--z", "1"],
        ["periodic_zeta", "--theta", "0.5", "--s", "2"],
        ["polylog", "--s", "2", "--z", "0.5"],
        ["polygamma", "--n", "1", "--z", "1"],
        ["bernoulli", "--n", "2", "--z", "0.3"],
        ["apostol", "--n", "2", "--x", "0.3", "--theta", "0.5"],
        ["qlog", "--z", "2.5", "--q", "0.5"],
        ["qpolylog", "--n", "3", "--z", "0.5", "--q", "0.5"],
        ["euler_series", "--z", "0.3", "--q", "0.5"],
    ]
    for arguments in cases:
        result = runner.invoke(app, ["eval"] + arguments + ["--prec", "20"])
        assert result.exit_code == 0, arguments
        assert json.loads(result.stdout)["function"] == arguments[0]


# ================================
# VERIFY
# ================================

def test_verify_with_grid_file(tmp_path):
    grid = tmp_path / "grid.jsonl"
    grid.write_text('{"q": "0.5", "z": "0.25"}\n{"q": 0.7, "z": "-0.6"}\n')
    result = runner.invoke(app, ["verify", "kirillov", "--grid", str(grid), "--prec", "30"])
    assert result.exit_code == 0
    report = VerificationReport.model_validate_json(result.stdout)
    assert report.passed
    assert report.cases[1].inputs == {"q": "0.7", "z": "-0.6"}
    assert report.model_dump_json(indent=2) == result.stdout.rstrip("\n")


def test_verify_failures():
    assert runner.invoke(app, ["verify", "nosuch"]).exit_code == 2
    assert runner.invoke(app, ["verify", "kirillov", "--grid", "missing.jsonl"]).exit_code == 2


def test_verify_failing_suite_exits_nonzero(tmp_path):
    grid = tmp_path / "grid.jsonl"
    grid.write_text('{"q": "0.5", "z": "1.5"}\n')
    result = runner.invoke(app, ["verify", "kirillov", "--grid", str(grid), "--prec", "20"])
    assert result.exit_code == 1


# ================================
# EXPAND
# ================================

def test_expand_q1_oracle():
    result = runner.invoke(app, [
        "expand", "q1", "--zparam", "2", "--theta", "0.3", "--order", "4",
        "--provenance", "oracle", "--prec", "30",
    ])
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "power,coeff_re,coeff_im,provenance"
    assert [int(line.split(",")[0]) for line in lines[1:]] == [-1, 0, 1, 2, 3, 4]
    assert all(line.endswith("residue_oracle") for line in lines[1:])


def test_expand_boundary_order():
    result = runner.invoke(app, ["expand", "q1", "--order", "0", "--prec", "20"])
    assert result.exit_code == 0
    assert len(result.stdout.strip().splitlines()) == 3


def test_expand_q0_ci_at_half():
    result = runner.invoke(app, ["expand", "q0", "--part", "ci", "--theta", "0.5", "--order", "3", "--prec", "20"])
    assert result.exit_code == 0
    rows = result.stdout.strip().splitlines()[1:]
    assert len(rows) == 3
    for row in rows:
        _, re, im, _ = row.split(",")
        assert abs(mpf(re)) < mpf("1e-10")
        assert abs(mpf(im)) < mpf("1e-10")


def test_expand_errors():
    assert runner.invoke(app, ["expand", "q0", "--zparam", "0.5"]).exit_code == 3
    assert runner.invoke(app, ["expand", "q2"]).exit_code == 2
    assert runner.invoke(app, ["expand", "q0", "--part", "other"]).exit_code == 2
    assert runner.invoke(app, ["expand", "q1", "--provenance", "tabulated"]).exit_code == 2


# ================================
# INTEGRAL AND CROSSOVER
# ================================

def test_integral_si2_vanishes_at_half(tmp_path):
    out = tmp_path / "si2.json"
    result = runner.invoke(app, [
        "integral", "--which", "si2", "--x", "8", "--theta", "0.5", "--prec", "20", "--out", str(out),
    ])
    assert result.exit_code == 0
    document = json.loads(out.read_text())
    assert document["which"] == "si2"
    assert mpf(document["value_re"]) == 0
    assert document["params"]["c"] == "1.5"


def test_integral_abscissa_close_to_the_pole():
    result = runner.invoke(app, ["integral", "--which", "li2", "--c", "1.1", "--prec", "20"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert mpf(document["step"]) < mpf("0.11")


def test_integral_tolerance_option():
    loose = runner.invoke(app, ["integral", "--which", "li2", "--tol", "1e-8", "--prec", "20"])
    tight = runner.invoke(app, ["integral", "--which", "li2", "--prec", "20"])
    assert loose.exit_code == 0 and tight.exit_code == 0
    loose_document, tight_document = json.loads(loose.stdout), json.loads(tight.stdout)
    assert loose_document["params"]["tol"] == "1e-8"
    assert "tol" not in tight_document["params"]
    assert loose_document["nodes_used"] < tight_document["nodes_used"]
    assert runner.invoke(app, ["integral", "--which", "li2", "--tol", "0", "--prec", "20"]).exit_code == 2


def test_integral_errors():
    assert runner.invoke(app, ["integral", "--which", "li2", "--c", "0.5", "--prec", "20"]).exit_code == 2
    assert runner.invoke(app, ["integral", "--which", "li3", "--prec", "20"]).exit_code == 2


def test_crossover_without_points():
    result = runner.invoke(app, ["crossover", "--prec", "20"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "x,direct_terms,direct_time,asymp_N,asymp_error,direct_error"


def test_crossover_rows():
    result = runner.invoke(app, ["crossover", "--x", "0.1", "--x", "0.01", "--prec", "20"])
    assert result.exit_code == 0
    rows = [line.split(",") for line in result.stdout.strip().splitlines()[1:]]
    assert len(rows) == 2
    assert int(rows[1][1]) > 5 * int(rows[0][1])
    assert int(rows[1][3]) >= 1
    assert mpf(rows[0][5]) < mpf("1e-15")

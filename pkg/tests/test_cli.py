import csv
import io
import json
import math
from fractions import Fraction

import pytest

from quartic_lab.cli import main
from quartic_lab.special import series_bases


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None


def test_eval_quadrature_anchor(capsys):
    code, rep = run_json(capsys, "eval", "--n", "2", "--alpha", "2", "--m", "0", "--a", "1", "--method", "quadrature")
    assert code == 0
    assert rep["value"] == pytest.approx(math.pi / 4, rel=1e-12)
    assert set(rep) >= {"method", "value", "error_bound", "terms_or_evals"}


def test_eval_series_matches_quadrature(capsys):
    _, s = run_json(capsys, "eval", "--m", "3", "--a", "0.5", "--method", "series", "--tol", "1e-12")
    _, q = run_json(capsys, "eval", "--m", "3", "--a", "0.5", "--method", "quadrature")
    assert abs(s["value"] - q["value"]) <= 1e-10 * q["value"]


def test_eval_closed(capsys):
    code, rep = run_json(capsys, "eval", "--m", "1", "--a", "0", "--method", "closed")
    assert code == 0 and rep["value"] == pytest.approx(3 * math.pi / (8 * math.sqrt(2)), rel=1e-15)


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--n", "2", "--alpha", "2", "--m", "0", "--a", "1.5", "--method", "series"],
        ["eval", "--m", "0", "--a", "-1"],
        ["eval", "--n", "3", "--m", "0", "--a", "0", "--method", "closed"],
        ["eval", "--m", "0", "--a", "0", "--tol", "1e-16"],
        ["poly", "--m", "-1"],
        ["verify", "--theorem", "3", "--variant", "nonsense"],
        ["ode2rec", "--operator", "D_a*a"],
        ["ode2rec", "--operator", "D_x + 1"],
        ["crosscheck", "--a-grid", "0,x"],
    ],
)
def test_domain_and_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("quartic-lab:") and err.count("\n") == 1


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--m", "zero", "--a", "0"])
    assert exc.value.code == 2


def test_verify_quartic(capsys):
    code, rep = run_json(capsys, "verify", "--theorem", "2", "--variant", "printed")
    assert code == 0 and rep["verified"] and rep["residual_text"] == "0"
    assert len(rep["spot_checks"]) == 5 and all(s["ok"] for s in rep["spot_checks"])


def test_verify_corrupted_fails(capsys):
    code, rep = run_json(capsys, "verify", "--theorem", "2", "--variant", "printed", "--corrupt")
    assert code == 1 and not rep["verified"] and rep["residual_text"] != "0"


def test_verify_general_n_variants(capsys):
    code, rep = run_json(capsys, "verify", "--theorem", "3")
    assert code == 0
    assert rep["verifying"] == ["corrected"]
    assert [r["verified"] for r in rep["results"]].count(True) == 1
    assert run(capsys, "verify", "--theorem", "3", "--variant", "printed")[0] == 1
    assert run(capsys, "verify", "--theorem", "3", "--variant", "corrected")[0] == 0


def test_verify_corrupt_all(capsys):
    code, rep = run_json(capsys, "verify", "--theorem", "3", "--corrupt")
    assert code == 1 and rep["verifying"] == []


def test_seed_env_changes_spot_points(capsys, monkeypatch):
    monkeypatch.setenv("QUARTIC_LAB_SEED", "1")
    _, r1 = run_json(capsys, "verify", "--theorem", "2", "--variant", "printed")
    monkeypatch.setenv("QUARTIC_LAB_SEED", "2")
    _, r2 = run_json(capsys, "verify", "--theorem", "2", "--variant", "printed")
    assert r1["spot_checks"] != r2["spot_checks"]
    assert r1["residual_text"] == r2["residual_text"] == "0"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--theorem", "3"],
        ["eval", "--n", "3", "--m", "2", "--a", "3/10", "--method", "series"],
        ["crosscheck", "--m-max", "2", "--out", "csv"],
        ["poly", "--m", "7"],
    ],
)
def test_byte_identical_reruns(capsys, argv):
    assert run(capsys, *argv) == run(capsys, *argv)


def test_poly(capsys):
    assert run_json(capsys, "poly", "--m", "0")[1]["coeffs"] == ["1"]
    assert run_json(capsys, "poly", "--m", "1")[1]["coeffs"] == ["3/2", "1"]
    code, rep = run_json(capsys, "poly", "--m", "20", "--exact")
    assert code == 0 and "floats" not in rep
    coeffs = [Fraction(c) for c in rep["coeffs"]]
    assert len(coeffs) == 21 and all(c > 0 for c in coeffs)
    assert all(coeffs[k] ** 2 >= coeffs[k - 1] * coeffs[k + 1] for k in range(1, 20))
    assert rep["positive"] and rep["log_concave"]


def test_ode2rec(capsys):
    code, rep = run_json(capsys, "ode2rec", "--theorem", "2")
    assert code == 0
    assert rep["offsets"] == {"0": "-8*m*l - 4*m - 4*l^2 - 8*l - 3", "2": "4*l^2 + 12*l + 8"}
    _, rep = run_json(capsys, "ode2rec", "--operator=-4*m-3-4*a*(2*m+3)*D_a-4*(a^2-1)*D_a^2", "--m", "1")
    assert rep["offsets"] == {"0": "-4*l^2 - 16*l - 7", "2": "4*l^2 + 12*l + 8"}


def test_ode2rec_general_n_at_n2(capsys):
    _, rep = run_json(capsys, "ode2rec", "--theorem", "3", "--variant", "corrected", "--n", "2")
    # at n = 2 the corrected operator is a quarter of the quartic operator
    assert rep["offsets"]["2"] == "l^2 + 3*l + 2"


def test_crosscheck_default_passes(capsys):
    code, rep = run_json(capsys, "crosscheck")
    assert code == 0
    assert len(rep["rows"]) == 45
    assert rep["worst"]["max_rel_dev"] <= 1e-10


def test_crosscheck_zero_rows_equal_c0(capsys):
    _, rep = run_json(capsys, "crosscheck", "--n-set", "2,3", "--m-max", "3", "--a-grid", "0")
    for row in rep["rows"]:
        assert row["series"] == series_bases(row["n"], row["m"]).c0


def test_crosscheck_n1_row(capsys):
    _, rep = run_json(capsys, "crosscheck", "--n-set", "1", "--m-max", "0", "--a-grid", "0")
    (row,) = rep["rows"]
    assert row["closed"] is None
    for key in ("quad", "series"):
        assert row[key] == pytest.approx(math.pi / 2, rel=1e-12)


def test_crosscheck_failure_exit_1(capsys):
    code, out, err = run(capsys, "crosscheck", "--m-max", "1", "--tol", "1e-40")
    assert code == 1
    assert "worst" in err


def test_crosscheck_csv_and_parallel(capsys):
    code, out, _ = run(capsys, "crosscheck", "--n-set", "2,3", "--m-max", "2", "--scale-a", "--out", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "alpha", "m", "a", "quad", "series", "closed", "max_rel_dev"]
    assert len(rows) == 2 * 3 * 5
    par = run(capsys, "crosscheck", "--n-set", "2,3", "--m-max", "2", "--scale-a", "--out", "csv", "--jobs", "2")
    assert par[1] == out

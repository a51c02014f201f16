import csv
import io
import json
from fractions import Fraction as F

import pytest

from hahnbispec.bases import build_U_series, weight
from hahnbispec.bispectral import closed_U_matrix, lam
from hahnbispec.cli import main
from hahnbispec.errors import UnknownSelector
from hahnbispec.kernel import hyp_sum_terminating
from hahnbispec.params import Params, draw_many
from hahnbispec.report import (
    VerificationReport,
    parse_matrix,
    parse_ratfun,
    parse_vector,
    to_jsonable,
)
from hahnbispec.suite import (
    CHECKS,
    ConfigError,
    SuiteConfig,
    emit_object,
    render,
    report_document,
    run_suite,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_draws_are_reproducible_and_generic():
    a = draw_many(7, 4, 10)
    assert a == draw_many(7, 4, 10)
    assert a != draw_many(8, 4, 10)
    assert all(p.is_generic for p in a)


def test_config_validation():
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(N_list=[0]))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(param_draws=0))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(checks=["nonsense"]))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(explicit_params=[(F(1), F(1, 3))]))


def test_suite_single_instance_passes():
    cfg = SuiteConfig(N_list=[1], explicit_params=[(F(1, 2), F(1, 3))])
    result = run_suite(cfg)
    assert result["all_passed"]
    ids = {r.check_id.split("[")[0] for r in result["checks"]}
    assert ids == set(CHECKS)


def test_forced_degenerate_reports_errors():
    cfg = SuiteConfig(N_list=[1], explicit_params=[(F(1), F(1, 3))], force=True)
    result = run_suite(cfg)
    assert not result["all_passed"]
    bad = [r for r in result["checks"] if not r.passed]
    assert bad and all(r.counterexample for r in bad)
    assert any(r.status == "error" for r in bad)


def test_failing_report_needs_counterexample():
    with pytest.raises(ValueError):
        VerificationReport("x", None, "fail")


def test_report_is_sorted():
    result = run_suite(SuiteConfig(N_list=[2, 1], param_draws=2, checks=["weight", "casimir"]))
    keys = [(r.check_id, r.params.sort_key()) for r in result["checks"]]
    assert keys == sorted(keys)


def test_determinism():
    cfg = SuiteConfig(N_list=[1, 2], param_draws=2, seed=42, checks=["weight", "biorthogonality"])
    a = render(report_document(run_suite(cfg), timing=False))
    b = render(report_document(run_suite(cfg), timing=False))
    assert a == b


def test_emit_examples():
    p = Params(F(1, 2), F(1, 3), 1)
    assert to_jsonable(emit_object("matrix", {"op": "X"}, p)) == [["-1/2", "0"], ["-1", "1/2"]]
    w = Params(F(1, 2), F(2), 1, force=True)
    assert to_jsonable(emit_object("weight", {}, w)) == ["5/4", "-1/4"]
    lp = Params(F(1, 3), F(1, 2), 5)
    assert to_jsonable(emit_object("coefficients", {"family": "lambda"}, lp)) == [
        "0", "7/2", "5", "9/2", "2", "-5/2"]


def test_emit_unknown_selector(generic):
    with pytest.raises(UnknownSelector):
        emit_object("matrix", {"op": "W"}, generic)
    with pytest.raises(UnknownSelector):
        emit_object("coefficients", {"family": "rho"}, generic)
    with pytest.raises(UnknownSelector):
        emit_object("tensor", {}, generic)


def test_emit_round_trip(generic):
    m = closed_U_matrix("Y", generic)
    assert parse_matrix(json.loads(render(m))) == m
    f = build_U_series(2, generic).fun
    assert parse_ratfun(json.loads(render(f))) == f
    w = weight(generic).values
    assert parse_vector(json.loads(render(w))) == w


def test_emit_mu_marks_degenerate_rows():
    p = Params(F(1, 2), F(1), 3, force=True)
    rows = emit_object("coefficients", {"family": "mu"}, p)
    assert rows[1] is None
    assert rows[0][6] == -2


def test_cli_emit_matrix(capsys):
    code, out, _ = run_cli(capsys, "emit", "matrix", "--op", "X", "--N", "1", "--alpha", "1/2")
    assert code == 0
    assert json.loads(out) == [["-1/2", "0"], ["-1", "1/2"]]


def test_cli_emit_lambda(capsys):
    code, out, _ = run_cli(capsys, "emit", "coefficients", "--family", "lambda", "--N", "5", "--beta", "1/2")
    assert code == 0 and json.loads(out) == ["0", "7/2", "5", "9/2", "2", "-5/2"]


def test_cli_emit_weight_forced(capsys):
    code, out, _ = run_cli(capsys, "emit", "weight", "--N", "1", "--alpha", "1/2", "--beta", "2", "--force")
    assert code == 0 and json.loads(out) == ["5/4", "-1/4"]
    code, _, err = run_cli(capsys, "emit", "weight", "--N", "1", "--alpha", "1/2", "--beta", "2")
    assert code == 2 and "InvalidParams" in err


def test_cli_eval_cross_check(capsys):
    code, out, _ = run_cli(capsys, "eval", "U", "--n", "1", "--x", "0", "--N", "3", "--beta", "1", "--force")
    assert code == 0 and json.loads(out) == {"value": "3/2", "series": "3/2"}
    code, out, _ = run_cli(capsys, "eval", "V", "--n", "2", "--x", "5/3", "--N", "4")
    d = json.loads(out)
    assert d["value"] == d["series"]


def test_cli_eval_matches_series(generic):
    x0 = F(4, 9)
    for n in range(generic.N + 1):
        c0 = build_U_series(n, generic).coefficients[0]
        s = c0 * hyp_sum_terminating([-x0, -n, generic.beta + n - generic.N],
                                     [-generic.N, generic.alpha - x0], generic.N)
        assert build_U_series(n, generic).fun(x0) == s


def test_cli_params(capsys):
    code, out, _ = run_cli(capsys, "params", "--N", "2", "--alpha", "1/3", "--beta", "1", "--force")
    d = json.loads(out)
    assert code == 0
    assert d["xi"]["xi1"] == "1" and d["casimir"] == "1/9"
    assert d["lambda"] == [str(lam(n, Params(F(1, 3), F(1), 2, force=True))) for n in range(3)]


def test_cli_verify_exit_codes(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, err = run_cli(capsys, "verify", "weight", "casimir", "--N", "1", "2", "--draws", "2",
                           "--out", str(out))
    assert code == 0 and "passed" in err
    doc = json.loads(out.read_text())
    assert doc["all_passed"] and len(doc["checks"]) == 8
    code, _, _ = run_cli(capsys, "verify", "--N", "1", "--alpha", "1", "--beta", "1/3", "--force")
    assert code == 1
    code, _, _ = run_cli(capsys, "verify", "--N", "1", "--alpha", "1", "--beta", "1/3")
    assert code == 2
    code, _, _ = run_cli(capsys, "verify", "bogus", "--N", "1")
    assert code == 2


def test_cli_csv_report(capsys):
    code, out, _ = run_cli(capsys, "verify", "weight", "--N", "1", "--draws", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][:5] == ["check_id", "alpha", "beta", "N", "status"]
    assert rows[1][0] == "weight" and rows[1][4] == "pass"


def test_cli_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HAHNBISPEC_OUT_DIR", str(tmp_path))
    code, _, _ = run_cli(capsys, "emit", "weight", "--N", "2", "--out", "sub/w.json")
    assert code == 0
    assert len(json.loads((tmp_path / "sub" / "w.json").read_text())) == 3


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_jsonable([0.5])

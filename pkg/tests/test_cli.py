import json
from fractions import Fraction

import pytest

from qcross.cli import CHECK_NAMES, SuiteConfig, main, report_tables, run


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ybe_specialized(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "ybe", "--mode", "specialized", "--r", "2", "--s", "3")
    assert code == 0 and "| ybe |" in out


def test_timings_flag(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "ybe", "--timings", "--output", "json")
    assert code == 0 and "timing_s" in json.loads(out)["checks"][0]


@pytest.mark.parametrize("argv", [
    ["verify", "--check", "nonsense"],
    ["verify", "--check", "ybe", "--mode", "specialized", "--r", "2"],
    ["verify", "--check", "ybe", "--mode", "specialized", "--r", "0", "--s", "1"],
    ["verify", "--check", "ybe", "--mode", "specialized", "--r", "1", "--s", "2"],
    ["verify", "--check", "ybe", "--mode", "specialized", "--r", "-1", "--s", "2"],
    ["verify", "--check", "ybe", "--r", "2", "--s", "3"],
    ["verify", "--check", "ybe", "--convention", "tp=7"],
    ["verify", "--check", "ybe", "--mode", "specialized", "--r", "x", "--s", "1"],
    ["verify", "--check", "ybe", "--degree", "0"],
    ["frobnicate"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, _, _ = run_cli(capsys, *argv)
    assert code == 2


def test_classical_limit_accepts_r_one(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "classical-limit", "--mode", "specialized",
                           "--r", "1", "--s", "1")
    assert code == 0
    # s != 1 is a valid point; the check runs and reports the surviving f-action
    code, out, _ = run_cli(capsys, "verify", "--check", "classical-limit", "--mode", "specialized",
                           "--r", "1", "--s", "3")
    assert code == 1
    assert "only the f-action on b, c survives at r=1, s=3 | 36 | pass" in out


def test_failing_check_exits_1(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "differentials")
    assert code == 1
    assert "df = (r^-2 - 1) f ω^0 | 1 | pass" in out


def test_convention_search_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "differentials", "--convention", "search", "--output", "json")
    doc = json.loads(out)
    cs = doc["tables"]["convention_search"]
    assert cs["exact"] == [] and cs["best"] == "tp=1,inv=1,leg=second"
    assert set(cs["per_convention"]) == {"tp=1,inv=1,leg=second", "tp=1,inv=1,leg=first",
                                         "tp=1,inv=0,leg=second", "tp=1,inv=0,leg=first",
                                         "tp=0,inv=1,leg=second", "tp=0,inv=1,leg=first",
                                         "tp=0,inv=0,leg=second", "tp=0,inv=0,leg=first"}
    assert doc["verdict"] == "fail"


def test_tables(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "representation", "rtt", "differentials",
                           "--output", "json")
    t = json.loads(out)["tables"]
    assert t["pairing"]["plus"]["f"] == [["(r)/(1)", "(0)/(1)", "(0)/(1)"], ["(0)/(1)", "(s^-1)/(1)", "(0)/(1)"],
                                         ["(0)/(1)", "(0)/(1)", "(1)/(1)"]]
    df = [x for x in t["differential_terms"] if x["generator"] == "f"]
    assert df[0]["status"] == "exact"
    assert len(t["rtt_relations"]) == 10
    assert t["omega_commutation"]["ω^0"]["f"] == "( f : (r^-2)/(1) ) ω^0"


def test_empty_selection_echoes_environment():
    text = report_tables(SuiteConfig(seed=5))
    assert "seed: 5" in text and "Checks" not in text


def test_reports_are_byte_stable():
    cfg = dict(checks=["leibniz", "hopf", "covariance"], seed=3, output="json")
    assert report_tables(SuiteConfig(**cfg)) == report_tables(SuiteConfig(**cfg))
    assert report_tables(SuiteConfig(**{**cfg, "output": "markdown"})) == \
        report_tables(SuiteConfig(**{**cfg, "output": "markdown"}))


def test_records_sorted_by_name():
    report = run(SuiteConfig(checks=["ybe", "grouplike", "smash"]))
    assert [r.check for r in report.records] == ["grouplike", "smash", "ybe"]


SHARED = ["hopf", "grouplike", "rtt", "ybe", "representation", "smash", "leibniz", "cross-consistency",
          "covariance", "one-parameter"]


def verdicts(report):
    return {(rec.check, r.name): r.passed for rec in report.records for r in rec.results}


@pytest.fixture(scope="module")
def symbolic_verdicts():
    return verdicts(run(SuiteConfig(checks=SHARED + ["rll", "differentials"], degree_bound=2)))


@pytest.mark.parametrize("point", [(Fraction(2), Fraction(3)), (Fraction(-5, 3), Fraction(7, 2)),
                                   (Fraction(3, 11), Fraction(-4))])
def test_modes_agree(symbolic_verdicts, point):
    num = run(SuiteConfig(mode="specialized", r0=point[0], s0=point[1], checks=SHARED + ["rll", "differentials"],
                          degree_bound=2))
    assert verdicts(num) == symbolic_verdicts


def test_all_runs_every_check():
    report = run(SuiteConfig(checks=list(CHECK_NAMES)))
    assert [r.check for r in report.records] == sorted(CHECK_NAMES)

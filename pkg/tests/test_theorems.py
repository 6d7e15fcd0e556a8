import json

import pytest

from reflecto import theorems as T
from reflecto.seqgen import SturmianDirective

EXPECTED_FAIL = {"PD_RELATION"}  # odd-index formula is off by one, see test_pd_odd_case_witness


@pytest.fixture(scope="module")
def reports():
    return {r.id: r for r in T.run_all()}


def test_registry_order_and_ids(reports):
    assert list(reports) == sorted(T.REGISTRY)
    assert "CONJECTURE_SCAN" not in T.REGISTRY


@pytest.mark.parametrize("cid", sorted(set(T.REGISTRY) - EXPECTED_FAIL))
def test_default_verdicts(reports, cid):
    rep = reports[cid]
    assert rep.verdict == T.PASS, rep.witnesses[:3]
    assert rep.witnesses == []
    assert rep.details["instances"] > 0


def test_pd_odd_case_witness(reports):
    rep = reports["PD_RELATION"]
    assert rep.verdict == T.FAIL
    first = rep.witnesses[0]
    assert first == {"relation": "r(2n+1) = rho(n) + 1", "spec": "period_doubling", "n": 1, "r_2n1": 4, "rho_n": 2}
    # only the odd case fails, and it holds with rho shifted by one
    assert {w["relation"] for w in rep.witnesses} == {"r(2n+1) = rho(n) + 1"}
    assert rep.details["odd_shifted_holds_from_1"]


def test_report_round_trip(reports):
    for rep in reports.values():
        back = T.CheckReport.from_json(json.loads(rep.dumps()))
        assert back.dumps() == rep.dumps()


def test_sturmian_value_on_thue_morse():
    rep = T.run_check("STURMIAN_VALUE", T.CheckParams(specs=("thue_morse",)))
    assert rep.verdict == T.FAIL
    assert rep.witnesses[0]["n"] == 2  # smallest failing length
    assert {"relation": "r(n) = 1 + floor((n+1)/2)", "spec": "thue_morse", "n": 4, "r": 6, "expected": 3} in rep.witnesses


def test_rich_char_on_thue_morse():
    rep = T.run_check("RICH_CHAR", T.CheckParams(specs=("thue_morse",)))
    assert rep.verdict == T.FAIL
    w = rep.witnesses[0]
    assert (w["n"], w["lhs"], w["rhs"]) == (3, 10, 11)


def test_unstable_counts_are_inconclusive():
    rep = T.run_check("TM_RELATION", T.CheckParams(n_max=40, prefix=100))
    assert rep.verdict == T.INCONCLUSIVE
    assert rep.details["unstable"]


def test_failure_wins_over_instability():
    rep = T.run_check("STURMIAN_VALUE", T.CheckParams(n_max=30, prefix=64, specs=("thue_morse",)))
    assert rep.verdict == T.FAIL


def test_spec_objects_and_json_accepted():
    spec = SturmianDirective((3,), (1, 2))
    rep = T.run_check("STURMIAN_VALUE", T.CheckParams(n_max=40, specs=(spec,)))
    assert rep.verdict == T.PASS
    assert rep.specs == [json.dumps({"kind": "sturmian", "period": [1, 2], "preperiod": [3]}, sort_keys=True)]
    rep = T.run_check("ROTE_VALUE", T.CheckParams(n_max=30, specs=({"kind": "rote", "inner": {"kind": "sturmian", "period": [2]}},)))
    assert rep.verdict == T.PASS


def test_unknown_check():
    with pytest.raises(KeyError):
        T.run_check("NOPE")
    assert T.run_check("t3_equality").id == "T3_EQUALITY"


def test_mh_tails(reports):
    seqs = reports["MH_ANALOG"].details["sequences"]
    assert seqs["periodic_01"] == {"witness": 2, "even_tail": 1, "odd_tail": 2, "tails_equal": False}
    assert seqs["periodic_011"] == {"witness": 3, "even_tail": 2, "odd_tail": 2, "tails_equal": True}
    assert seqs["thue_morse"]["witness"] is None


def test_reported_thresholds(reports):
    assert reports["HALFFACTOR"].details["threshold"] == {"halffactor": 13}
    cases = reports["DICHOTOMY"].details["cases"]
    assert cases["thue_morse"] == {"case": "a", "n0": None}
    assert cases["paperfolding"] == {"case": "b", "n0": 14}
    assert reports["TM_LINREP"].details["rho_shift_rank"] == 4


def test_tm_indicator():
    # 3 * 4^(m-1) + 1 <= n <= 4^m
    ones = [n for n in range(2, 70) if T._tm_extra(n)]
    assert ones == [4, 13, 14, 15, 16, 49, 50, 51, 52, 53, 54, 55, 56, 57, 58, 59, 60, 61, 62, 63, 64]


def test_pd_indicator():
    # 3 * 2^(m-1) <= n <= 2^(m+1) - 1
    minus_one = [n for n in range(2, 30) if T._pd_extra(n) == -1]
    assert minus_one == [3, 6, 7, 12, 13, 14, 15, 24, 25, 26, 27, 28, 29]


def test_rich_bound_grows():
    assert T.rich_upper_bound(2, 2) < T.rich_upper_bound(3, 2) < T.rich_upper_bound(3, 3)
    assert T.rich_upper_bound(1, 2) == pytest.approx(1 * 2 / 2 * 1 * (1 + 8))


def test_gs_streams_are_distinct():
    streams = T.gs_streams()
    assert len(set(streams.values())) == len(streams) >= 6


@pytest.mark.parametrize("spec, n_max", [("thue_morse", 200), ("periodic_01", 50), ("fibonacci", 200)])
def test_conjecture_scan_is_never_a_verdict(spec, n_max):
    rep = T.conjecture_scan(spec, n_max)
    assert rep.verdict == T.INCONCLUSIVE
    assert rep.details["all_stable"]


def test_conjecture_scan_observations():
    tm = T.conjecture_scan("thue_morse", 200).details
    assert tm["r_n_equals_r_n_plus_2"]["count"] == 0
    per = T.conjecture_scan("periodic_01", 50).details
    assert per["r_n_equals_r_n_plus_2"]["count"] > 0
    fib = T.conjecture_scan("fibonacci", 200).details
    assert fib["first_difference"]["max_abs"] <= 1

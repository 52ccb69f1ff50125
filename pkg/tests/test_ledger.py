"""The exact-arithmetic inequality ledger."""

import json
from fractions import Fraction as F

import pytest

from nicfdim.ledger import (
    case_ids,
    render_table,
    results_to_json,
    run_case,
)


def test_unknown_case_lists_ids():
    with pytest.raises(ValueError) as err:
        run_case("case_unknown")
    for cid in case_ids():
        assert cid in str(err.value)


def test_esti_sharpness():
    res = run_case("case_esti")
    assert res.verdict == "holds"
    rows = res.row_map()
    assert rows[(("k", 5),)] == "fails"
    for k in range(6, 201):
        assert rows[(("k", k),)] == "holds"
    # frozen exact values: lhs(6) = 18750/9801, lhs(5) = 16250/6561
    assert res.lhs.lo == F(18750, 9801)
    lhs5 = F(625, 81) * F(13, 2) / F(81, 4)
    assert lhs5 == F(16250, 6561) and lhs5 > 2


def test_pm5_tightness():
    res = run_case("case_pm5")
    assert res.verdict == "holds"
    row5 = [r for r in res.sweep if r.params["k"] == 5][0]
    assert 0 < row5.margin.lo and row5.margin.hi < F(2, 1000)
    assert row5.margin.width <= F(1, 10 ** 6)


def test_pm4_and_letter3_hold():
    res4 = run_case("case_pm4")
    assert res4.verdict == "holds"
    variants = {r.variant: r.verdict for r in res4.sweep}
    assert variants["main"] == "holds" and variants["printed"] == "holds"
    res3 = run_case("case_letter3")
    assert res3.verdict == "holds"
    variants = {r.variant: r.verdict for r in res3.sweep}
    assert variants["printed"] == "holds" and variants["corrected"] == "holds"


def test_lemma_2_6_audit():
    res = run_case("lemma_2_6")
    assert res.verdict == "holds-with-exact-sum-only"
    full = res.row_map("full")
    red = res.row_map("reduced")
    for k in range(4, 201):
        assert full[(("k", k),)] in ("holds", "holds-with-exact-sum-only")
    assert full[(("k", 4),)] == "holds-with-exact-sum-only"
    assert red[(("k", 4),)] == "fails"
    for k in range(5, 201):
        assert red[(("k", k),)] == "holds"


def test_j_cases_and_growth():
    for cid in ("case_j_gt_k", "case_j_le_k", "q_growth", "lem_2s_table"):
        res = run_case(cid)
        assert res.verdict == "holds", cid
        assert all(r.verdict == "holds" for r in res.sweep)


def test_reproducible_bit_identical():
    a = run_case("case_pm5")
    b = run_case("case_pm5")
    assert a.lhs == b.lhs and a.rhs == b.rhs and a.margin == b.margin
    assert [r.margin for r in a.sweep] == [r.margin for r in b.sweep]


def test_monotone_claims_checked_not_assumed():
    # the esti case certifies the decreasing-in-k claim by comparing
    # consecutive exact values; forcing a wrong sweep start would flip it
    res = run_case("case_esti")
    assert "decreasing" in res.notes[0]


def test_rendering():
    results = [run_case("case_esti"), run_case("case_letter3")]
    table = render_table(results)
    assert "case_esti" in table and "holds" in table
    payload = json.loads(results_to_json(results))
    assert payload[0]["case"] == "case_esti"
    assert payload[0]["sweep"][0]["params"] == {"k": 3}
    assert isinstance(payload[0]["margin"][0], float)

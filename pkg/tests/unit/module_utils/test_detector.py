from __future__ import annotations

import math

import pytest

from plugins.module_utils.detector import (
    VERDICT_DETECTED,
    VERDICT_ITERATED_TORUS,
    VERDICT_UNKNOWN,
    audit_row,
    detect,
    detection_diagnostics,
    family_audit,
    is_iterated_torus,
)
from plugins.module_utils.errors import InconsistentSummaryError, ParseError
from plugins.module_utils.invariants import (
    CableMap,
    HyperbolicBase,
    InvariantSummary,
    Recip,
    TorusBase,
    expr_of,
    product,
    summarize,
)
from plugins.module_utils.knots import build_family

FIGURE_EIGHT = HyperbolicBase("4_1")
HYPERBOLIC_VOLUME = 2.029883212819307


DETECT_TEST_CASES = (
    (summarize(TorusBase(0)), "unknot", ("unknot",), "a"),
    (summarize(TorusBase(1)), "3_1", ("3_1", "mirror(3_1)"), "b"),
    (summarize(Recip(TorusBase(1))), "3_1", ("3_1", "mirror(3_1)"), "b"),
    (summarize(FIGURE_EIGHT), "4_1", ("4_1",), "c"),
    (summarize(HyperbolicBase("5_2"), leading_C=1.05), "5_2", ("5_2", "mirror(5_2)"), "d"),
    (summarize(CableMap(3, 1, FIGURE_EIGHT)), "C_{3,1}(4_1)", ("C_{3,1}(4_1)", "mirror(C_{3,1}(4_1))"), "e"),
    (summarize(CableMap(-5, 1, FIGURE_EIGHT)), "C_{5,1}(4_1)", ("C_{5,1}(4_1)", "mirror(C_{5,1}(4_1))"), "e"),
)


@pytest.mark.parametrize(("summary", "name", "names", "clause"), DETECT_TEST_CASES)
def test_detect(summary, name, names, clause):
    result = detect(summary)
    assert result.verdict == VERDICT_DETECTED
    assert result.format() == name
    assert result.names == names
    assert result.clause == clause


def test_detect_from_rounded_summary():
    summary = InvariantSummary.from_dict(
        {"genus": 1, "volume": 2.0299, "value_at_1": 1.1137, "lambda": "lambda_F", "monomial_tails": True}
    )
    assert detect(summary).format() == "4_1"


def test_detect_iterated_torus():
    result = detect(summarize(CableMap(2, 3, TorusBase(1))))
    assert result.verdict == VERDICT_ITERATED_TORUS
    assert result.genus == 3
    assert result.format() == "iterated torus knot of genus 3"


def test_detect_five_two_needs_leading_coefficient():
    result = detect(summarize(HyperbolicBase("5_2")))
    assert result.verdict == VERDICT_UNKNOWN
    assert result.clause == "f"
    assert result.failures["d"] == "leading coefficient C is not supplied"
    assert "tails are not known to be monomial" in result.reason
    assert result.format().startswith("unknown: ")


def test_detect_five_two_leading_coefficient_out_of_range():
    result = detect(summarize(HyperbolicBase("5_2"), leading_C=1.5))
    assert result.verdict == VERDICT_UNKNOWN
    assert "outside" in result.failures["d"]


UNKNOWN_TEST_CASES = (
    (summarize(CableMap(4, 1, FIGURE_EIGHT)), "e"),
    (summarize(HyperbolicBase("K12n242")), "e"),
    (summarize(expr_of(build_family(1).J)), "e"),
)


@pytest.mark.parametrize(("summary", "failed"), UNKNOWN_TEST_CASES)
def test_detect_unknown(summary, failed):
    result = detect(summary)
    assert result.verdict == VERDICT_UNKNOWN
    assert failed in result.failures
    assert result.reason == result.failures[failed]
    assert result.to_dict()["verdict"] == "unknown"


GENUS_FIVE_DECOY_TEST_CASES = (
    product(HyperbolicBase("5_2"), TorusBase(4)),
    HyperbolicBase("K12n242"),
)


@pytest.mark.parametrize("expr", GENUS_FIVE_DECOY_TEST_CASES)
def test_detect_genus_five_decoys_with_leading_coefficient(expr):
    # same volume as 5_2 and a leading coefficient in range, but genus 5
    result = detect(summarize(expr, leading_C=1.0))
    assert result.verdict == VERDICT_UNKNOWN
    assert result.genus == 5
    assert result.failures["d"] == "genus is 5, not 1"
    assert result.failures["e"] == "volume is 2.8281, not vol(4_1)"


def test_detect_cable_genus_mismatch():
    summary = InvariantSummary.from_dict(
        {"genus": 2, "volume": 2.0299, "lambda": "lambda_F^(1/3)", "monomial_tails": True}
    )
    result = detect(summary)
    assert result.verdict == VERDICT_UNKNOWN
    assert result.failures["e"] == "genus 2 differs from p = 3"


def test_is_iterated_torus():
    assert is_iterated_torus(summarize(TorusBase(2)))
    check = is_iterated_torus(summarize(FIGURE_EIGHT))
    assert not check
    assert check.certificate == "vol(K) > 0 and value at t=1 exceeds 1"


def test_is_iterated_torus_inconsistent():
    summary = InvariantSummary(genus=1, volume=0.0, value_at_1=1.0000005)
    with pytest.raises(InconsistentSummaryError):
        is_iterated_torus(summary)
    with pytest.raises(InconsistentSummaryError):
        detect(summary)


def test_detect_genus_zero_needs_zero_volume():
    volume = HYPERBOLIC_VOLUME
    summary = InvariantSummary(genus=0, volume=volume, value_at_1=math.exp(volume / (6 * math.pi)))
    with pytest.raises(InconsistentSummaryError):
        detect(summary)


def test_detection_diagnostics():
    bound = detection_diagnostics(summarize(FIGURE_EIGHT))["entropy_lower_bound"]
    assert math.isclose(bound, HYPERBOLIC_VOLUME / (6 * math.pi))
    assert detection_diagnostics(summarize(HyperbolicBase("5_2"))) == {"entropy_lower_bound": None}


def test_audit_row():
    row = audit_row(0)
    assert row.p == 2
    assert row.genus_J == row.genus_K == 2
    assert row.lambda_J == "lambda_F"
    assert row.lambda_K == "lambda_F^(1/2)"
    assert row.detected_K == "C_{2,1}(4_1)"
    assert row.passed
    assert row.failures == []


def test_family_audit():
    report = family_audit(4)
    assert report.passed
    assert [row.p for row in report.rows] == [2, 3, 5, 7, 11]
    data = report.to_dict()
    assert data["passed"] is True
    assert data["rows"][4]["clauses"] == {"genus": True, "volume": True, "inequivalent": True, "detected": True}


def test_family_audit_first_eleven_primes():
    report = family_audit(10)
    assert report.passed
    assert [row.p for row in report.rows] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    assert all(row.detected_K == f"C_{{{row.p},1}}(4_1)" for row in report.rows)


def test_family_audit_threads_keep_order():
    assert family_audit(3, threads=3) == family_audit(3)


def test_family_audit_table():
    lines = family_audit(1).format_table().splitlines()
    assert lines[0].split() == [
        "n",
        "p",
        "g(J)",
        "g(K)",
        "vol(J)",
        "vol(K)",
        "lambda(J)",
        "lambda(K)",
        "detect(K)",
        "result",
    ]
    assert lines[2].split()[-1] == "pass"
    assert "C_{3,1}(4_1)" in lines[2]


def test_family_audit_rejects_negative_index():
    with pytest.raises(ParseError):
        family_audit(-1)

import pytest

from conftest import POOR, RICH
from scmexplain import (QueryError, actual_cause, can_replace, direct_cause,
                        enumerate_actual_causes, optimal_cause, parse_model)

FN9 = {"U_X": 1, "U_A": 1}


def test_can_replace_fire(fire):
    r = can_replace(fire, {"F": 1}, {}, ["S", "B"], "B", 0, {"F": 0})
    assert r and r.network == ("B",)


def test_cannot_replace_income(loan):
    assert not can_replace(loan, {"X1": 250000}, {}, ["Y"], "Y", 1, {"X1": 200000})


def test_can_replace_footnote9(fn9):
    r = can_replace(fn9, {"X": 1}, {"A": 1}, ["Y"], "Y", 1, {"X": 2})
    assert r and r.network == ("Y",)


def test_actual_cause_fortunate(loan):
    c = actual_cause(loan, RICH, {"X1": 250000}, {"X1": 200000}, "Y")
    assert c and c.kind == "actual"
    assert c.evidence.antecedent == {"X1": 250000} and c.network == ("Y",)
    assert c.witness == {}


def test_fire_is_not_a_cause(fire):
    r = actual_cause(fire, {"U_F": 1}, {"F": 1}, {"F": 0}, "B", 0)
    assert not r


def test_no_fire_is_a_cause(fire):
    c = actual_cause(fire, {"U_F": 0}, {"F": 0}, {"F": 1}, "B", 0)
    assert c and c.network == ("B",)


def test_hiring_cause_along_b(hiring):
    c = actual_cause(hiring, {"U_A": 1}, {"A": 1}, {"A": 0}, "Y", 0)
    assert c and "B" in c.network


def test_actual_cause_preconditions(loan):
    with pytest.raises(QueryError):
        actual_cause(loan, RICH, {"X1": 200000}, {"X1": 250000}, "Y")
    with pytest.raises(QueryError):
        actual_cause(loan, RICH, {"X1": 250000}, {"X1": 250000}, "Y")


def test_all_evidence_flag(hiring):
    c = actual_cause(hiring, {"U_A": 1}, {"A": 1}, {"A": 0}, "Y", all_evidence=True)
    assert c.alternatives and c.evidence in c.alternatives


def test_footnote9_direct_not_optimal(fn9):
    d = direct_cause(fn9, FN9, {"X": 1}, "Y")
    assert d and d.evidence.antecedent == {"X": 1, "A": 1} and d.witness == {"A": 1}
    o = optimal_cause(fn9, FN9, {"X": 1}, "Y")
    assert not o and o.detail["replacement"] == {"X": 2}


def test_optimal_identity(identity):
    assert optimal_cause(identity, {"U": 1}, {"X": 1}, "Y")


def test_fortunate_optimal_and_direct(loan):
    # every other income value leaves Y=0 when X2 may be set to 0
    assert optimal_cause(loan, RICH, {"X1": 250000}, "Y")
    d = direct_cause(loan, RICH, {"X1": 250000}, "Y")
    assert d and d.evidence.antecedent == {"X1": 250000}


def test_loan_direct_cause_unsuccessful(loan):
    d = direct_cause(loan, POOR, {"X1": 75000}, "Y")
    assert d and d.evidence.antecedent == {"X1": 75000, "X2": 25000}


def test_enumerate(hiring, fire, constant):
    hc = enumerate_actual_causes(hiring, {"U_A": 1}, "Y")
    assert any(c.cause == {"A": 1} and c.contrast == {"A": 0} for c in hc)
    fc = enumerate_actual_causes(fire, {"U_F": 1}, "B")
    assert not any("F" in c.cause for c in fc)
    assert enumerate_actual_causes(constant, {"U": 0}, "Y") == []


def test_json_shape(loan):
    j = actual_cause(loan, RICH, {"X1": 250000}, {"X1": 200000}, "Y").to_json()
    assert j["status"] == "ok" and j["cause"] == {"X1": 250000}
    assert j["contrast"] == {"X1": 200000} and j["network"] == ["Y"]


def test_cause_must_be_nonempty():
    m = parse_model("model T\nexo U: {0,1}\nvar X: {0,1} = U\nvar Y: {0,1} = X\n")
    with pytest.raises(QueryError):
        optimal_cause(m, {"U": 1}, {}, "Y")

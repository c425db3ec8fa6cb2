import pytest

from conftest import POOR
from scmexplain import (QueryError, evaluate, is_fair, parse_formula, parse_model,
                        standardly_counterfactually_fair)
from scmexplain.fairness import network_paths, parse_paths
from scmexplain.graph import paths


def test_network_paths(hiring):
    assert network_paths(hiring, "A", "Y", ["B", "Y"]) == [("A", "B", "Y")]
    assert network_paths(hiring, "A", "Y", ["B", "C", "Y"]) == [("A", "B", "Y"),
                                                                ("A", "C", "Y")]
    assert network_paths(hiring, "A", "Y", ["Y"]) == []


def test_hiring_separation(hiring):
    assert standardly_counterfactually_fair(hiring, "A") is True
    v = is_fair(hiring, "A", paths(hiring, "A", "Y"))
    assert not v
    want = {"context": {"U_A": 1}, "a": 1, "a_prime": 0, "target": {"Y": 0},
            "paths": ["A -> B -> Y"]}
    got = [{k: c.to_json()[k] for k in want} for c in v.certificates]
    assert want in got


def test_certificates_revalidate(hiring):
    from scmexplain import actual_cause
    for c in is_fair(hiring, "A", paths(hiring, "A", "Y")).certificates:
        again = actual_cause(hiring, c.context, c.cause.cause, c.cause.contrast, "Y")
        assert again
        assert set(c.paths) == set(network_paths(hiring, "A", "Y", c.cause.network))


def test_hiring_no_unfair_paths(hiring):
    assert is_fair(hiring, "A", [])


def test_independent_output_is_fair():
    m = parse_model("model T\nexo U: {0,1}\nexo V: {0,1}\nvar A: {0,1} = U\n"
                    "var Z: {0,1} = V\nvar Y: {0,1} = Z\n")
    assert is_fair(m, "A", [])
    assert standardly_counterfactually_fair(m, "A")


def test_identity_is_not_standard_fair():
    m = parse_model("model T\nexo U: {0,1}\nvar A: {0,1} = U\nvar Y: {0,1} = A\n")
    r = standardly_counterfactually_fair(m, "A")
    assert not r and r.detail["y"] != r.detail["y_prime"]


def test_loan_income_not_standard_fair(loan):
    assert not standardly_counterfactually_fair(loan, "X1")
    assert evaluate(loan, POOR, parse_formula("[X1<-85000](Y=1)", loan))


def test_monotone_in_unfair_paths(hiring):
    all_paths = paths(hiring, "A", "Y")
    one = is_fair(hiring, "A", all_paths[:1])
    both = is_fair(hiring, "A", all_paths)
    assert len(one.certificates) <= len(both.certificates)
    assert not one and not both


def test_first_only(hiring):
    v = is_fair(hiring, "A", paths(hiring, "A", "Y"), first_only=True)
    assert len(v.certificates) == 1 and v.certificate.context == {"U_A": 0}


def test_parse_paths(hiring):
    text = "# unfair\nA -> B -> Y\n\nA -> C -> Y  # also\n"
    assert parse_paths(hiring, text) == [("A", "B", "Y"), ("A", "C", "Y")]
    with pytest.raises(QueryError, match="unknown"):
        parse_paths(hiring, "A -> Q -> Y")
    with pytest.raises(QueryError, match="not a parent"):
        parse_paths(hiring, "A -> Y")


def test_protected_must_differ(hiring):
    with pytest.raises(QueryError):
        is_fair(hiring, "Y", [])

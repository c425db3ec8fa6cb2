import pytest

from scmexplain import (QueryError, directly_sufficient, parse_model, solve,
                        strongly_sufficient, weakly_sufficient)
from scmexplain.model import intervene


def test_weak(loan, constant):
    assert weakly_sufficient(loan, {"X1": 50000, "X3": 25000}, {"Y": 1}) is True
    assert weakly_sufficient(loan, {"X2": 45001}, {"Y": 1}) is True
    assert weakly_sufficient(constant, {}, {"Y": 1}) is True


def test_weak_refutation_names_a_failing_context(loan):
    r = weakly_sufficient(loan, {"X4": 1}, {"Y": 1})
    assert not r
    assert solve(intervene(loan, {"X4": 1}), r.detail["context"])["Y"] == 0


def test_direct(loan, fire):
    assert directly_sufficient(loan, {"X2": 45001}, {"Y": 1}) is True
    assert directly_sufficient(fire, {"F": 1}, {"S": 1, "B": 0}) is True


def test_direct_refutation_loan(loan):
    r = directly_sufficient(loan, {"X1": 50000, "X3": 25000}, {"Y": 1})
    assert not r
    assert r.detail["interventions"]["X2"] == 0
    # the certificate really falsifies the claim
    iv = {"X1": 50000, "X3": 25000, **r.detail["interventions"]}
    assert solve(intervene(loan, iv), r.detail["context"])["Y"] == 0


def test_strong(loan, fire):
    w = strongly_sufficient(loan, {"X1": 75000, "X3": 2500}, {"Y": 0}, ["X2"])
    assert w.values == {"X2": 25000, "Y": 0}
    w = strongly_sufficient(fire, {"F": 1}, {"B": 0}, ["S", "B"])
    assert w.values == {"S": 1, "B": 0}


def test_strong_refutation_shows_two_settings(loan):
    r = strongly_sufficient(loan, {"X1": 200000}, {"Y": 1}, [])
    assert not r
    a, b = r.detail["first"], r.detail["second"]
    assert a["network"] != b["network"]


@pytest.mark.parametrize("x, y", [({"X1": 250000}, 1), ({"X2": 45001}, 1),
                                  ({"X1": 50000, "X3": 25000}, 1), ({"X1": 0, "X2": 0}, 0)])
def test_strong_with_only_target_is_direct(loan, x, y):
    assert bool(strongly_sufficient(loan, x, {"Y": y}, ["Y"])) == \
        bool(directly_sufficient(loan, x, {"Y": y}))


def test_memo_transparency(loan):
    for x in ({"X1": 50000, "X3": 25000}, {"X2": 45001}, {"X1": 75000}):
        a = directly_sufficient(loan, x, {"Y": 1}, memo=False)
        b = directly_sufficient(loan, x, {"Y": 1})
        assert bool(a) == bool(b)
        if not a:
            assert a.detail == b.detail


def test_query_validation(loan):
    with pytest.raises(QueryError):
        weakly_sufficient(loan, {"Y": 1}, {"Y": 1})
    with pytest.raises(QueryError):
        strongly_sufficient(loan, {"X2": 45001}, {"Y": 1}, ["X2"])


def test_empty_antecedent_of_unforced_target():
    m = parse_model("model T\nexo U: {0,1}\nvar X: {0,1} = U\nvar Y: {0,1} = X\n")
    assert not weakly_sufficient(m, {}, {"Y": 1})

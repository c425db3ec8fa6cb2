from fractions import Fraction

import pytest

from conftest import POOR, RICH
from scmexplain import (QueryError, counterfactually_depends, evaluate,
                        good_counterfactual_explanations, good_sufficient_explanations,
                        is_sufficient_explanation, parse_formula)
from scmexplain.explanations import (actual_sufficient_explanations, cf_dominates, dominates,
                                     is_counterfactual_explanation)


def _keys(exps):
    return {(frozenset(e.antecedent.items()), e.network) for e in exps}


def test_actual_sufficient_loan(loan):
    e = is_sufficient_explanation(loan, {"X1": 75000, "X3": 2500}, ["X2", "Y"], "Y", 0, POOR)
    assert e and e.actual and not e.direct
    assert e.network_values == {"X2": 25000, "Y": 0}


def test_fire_explanation_is_actual(fire):
    e = is_sufficient_explanation(fire, {"F": 1}, ["S", "B"], "B", 0, {"U_F": 1})
    assert e.actual and e.network == ("S", "B")


def test_not_sufficient_x1_200000(loan):
    r = is_sufficient_explanation(loan, {"X1": 200000}, ["Y"], "Y", 1)
    assert not r
    assert r.detail["first"]["interventions"]["X2"] == 0


def test_target_joins_the_network(loan):
    e = is_sufficient_explanation(loan, {"X1": 75000, "X3": 2500}, ["X2"], "Y", 0, POOR)
    assert e.network == ("X2", "Y")
    with pytest.raises(QueryError):
        is_sufficient_explanation(loan, {"X1": 75000}, ["X1"], "Y", 0, POOR)


def test_dominates(fire):
    f0 = is_sufficient_explanation(fire, {"F": 0}, ["B"], "B", 0)
    f1 = is_sufficient_explanation(fire, {"F": 1}, ["S", "B"], "B", 0)
    assert dominates(f0, f1) and dominates(f1, f1) and not dominates(f1, f0)


def test_dominates_incomparable(loan):
    a = is_sufficient_explanation(loan, {"X1": 250000}, ["Y"], "Y", 1)
    b = is_sufficient_explanation(loan, {"X2": 125000}, ["Y"], "Y", 1)
    assert a and b and not dominates(a, b) and not dominates(b, a)


def test_good_sufficient_fortunate(loan):
    goods = good_sufficient_explanations(loan, RICH, "Y")
    assert (frozenset({("X1", Fraction(250000))}), ("Y",)) in _keys(goods)
    assert all(e.actual for e in goods)


def test_good_sufficient_fire(fire):
    goods = good_sufficient_explanations(fire, {"U_F": 1}, "B")
    assert [str(e) for e in goods] == ["((S=1), {B})", "((F=1), {S, B})"]


def test_good_sufficient_constant(constant):
    goods = good_sufficient_explanations(constant, {"U": 0}, "Y")
    assert len(goods) == 1 and goods[0].antecedent == {} and goods[0].network == ("Y",)


def test_goods_are_antichain(loan):
    goods = good_sufficient_explanations(loan, POOR, "Y")
    for a in goods:
        for b in goods:
            assert a is b or not dominates(a, b)


def test_actual_sufficient_explanations_superset(loan):
    all_ = _keys(actual_sufficient_explanations(loan, RICH, "Y"))
    assert _keys(good_sufficient_explanations(loan, RICH, "Y")) <= all_


def test_wrong_actual_value_is_rejected(loan):
    with pytest.raises(QueryError):
        good_sufficient_explanations(loan, POOR, "Y", 1)


def test_section5_counterfactuals(loan):
    direct = parse_formula("[X1<-100000, X2<-25000, X3<-2500, X4<-0](Y=1)", loan)
    assert evaluate(loan, POOR, direct)
    assert evaluate(loan, POOR, parse_formula("[X1<-85000](Y=1)", loan))
    d = counterfactually_depends(loan, POOR, {"X1": 75000}, {"X1": 100000}, "Y",
                                 mode="all-others")
    assert d and d.witnesses == ({"X2": 25000, "X3": 2500, "X4": 0},)


def test_depends_loan_modes(loan):
    x, xp = {"X1": 75000}, {"X1": 85000}
    assert counterfactually_depends(loan, POOR, x, xp, "Y", mode="any")
    d = counterfactually_depends(loan, POOR, x, xp, "Y", mode="empty")
    assert d.witnesses == ({},)


def test_no_dependence_fortunate(loan):
    for v in loan.domains["X1"]:
        if v != 250000:
            assert not counterfactually_depends(loan, RICH, {"X1": 250000}, {"X1": v}, "Y")


def test_depends_hiring(hiring):
    x, xp = {"A": 1}, {"A": 0}
    assert not counterfactually_depends(hiring, {"U_A": 1}, x, xp, "Y", mode="empty")
    d = counterfactually_depends(hiring, {"U_A": 1}, x, xp, "Y")
    assert d.witnesses == ({"C": 0},)


def test_depends_needs_componentwise_contrast(loan):
    with pytest.raises(QueryError):
        counterfactually_depends(loan, POOR, {"X1": 75000}, {"X1": 75000}, "Y")


def test_good_counterfactual_loan(loan):
    goods = good_counterfactual_explanations(loan, POOR, "Y")
    shown = {str(e) for e in goods}
    assert "(X1=(75000, 85000); W: {X3=2500}; N: {X2, Y})" in shown
    e = next(g for g in goods if str(g) == "(X1=(75000, 85000); W: {X3=2500}; N: {X2, Y})")
    assert e.value == 0 and e.value_prime == 1


def test_good_counterfactual_identity(identity):
    goods = good_counterfactual_explanations(identity, {"U": 1}, "Y")
    assert [str(e) for e in goods] == ["(X=(1, 0); W: {}; N: {Y})"]


def test_no_cfe_on_x1_for_fortunate(loan):
    goods = good_counterfactual_explanations(loan, RICH, "Y")
    assert not any(set(e.x) == {"X1"} for e in goods)


def test_cf_check_and_domination(loan):
    def cfe(w, xp=85000):
        return is_counterfactual_explanation(loan, POOR, {"X1": 75000}, {"X1": xp}, w,
                                             ["X2", "Y"], "Y")

    small, big = cfe(["X3"]), cfe(["X3", "X4"])
    assert small and big
    assert cf_dominates(small, big) and not cf_dominates(big, small)
    assert cf_dominates(small, small)
    r = cfe(["X3"], xp=0)
    assert not r and "same target" in r.reason


def test_canonical_order(loan):
    goods = good_counterfactual_explanations(loan, POOR, "Y")
    sizes = [(len(e.x), len(e.witness), len(e.network)) for e in goods]
    assert sizes == sorted(sizes)

from dataclasses import replace
from fractions import Fraction

import pytest

from conftest import POOR
from scmexplain import (Budget, BudgetExceeded, DomainError, QueryError, evaluate,
                        holds_universally, intervene, parse_formula, parse_model, solve)
from scmexplain.graph import (Classifier, agrees, ancestors, classifier_from_model,
                              descendants, edges, independent, parents, paths, roots)


def test_solve_unsuccessful_applicant(loan):
    w = solve(loan, POOR)
    assert w == {"U1": 75000, "U3": 2500, "X1": 75000, "X2": 25000, "X3": 2500, "X4": 0, "Y": 0}


def test_solve_identity_and_fire(fire):
    m = parse_model("model T\nexo U: {5}\nvar X: {5} = U\n")
    assert solve(m, {"U": 5})["X"] == 5
    assert solve(fire, {"U_F": 1}) == {"U_F": 1, "F": 1, "S": 1, "B": 0}


def test_solve_rejects_bad_context(loan):
    with pytest.raises(DomainError):
        solve(loan, {"U1": 1, "U3": 2500})
    with pytest.raises(QueryError):
        solve(loan, {"U1": 75000})


def test_intervene(loan, fire):
    m = intervene(loan, {"X2": 45001})
    assert all(solve(m, {"U1": u1, "U3": u3})["X2"] == 45001
               for u1 in loan.exogenous["U1"] for u3 in loan.exogenous["U3"])
    assert intervene(loan, {}) is loan
    assert solve(intervene(fire, {"S": 0}), {"U_F": 1})["B"] == 1
    with pytest.raises(DomainError):
        intervene(fire, {"S": 2})


def test_loan_formulas(loan):
    assert holds_universally(loan, parse_formula("!(X4=1) | Y=1", loan))
    assert not holds_universally(loan, parse_formula("X4!=1", loan))  # non-vacuous
    r = holds_universally(loan, parse_formula("[X4<-1](Y=1)", loan))
    assert not r and r.context == {"U1": 0, "U3": 0}
    assert holds_universally(loan, parse_formula("[X2<-45001](Y=1)", loan))
    assert not evaluate(loan, {"U1": 0, "U3": 0}, parse_formula("[X4<-1](Y=1)", loan))
    assert evaluate(loan, POOR, parse_formula("X1=75000 | X1!=75000", loan))


def test_universal_singleton_domain():
    m = parse_model("model T\nexo U: {5}\nvar X: {5} = U\n")
    assert holds_universally(m, parse_formula("X=5", m))


def test_budget_is_enforced(loan):
    f = parse_formula("Y=1", loan)
    with pytest.raises(BudgetExceeded):
        holds_universally(loan, f, Budget(10))
    b = Budget(1000)
    holds_universally(loan, f, b)
    assert b.used == loan.n_contexts


def test_loan_edges(loan):
    assert set(edges(loan)) == {("X1", "X2"), ("X3", "X2"), ("X2", "X4"), ("X1", "Y"),
                                ("X2", "Y"), ("U1", "X1"), ("U3", "X3")}


def test_hiring_edges_and_paths(hiring):
    assert set(edges(hiring)) == {("A", "B"), ("A", "C"), ("B", "Y"), ("C", "Y"),
                                  ("U_A", "A")}
    assert paths(hiring, "A", "Y") == [("A", "B", "Y"), ("A", "C", "Y")]
    assert paths(hiring, "A", "A") == [("A",)]


def test_loan_paths_and_closure(loan):
    assert paths(loan, "X3", "Y") == [("X3", "X2", "Y")]
    assert set(ancestors(loan, "X4")) == {"X2", "X1", "X3", "U1", "U3"}
    assert set(descendants(loan, "X3")) == {"X2", "X4", "Y"}


def test_constant_equation_has_no_parents():
    m = parse_model("model T\nexo U: {0,1}\nvar X: {3} = 3 + 0 * U\nvar Y: {0,1} = U\n")
    assert parents(m)["X"] == ()


def test_roots(loan, hiring, fire):
    assert roots(loan) == ("X1", "X3")
    assert roots(hiring) == ("A",)
    m = parse_model("model T\nexo U: {0,1}\nvar X: {0,1} = 1 - U\nvar Y: {0,1} = X\n")
    assert roots(m) == ()


def test_agrees(loan):
    h = classifier_from_model(loan)
    assert agrees(loan, h) is True
    key = next(iter(h.table))
    ctx_key = (Fraction(75000), Fraction(25000), Fraction(2500), Fraction(0))
    table = dict(h.table)
    table[ctx_key] = 1 - table[ctx_key]
    d = agrees(loan, replace(h, table=table))
    assert not d and d.context is not None
    assert key in h.table


def test_agrees_structural():
    m = parse_model("model T\nexo U: {0,1}\nexo V: {0,1}\nvar X: {0,1} = U\n"
                    "var Y: {0,1} = V\n")
    h = Classifier(("X",), "Y", {(Fraction(0),): Fraction(0), (Fraction(1),): Fraction(0)})
    d = agrees(m, h)
    assert not d and "exogenous" in d.reason


def test_independence(loan, fn9):
    assert not independent(loan)
    assert independent(fn9)
    assert independent(parse_model("model T\nexo U: {0,1}\nvar X: {0,1} = U\n"
                                   "var Y: {0,1} = X\n"))

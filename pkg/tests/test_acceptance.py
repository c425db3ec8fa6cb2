"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with pytest, or directly (``python3 tests/test_acceptance.py``) for the
summary lines alone.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache

import pytest

from scmexplain import (actual_cause, can_replace, counterfactually_depends,
                        direct_cause, directly_sufficient, evaluate,
                        good_counterfactual_explanations, good_sufficient_explanations,
                        holds_universally, is_fair, optimal_cause, parse_formula,
                        standardly_counterfactually_fair, weakly_sufficient)
from scmexplain.graph import paths
from scmexplain.lang import load_fixture
from scmexplain.propcheck import GeneratorConfig, check_theorem

POOR = {"U1": 75000, "U3": 2500}
RICH = {"U1": 250000, "U3": 50000}


def _line(n, ok, summary, detail=""):
    mark = "PASS" if ok else "FAIL"
    return f"[{mark}] criterion {n}: {summary}" + (f" ({detail})" if detail else "")


# ----------------------------------------------------------------------
# criteria; each returns (ok, summary, detail)

def criterion_1():
    start = time.perf_counter()
    m = load_fixture("loan")
    checks = {
        "X4=1 -> Y=1": bool(holds_universally(m, parse_formula("!(X4=1) | Y=1", m))),
        "X4=1 realizable": not holds_universally(m, parse_formula("X4!=1", m)),
        "not [X4<-1](Y=1)": not holds_universally(m, parse_formula("[X4<-1](Y=1)", m)),
        "[X2<-45001](Y=1)": bool(holds_universally(m, parse_formula("[X2<-45001](Y=1)", m))),
        "weak (50000, 25000)": weakly_sufficient(m, {"X1": 50000, "X3": 25000},
                                                 {"Y": 1}) is True,
        "not direct (50000, 25000)": not directly_sufficient(m, {"X1": 50000, "X3": 25000},
                                                             {"Y": 1}),
    }
    secs = time.perf_counter() - start
    bad = [k for k, v in checks.items() if not v]
    ok = not bad and secs < 1.0
    return ok, "loan fixture formulas and sufficiency", \
        f"{secs:.2f}s" + (f"; failed: {', '.join(bad)}" if bad else "")


def criterion_2():
    m = load_fixture("loan")
    direct = evaluate(m, POOR, parse_formula(
        "[X1<-100000, X2<-25000, X3<-2500, X4<-0](Y=1)", m))
    standard = evaluate(m, POOR, parse_formula("[X1<-85000](Y=1)", m))
    goods = good_counterfactual_explanations(m, POOR, "Y")
    member = any(e.x == {"X1": 75000} and e.x_prime == {"X1": 85000}
                 and e.witness == {"X3": 2500} and set(e.network) == {"X2", "Y"}
                 for e in goods)
    ok = direct and standard and member
    return ok, "counterfactual explanations at (75000, 2500)", \
        f"direct={direct} standard={standard} member={member}"


def criterion_3():
    m = load_fixture("loan")
    goods = good_sufficient_explanations(m, RICH, "Y")
    good = any(e.antecedent == {"X1": 250000} and e.network == ("Y",) for e in goods)
    depends = [v for v in m.domains["X1"] if v != 250000
               and counterfactually_depends(m, RICH, {"X1": 250000}, {"X1": v}, "Y")]
    cause = actual_cause(m, RICH, {"X1": 250000}, {"X1": 200000}, "Y")
    ok = good and not depends and bool(cause)
    return ok, "fortunate applicant", \
        f"good={good} dependence={bool(depends)} cause={bool(cause)}"


def criterion_4():
    m = load_fixture("fire")
    goods = good_sufficient_explanations(m, {"U_F": 1}, "B")
    good = any(e.antecedent == {"F": 1} and e.network == ("S", "B") for e in goods)
    rep = can_replace(m, {"F": 1}, {}, ["S", "B"], "B", 0, {"F": 0})
    rep_ok = bool(rep) and rep.network == ("B",)
    not_cause = not actual_cause(m, {"U_F": 1}, {"F": 1}, {"F": 0}, "B", 0)
    no_fire = bool(actual_cause(m, {"U_F": 0}, {"F": 0}, {"F": 1}, "B", 0))
    ok = good and rep_ok and not_cause and no_fire
    return ok, "fire and sprinkler", \
        f"good={good} replace={rep_ok} F=1 refuted={not_cause} F=0 cause={no_fire}"


def criterion_5():
    m = load_fixture("footnote9")
    ctx = {"U_X": 1, "U_A": 1}
    d = bool(direct_cause(m, ctx, {"X": 1}, "Y"))
    o = bool(optimal_cause(m, ctx, {"X": 1}, "Y"))
    return d and not o, "replaceable direct cause at (A=1, X=1)", f"direct={d} optimal={o}"


def criterion_6():
    m = load_fixture("hiring")
    std = standardly_counterfactually_fair(m, "A") is True
    v = is_fair(m, "A", paths(m, "A", "Y"))
    hit = any(c.cause.cause == {"A": 1} and c.cause.contrast == {"A": 0}
              and c.cause.value == 0 and c.paths == (("A", "B", "Y"),)
              for c in v.certificates)
    ok = std and not v.fair and hit
    return ok, "hiring separation", f"standard fair={std} fair={v.fair} certificate={hit}"


GENERAL = ["prop9", "thm16", "prop19", "thm21", "prop24", "obs1"]
INDEPENDENCE = ["thm12", "thm17", "thm25"]
TRIALS = 200


@lru_cache(maxsize=None)
def _theorem_reports(seed=1):
    cfg = GeneratorConfig(seed=seed, n_endogenous=4, domain_max=3)
    start = time.perf_counter()
    reports = [check_theorem(t, cfg, TRIALS) for t in GENERAL + INDEPENDENCE]
    controls = [check_theorem(t, cfg, TRIALS, negative_control=True) for t in INDEPENDENCE]
    return reports, controls, time.perf_counter() - start


def criterion_7():
    reports, controls, secs = _theorem_reports()
    failing = [f"{r.theorem}:{r.violating_trials}" for r in reports if not r.passed]
    weak = [r.theorem for r in controls if not r.passed]
    ok = not failing and not weak and secs <= 300
    detail = f"{secs:.0f}s"
    if failing:
        detail += "; violating trials " + ", ".join(failing)
    if weak:
        detail += "; controls without violations: " + ", ".join(weak)
    return ok, f"theorem suites ({TRIALS} trials each)", detail


def criterion_8():
    import test_oracle as d
    start = time.perf_counter()
    problems = []

    def guard(label, fn, *args):
        try:
            fn(*args)
        except AssertionError:
            problems.append(label)

    for name in ("fire", "hiring", "footnote9"):
        m = load_fixture(name)
        guard(name, d._sufficiency, m)
        guard(name, d._structure, m)
        guard(name, d._fairness, m)
        for ctx in m.contexts():
            for fn in (d._goods, d._depends, d._good_cfes, d._causes, d._replace):
                guard(f"{name}:{fn.__name__}", fn, m, ctx)
    loan = load_fixture("loan")
    guard("loan:_sufficiency", d._sufficiency, loan, 1)
    guard("loan:_structure", d._structure, loan)
    for ctx in (POOR, RICH):
        guard("loan:_goods", d._goods, loan, ctx)
        guard("loan:_depends", d._depends, loan, ctx, 1)
    for k in range(d.N_RANDOM):
        m = d._random(k)
        guard(f"r{k}", d._sufficiency, m)
        guard(f"r{k}", d._structure, m)
        guard(f"r{k}", d._fairness, m)
        for ctx in d._contexts(m, 2):
            for fn in (d._goods, d._depends, d._good_cfes, d._causes, d._replace):
                guard(f"r{k}:{fn.__name__}", fn, m, ctx)
    secs = time.perf_counter() - start
    return not problems, f"differential oracle (4 fixtures, {d.N_RANDOM} random models)", \
        f"{len(problems)} discrepancies, {secs:.0f}s" + \
        (f": {', '.join(problems[:5])}" if problems else "")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


# ----------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n, capsys):
    ok, summary, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, summary, detail))
    assert ok, detail


def _main() -> int:
    failed = 0
    for n, crit in enumerate(CRITERIA, 1):
        ok, summary, detail = crit()
        print(_line(n, ok, summary, detail), flush=True)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(_main())

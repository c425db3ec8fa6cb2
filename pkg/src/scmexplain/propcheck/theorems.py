"""Brute-force checks of the structural results on random models.

Each check takes a model and returns a list of violations. A violation
is a dict with the context it arose in (or None) and a ``detail`` dict
naming the query and what was expected. Quantifiers are enumerated
exhaustively at the generated scale.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable

from .. import kernel
from ..causation import _certifying, _replacing_network
from ..errors import BudgetExceeded
from ..explanations import (_good_cf_triples, _good_pairs, _minimal, _Setting,
                            _witness_sets)
from ..graph import agrees, classifier_from_model, independent, roots
from ..lang import parse_model, serialize_model
from ..model import CausalModel, _fixed_vector
from ..results import to_json
from ..sufficiency import _constant, _scan
from .generator import RNG_NAME, GeneratorConfig, random_model


# ----------------------------------------------------------------------
# shared helpers

def _subsets(items, min_size=0):
    items = list(items)
    for k in range(min_size, len(items) + 1):
        yield from combinations(items, k)


def _names(model, idx):
    return [model.variables[i] for i in idx]


def _vals(model, idx, vals):
    return {model.variables[i]: model.domains[model.variables[i]][k] for i, k in zip(idx, vals)}


def _contrasts(model, xidx, actual):
    return product(*[[k for k in range(model.tables.dom_size[i]) if k != a]
                     for i, a in zip(xidx, actual)])


def _settings(model, budget):
    y = model.output
    for ctx in model.contexts():
        yield _Setting(model, ctx, y, None, budget)


def _strong(model, xfix, net, budget):
    row, first, _ = _constant(model, tuple(sorted(xfix)), tuple(sorted(net)), budget)
    return tuple(first) if row < 0 else None


def _direct(model, xfix, nfix, budget):
    net = tuple(sorted(i for i, _ in nfix))
    n = _strong(model, xfix, net, budget)
    want = dict(nfix)
    return n is not None and all(n[k] == want[i] for k, i in enumerate(net))


def _weak(model, xfix, nfix, budget):
    watch = tuple(i for i, _ in nfix)
    row, _, _ = _scan(model, dict(xfix), watch, [k for _, k in nfix], budget, False)
    return row < 0


def _endo(model):
    return [model.index[v] for v in model.endogenous]


def _dependence(s, xidx, pv):
    """Witness index sets for ``X <- x'`` if ``X`` is minimal, else None."""
    wits = _witness_sets(s, xidx, pv)
    if not wits or _minimal(s, xidx, pv) is not None:
        return None
    return wits


# ----------------------------------------------------------------------
# the checks

def check_prop9(model, budget):
    """direct ⇒ strong along some N ⇒ weak, for consequents of one or two variables."""
    out = []
    endo = _endo(model)
    t = model.tables
    for xidx in _subsets(endo):
        rest = [i for i in endo if i not in xidx]
        for xv in product(*(range(t.dom_size[i]) for i in xidx)):
            xfix = list(zip(xidx, xv))
            for yidx in (c for k in (1, 2) for c in combinations(rest, k)):
                free = [i for i in rest if i not in yidx]
                for yv in product(*(range(t.dom_size[i]) for i in yidx)):
                    yfix = list(zip(yidx, yv))
                    d = _direct(model, xfix, yfix, budget)
                    strong_n = None
                    for extra in _subsets(free):
                        net = tuple(sorted(yidx + extra))
                        n = _strong(model, xfix, net, budget)
                        if n is not None and all(n[net.index(i)] == k for i, k in yfix):
                            strong_n = net
                            break
                    w = _weak(model, xfix, yfix, budget)
                    if (d and strong_n is None) or (strong_n is not None and not w):
                        out.append({"context": None, "detail": {
                            "x": _vals(model, xidx, xv), "y": _vals(model, yidx, yv),
                            "direct": d, "strong_network": strong_n and _names(model, strong_n),
                            "weak": w}})
    return out


def check_thm12(model, budget):
    """With consequent {Y}: weak ⇔ strong along some N ⇔ direct."""
    out = []
    y = model.index[model.output]
    ins = [i for i in _endo(model) if i != y]
    t = model.tables
    for xidx in _subsets(ins):
        free = [i for i in ins if i not in xidx]
        for xv in product(*(range(t.dom_size[i]) for i in xidx)):
            xfix = list(zip(xidx, xv))
            for yv in range(t.dom_size[y]):
                yfix = [(y, yv)]
                d = _direct(model, xfix, yfix, budget)
                st = False
                for extra in _subsets(free):
                    net = tuple(sorted((y,) + extra))
                    n = _strong(model, xfix, net, budget)
                    if n is not None and n[net.index(y)] == yv:
                        st = True
                        break
                w = _weak(model, xfix, yfix, budget)
                if not (d == st == w):
                    out.append({"context": None, "detail": {
                        "x": _vals(model, xidx, xv), "y": _vals(model, [y], [yv]),
                        "weak": w, "strong": st, "direct": d}})
    return out


def check_thm16(model, budget):
    """Dependence on X = x rather than x' ⇔ a good counterfactual explanation with that contrast."""
    out = []
    for s in _settings(model, budget):
        good = {(x, pv) for x, _, _, cons in _good_cf_triples(s) for pv, _ in cons}
        for xidx in _subsets(s.others, 1):
            actual = [s.world[i] for i in xidx]
            for pv in _contrasts(model, xidx, actual):
                dep = _dependence(s, xidx, pv) is not None
                cf = (xidx, pv) in good
                if dep != cf:
                    out.append({"context": s.ctx, "detail": {
                        "x": s.actual(xidx), "x_prime": _vals(model, xidx, pv),
                        "depends": dep, "good_explanation": cf}})
    return out


def check_thm17(model, budget):
    """Direct, standard and (when possible) intermediate dependence coincide."""
    out = []
    for s in _settings(model, budget):
        for xidx in _subsets(s.others, 1):
            rest = tuple(i for i in s.others if i not in xidx)
            actual = [s.world[i] for i in xidx]
            for pv in _contrasts(model, xidx, actual):
                wits = _dependence(s, xidx, pv) or []
                verdict = {"direct": rest in wits, "standard": () in wits}
                if len(rest) >= 2:
                    verdict["intermediate"] = any(0 < len(w) < len(rest) for w in wits)
                if len(set(verdict.values())) > 1:
                    out.append({"context": s.ctx, "detail": {
                        "x": s.actual(xidx), "x_prime": _vals(model, xidx, pv), **verdict}})
    return out


def check_prop19(model, budget):
    """A dominating explanation using x' and part of w implies x' can replace x.

    Explanations range over actual values in each context.
    """
    out = []
    seen = set()
    for s in _settings(model, budget):
        yv = s.world[s.y]
        for labels in product(range(4), repeat=len(s.others)):
            xidx = tuple(i for i, l in zip(s.others, labels) if l == 1)
            widx = tuple(i for i, l in zip(s.others, labels) if l == 2)
            nidx = tuple(i for i, l in zip(s.others, labels) if l == 3)
            if not xidx:
                continue
            net = tuple(sorted(nidx + (s.y,)))
            xv = tuple(s.world[i] for i in xidx)
            wv = tuple(s.world[i] for i in widx)
            key = (xidx, xv, widx, wv, net, yv)
            if key in seen:
                continue
            seen.add(key)
            if not s.explains(list(zip(xidx, xv)) + list(zip(widx, wv)), net):
                continue
            for pv in _contrasts(model, xidx, xv):
                premise = None
                for aidx in _subsets(widx):
                    for bidx in _subsets(nidx):
                        b = tuple(sorted(bidx + (s.y,)))
                        fix = list(zip(xidx, pv)) + [(i, s.world[i]) for i in aidx]
                        if s.explains(fix, b):
                            premise = (aidx, b)
                            break
                    if premise:
                        break
                if premise and _replacing_network(s, xidx, pv, widx, net) is None:
                    out.append({"context": s.ctx, "detail": {
                        "x": s.actual(xidx), "x_prime": _vals(model, xidx, pv),
                        "witness": s.actual(widx), "network": _names(model, net),
                        "dominating": {"a": _names(model, premise[0]),
                                       "network": _names(model, premise[1])}}})
    return out


def check_thm21(model, budget):
    """Every good counterfactual explanation contains an actual cause (restricted contrast)."""
    out = []
    for s in _settings(model, budget):
        goods = _good_pairs(s)
        for xidx, widx, net, cons in _good_cf_triples(s):
            for pv, _ in cons:
                ok = any(_certifying(s, sub, tuple(pv[xidx.index(i)] for i in sub), goods)
                         for sub in _subsets(xidx, 1))
                if not ok:
                    out.append({"context": s.ctx, "detail": {
                        "x": s.actual(xidx), "x_prime": _vals(model, xidx, pv),
                        "witness": s.actual(widx), "network": _names(model, net)}})
    return out


def _cause_verdicts(s, xidx, goods):
    containing = [g for g in goods if set(xidx) <= set(g[0])]
    direct = any(net == (s.y,) for _, net, _ in containing)
    actual = [s.world[i] for i in xidx]
    some_actual = any(_certifying(s, xidx, pv, containing)
                      for pv in _contrasts(s.model, xidx, actual))
    return direct, some_actual, bool(containing)


def check_prop24(model, budget):
    """A direct cause is an actual cause for some contrast values."""
    out = []
    for s in _settings(model, budget):
        goods = _good_pairs(s)
        for xidx in _subsets(s.others, 1):
            direct, some_actual, _ = _cause_verdicts(s, xidx, goods)
            if direct and not some_actual:
                out.append({"context": s.ctx, "detail": {"x": s.actual(xidx)}})
    return out


def check_thm25(model, budget):
    """Direct cause ⇔ actual cause for some x' ⇔ part of a good sufficient explanation."""
    out = []
    for s in _settings(model, budget):
        goods = _good_pairs(s)
        for xidx in _subsets(s.others, 1):
            v = _cause_verdicts(s, xidx, goods)
            if len(set(v)) > 1:
                out.append({"context": s.ctx, "detail": {
                    "x": s.actual(xidx), "direct_cause": v[0], "actual_cause": v[1],
                    "part_of_good": v[2]}})
    return out


def check_obs1(model, budget):
    """Setting all roots fixes every endogenous variable regardless of context."""
    out = []
    rs = [model.index[v] for v in roots(model)]
    t = model.tables
    budget.charge(model.n_contexts * max(1, len(list(product(*(range(t.dom_size[i]) for i in rs))))))
    for rv in product(*(range(t.dom_size[i]) for i in rs)):
        seen = None
        for ctx in model.contexts():
            fixed = _fixed_vector(model, ctx, {})
            for i, k in zip(rs, rv):
                fixed[i] = k
            endo = tuple(kernel.solve(t, fixed)[len(model.exogenous):])
            if seen is None:
                seen = endo
            elif endo != seen:
                out.append({"context": ctx, "detail": {"roots": _vals(model, rs, rv)}})
                break
    return out


# ----------------------------------------------------------------------
# registry and runner

def _independent_agreeing(model, budget):
    return independent(model) and bool(agrees(model, classifier_from_model(model), budget))


@dataclass(frozen=True)
class Theorem:
    id: str
    check: Callable
    independence: bool = False
    summary: str = ""


THEOREMS = {t.id: t for t in (
    Theorem("prop9", check_prop9, False, "direct ⇒ strong ⇒ weak sufficiency"),
    Theorem("thm12", check_thm12, True, "sufficiency notions coincide under Independence"),
    Theorem("thm16", check_thm16, False, "dependence ⇔ good counterfactual explanation"),
    Theorem("thm17", check_thm17, True, "dependence notions coincide under Independence"),
    Theorem("prop19", check_prop19, False, "subset witnesses suffice for replacement"),
    Theorem("thm21", check_thm21, False, "counterfactual explanations contain actual causes"),
    Theorem("prop24", check_prop24, False, "direct causes are actual causes"),
    Theorem("thm25", check_thm25, True, "causation notions coincide under Independence"),
    Theorem("obs1", check_obs1, False, "roots take over from the exogenous variables"),
)}

ALIASES = {"observation1": "obs1", "observation 1": "obs1"}


def resolve(theorem_id: str) -> Theorem:
    key = theorem_id.strip().lower().replace("_", "").replace("-", "")
    key = ALIASES.get(key, key)
    if key not in THEOREMS:
        raise KeyError(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREMS)}")
    return THEOREMS[key]


@dataclass
class TheoremReport:
    theorem: str
    seed: int
    trials: int
    mode: str
    n_endogenous: int
    domain_max: int
    rng: str = RNG_NAME
    exhaustive: bool = True
    negative_control: bool = False
    skipped: int = 0
    budget_exceeded: int = 0
    violating_trials: int = 0
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if self.negative_control:
            return self.violating_trials > 0
        return not self.failures and not self.budget_exceeded

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "seed": self.seed, "trials": self.trials,
                "rng": self.rng, "mode": self.mode, "n_endogenous": self.n_endogenous,
                "domain_max": self.domain_max, "exhaustive": self.exhaustive,
                "negative_control": self.negative_control, "skipped": self.skipped,
                "budget_exceeded": self.budget_exceeded,
                "violating_trials": self.violating_trials, "passed": self.passed,
                "failures": to_json(self.failures)}


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(trials)]


def check_theorem(theorem_id: str, config: GeneratorConfig | None = None, trials: int = 200,
                  negative_control: bool = False, budget: int | None = None,
                  max_failures: int = 20) -> TheoremReport:
    """Run one theorem check over ``trials`` random models.

    Theorems that assume Independence force ``mode="independence"`` unless
    ``negative_control`` is set, in which case general-mode models are used,
    the assumption is not enforced and violations are expected.
    """
    from ..budget import Budget, DEFAULT_BUDGET
    thm = resolve(theorem_id)
    config = config or GeneratorConfig()
    mode = config.mode
    if thm.independence:
        mode = "general" if negative_control else "independence"
    rep = TheoremReport(thm.id, config.seed, trials, mode, config.n_endogenous,
                        config.domain_max, negative_control=negative_control,
                        exhaustive=config.n_endogenous <= 4 and config.domain_max <= 3)
    start = time.perf_counter()
    sub_rng = random.Random(config.seed ^ 0x5EED)
    for k, tseed in enumerate(trial_seeds(config.seed, trials)):
        n = sub_rng.randint(min(2, config.n_endogenous), config.n_endogenous)
        cfg = GeneratorConfig(tseed, config.n_endogenous, config.domain_min, config.domain_max,
                              mode, config.root_prob, config.max_contexts)
        model = random_model(cfg, n)
        if model.n_contexts > config.max_contexts:
            rep.skipped += 1
            continue
        b = Budget(budget or DEFAULT_BUDGET)
        try:
            if thm.independence and not negative_control and not _independent_agreeing(model, b):
                rep.skipped += 1
                continue
            found = thm.check(model, b)
        except BudgetExceeded:
            rep.budget_exceeded += 1
            continue
        if found:
            rep.violating_trials += 1
            dsl = serialize_model(model)
            for f in found:
                if len(rep.failures) >= max_failures:
                    break
                rep.failures.append({"trial": k, "trial_seed": tseed, "model_dsl": dsl,
                                     "context": f["context"], "detail": f["detail"]})
    rep.seconds = time.perf_counter() - start
    return rep


def replay(theorem_id: str, failure: dict, budget: int | None = None) -> list[dict]:
    """Re-run a recorded failure from its serialized model; returns matching violations."""
    from ..budget import Budget, DEFAULT_BUDGET
    from ..values import to_value
    thm = resolve(theorem_id)
    model = parse_model(failure["model_dsl"])
    found = thm.check(model, Budget(budget or DEFAULT_BUDGET))
    ctx = failure.get("context")
    if ctx is not None:
        want = {u: to_value(x) for u, x in ctx.items()}
        found = [f for f in found if f["context"] == want]
    detail = to_json(failure.get("detail", {}))
    return [f for f in found if to_json(f["detail"]) == detail]

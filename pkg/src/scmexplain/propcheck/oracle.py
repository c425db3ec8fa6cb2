"""Naive definitional oracle.

Each predicate here transcribes its definition as directly as possible:
worlds are computed by interpreting the equation trees, every quantifier
is a loop over full domains, and nothing is cached or pruned. These are
slow on purpose and serve as the reference for differential tests.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping

from ..budget import Budget, ensure_budget
from ..expr import eval_expr
from ..model import CausalModel

ORACLE_BUDGET = 10**6


def _budget(b):
    return ensure_budget(ORACLE_BUDGET if b is None else b)


def o_solve(model: CausalModel, context: Mapping, iv: Mapping, budget: Budget) -> dict:
    """``(M_{iv}, u)``'s unique world by evaluating equations in dependency order."""
    budget.charge(1)
    world = {u: Fraction(context[u]) for u in model.exogenous}
    for v in model.topological_order:
        world[v] = Fraction(iv[v]) if v in iv else eval_expr(model.equations[v], world)
    return world


def _settings(model: CausalModel, names: Iterable[str]):
    names = list(names)
    for combo in product(*(model.domains[v] for v in names)):
        yield dict(zip(names, combo))


def _subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from combinations(items, k)


def _holds(world, setting):
    return all(world[v] == x for v, x in setting.items())


# ----------------------------------------------------------------------
# sufficiency

def weakly_sufficient(model, x, y, budget=None) -> bool:
    b = _budget(budget)
    return all(_holds(o_solve(model, u, x, b), y) for u in _settings(model, model.exogenous))


def directly_sufficient(model, x, n, budget=None) -> bool:
    b = _budget(budget)
    rest = [v for v in model.endogenous if v not in x and v not in n]
    return all(_holds(o_solve(model, u, {**x, **c}, b), n)
               for c in _settings(model, rest) for u in _settings(model, model.exogenous))


def strongly_sufficient(model, x, y, network, budget=None):
    """Forced network values (a dict) for some ``n`` extending ``y``, else None."""
    b = _budget(budget)
    net = [v for v in model.endogenous if v in set(network) | set(y)]
    for n in _settings(model, net):
        if _holds(n, y) and directly_sufficient(model, x, n, b):
            return n
    return None


# ----------------------------------------------------------------------
# sufficient explanations

def _others(model, target):
    return [v for v in model.endogenous if v != target]


def actual_sufficient_explanations(model, context, target, budget=None):
    """Every ``(X, N)`` pair whose actual values explain the actual target value."""
    b = _budget(budget)
    world = o_solve(model, context, {}, b)
    y = {target: world[target]}
    out = []
    others = _others(model, target)
    for xs in _subsets(others):
        x = {v: world[v] for v in xs}
        for ns in _subsets([v for v in others if v not in xs]):
            if strongly_sufficient(model, x, y, ns, b) is not None:
                out.append((frozenset(xs), frozenset(ns) | {target}))
    return out


def good_sufficient_explanations(model, context, target, budget=None):
    """Set of ``(antecedent set, network set)`` pairs not dominated by another."""
    exps = actual_sufficient_explanations(model, context, target, budget)
    return {e for e in exps
            if not any(f != e and f[0] <= e[0] and f[1] <= e[1] for f in exps)}


# ----------------------------------------------------------------------
# counterfactual dependence and explanations

def _flip(model, context, xprime, w, target, y, b):
    return o_solve(model, context, {**xprime, **w}, b)[target] != y


def _has_witness(model, context, world, xs, xprime, target, b):
    rest = [v for v in _others(model, target) if v not in xs]
    return [ws for ws in _subsets(rest)
            if _flip(model, context, xprime, {v: world[v] for v in ws}, target, world[target], b)]


def counterfactually_depends(model, context, x, xprime, target, mode="any", budget=None):
    """Witness sets (tuples of names) certifying dependence, or None."""
    b = _budget(budget)
    world = o_solve(model, context, {}, b)
    xs = list(x)
    wits = _has_witness(model, context, world, xs, xprime, target, b)
    rest = tuple(v for v in _others(model, target) if v not in xs)
    if mode == "empty":
        wits = [w for w in wits if w == ()]
    elif mode == "all-others":
        wits = [w for w in wits if w == rest]
    if not wits:
        return None
    for sub in _subsets(xs):
        if len(sub) < len(xs) and _has_witness(
                model, context, world, sub, {v: xprime[v] for v in sub}, target, b):
            return None
    return wits


def counterfactual_explanations(model, context, target, budget=None):
    """Every ``(X, x', W, N)`` counterfactual explanation, ``x'`` componentwise different."""
    b = _budget(budget)
    world = o_solve(model, context, {}, b)
    y = world[target]
    others = _others(model, target)
    out = []
    for labels in product(range(4), repeat=len(others)):
        xs = [v for v, l in zip(others, labels) if l == 1]
        ws = [v for v, l in zip(others, labels) if l == 2]
        ns = [v for v, l in zip(others, labels) if l == 3]
        if not xs:
            continue
        x = {v: world[v] for v in xs}
        w = {v: world[v] for v in ws}
        if strongly_sufficient(model, {**x, **w}, {target: y}, ns, b) is None:
            continue
        for vals in product(*([d for d in model.domains[v] if d != world[v]] for v in xs)):
            xp = dict(zip(xs, vals))
            for y2 in model.domains[target]:
                if y2 != y and strongly_sufficient(model, {**xp, **w}, {target: y2}, ns, b) is not None:
                    out.append((frozenset(xs), tuple(vals), frozenset(ws), frozenset(ns) | {target}))
    return out


def good_counterfactual_explanations(model, context, target, budget=None):
    """Explanations no other explanation strictly dominates (sets only)."""
    exps = counterfactual_explanations(model, context, target, budget)
    keys = {(e[0], e[2], e[3]) for e in exps}

    def strictly_below(k, e):
        return k != e and k[0] <= e[0] and k[1] <= e[1] and k[2] <= e[2]

    return {e for e in exps if not any(strictly_below(k, (e[0], e[2], e[3])) for k in keys)}


# ----------------------------------------------------------------------
# causation

def can_replace(model, x, w, network, target, y, xprime, budget=None) -> bool:
    """Some explanation dominating ``((x, w), N)`` has antecedent including ``(x', w)``."""
    b = _budget(budget)
    ante = set(x) | set(w)
    new = {**xprime, **w}
    for zs in _subsets([v for v in model.endogenous if v in ante]):
        if set(zs) != ante:  # must include every variable of (x', w)
            continue
        z = {v: new[v] for v in zs}
        for ns in _subsets([v for v in network if v != target]):
            if strongly_sufficient(model, z, {target: y}, ns, b) is not None:
                return True
    return False


def _goods_with(model, context, target, xs, b):
    return [g for g in good_sufficient_explanations(model, context, target, b) if set(xs) <= g[0]]


def actual_cause(model, context, x, xprime, target, budget=None) -> bool:
    b = _budget(budget)
    world = o_solve(model, context, {}, b)
    for ante, net in _goods_with(model, context, target, x, b):
        w = {v: world[v] for v in ante if v not in x}
        if not can_replace(model, x, w, net, target, world[target], xprime, b):
            return True
    return False


def optimal_cause(model, context, x, target, budget=None) -> bool:
    b = _budget(budget)
    world = o_solve(model, context, {}, b)
    xs = list(x)
    for ante, net in _goods_with(model, context, target, x, b):
        w = {v: world[v] for v in ante if v not in x}
        alts = product(*([d for d in model.domains[v] if d != x[v]] for v in xs))
        if not any(can_replace(model, x, w, net, target, world[target], dict(zip(xs, a)), b)
                   for a in alts):
            return True
    return False


def direct_cause(model, context, x, target, budget=None) -> bool:
    b = _budget(budget)
    return any(net == {target} for _, net in _goods_with(model, context, target, x, b))


# ----------------------------------------------------------------------
# fairness

def parents(model, budget=None) -> dict[str, set]:
    """``P`` is a parent of ``V`` if changing ``P`` alone changes ``F_V`` somewhere."""
    b = _budget(budget)
    par = {v: set() for v in model.variables}
    for v in model.endogenous:
        refs = model.refs[v]
        for env in _settings(model, refs):
            b.charge(1)
            base = eval_expr(model.equations[v], env)
            for p in refs:
                if p not in par[v] and any(
                        eval_expr(model.equations[v], {**env, p: d}) != base
                        for d in model.domains[p]):
                    par[v].add(p)
    return par


def _all_paths(model, a, y):
    par = parents(model)
    out = []

    def walk(p):
        if p[-1] == y:
            out.append(tuple(p))
            return
        for v in model.variables:
            if p[-1] in par[v]:
                walk(p + [v])
    walk([a])
    return out


def is_fair(model, protected, unfair_paths, target, budget=None) -> bool:
    b = _budget(budget)
    unfair = {tuple(p) for p in unfair_paths}
    for ctx in _settings(model, model.exogenous):
        world = o_solve(model, ctx, {}, b)
        a = world[protected]
        for ante, net in _goods_with(model, ctx, target, [protected], b):
            w = {v: world[v] for v in ante if v != protected}
            pn = {p for p in _all_paths(model, protected, target) if set(p[1:]) <= net}
            if not pn <= unfair:
                continue
            for a2 in model.domains[protected]:
                if a2 != a and not can_replace(model, {protected: a}, w, net, target,
                                               world[target], {protected: a2}, b):
                    return False
    return True


def standardly_counterfactually_fair(model, protected, target, budget=None) -> bool:
    b = _budget(budget)
    for ctx in _settings(model, model.exogenous):
        world = o_solve(model, ctx, {}, b)
        for a2 in model.domains[protected]:
            if o_solve(model, ctx, {protected: a2}, b)[target] != world[target]:
                return False
    return True

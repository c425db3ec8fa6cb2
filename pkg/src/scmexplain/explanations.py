"""Sufficient and counterfactual explanations, domination and goodness.

Networks always contain the target variable; it is added when missing.
Antecedent and witness values of actual explanations are the values the
variables take in the given context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from . import kernel
from .budget import Budget, ensure_budget
from .errors import QueryError
from .model import CausalModel, _fixed_vector, check_context, check_setting
from .results import Refutation, to_json
from .sufficiency import _constant


# ----------------------------------------------------------------------
# result types

@dataclass(frozen=True)
class SufficientExplanation:
    """``(X = x, N)`` explaining ``target = value``."""

    antecedent: Mapping[str, Fraction]
    network: tuple[str, ...]
    target: str
    value: Fraction
    network_values: Mapping[str, Fraction] = field(default_factory=dict, compare=False)
    actual: bool = field(default=False, compare=False)

    @property
    def direct(self) -> bool:
        return self.network == (self.target,)

    def key(self):
        return (frozenset(self.antecedent), frozenset(self.network))

    def to_json(self) -> dict:
        return {"antecedent": to_json(self.antecedent), "network": list(self.network),
                "target": {self.target: to_json(self.value)},
                "network_values": to_json(self.network_values),
                "actual": self.actual, "direct": self.direct}

    def __str__(self) -> str:
        ante = ", ".join(f"{v}={_fmt(x)}" for v, x in self.antecedent.items())
        return f"(({ante}), {{{', '.join(self.network)}}})"


@dataclass(frozen=True)
class CounterfactualExplanation:
    """``(X = (x, x'), W = w, N)`` for ``target = value`` against ``value_prime``."""

    x: Mapping[str, Fraction]
    x_prime: Mapping[str, Fraction]
    witness: Mapping[str, Fraction]
    network: tuple[str, ...]
    target: str
    value: Fraction
    value_prime: Fraction

    def key(self):
        return (frozenset(self.x), frozenset(self.witness), frozenset(self.network))

    def to_json(self) -> dict:
        return {"x": to_json(self.x), "x_prime": to_json(self.x_prime),
                "witness": to_json(self.witness), "network": list(self.network),
                "target": {self.target: to_json(self.value)},
                "target_prime": to_json(self.value_prime)}

    def __str__(self) -> str:
        pairs = ", ".join(f"{v}=({_fmt(self.x[v])}, {_fmt(self.x_prime[v])})" for v in self.x)
        wit = ", ".join(f"{v}={_fmt(x)}" for v, x in self.witness.items())
        return f"({pairs}; W: {{{wit}}}; N: {{{', '.join(self.network)}}})"


@dataclass(frozen=True)
class Dependence:
    """Positive counterfactual-dependence verdict with its witness sets."""

    witnesses: tuple[Mapping[str, Fraction], ...]

    def to_json(self) -> dict:
        return {"status": "ok", "witnesses": to_json(list(self.witnesses))}


def _fmt(x):
    from .values import format_value
    return format_value(x)


# ----------------------------------------------------------------------
# helpers working on value indices

class _Setting:
    """A causal setting ``(M, u)`` with its actual world as value indices."""

    def __init__(self, model: CausalModel, context: Mapping, target: str,
                 value=None, budget=None, memo=True):
        self.model = model
        self.ctx = check_context(model, context)
        if target not in model.endogenous:
            raise QueryError(f"target {target} is not an endogenous variable")
        self.budget = ensure_budget(budget)
        self.memo = memo
        self.world = kernel.solve(model.tables, _fixed_vector(model, self.ctx, {}))
        self.y = model.index[target]
        self.target = target
        if value is not None:
            vi = model.value_index(target, value)
            if vi != self.world[self.y]:
                raise QueryError(f"{target}={_fmt(model.domains[target][vi])} "
                                 "does not hold in this context")
        self.others = [model.index[v] for v in model.endogenous if v != target]

    def value(self, i: int) -> Fraction:
        v = self.model.variables[i]
        return self.model.domains[v][self.world[i]]

    def actual(self, idx: Iterable[int]) -> dict[str, Fraction]:
        return {self.model.variables[i]: self.value(i) for i in sorted(idx)}

    def forced(self, xfix, net):
        """Network value indices forced by ``xfix``, or None."""
        row, first, _ = _constant(self.model, tuple(sorted(xfix)), net, self.budget, self.memo)
        return tuple(first) if row < 0 else None

    def explains(self, xfix, net) -> bool:
        """``(xfix, net)`` is a sufficient explanation of the actual target value."""
        n = self.forced(xfix, net)
        return n is not None and n[net.index(self.y)] == self.world[self.y]

    def solve(self, fix: Mapping[int, int]) -> list[int]:
        fixed = _fixed_vector(self.model, self.ctx, {})
        for i, x in fix.items():
            fixed[i] = x
        return kernel.solve(self.model.tables, fixed)

    def explanation(self, xidx, net, n) -> SufficientExplanation:
        m = self.model
        return SufficientExplanation(
            self.actual(xidx), tuple(m.variables[i] for i in net), self.target,
            self.value(self.y),
            {m.variables[i]: m.domains[m.variables[i]][x] for i, x in zip(net, n)}, True)


def _labelings(items: list[int], labels: int):
    """Every assignment of ``labels`` classes to ``items`` (class 0 = unused)."""
    for combo in product(range(labels), repeat=len(items)):
        yield [tuple(i for i, c in zip(items, combo) if c == k) for k in range(labels)]


def _by_size(groups):
    return sorted(groups, key=lambda g: (sum(len(s) for s in g[1:]),) + tuple(
        (len(s), s) for s in g[1:]))


def _contrasts(model: CausalModel, xidx, actual_idx):
    """All componentwise-different value-index tuples for ``xidx``."""
    t = model.tables
    return product(*[[k for k in range(t.dom_size[i]) if k != a]
                     for i, a in zip(xidx, actual_idx)])


# ----------------------------------------------------------------------
# sufficient explanations

def _check_network(model, network, target, antecedent):
    names = set(network) | {target}
    for v in names:
        if v not in model.endogenous:
            raise QueryError(f"network variable {v} is not endogenous")
    both = names & set(antecedent)
    if both:
        raise QueryError(f"antecedent and network overlap on {sorted(both)}")
    return tuple(sorted(model.index[v] for v in names))


def is_sufficient_explanation(model: CausalModel, x: Mapping, network: Iterable[str],
                              target: str, value, context: Mapping | None = None,
                              budget: Budget | int | None = None, memo: bool = True):
    """Check that ``(X = x, N)`` is a sufficient explanation of ``target = value``.

    With a context, the explanation is also checked for actuality and the
    result's ``actual`` flag records whether ``X = x`` holds there.
    """
    budget = ensure_budget(budget)
    xs = check_setting(model, x, what="antecedent")
    if target not in model.endogenous:
        raise QueryError(f"target {target} is not an endogenous variable")
    yi = model.value_index(target, value)
    net = _check_network(model, network, target, xs)
    xfix = tuple(sorted((model.index[v], model.value_index(v, val)) for v, val in xs.items()))
    row, first, _ = _constant(model, xfix, net, budget, memo)
    if row >= 0:
        from .sufficiency import strongly_sufficient
        r = strongly_sufficient(model, xs, {target: model.domains[target][yi]},
                                [model.variables[i] for i in net], budget, memo)
        return Refutation("antecedent does not force the network", r.detail)
    names = [model.variables[i] for i in net]
    nvals = {v: model.domains[v][k] for v, k in zip(names, first)}
    if first[net.index(model.index[target])] != yi:
        return Refutation("antecedent forces a different target value", {"network": nvals})
    actual = False
    if context is not None:
        ctx = check_context(model, context)
        world = kernel.solve(model.tables, _fixed_vector(model, ctx, {}))
        actual = all(world[i] == k for i, k in xfix)
    ordered = {v: xs[v] for v in model.variables if v in xs}
    return SufficientExplanation(ordered, tuple(names), target, model.domains[target][yi],
                                 nvals, actual)


def dominates(e1: SufficientExplanation, e2: SufficientExplanation) -> bool:
    """Non-strict domination: same target and ⊆ on antecedent and network sets."""
    return (e1.target == e2.target and e1.value == e2.value
            and set(e1.antecedent) <= set(e2.antecedent)
            and set(e1.network) <= set(e2.network))


def _good_pairs(s: _Setting):
    """Good (antecedent, network) index pairs, smallest first."""
    found = []
    for _, xidx, nidx in _by_size(_labelings(s.others, 3)):
        net = tuple(sorted(nidx + (s.y,)))
        if any(set(fx) <= set(xidx) and set(fn) <= set(net) for fx, fn, _ in found):
            continue
        xfix = [(i, s.world[i]) for i in xidx]
        n = s.forced(xfix, net)
        if n is not None and n[net.index(s.y)] == s.world[s.y]:
            found.append((xidx, net, n))
    return found


def _canonical_sufficient(model, exps):
    pos = model.index.__getitem__
    return sorted(exps, key=lambda e: (len(e.antecedent), len(e.network),
                                       [pos(v) for v in e.antecedent],
                                       [pos(v) for v in e.network]))


def good_sufficient_explanations(model: CausalModel, context: Mapping, target: str,
                                 value=None, budget: Budget | int | None = None,
                                 memo: bool = True) -> list[SufficientExplanation]:
    """All good actual sufficient explanations of the actual value of ``target``."""
    s = _Setting(model, context, target, value, budget, memo)
    exps = [s.explanation(x, n, vals) for x, n, vals in _good_pairs(s)]
    return _canonical_sufficient(model, exps)


# ----------------------------------------------------------------------
# counterfactual dependence

MODES = ("any", "empty", "all-others")


def _flips(s: _Setting, xidx, xprime, widx) -> bool:
    fix = {i: k for i, k in zip(xidx, xprime)}
    fix.update((i, s.world[i]) for i in widx)
    return s.solve(fix)[s.y] != s.world[s.y]


def _witness_sets(s: _Setting, xidx, xprime):
    rest = [i for i in s.others if i not in xidx]
    out = []
    for combo in product((0, 1), repeat=len(rest)):
        w = tuple(i for i, c in zip(rest, combo) if c)
        s.budget.charge(1)
        if _flips(s, xidx, xprime, w):
            out.append(w)
    out.sort(key=lambda w: (len(w), w))
    return out


def _parse_contrast(s: _Setting, x: Mapping, xprime: Mapping):
    model = s.model
    xs = check_setting(model, x, what="cause")
    xp = check_setting(model, xprime, what="contrast")
    if set(xs) != set(xp):
        raise QueryError("cause and contrast must assign the same variables")
    if not xs:
        raise QueryError("the cause must assign at least one variable")
    if s.target in xs:
        raise QueryError("the cause may not contain the target")
    xidx = tuple(sorted(model.index[v] for v in xs))
    names = [model.variables[i] for i in xidx]
    xv = tuple(model.value_index(v, xs[v]) for v in names)
    pv = tuple(model.value_index(v, xp[v]) for v in names)
    for i, v, a in zip(xidx, names, xv):
        if s.world[i] != a:
            raise QueryError(f"{v}={_fmt(xs[v])} does not hold in this context")
    for v, a, b in zip(names, xv, pv):
        if a == b:
            raise QueryError(f"contrast value for {v} must differ from the actual value")
    return xidx, xv, pv


def _minimal(s: _Setting, xidx, xprime) -> tuple | None:
    """A strict subset of ``xidx`` that already has a witness, or None."""
    k = len(xidx)
    for size in range(k):
        for sub in _subsets(range(k), size):
            if _witness_sets(s, [xidx[j] for j in sub], [xprime[j] for j in sub]):
                return tuple(xidx[j] for j in sub)
    return None


def _subsets(items, size):
    from itertools import combinations
    return combinations(list(items), size)


def counterfactually_depends(model: CausalModel, context: Mapping, x: Mapping,
                             xprime: Mapping, target: str, value=None,
                             mode: str = "any", budget: Budget | int | None = None):
    """Does ``target`` counterfactually depend on ``X = x`` rather than ``x'``?

    ``mode`` selects the certified witnesses: ``"any"`` lists every witness
    set, ``"empty"`` requires the empty witness (standard dependence) and
    ``"all-others"`` requires every remaining variable as witness (direct
    dependence). Minimality of ``X`` is judged against witnesses of any kind.
    """
    if mode not in MODES:
        raise QueryError(f"unknown witness mode {mode!r}")
    s = _Setting(model, context, target, value, budget)
    xidx, _, pv = _parse_contrast(s, x, xprime)
    wits = _witness_sets(s, xidx, pv)
    if mode == "empty":
        wits = [w for w in wits if not w]
    elif mode == "all-others":
        full = tuple(i for i in s.others if i not in xidx)
        wits = [w for w in wits if w == full]
    if not wits:
        return Refutation("no witness makes the target differ", {"mode": mode})
    sub = _minimal(s, xidx, pv)
    if sub is not None:
        return Refutation("a strict subset of the cause already suffices",
                          {"subset": [model.variables[i] for i in sub]})
    return Dependence(tuple(s.actual(w) for w in wits))


# ----------------------------------------------------------------------
# counterfactual explanations

def _cf_contrasts(s: _Setting, xidx, widx, net):
    """Contrast value tuples making ``(X, W, N)`` a counterfactual explanation."""
    wfix = [(i, s.world[i]) for i in widx]
    if not s.explains([(i, s.world[i]) for i in xidx] + wfix, net):
        return []
    out = []
    yk = net.index(s.y)
    for pv in _contrasts(s.model, xidx, [s.world[i] for i in xidx]):
        n = s.forced(list(zip(xidx, pv)) + wfix, net)
        if n is not None and n[yk] != s.world[s.y]:
            out.append((pv, n[yk]))
    return out


def _make_cf(s: _Setting, xidx, pv, widx, net, yprime) -> CounterfactualExplanation:
    m = s.model
    names = [m.variables[i] for i in xidx]
    return CounterfactualExplanation(
        s.actual(xidx), {v: m.domains[v][k] for v, k in zip(names, pv)}, s.actual(widx),
        tuple(m.variables[i] for i in net), s.target, s.value(s.y),
        m.domains[s.target][yprime])


def is_counterfactual_explanation(model: CausalModel, context: Mapping, x: Mapping,
                                  xprime: Mapping, witness: Iterable[str],
                                  network: Iterable[str], target: str, value=None,
                                  budget: Budget | int | None = None, memo: bool = True):
    """Check ``(X = (x, x'), W = w, N)``; witness values are the actual ones."""
    s = _Setting(model, context, target, value, budget, memo)
    xidx, _, pv = _parse_contrast(s, x, xprime)
    widx = tuple(sorted(model.index[v] for v in witness))
    for i in widx:
        if i in xidx or i == s.y or model.variables[i] not in model.endogenous:
            raise QueryError(f"invalid witness variable {model.variables[i]}")
    net = _check_network(model, network, target, [model.variables[i] for i in xidx + widx])
    wfix = [(i, s.world[i]) for i in widx]
    if not s.explains([(i, s.world[i]) for i in xidx] + wfix, net):
        return Refutation("actual values are not a sufficient explanation", {})
    n = s.forced(list(zip(xidx, pv)) + wfix, net)
    if n is None:
        return Refutation("contrast values do not force the network", {})
    yk = net.index(s.y)
    if n[yk] == s.world[s.y]:
        return Refutation("contrast values force the same target value", {})
    return _make_cf(s, xidx, pv, widx, net, n[yk])


def _good_cf_triples(s: _Setting):
    """Good ``(X, W, N)`` triples with their contrasts, smallest first."""
    found = []
    for _, xidx, widx, nidx in _by_size(_labelings(s.others, 4)):
        if not xidx:
            continue
        net = tuple(sorted(nidx + (s.y,)))
        if any(set(a) <= set(xidx) and set(b) <= set(widx) and set(c) <= set(net)
               for a, b, c, _ in found):
            continue
        cons = _cf_contrasts(s, xidx, widx, net)
        if cons:
            found.append((xidx, widx, net, cons))
    return found


def cf_dominates(e1: CounterfactualExplanation, e2: CounterfactualExplanation) -> bool:
    """Non-strict domination of counterfactual explanations (sets only)."""
    return (e1.target == e2.target and e1.value == e2.value
            and set(e1.x) <= set(e2.x) and set(e1.witness) <= set(e2.witness)
            and set(e1.network) <= set(e2.network))


def good_counterfactual_explanations(model: CausalModel, context: Mapping, target: str,
                                     value=None, budget: Budget | int | None = None,
                                     memo: bool = True) -> list[CounterfactualExplanation]:
    """Counterfactual explanations not strictly dominated by another one."""
    s = _Setting(model, context, target, value, budget, memo)
    out = [_make_cf(s, x, pv, w, n, yp)
           for x, w, n, cons in _good_cf_triples(s) for pv, yp in cons]
    pos = model.index.__getitem__
    return sorted(out, key=lambda e: (len(e.x), len(e.witness), len(e.network),
                                      [pos(v) for v in e.x], [pos(v) for v in e.witness],
                                      [pos(v) for v in e.network],
                                      [model.value_index(v, a) for v, a in e.x_prime.items()]))


def actual_sufficient_explanations(model: CausalModel, context: Mapping, target: str,
                                   value=None, budget: Budget | int | None = None,
                                   memo: bool = True) -> list[SufficientExplanation]:
    """Every actual sufficient explanation of the target's actual value."""
    s = _Setting(model, context, target, value, budget, memo)
    out = []
    for _, xidx, nidx in _labelings(s.others, 3):
        net = tuple(sorted(nidx + (s.y,)))
        n = s.forced([(i, s.world[i]) for i in xidx], net)
        if n is not None and n[net.index(s.y)] == s.world[s.y]:
            out.append(s.explanation(xidx, net, n))
    return _canonical_sufficient(model, out)

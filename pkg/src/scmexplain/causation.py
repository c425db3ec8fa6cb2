"""Replacement and actual, optimal and direct causation.

Every cause is read off a good actual sufficient explanation
``((X = x, W = w), N)`` whose antecedent contains the cause ``X = x``;
the rest of the antecedent is the witness ``W = w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping

from .budget import Budget
from .errors import QueryError
from .explanations import SufficientExplanation, _good_pairs, _Setting, _parse_contrast
from .model import CausalModel, check_setting
from .results import Refutation, to_json


@dataclass(frozen=True)
class Replacement:
    """``X = x'`` can replace ``X = x``: sufficient along ``network`` (⊆ the original)."""

    network: tuple[str, ...]

    def to_json(self) -> dict:
        return {"status": "ok", "network": list(self.network)}


@dataclass(frozen=True)
class CauseStatement:
    """A certified cause with the explanation that certifies it."""

    kind: str  # "actual", "optimal" or "direct"
    cause: Mapping[str, Fraction]
    contrast: Mapping[str, Fraction] | None
    target: str
    value: Fraction
    evidence: SufficientExplanation
    witness: Mapping[str, Fraction]
    alternatives: tuple[SufficientExplanation, ...] = field(default=(), compare=False)

    @property
    def network(self) -> tuple[str, ...]:
        return self.evidence.network

    def to_json(self) -> dict:
        out = {"status": "ok", "kind": self.kind, "cause": to_json(self.cause),
               "contrast": to_json(self.contrast),
               "target": {self.target: to_json(self.value)},
               "witness": to_json(self.witness), "network": list(self.network),
               "evidence": self.evidence.to_json()}
        if self.alternatives:
            out["all_evidence"] = [e.to_json() for e in self.alternatives]
        return out


# ----------------------------------------------------------------------
# replacement

def _replacing_network(s: _Setting, xidx, xprime, widx, net):
    """Smallest ``N' ⊆ net`` containing the target along which ``(x', w)`` explains it."""
    rest = [i for i in net if i != s.y]
    wfix = [(i, s.world[i]) for i in widx]
    fix = list(zip(xidx, xprime)) + wfix
    for size in range(len(rest) + 1):
        for sub in combinations(rest, size):
            n2 = tuple(sorted(sub + (s.y,)))
            if s.explains(fix, n2):
                return n2
    return None


def can_replace(model: CausalModel, x: Mapping, witness: Mapping, network: Iterable[str],
                target: str, value, xprime: Mapping, budget: Budget | int | None = None,
                memo: bool = True):
    """Can ``X = x'`` replace ``X = x`` in the explanation ``((X = x, W = w), N)``?

    Returns a :class:`Replacement` naming the dominating network, or a
    :class:`Refutation`. The input must itself be a sufficient explanation
    of ``target = value``.
    """
    from .explanations import is_sufficient_explanation

    xs = check_setting(model, x, what="cause")
    ws = check_setting(model, witness, what="witness")
    xp = check_setting(model, xprime, what="contrast")
    if set(xs) != set(xp):
        raise QueryError("cause and contrast must assign the same variables")
    if set(xs) & set(ws):
        raise QueryError("cause and witness overlap")
    base = is_sufficient_explanation(model, {**xs, **ws}, network, target, value,
                                     budget=budget, memo=memo)
    if not base:
        raise QueryError(f"not a sufficient explanation: {base.reason}")
    s = _Lite(model, target, value, budget, memo)
    xidx = tuple(sorted(model.index[v] for v in xs))
    names = [model.variables[i] for i in xidx]
    pv = tuple(model.value_index(v, xp[v]) for v in names)
    widx = tuple(sorted(model.index[v] for v in ws))
    s.world = {i: model.value_index(model.variables[i], ws[model.variables[i]]) for i in widx}
    s.world[s.y] = model.value_index(target, value)
    net = tuple(sorted(model.index[v] for v in base.network))
    n2 = _replacing_network(s, xidx, pv, widx, net)
    if n2 is None:
        return Refutation("no sub-network makes the contrast values sufficient", {})
    return Replacement(tuple(model.variables[i] for i in n2))


class _Lite(_Setting):
    """Setting without a context, for replacement checks on given values."""

    def __init__(self, model, target, value, budget, memo):
        from .budget import ensure_budget
        self.model = model
        self.budget = ensure_budget(budget)
        self.memo = memo
        self.y = model.index[target]
        self.target = target


# ----------------------------------------------------------------------
# causes

def _containing(s: _Setting, xidx, goods):
    return [(ante, net, n) for ante, net, n in goods if set(xidx) <= set(ante)]


def _statement(s: _Setting, kind, xidx, pv, ante, net, n, alts=()):
    m = s.model
    widx = tuple(i for i in ante if i not in xidx)
    contrast = None
    if pv is not None:
        contrast = {m.variables[i]: m.domains[m.variables[i]][k] for i, k in zip(xidx, pv)}
    return CauseStatement(kind, s.actual(xidx), contrast, s.target, s.value(s.y),
                          s.explanation(ante, net, n), s.actual(widx),
                          tuple(s.explanation(*g) for g in alts))


def _cause_part(s: _Setting, x: Mapping):
    m = s.model
    xs = check_setting(m, x, what="cause")
    if not xs:
        raise QueryError("the cause must assign at least one variable")
    if s.target in xs:
        raise QueryError("the cause may not contain the target")
    xidx = tuple(sorted(m.index[v] for v in xs))
    for i in xidx:
        v = m.variables[i]
        if m.value_index(v, xs[v]) != s.world[i]:
            raise QueryError(f"{v}={_fmt(xs[v])} does not hold in this context")
    return xidx


def _fmt(x):
    from .values import format_value
    return format_value(x)


def _certifying(s: _Setting, xidx, pv, goods):
    out = []
    for ante, net, n in _containing(s, xidx, goods):
        widx = tuple(i for i in ante if i not in xidx)
        if _replacing_network(s, xidx, pv, widx, net) is None:
            out.append((ante, net, n))
    return out


def actual_cause(model: CausalModel, context: Mapping, x: Mapping, xprime: Mapping,
                 target: str, value=None, budget: Budget | int | None = None,
                 memo: bool = True, all_evidence: bool = False):
    """Is ``X = x`` rather than ``X = x'`` an actual cause of the target's value?"""
    s = _Setting(model, context, target, value, budget, memo)
    xidx, _, pv = _parse_contrast(s, x, xprime)
    goods = _good_pairs(s)
    if not _containing(s, xidx, goods):
        return Refutation("the cause is not part of any good sufficient explanation", {})
    cert = _certifying(s, xidx, pv, goods)
    if not cert:
        return Refutation("the contrast values can replace the cause in every "
                          "good sufficient explanation containing it", {})
    return _statement(s, "actual", xidx, pv, *cert[0], alts=cert if all_evidence else ())


def optimal_cause(model: CausalModel, context: Mapping, x: Mapping, target: str,
                  value=None, budget: Budget | int | None = None, memo: bool = True,
                  all_evidence: bool = False):
    """Is ``X = x`` part of a good explanation in which no contrast values replace it?"""
    s = _Setting(model, context, target, value, budget, memo)
    xidx = _cause_part(s, x)
    goods = _containing(s, xidx, _good_pairs(s))
    if not goods:
        return Refutation("the cause is not part of any good sufficient explanation", {})
    cert = []
    replaced = {}
    for ante, net, n in goods:
        widx = tuple(i for i in ante if i not in xidx)
        for pv in product(*[[k for k in range(model.tables.dom_size[i]) if k != s.world[i]]
                            for i in xidx]):
            if _replacing_network(s, xidx, pv, widx, net) is not None:
                replaced[(ante, net)] = pv
                break
        else:
            cert.append((ante, net, n))
    if not cert:
        ante, net = next(iter(replaced))
        pv = replaced[(ante, net)]
        return Refutation("replaceable in every good sufficient explanation containing it", {
            "evidence": [model.variables[i] for i in ante], "network": [model.variables[i] for i in net],
            "replacement": {model.variables[i]: model.domains[model.variables[i]][k]
                            for i, k in zip(xidx, pv)}})
    return _statement(s, "optimal", xidx, None, *cert[0], alts=cert if all_evidence else ())


def direct_cause(model: CausalModel, context: Mapping, x: Mapping, target: str,
                 value=None, budget: Budget | int | None = None, memo: bool = True,
                 all_evidence: bool = False):
    """Is ``X = x`` part of a good actual direct sufficient explanation (network ``{Y}``)?"""
    s = _Setting(model, context, target, value, budget, memo)
    xidx = _cause_part(s, x)
    cert = [g for g in _containing(s, xidx, _good_pairs(s)) if g[1] == (s.y,)]
    if not cert:
        return Refutation("the cause is not part of any good direct sufficient explanation", {})
    return _statement(s, "direct", xidx, None, *cert[0], alts=cert if all_evidence else ())


def enumerate_actual_causes(model: CausalModel, context: Mapping, target: str, value=None,
                            budget: Budget | int | None = None,
                            memo: bool = True) -> list[CauseStatement]:
    """Every certified ``(X = x rather than x')`` pair, smallest causes first."""
    s = _Setting(model, context, target, value, budget, memo)
    goods = _good_pairs(s)
    parts = set()
    for ante, _, _ in goods:
        for k in range(1, len(ante) + 1):
            parts.update(combinations(ante, k))
    out = []
    for xidx in sorted(parts, key=lambda p: (len(p), p)):
        for pv in product(*[[k for k in range(model.tables.dom_size[i]) if k != s.world[i]]
                            for i in xidx]):
            cert = _certifying(s, xidx, pv, goods)
            if cert:
                out.append(_statement(s, "actual", xidx, pv, *cert[0]))
    return out

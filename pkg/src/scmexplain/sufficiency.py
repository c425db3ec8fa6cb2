"""Weak, direct and strong sufficiency.

All three quantify over every context, and direct/strong sufficiency also
over every setting of the remaining variables ``C = V - (X u N)``. Each
check is one call to :func:`kernel.scan`: the intervened variables are
pinned, ``C`` and the exogenous variables that still matter are free, and
the scan reports the first row whose watched values differ.

Counterexamples are the first failing row in odometer order over the
free variables (``C`` in declaration order, then the exogenous variables),
each enumerated in domain order. Exogenous variables that only feed
intervened equations cannot matter; they are held at their first value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import kernel
from .budget import Budget, ensure_budget
from .errors import QueryError
from .model import CausalModel, check_setting
from .results import Refutation


def _ref_index(model: CausalModel) -> list[tuple[int, ...]]:
    cached = model._memo.get("refidx")
    if cached is None:
        t = model.tables
        cached = [tuple(t.par_idx[t.par_start[i]:t.par_start[i] + t.par_count[i]])
                  for i in range(t.n)]
        model._memo["refidx"] = cached
    return cached


def _live_exogenous(model: CausalModel, computed: Iterable[int]) -> list[int]:
    """Exogenous indices referenced by equations that are still in force."""
    refs = _ref_index(model)
    n_exo = len(model.exogenous)
    live = {p for v in computed for p in refs[v] if p < n_exo}
    return sorted(live)


def _scan(model: CausalModel, xfix: Mapping[int, int], watch: tuple[int, ...],
          expect, budget: Budget, free_endogenous: bool):
    """Run one enumeration; returns ``(row, first, free)``.

    With ``free_endogenous`` every endogenous variable outside ``xfix`` and
    ``watch`` is free (the ``C`` of direct sufficiency); otherwise they
    follow their equations.
    """
    t = model.tables
    n_exo = len(model.exogenous)
    fixed = [-1] * t.n
    for i, x in xfix.items():
        fixed[i] = x
    if free_endogenous:
        wset = set(watch)
        cvars = [i for i in range(n_exo, t.n) if i not in xfix and i not in wset]
        computed = watch
    else:
        cvars = []
        computed = [i for i in range(n_exo, t.n) if i not in xfix]
    live = _live_exogenous(model, computed)
    for u in range(n_exo):
        fixed[u] = -1 if u in live else 0
    free = cvars + live
    rows = 1
    for f in free:
        rows *= t.dom_size[f]
    budget.charge(rows)
    row, first = kernel.scan(t, fixed, free, list(watch), expect)
    return row, first, free


def _constant(model: CausalModel, xfix: tuple[tuple[int, int], ...],
              net: tuple[int, ...], budget: Budget, memo: bool = True):
    """Direct-sufficiency scan of ``X = x`` over network ``net`` (sorted indices).

    Returns ``(row, first, free)`` where ``row`` is -1 when the network
    values are the same in every row and ``first`` holds them (row 0).
    Results are context independent and cached on the model.
    """
    key = ("strong", xfix, net)
    if memo:
        hit = model._memo.get(key)
        if hit is not None:
            return hit
    res = _scan(model, dict(xfix), net, None, budget, True)
    if memo:
        model._memo[key] = res
    return res


def _decode_row(model: CausalModel, row: int, free: list[int]) -> dict[int, int]:
    t = model.tables
    out = {}
    for f in reversed(free):
        d = t.dom_size[f]
        out[f] = row % d
        row //= d
    return out


def _row_detail(model: CausalModel, row: int, free: list[int], n_exo: int) -> dict:
    """Split a decoded row into interventions on ``C`` and a full context."""
    dig = _decode_row(model, row, free)
    names = model.variables
    ctx = {u: model.domains[u][dig.get(model.index[u], 0)] for u in model.exogenous}
    ivs = {names[i]: model.domains[names[i]][x] for i, x in sorted(dig.items()) if i >= n_exo}
    return {"interventions": ivs, "context": ctx}


# ----------------------------------------------------------------------
# argument handling

def _setting(model: CausalModel, setting: Mapping, what: str) -> dict[str, Fraction]:
    return check_setting(model, setting, what=what)


def _as_fix(model: CausalModel, setting: Mapping[str, Fraction]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((model.index[v], model.value_index(v, x)) for v, x in setting.items()))


def _network(model: CausalModel, network: Iterable[str], targets: Iterable[str]) -> tuple[int, ...]:
    names = set(network) | set(targets)
    for v in names:
        if v not in model.endogenous:
            raise QueryError(f"network variable {v} is not endogenous")
    return tuple(sorted(model.index[v] for v in names))


def _disjoint(a, b, what):
    both = set(a) & set(b)
    if both:
        raise QueryError(f"{what} overlap on {sorted(both)}")


def _names(model, idx):
    return [model.variables[i] for i in idx]


@dataclass(frozen=True)
class StrongWitness:
    """Network values forced by a strongly sufficient antecedent."""

    values: Mapping[str, Fraction]

    def to_json(self):
        from .results import to_json
        return {"status": "ok", "network_values": to_json(self.values)}


# ----------------------------------------------------------------------
# public predicates

def weakly_sufficient(model: CausalModel, x: Mapping, y: Mapping,
                      budget: Budget | int | None = None):
    """``X = x`` is weakly sufficient for ``Y = y``.

    True, or a :class:`Refutation` whose detail holds the first context in
    which ``[X <- x] Y = y`` fails.
    """
    budget = ensure_budget(budget)
    xs = _setting(model, x, "antecedent")
    ys = _setting(model, y, "consequent")
    _disjoint(xs, ys, "antecedent and consequent")
    watch = tuple(model.index[v] for v in ys)
    expect = [model.value_index(v, ys[v]) for v in ys]
    row, _, free = _scan(model, dict(_as_fix(model, xs)), watch, expect, budget, False)
    if row < 0:
        return True
    detail = _row_detail(model, row, free, len(model.exogenous))
    return Refutation("not weakly sufficient", {"context": detail["context"]})


def directly_sufficient(model: CausalModel, x: Mapping, n: Mapping,
                        budget: Budget | int | None = None, memo: bool = True):
    """``X = x`` is directly sufficient for ``N = n``.

    True, or a :class:`Refutation` with the first failing setting of
    ``C = V - (X u N)`` and context.
    """
    budget = ensure_budget(budget)
    xs = _setting(model, x, "antecedent")
    ns = _setting(model, n, "consequent")
    _disjoint(xs, ns, "antecedent and consequent")
    net = tuple(sorted(model.index[v] for v in ns))
    expect = [model.value_index(model.variables[i], ns[model.variables[i]]) for i in net]
    row, first, free = _constant(model, _as_fix(model, xs), net, budget, memo)
    if first is not None and first != expect:
        row = 0
    if row < 0:
        return True
    return Refutation("not directly sufficient",
                      _row_detail(model, row, free, len(model.exogenous)))


def strongly_sufficient(model: CausalModel, x: Mapping, y: Mapping,
                        network: Iterable[str], budget: Budget | int | None = None,
                        memo: bool = True):
    """``X = x`` is strongly sufficient for ``Y = y`` along ``network``.

    The consequent variables are added to the network. Returns a
    :class:`StrongWitness` with the forced network values, or a
    :class:`Refutation`.
    """
    budget = ensure_budget(budget)
    xs = _setting(model, x, "antecedent")
    ys = _setting(model, y, "consequent")
    net = _network(model, network, ys)
    _disjoint(xs, _names(model, net), "antecedent and network")
    row, first, free = _constant(model, _as_fix(model, xs), net, budget, memo)
    n_exo = len(model.exogenous)
    names = _names(model, net)
    if row >= 0:
        a = _row_detail(model, 0, free, n_exo)
        b = _row_detail(model, row, free, n_exo)
        return Refutation("network values are not forced", {
            "first": dict(a, network=_vals(model, net, first)),
            "second": dict(b, network=_network_at(model, xs, b, net)),
        })
    forced = _vals(model, net, first)
    for v, val in ys.items():
        if forced[v] != val:
            return Refutation("forced network values contradict the consequent",
                              {"network": forced})
    return StrongWitness({v: forced[v] for v in names})


def _vals(model, net, idx):
    return {model.variables[i]: model.domains[model.variables[i]][x] for i, x in zip(net, idx)}


def _network_at(model, xs, detail, net):
    from .model import solve
    world = solve(model, detail["context"], {**xs, **detail["interventions"]})
    return {model.variables[i]: world[model.variables[i]] for i in net}

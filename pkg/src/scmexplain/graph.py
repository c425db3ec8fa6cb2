"""Causal graph structure, roots, classifiers and the Independence condition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping

from . import kernel
from .budget import Budget, ensure_budget
from .errors import QueryError
from .expr import Ref
from .model import CausalModel, _fixed_vector


def parents(model: CausalModel, budget: Budget | int | None = None) -> dict[str, tuple[str, ...]]:
    """Semantic parents of every variable, in declaration order.

    ``Y`` is a parent of ``X`` when changing ``Y`` alone changes ``F_X`` for
    some setting of the other referenced variables. Exogenous variables
    have no parents.
    """
    cached = model._memo.get("parents")
    if cached is not None:
        return cached
    budget = ensure_budget(budget)
    t = model.tables
    out: dict[str, tuple[str, ...]] = {u: () for u in model.exogenous}
    for v in model.endogenous:
        i = model.index[v]
        s, k = t.par_start[i], t.par_count[i]
        idx = t.par_idx[s:s + k]
        strides = t.par_stride[s:s + k]
        base = t.tab_start[i]
        size = 1
        for p in idx:
            size *= t.dom_size[p]
        budget.charge(size * max(k, 1))
        found = []
        for j, p in enumerate(idx):
            st, d = strides[j], t.dom_size[p]
            # rows whose digit j is 0; compare with every other digit value
            if any(t.tab[base + off] != t.tab[base + off + x * st]
                   for off in range(size) if (off // st) % d == 0
                   for x in range(1, d)):
                found.append(p)
        out[v] = tuple(model.variables[p] for p in sorted(found))
    model._memo["parents"] = out
    return out


def children(model: CausalModel) -> dict[str, tuple[str, ...]]:
    par = parents(model)
    ch: dict[str, list[str]] = {v: [] for v in model.variables}
    for v in model.variables:
        for p in par[v]:
            ch[p].append(v)
    return {v: tuple(c) for v, c in ch.items()}


def edges(model: CausalModel) -> list[tuple[str, str]]:
    par = parents(model)
    return [(p, v) for v in model.variables for p in par[v]]


def _closure(start: str, step: Mapping[str, tuple[str, ...]]) -> set[str]:
    seen: set[str] = set()
    todo = list(step[start])
    while todo:
        v = todo.pop()
        if v not in seen:
            seen.add(v)
            todo.extend(step[v])
    return seen


def _check_var(model, v):
    if v not in model.index:
        raise QueryError(f"unknown variable {v}")


def ancestors(model: CausalModel, var: str) -> tuple[str, ...]:
    _check_var(model, var)
    seen = _closure(var, parents(model))
    return tuple(v for v in model.variables if v in seen)


def descendants(model: CausalModel, var: str) -> tuple[str, ...]:
    _check_var(model, var)
    seen = _closure(var, children(model))
    return tuple(v for v in model.variables if v in seen)


def paths(model: CausalModel, source: str, target: str) -> list[tuple[str, ...]]:
    """All directed paths from ``source`` to ``target`` as vertex tuples.

    Depth-first with children in declaration order; ``paths(X, X)`` is
    the single trivial path ``(X,)``.
    """
    _check_var(model, source)
    _check_var(model, target)
    ch = children(model)
    out: list[tuple[str, ...]] = []

    def walk(path):
        v = path[-1]
        if v == target:
            out.append(tuple(path))
            return
        for c in ch[v]:
            walk(path + [c])

    walk([source])
    return out


def roots(model: CausalModel) -> tuple[str, ...]:
    """Endogenous variables whose equation is literally ``V = U`` for exogenous ``U``."""
    return tuple(v for v, e in model.equations.items()
                 if isinstance(e, Ref) and e.name in model.exogenous)


# ----------------------------------------------------------------------
# classifiers

@dataclass(frozen=True)
class Classifier:
    """A total map from input settings to output values."""

    inputs: tuple[str, ...]
    output: str
    table: Mapping[tuple, Fraction] = field(hash=False)

    def __call__(self, setting: tuple) -> Fraction:
        return self.table[tuple(setting)]


def classifier_from_model(model: CausalModel) -> Classifier:
    """The classifier computed by the output equation when all inputs are set."""
    y = model.output
    inputs = tuple(v for v in model.endogenous if v != y)
    ctx = next(model.contexts())
    table = {}
    yi = model.index[y]
    for combo in product(*(model.domains[v] for v in inputs)):
        vals = kernel.solve(model.tables, _fixed_vector(model, ctx, dict(zip(inputs, combo))))
        table[combo] = model.domains[y][vals[yi]]
    return Classifier(inputs, y, table)


@dataclass(frozen=True)
class Disagreement:
    """Falsy verdict of :func:`agrees`: a structural reason or a context."""

    reason: str
    context: dict | None = None

    def __bool__(self) -> bool:
        return False


def agrees(model: CausalModel, h: Classifier, budget: Budget | int | None = None):
    """True if ``model`` agrees with ``h``, otherwise a :class:`Disagreement`.

    Structurally, every endogenous variable is either driven by exactly one
    exogenous variable and nothing else, or has no exogenous parent; the
    output must be of the second kind. Observationally, ``h`` must classify
    the inputs of every context as the model does.
    """
    budget = ensure_budget(budget)
    if set(h.inputs) | {h.output} != set(model.endogenous) or h.output in h.inputs:
        raise QueryError("classifier variables must partition the endogenous variables")
    par = parents(model, budget)
    for v in model.endogenous:
        exo = [p for p in par[v] if p in model.exogenous]
        if len(exo) > 1:
            return Disagreement(f"{v} has several exogenous parents")
        if exo and len(par[v]) > 1:
            return Disagreement(f"{v} mixes exogenous and endogenous parents")
        if exo and v == h.output:
            return Disagreement(f"output {v} is driven by an exogenous variable")
    budget.charge(model.n_contexts)
    yi = model.index[h.output]
    ins = [model.index[v] for v in h.inputs]
    for ctx in model.contexts():
        vals = kernel.solve(model.tables, _fixed_vector(model, ctx, {}))
        i = tuple(model.domains[model.variables[j]][vals[j]] for j in ins)
        if h(i) != model.domains[h.output][vals[yi]]:
            return Disagreement("classifier disagrees with the model", ctx)
    return True


def independent(model: CausalModel) -> bool:
    """No input (endogenous non-output variable) is a parent of another input."""
    y = model.output
    inputs = {v for v in model.endogenous if v != y}
    par = parents(model)
    return not any(p in inputs for v in inputs for p in par[v])

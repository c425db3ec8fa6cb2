"""Finite-domain, strongly recursive structural causal models.

A :class:`CausalModel` is validated on construction: names must be unique,
equations may only reference other declared variables, the reference graph
must be acyclic, and every equation must map every in-domain assignment of
its referenced variables into its target's domain ("range closure").

Validation evaluates each equation exhaustively anyway, so the results are
kept as integer lookup tables (:class:`Tables`) and all later solving runs
on indices through :mod:`scmexplain.kernel`.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from . import kernel
from .budget import Budget, ensure_budget
from .errors import Diagnostic, DomainError, ModelError, QueryError
from .expr import EvalError, Expr, Lit, compile_expr, eval_expr, references
from .values import format_value, make_domain, to_value


@dataclass(frozen=True)
class AutoDomain:
    """Domain computed as the image of the equation, plus ``extras``."""

    extras: tuple = ()


class Tables:
    """Integer-indexed form of a model consumed by the solving kernels.

    Variables are numbered in declaration order, exogenous first. For
    endogenous ``v`` the referenced variables are
    ``par_idx[par_start[v]:par_start[v] + par_count[v]]`` and the value index
    of ``v`` is ``tab[tab_start[v] + sum(val[p] * stride)]``.
    """

    __slots__ = ("n", "order", "dom_size", "par_start", "par_count", "par_idx",
                 "par_stride", "tab_start", "tab", "a_order", "a_dom_size",
                 "a_par_start", "a_par_count", "a_par_idx", "a_par_stride",
                 "a_tab_start", "a_tab")

    def __init__(self, n, order, dom_size, par_start, par_count, par_idx,
                 par_stride, tab_start, tab):
        self.n = n
        self.order = order
        self.dom_size = dom_size
        self.par_start = par_start
        self.par_count = par_count
        self.par_idx = par_idx
        self.par_stride = par_stride
        self.tab_start = tab_start
        self.tab = tab
        for name in ("order", "dom_size", "par_start", "par_count", "par_idx",
                     "par_stride", "tab_start", "tab"):
            setattr(self, "a_" + name, array("i", getattr(self, name)))


@dataclass(frozen=True)
class CausalFormula:
    """``[Y1 <- y1, ...] body``; ``body`` is an expression read as a boolean."""

    interventions: Mapping[str, Fraction]
    body: Expr

    def __hash__(self):
        return hash((tuple(self.interventions.items()), self.body))


class CausalModel:
    """A validated structural causal model.

    Parameters
    ----------
    exogenous, endogenous
        Ordered mappings from variable name to domain values. An endogenous
        domain may be an :class:`AutoDomain`.
    equations
        One expression per endogenous variable.
    """

    def __init__(self, exogenous: Mapping[str, Iterable],
                 endogenous: Mapping[str, Iterable | AutoDomain],
                 equations: Mapping[str, Expr], name: str = "M",
                 budget: Budget | int | None = None):
        budget = ensure_budget(budget)
        self.name = name
        diags: list[Diagnostic] = []

        def err(msg, subject=None):
            diags.append(Diagnostic("error", msg, subject=subject))

        self.exogenous: dict[str, tuple] = {}
        for u, dom in exogenous.items():
            try:
                self.exogenous[u] = make_domain(dom)
            except (ValueError, TypeError) as e:
                err(f"exogenous variable {u}: {e}", u)
        endo_spec: dict[str, tuple | AutoDomain] = {}
        for v, dom in endogenous.items():
            if v in exogenous:
                err(f"variable {v} declared both exogenous and endogenous", v)
                continue
            if isinstance(dom, AutoDomain):
                try:
                    extras = tuple(to_value(x) for x in dom.extras)
                except (ValueError, TypeError) as e:
                    err(f"variable {v}: {e}", v)
                    continue
                endo_spec[v] = AutoDomain(extras)
            else:
                try:
                    endo_spec[v] = make_domain(dom)
                except (ValueError, TypeError) as e:
                    err(f"variable {v}: {e}", v)
        if not endogenous:
            err("a model needs at least one endogenous variable")
        for v in equations:
            if v not in endogenous:
                err(f"equation for undeclared endogenous variable {v}", v)
        known = set(exogenous) | set(endogenous)
        self.equations: dict[str, Expr] = {}
        self.refs: dict[str, tuple[str, ...]] = {}
        for v in endogenous:
            if v not in equations:
                err(f"endogenous variable {v} has no equation", v)
                continue
            eq = equations[v]
            self.equations[v] = eq
            refs = references(eq)
            for r in refs:
                if r == v:
                    err(f"equation for {v} refers to {v} itself (cycle)", v)
                elif r not in known:
                    err(f"equation for {v} refers to unknown variable {r}", v)
            self.refs[v] = tuple(refs)
        if diags:
            raise ModelError(diags)

        self.variables: tuple[str, ...] = tuple(self.exogenous) + tuple(endo_spec)
        self.index = {name: i for i, name in enumerate(self.variables)}
        # references sorted by declaration order
        for v in self.refs:
            self.refs[v] = tuple(sorted(self.refs[v], key=self.index.__getitem__))

        order = self._topological_order(endo_spec, err)
        if diags:
            raise ModelError(diags)
        self.topological_order: tuple[str, ...] = tuple(order)

        self.endogenous: dict[str, tuple] = {}
        tables: dict[str, list] = {}
        domains: dict[str, tuple] = dict(self.exogenous)
        for v in order:
            spec = endo_spec[v]
            refs = self.refs[v]
            size = 1
            for r in refs:
                size *= len(domains[r])
            budget.charge(size)
            fn = compile_expr(self.equations[v], {r: i for i, r in enumerate(refs)})
            outputs = []
            failed = False
            for args in product(*(domains[r] for r in refs)):
                try:
                    outputs.append(fn(args))
                except EvalError as e:
                    env = ", ".join(f"{r}={format_value(a)}" for r, a in zip(refs, args))
                    err(f"equation for {v}: {e} at {env}", v)
                    failed = True
                    break
            if failed:
                domains[v] = spec.extras if isinstance(spec, AutoDomain) else spec
                if not domains[v]:
                    domains[v] = (Fraction(0),)
                continue
            if isinstance(spec, AutoDomain):
                dom = tuple(sorted(set(outputs) | set(spec.extras)))
            else:
                dom = spec
                pos = {x: i for i, x in enumerate(dom)}
                for args, out in zip(product(*(domains[r] for r in refs)), outputs):
                    if out not in pos:
                        env = ", ".join(f"{r}={format_value(a)}" for r, a in zip(refs, args))
                        at = f" at {env}" if env else ""
                        err(f"equation for {v} yields {format_value(out)}{at}, "
                            f"outside the domain of {v}", v)
                        break
            domains[v] = dom
            tables[v] = outputs
        if diags:
            raise ModelError(diags)
        for v in endo_spec:
            self.endogenous[v] = domains[v]
        self.domains: dict[str, tuple] = {n: domains[n] for n in self.variables}
        self._pos = {n: {x: i for i, x in enumerate(d)} for n, d in self.domains.items()}
        self.tables = self._build_tables(tables)
        self._memo: dict = {}

    def _topological_order(self, endo_spec, err) -> list[str]:
        # Kahn's algorithm, ties broken by declaration order
        endo = list(endo_spec)
        deps = {v: [r for r in self.refs.get(v, ()) if r in endo_spec] for v in endo}
        indeg = {v: len(deps[v]) for v in endo}
        children: dict[str, list[str]] = {v: [] for v in endo}
        for v in endo:
            for r in deps[v]:
                children[r].append(v)
        ready = [v for v in endo if indeg[v] == 0]
        out = []
        while ready:
            ready.sort(key=self.index.__getitem__)
            v = ready.pop(0)
            out.append(v)
            for c in children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        if len(out) < len(endo):
            stuck = [v for v in endo if indeg[v] > 0]
            err("cyclic dependencies among " + ", ".join(stuck), stuck[0])
        return out

    def _build_tables(self, outputs: dict[str, list]) -> Tables:
        n = len(self.variables)
        dom_size = [len(self.domains[v]) for v in self.variables]
        par_start = [0] * n
        par_count = [0] * n
        par_idx: list[int] = []
        par_stride: list[int] = []
        tab_start = [0] * n
        tab: list[int] = []
        for v in self.endogenous:
            i = self.index[v]
            refs = self.refs[v]
            par_start[i] = len(par_idx)
            par_count[i] = len(refs)
            stride = 1
            strides = []
            for r in reversed(refs):
                strides.append(stride)
                stride *= dom_size[self.index[r]]
            strides.reverse()
            par_idx.extend(self.index[r] for r in refs)
            par_stride.extend(strides)
            tab_start[i] = len(tab)
            pos = self._pos[v]
            tab.extend(pos[x] for x in outputs[v])
        order = [self.index[v] for v in self.topological_order]
        return Tables(n, order, dom_size, par_start, par_count, par_idx,
                      par_stride, tab_start, tab)

    # ------------------------------------------------------------------
    @property
    def output(self) -> str:
        """Designated output variable: the last declared endogenous variable."""
        return next(reversed(self.endogenous))

    def value_index(self, var: str, value) -> int:
        """Index of ``value`` in the domain of ``var``; DomainError if absent."""
        try:
            pos = self._pos[var]
        except KeyError:
            raise QueryError(f"unknown variable {var}") from None
        v = to_value(value)
        try:
            return pos[v]
        except KeyError:
            raise DomainError(
                f"{format_value(v)} is not in the domain of {var}") from None

    def table(self, var: str) -> dict[tuple, Fraction]:
        """The tabulated equation of ``var`` keyed by referenced-variable values."""
        t = self.tables
        i = self.index[var]
        dom = self.domains[var]
        refs = self.refs[var]
        keys = product(*(self.domains[r] for r in refs))
        start = t.tab_start[i]
        return {k: dom[t.tab[start + j]] for j, k in enumerate(keys)}

    def __repr__(self) -> str:
        return (f"CausalModel({self.name!r}, exogenous={list(self.exogenous)}, "
                f"endogenous={list(self.endogenous)})")

    def structurally_equal(self, other: "CausalModel") -> bool:
        return (self.name == other.name
                and list(self.exogenous.items()) == list(other.exogenous.items())
                and list(self.endogenous.items()) == list(other.endogenous.items())
                and self.equations == other.equations)

    def contexts(self):
        """All contexts in odometer order over declaration order."""
        names = list(self.exogenous)
        for combo in product(*(self.exogenous[u] for u in names)):
            yield dict(zip(names, combo))

    @property
    def n_contexts(self) -> int:
        n = 1
        for d in self.exogenous.values():
            n *= len(d)
        return n


# ----------------------------------------------------------------------
# assignments

def check_context(model: CausalModel, context: Mapping) -> dict[str, Fraction]:
    if set(context) != set(model.exogenous):
        missing = set(model.exogenous) - set(context)
        extra = set(context) - set(model.exogenous)
        raise QueryError(
            "a context must assign exactly the exogenous variables"
            + (f"; missing {sorted(missing)}" if missing else "")
            + (f"; unexpected {sorted(extra)}" if extra else ""))
    out = {}
    for u in model.exogenous:
        model.value_index(u, context[u])
        out[u] = to_value(context[u])
    return out


def check_setting(model: CausalModel, setting: Mapping, *, endogenous_only=True,
                  what="assignment") -> dict[str, Fraction]:
    """Validate a partial assignment over (endogenous) variables."""
    out = {}
    for var, val in setting.items():
        if var not in model.index:
            raise QueryError(f"unknown variable {var} in {what}")
        if endogenous_only and var not in model.endogenous:
            raise QueryError(f"{var} is exogenous; {what} must use endogenous variables")
        model.value_index(var, val)
        out[var] = to_value(val)
    return out


def _fixed_vector(model: CausalModel, context: Mapping | None, iv: Mapping) -> list[int]:
    fixed = [-1] * len(model.variables)
    if context is not None:
        for u, x in context.items():
            fixed[model.index[u]] = model.value_index(u, x)
    for v, x in iv.items():
        fixed[model.index[v]] = model.value_index(v, x)
    return fixed


def _decode(model: CausalModel, vals: list[int]) -> dict[str, Fraction]:
    return {v: model.domains[v][vals[i]] for i, v in enumerate(model.variables)}


def solve(model: CausalModel, context: Mapping,
          interventions: Mapping | None = None) -> dict[str, Fraction]:
    """Unique solution of ``model`` (optionally under ``interventions``) in ``context``.

    The returned mapping covers every variable, exogenous first.
    """
    ctx = check_context(model, context)
    iv = check_setting(model, interventions or {}, what="intervention")
    vals = kernel.solve(model.tables, _fixed_vector(model, ctx, iv))
    return _decode(model, vals)


def intervene(model: CausalModel, interventions: Mapping) -> CausalModel:
    """Return ``M_{X <- x}``: each intervened equation becomes its constant."""
    iv = check_setting(model, interventions, what="intervention")
    if not iv:
        return model
    equations = dict(model.equations)
    for v, x in iv.items():
        equations[v] = Lit(x)
    return CausalModel(model.exogenous, model.endogenous, equations, name=model.name)


def _check_formula(model: CausalModel, f: CausalFormula) -> None:
    check_setting(model, f.interventions, what="intervention")
    for r in references(f.body):
        if r not in model.endogenous:
            raise QueryError(f"formula atom refers to non-endogenous variable {r}")


def evaluate(model: CausalModel, context: Mapping, f: CausalFormula) -> bool:
    """``(M, u) |= [Y <- y] phi``."""
    _check_formula(model, f)
    world = solve(model, context, f.interventions)
    return eval_expr(f.body, world) != 0


@dataclass(frozen=True)
class Counterexample:
    """Falsy result carrying the first context (in odometer order) that fails."""

    context: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False


def holds_universally(model: CausalModel, f: CausalFormula,
                      budget: Budget | int | None = None):
    """``M |= psi``: True, or a :class:`Counterexample` with the first failing context."""
    budget = ensure_budget(budget)
    _check_formula(model, f)
    budget.charge(model.n_contexts)
    iv = {v: to_value(x) for v, x in f.interventions.items()}
    for ctx in model.contexts():
        vals = kernel.solve(model.tables, _fixed_vector(model, ctx, iv))
        if eval_expr(f.body, _decode(model, vals)) == 0:
            return Counterexample(ctx)
    return True

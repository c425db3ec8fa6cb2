"""Path-specific fairness through actual causation, and the standard
counterfactual-fairness baseline.

A model is unfair for a protected variable ``A`` relative to a set of
unfair paths when, in some context, ``A = a`` rather than ``A = a'`` is an
actual cause of the output whose evidence network only carries influence
along unfair paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import kernel
from .budget import Budget, ensure_budget
from .causation import CauseStatement, _certifying, _statement
from .errors import QueryError
from .explanations import _good_pairs, _Setting
from .graph import paths
from .model import CausalModel, _fixed_vector
from .results import Refutation, to_json

Path = tuple  # tuple[str, ...]


def network_paths(model: CausalModel, protected: str, target: str,
                  network: Iterable[str]) -> list[Path]:
    """Paths from ``protected`` to ``target`` whose later vertices all lie in ``network``.

    The target is treated as part of every network.
    """
    net = set(network) | {target}
    return [p for p in paths(model, protected, target) if all(v in net for v in p[1:])]


def parse_paths(model: CausalModel, text: str) -> list[Path]:
    """Read one ``A -> B -> Y`` path per line; blank lines and ``#`` comments skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        path = tuple(v.strip() for v in line.split("->"))
        for v in path:
            if v not in model.index:
                raise QueryError(f"line {lineno}: unknown variable {v!r}")
        for a, b in zip(path, path[1:]):
            if a not in _parents(model)[b]:
                raise QueryError(f"line {lineno}: {a} is not a parent of {b}")
        out.append(path)
    return out


def _parents(model):
    from .graph import parents
    return parents(model)


@dataclass(frozen=True)
class Certificate:
    """One witness of unfairness."""

    context: Mapping
    cause: CauseStatement
    paths: tuple[Path, ...]

    def to_json(self) -> dict:
        return {"context": to_json(self.context),
                "a": to_json(next(iter(self.cause.cause.values()))),
                "a_prime": to_json(next(iter(self.cause.contrast.values()))),
                "target": {self.cause.target: to_json(self.cause.value)},
                "witness": to_json(self.cause.witness),
                "network": list(self.cause.network),
                "paths": [" -> ".join(p) for p in self.paths]}


@dataclass(frozen=True)
class FairnessVerdict:
    fair: bool
    certificates: tuple[Certificate, ...] = field(default=())

    @property
    def certificate(self) -> Certificate | None:
        return self.certificates[0] if self.certificates else None

    def __bool__(self) -> bool:
        return self.fair

    def to_json(self) -> dict:
        out = {"status": "ok", "fair": self.fair}
        if not self.fair:
            out["certificate"] = self.certificate.to_json()
            out["certificates"] = [c.to_json() for c in self.certificates]
        return out


def _check(model, protected, target):
    target = target or model.output
    for v in (protected, target):
        if v not in model.endogenous:
            raise QueryError(f"{v} is not an endogenous variable")
    if protected == target:
        raise QueryError("protected variable and output must differ")
    return target


def is_fair(model: CausalModel, protected: str, unfair_paths: Iterable[Path],
            target: str | None = None, budget: Budget | int | None = None,
            memo: bool = True, first_only: bool = False) -> FairnessVerdict:
    """Decide fairness; collects every certificate in context order unless ``first_only``."""
    target = _check(model, protected, target)
    budget = ensure_budget(budget)
    unfair = {tuple(p) for p in unfair_paths}
    ai = model.index[protected]
    certs = []
    for ctx in model.contexts():
        s = _Setting(model, ctx, target, None, budget, memo)
        goods = _good_pairs(s)
        for k in range(model.tables.dom_size[ai]):
            if k == s.world[ai]:
                continue
            for g in _certifying(s, (ai,), (k,), goods):
                stmt = _statement(s, "actual", (ai,), (k,), *g)
                pn = tuple(network_paths(model, protected, target, stmt.network))
                if set(pn) <= unfair:
                    certs.append(Certificate(ctx, stmt, pn))
                    if first_only:
                        return FairnessVerdict(False, tuple(certs))
    return FairnessVerdict(not certs, tuple(certs))


def standardly_counterfactually_fair(model: CausalModel, protected: str,
                                     target: str | None = None,
                                     budget: Budget | int | None = None):
    """True unless intervening on ``protected`` alone changes the output in some context."""
    target = _check(model, protected, target)
    budget = ensure_budget(budget)
    ai, yi = model.index[protected], model.index[target]
    dom = model.tables.dom_size[ai]
    budget.charge(model.n_contexts * dom)
    for ctx in model.contexts():
        fixed = _fixed_vector(model, ctx, {})
        world = kernel.solve(model.tables, fixed)
        for k in range(dom):
            if k == world[ai]:
                continue
            fixed[ai] = k
            alt = kernel.solve(model.tables, fixed)
            if alt[yi] != world[yi]:
                d = model.domains
                return Refutation("output changes with the protected variable", {
                    "context": ctx, "a": d[protected][world[ai]], "a_prime": d[protected][k],
                    "y": d[target][world[yi]], "y_prime": d[target][alt[yi]]})
    return True

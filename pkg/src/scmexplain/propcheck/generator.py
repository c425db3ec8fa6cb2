"""Random small models for property checks.

Inputs are ``X1 .. X(n-1)`` and the output ``Y`` comes last. A root input
copies its own exogenous variable (same domain); any other variable is a
random lookup table over a nonempty set of earlier inputs, written as
nested ``ite`` expressions. The output never reads an exogenous variable,
so every generated model agrees with the classifier it induces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..expr import Binary, Expr, Ite, Lit, Ref
from ..model import CausalModel

RNG_NAME = "MT19937 (Python random.Random, seeded with a 64-bit integer)"


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_endogenous: int = 4
    domain_min: int = 2
    domain_max: int = 3
    mode: str = "general"  # or "independence"
    root_prob: float = 0.5
    max_contexts: int = 10_000

    def __post_init__(self):
        if not 1 <= self.n_endogenous <= 6:
            raise ValueError("n_endogenous must be between 1 and 6")
        if not 2 <= self.domain_min <= self.domain_max <= 4:
            raise ValueError("domain sizes must satisfy 2 <= min <= max <= 4")
        if self.mode not in ("general", "independence"):
            raise ValueError(f"unknown mode {self.mode!r}")


def _table_expr(parents: list[str], doms: list[int], table: dict, prefix=()) -> Expr:
    depth = len(prefix)
    if depth == len(parents):
        return Lit(Fraction(table[prefix]))
    leaves = {v for k, v in table.items() if k[:depth] == prefix}
    if len(leaves) == 1:
        return Lit(Fraction(leaves.pop()))
    p = parents[depth]
    expr = _table_expr(parents, doms, table, prefix + (doms[depth] - 1,))
    for v in range(doms[depth] - 2, -1, -1):
        expr = Ite(Binary("=", Ref(p), Lit(Fraction(v))),
                   _table_expr(parents, doms, table, prefix + (v,)), expr)
    return expr


def _random_table(rng: random.Random, parents, sizes, out_size) -> Expr:
    from itertools import product
    doms = [sizes[p] for p in parents]
    table = {k: rng.randrange(out_size) for k in product(*(range(d) for d in doms))}
    return _table_expr(parents, doms, table)


def random_model(config: GeneratorConfig, n: int | None = None) -> CausalModel:
    """Deterministic in ``config.seed``; ``n`` overrides the endogenous count."""
    rng = random.Random(config.seed)
    n = config.n_endogenous if n is None else n
    inputs = [f"X{i}" for i in range(1, n)]
    sizes = {v: rng.randint(config.domain_min, config.domain_max) for v in inputs + ["Y"]}
    exo: dict[str, list] = {}
    endo: dict[str, list] = {}
    eqs: dict[str, Expr] = {}
    for k, v in enumerate(inputs):
        dom = list(range(sizes[v]))
        endo[v] = dom
        if config.mode == "independence" or k == 0 or rng.random() < config.root_prob:
            exo[f"U{v[1:]}"] = dom
            eqs[v] = Ref(f"U{v[1:]}")
        else:
            pars = [p for p in inputs[:k] if rng.random() < 0.5] or [rng.choice(inputs[:k])]
            eqs[v] = _random_table(rng, pars, sizes, sizes[v])
    endo["Y"] = list(range(sizes["Y"]))
    if inputs:
        pars = [p for p in inputs if rng.random() < 0.6] or [rng.choice(inputs)]
        eqs["Y"] = _random_table(rng, pars, sizes, sizes["Y"])
    else:
        eqs["Y"] = Lit(Fraction(rng.randrange(sizes["Y"])))
    # exogenous variables first in declaration order, sorted by name
    exo = dict(sorted(exo.items(), key=lambda kv: int(kv[0][1:])))
    return CausalModel(exo, endo, eqs, name=f"R{config.seed}")

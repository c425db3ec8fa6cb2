"""Command-line interface.

Exit codes: 0 answered (including refuted verdicts), 2 usage, 3 parse
error, 4 model validation error, 5 budget exceeded, 6 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .budget import DEFAULT_BUDGET, Budget
from .errors import (BudgetExceeded, DomainError, ModelError, ParseError, QueryError,
                     SCMError)
from .lang import (FIXTURES, fixture_text, format_formula, parse_assignment, parse_formula,
                   parse_model, serialize_model)
from .results import Refutation, to_json
from .values import format_value

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MODEL, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4, 5, 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ----------------------------------------------------------------------
# argument helpers

def _read_model(path: str, budget: Budget):
    p = Path(path)
    if p.is_file():
        text = p.read_text()
    elif p.name.removesuffix(".scm") in FIXTURES and not p.parent.parts:
        text = fixture_text(p.name)
    else:
        raise UsageError(f"model file not found: {path}")
    return parse_model(text, budget=budget)


def _budget(args) -> Budget:
    if args.budget is not None:
        limit = args.budget
    elif os.environ.get("SCMEXPLAIN_BUDGET"):
        try:
            limit = int(os.environ["SCMEXPLAIN_BUDGET"])
        except ValueError:
            raise UsageError("SCMEXPLAIN_BUDGET must be an integer") from None
    else:
        limit = DEFAULT_BUDGET
    if limit < 0:
        raise UsageError("budget must be non-negative")
    return Budget(limit)


def _context(args):
    if args.context is None:
        raise UsageError("--context is required")
    return parse_assignment(args.context)


def _target(text: str):
    t = parse_assignment(text)
    if len(t) != 1:
        raise UsageError("--target must be a single VAR=VALUE")
    return next(iter(t.items()))


def _names(text: str | None) -> list[str]:
    if not text:
        return []
    return [v.strip() for v in text.split(",") if v.strip()]


def _vals(d) -> str:
    return ", ".join(f"{k}={format_value(v)}" for k, v in d.items())


# ----------------------------------------------------------------------
# commands; each returns (payload, human-readable lines)

def cmd_validate(args, budget):
    m = _read_model(args.model, budget)
    from .graph import edges, roots
    payload = {"status": "ok", "valid": True, "model": m.name,
               "exogenous": {u: to_json(list(d)) for u, d in m.exogenous.items()},
               "endogenous": {v: to_json(list(d)) for v, d in m.endogenous.items()},
               "topological_order": list(m.topological_order),
               "edges": [list(e) for e in edges(m)], "roots": list(roots(m)),
               "output": m.output}
    lines = [f"model {m.name} is valid",
             f"  {len(m.exogenous)} exogenous, {len(m.endogenous)} endogenous variables",
             "  edges: " + ", ".join(f"{a} -> {b}" for a, b in edges(m))]
    if args.print:
        lines.append(serialize_model(m).rstrip())
    return payload, lines


def cmd_solve(args, budget):
    from .model import solve
    m = _read_model(args.model, budget)
    iv = parse_assignment(args.do) if args.do else {}
    world = solve(m, _context(args), iv)
    return ({"status": "ok", "values": to_json(world)},
            [f"{k} = {format_value(v)}" for k, v in world.items()])


def cmd_query(args, budget):
    from .model import evaluate, holds_universally
    m = _read_model(args.model, budget)
    f = parse_formula(args.formula, m)
    if args.universal or args.context is None:
        res = holds_universally(m, f, budget)
        payload = {"status": "ok", "formula": format_formula(f), "universal": True,
                   "holds": bool(res)}
        lines = [f"M |= {format_formula(f)}: {'yes' if res else 'no'}"]
        if not res:
            payload["counterexample"] = to_json(res.context)
            lines.append(f"  counterexample context: {_vals(res.context)}")
        return payload, lines
    holds = evaluate(m, _context(args), f)
    return ({"status": "ok", "formula": format_formula(f), "universal": False, "holds": holds},
            [f"(M, u) |= {format_formula(f)}: {'yes' if holds else 'no'}"])


def cmd_explain(args, budget):
    from . import explanations as ex
    m = _read_model(args.model, budget)
    ctx = _context(args)
    y, val = _target(args.target)
    if args.kind == "sufficient":
        if args.x is not None:
            res = ex.is_sufficient_explanation(m, parse_assignment(args.x), _names(args.network),
                                               y, val, ctx, budget)
            return _verdict(res, lambda r: [f"sufficient explanation: {r}",
                                            f"  actual: {r.actual}"])
        fn = ex.good_sufficient_explanations if args.good else ex.actual_sufficient_explanations
        exps = fn(m, ctx, y, val, budget)
        return ({"status": "ok", "good": args.good, "explanations": to_json(exps)},
                [str(e) for e in exps] or ["(none)"])
    if args.kind == "depends":
        if args.x is None or args.xprime is None:
            raise UsageError("explain depends needs --x and --xprime")
        res = ex.counterfactually_depends(m, ctx, parse_assignment(args.x),
                                          parse_assignment(args.xprime), y, val, args.mode,
                                          budget)
        return _verdict(res, lambda r: ["depends; witnesses: "
                                        + "; ".join("{" + _vals(w) + "}" for w in r.witnesses)])
    exps = ex.good_counterfactual_explanations(m, ctx, y, val, budget)
    return ({"status": "ok", "explanations": to_json(exps)}, [str(e) for e in exps] or ["(none)"])


def _verdict(res, human):
    if isinstance(res, Refutation):
        return res.to_json(), [f"refuted: {res.reason}"] + (
            [f"  {json.dumps(to_json(res.detail))}"] if res.detail else [])
    payload = res.to_json()
    payload.setdefault("status", "ok")
    return payload, human(res)


def _cause_lines(r):
    head = f"{r.kind} cause: {_vals(r.cause)}"
    if r.contrast is not None:
        head += f" rather than {_vals(r.contrast)}"
    return [head + f" for {r.target}={format_value(r.value)}",
            f"  evidence: {r.evidence}", f"  witness: {{{_vals(r.witness)}}}"]


def cmd_cause(args, budget):
    from . import causation as ca
    m = _read_model(args.model, budget)
    ctx = _context(args)
    y, val = _target(args.target)
    x = parse_assignment(args.x)
    if args.kind == "actual":
        if args.xprime is None:
            raise UsageError("cause actual needs --xprime")
        res = ca.actual_cause(m, ctx, x, parse_assignment(args.xprime), y, val, budget,
                              all_evidence=args.all_evidence)
    elif args.kind == "optimal":
        res = ca.optimal_cause(m, ctx, x, y, val, budget, all_evidence=args.all_evidence)
    else:
        res = ca.direct_cause(m, ctx, x, y, val, budget, all_evidence=args.all_evidence)
    return _verdict(res, _cause_lines)


def cmd_fairness(args, budget):
    from .fairness import is_fair, parse_paths, standardly_counterfactually_fair
    from .graph import paths
    m = _read_model(args.model, budget)
    target = args.target.split("=")[0].strip() if args.target else m.output
    if args.unfair_paths == "all":
        unfair = paths(m, args.protected, target)
    else:
        p = Path(args.unfair_paths)
        if not p.is_file():
            raise UsageError(f"unfair-path file not found: {p}")
        unfair = parse_paths(m, p.read_text())
    v = is_fair(m, args.protected, unfair, target, budget)
    std = standardly_counterfactually_fair(m, args.protected, target, budget)
    payload = v.to_json()
    payload["unfair_paths"] = [" -> ".join(p) for p in unfair]
    payload["standardly_counterfactually_fair"] = bool(std)
    if not std:
        payload["standard_certificate"] = to_json(std.detail)
    lines = [f"fair for {args.protected}: {'yes' if v.fair else 'no'}"]
    if not v.fair:
        c = v.certificate
        lines += [f"  context: {_vals(c.context)}",
                  f"  {_vals(c.cause.cause)} rather than {_vals(c.cause.contrast)} causes "
                  f"{c.cause.target}={format_value(c.cause.value)}",
                  f"  network: {{{', '.join(c.cause.network)}}}; paths: "
                  + ("; ".join(" -> ".join(p) for p in c.paths) or "(none)")]
    lines.append(f"standard counterfactual fairness: {'yes' if std else 'no'}")
    return payload, lines


def cmd_verify(args, budget):
    from .propcheck import THEOREMS, GeneratorConfig, check_theorem
    ids = [args.theorem] if args.theorem else list(THEOREMS)
    try:
        cfg = GeneratorConfig(seed=args.seed, n_endogenous=args.n, domain_max=args.domain_max)
    except ValueError as e:
        raise UsageError(str(e)) from None
    reports = []
    for tid in ids:
        try:
            reports.append(check_theorem(tid, cfg, args.trials, args.negative_control,
                                         budget.limit))
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
    payload = {"status": "ok", "reports": [r.to_json() for r in reports]}
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    lines = [f"{r.theorem:7s} {r.mode:12s} trials={r.trials} skipped={r.skipped} "
             f"violating={r.violating_trials} "
             f"{'PASS' if r.passed else 'FAIL'}" for r in reports]
    return payload, lines


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--budget", type=int, default=None,
                        help=f"max assignments to enumerate (default {DEFAULT_BUDGET}, "
                             "or $SCMEXPLAIN_BUDGET)")
    withmodel = _Parser(add_help=False, parents=[common])
    withmodel.add_argument("--model", required=True,
                           help="model file; bundled names such as loan.scm also work")
    withmodel.add_argument("--context", help='exogenous values, e.g. "U1=75000,U3=2500"')

    p = _Parser(prog="scmexplain", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[withmodel], help="check a model file")
    s.add_argument("--print", action="store_true", help="also print the canonical form")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", parents=[withmodel], help="solve in a context")
    s.add_argument("--do", help='interventions, e.g. "X2=45001"')
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("query", parents=[withmodel], help="evaluate a causal formula")
    s.add_argument("formula")
    s.add_argument("--universal", action="store_true", help="check every context")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("explain", help="sufficient or counterfactual explanations")
    s.add_argument("kind", choices=["sufficient", "counterfactual", "depends"])
    for a in withmodel._actions:
        s._add_action(a)
    s.add_argument("--target", required=True, help="e.g. Y=0")
    s.add_argument("--good", action="store_true", help="only good explanations")
    s.add_argument("--x", help="antecedent or cause to check")
    s.add_argument("--xprime", help="contrast values (depends)")
    s.add_argument("--network", help="comma-separated network variables")
    s.add_argument("--mode", choices=["any", "empty", "all-others"], default="any")
    s.set_defaults(func=cmd_explain)

    s = sub.add_parser("cause", help="actual, optimal or direct causation")
    s.add_argument("kind", choices=["actual", "optimal", "direct"])
    for a in withmodel._actions:
        s._add_action(a)
    s.add_argument("--x", required=True, help='the cause, e.g. "X1=250000"')
    s.add_argument("--xprime", help="contrast values (actual causes)")
    s.add_argument("--target", required=True)
    s.add_argument("--all-evidence", action="store_true")
    s.set_defaults(func=cmd_cause)

    s = sub.add_parser("fairness", parents=[withmodel], help="path-specific fairness")
    s.add_argument("--protected", required=True)
    s.add_argument("--unfair-paths", required=True,
                   help='file with one "A -> B -> Y" path per line, or "all"')
    s.add_argument("--target", help="output variable (default: last declared)")
    s.set_defaults(func=cmd_fairness)

    s = sub.add_parser("verify-theorems", parents=[common], help="run the theorem checks")
    s.add_argument("--theorem")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--n", type=int, default=4, help="max endogenous variables")
    s.add_argument("--domain-max", type=int, default=3)
    s.add_argument("--negative-control", action="store_true")
    s.add_argument("--out", help="also write the report to this file")
    s.set_defaults(func=cmd_verify)
    return p


def _emit_error(as_json: bool, kind: str, message: str, diagnostics=()):
    if as_json:
        doc = {"status": "error", "kind": kind, "message": message}
        if diagnostics:
            doc["diagnostics"] = [d.to_json() for d in diagnostics]
        print(json.dumps(doc, indent=2))
    else:
        print(f"error ({kind}): {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _emit_error(as_json, "usage", str(e))
        return EXIT_USAGE
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    try:
        budget = _budget(args)
        payload, lines = args.func(args, budget)
    except UsageError as e:
        _emit_error(as_json, "usage", str(e))
        return EXIT_USAGE
    except ParseError as e:
        _emit_error(as_json, "parse", str(e), e.diagnostics)
        return EXIT_PARSE
    except ModelError as e:
        _emit_error(as_json, "model", str(e), e.diagnostics)
        return EXIT_MODEL
    except BudgetExceeded as e:
        _emit_error(as_json, "budget", str(e))
        return EXIT_BUDGET
    except (QueryError, DomainError) as e:
        _emit_error(as_json, "usage", str(e))
        return EXIT_USAGE
    except SCMError as e:
        _emit_error(as_json, "internal", str(e))
        return EXIT_INTERNAL
    except Exception as e:  # noqa: BLE001 - last-resort guard
        _emit_error(as_json, "internal", f"{type(e).__name__}: {e}")
        return EXIT_INTERNAL
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

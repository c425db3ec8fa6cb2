"""Pure-Python solving kernel.

Works on the integer-indexed form of a model (see ``model.Tables``): every
variable value is an index into its domain, and every endogenous equation
is a flat lookup table over the indices of its referenced variables.
``fixed[v] >= 0`` pins variable ``v`` (a context value for exogenous
variables, an intervention for endogenous ones); ``-1`` leaves it to its
equation.
"""

from itertools import product


def solve(t, fixed):
    """Return the value-index vector of the unique solution."""
    vals = list(fixed)
    order = t.order
    ps, pc, pi, pst, ts, tab = t.par_start, t.par_count, t.par_idx, t.par_stride, t.tab_start, t.tab
    for v in order:
        if vals[v] < 0:
            s = ps[v]
            off = 0
            for j in range(s, s + pc[v]):
                off += vals[pi[j]] * pst[j]
            vals[v] = tab[ts[v] + off]
    return vals


def scan(t, fixed, free, watch, expect):
    """Enumerate all index combinations of ``free`` and solve each.

    Combinations run in odometer order, first ``free`` entry most
    significant. Each solution's ``watch`` values are compared with
    ``expect``; when ``expect`` is None the first row's values are adopted.
    Returns ``(row, first)``: the index of the first mismatching row (or -1)
    and the watched values of row 0.
    """
    order = t.order
    ps, pc, pi, pst, ts, tab = t.par_start, t.par_count, t.par_idx, t.par_stride, t.tab_start, t.tab
    # endogenous variables left to their equations, in solving order
    pinned = set(free)
    pinned.update(v for v, x in enumerate(fixed) if x >= 0)
    todo = [v for v in order if v not in pinned]
    plan = [(v, ts[v], [(pi[j], pst[j]) for j in range(ps[v], ps[v] + pc[v])]) for v in todo]
    vals = list(fixed)
    sizes = [range(t.dom_size[f]) for f in free]
    first = None
    target = None if expect is None else list(expect)
    for row, combo in enumerate(product(*sizes)):
        for f, x in zip(free, combo):
            vals[f] = x
        for v, base, pars in plan:
            off = 0
            for p, st in pars:
                off += vals[p] * st
            vals[v] = tab[base + off]
        seen = [vals[w] for w in watch]
        if row == 0:
            first = seen
            if target is None:
                target = seen
        if seen != target:
            return row, first
    return -1, first

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled solving kernel; same contract as ``_pykernel``."""

from cpython.array cimport array, clone

cdef array _int_template = array("i")


cdef inline void _solve_into(int n_todo, int[:] todo, int[:] ps, int[:] pc,
                             int[:] pi, int[:] pst, int[:] ts, int[:] tab,
                             int[:] vals) noexcept nogil:
    cdef int k, v, j, off
    for k in range(n_todo):
        v = todo[k]
        off = 0
        for j in range(ps[v], ps[v] + pc[v]):
            off += vals[pi[j]] * pst[j]
        vals[v] = tab[ts[v] + off]


def solve(t, fixed):
    cdef int[:] order = t.a_order
    cdef int n = t.n
    cdef array out = clone(_int_template, n, False)
    cdef int[:] vals = out
    cdef int i, v, m = 0
    for i in range(n):
        vals[i] = fixed[i]
    cdef array todo_arr = clone(_int_template, order.shape[0], False)
    cdef int[:] todo = todo_arr
    for i in range(order.shape[0]):
        v = order[i]
        if vals[v] < 0:
            todo[m] = v
            m += 1
    _solve_into(m, todo, t.a_par_start, t.a_par_count, t.a_par_idx,
                t.a_par_stride, t.a_tab_start, t.a_tab, vals)
    return list(out)


def scan(t, fixed, free, watch, expect):
    cdef int[:] order = t.a_order
    cdef int[:] dom = t.a_dom_size
    cdef int n = t.n
    cdef int nf = len(free)
    cdef int nw = len(watch)
    cdef int i, v, m = 0
    cdef long long row = 0

    cdef array vals_arr = clone(_int_template, n, False)
    cdef int[:] vals = vals_arr
    cdef array pinned_arr = clone(_int_template, n, True)
    cdef int[:] pinned = pinned_arr
    for i in range(n):
        vals[i] = fixed[i]
        pinned[i] = 1 if fixed[i] >= 0 else 0

    cdef array free_arr = array("i", free)
    cdef int[:] fr = free_arr
    cdef array digit_arr = clone(_int_template, max(nf, 1), True)
    cdef int[:] digit = digit_arr
    for i in range(nf):
        pinned[fr[i]] = 1
        vals[fr[i]] = 0
        if dom[fr[i]] <= 0:
            return -1, None

    cdef array todo_arr = clone(_int_template, max(order.shape[0], 1), False)
    cdef int[:] todo = todo_arr
    for i in range(order.shape[0]):
        v = order[i]
        if not pinned[v]:
            todo[m] = v
            m += 1

    cdef array watch_arr = array("i", watch)
    cdef int[:] wt = watch_arr
    cdef array exp_arr = clone(_int_template, max(nw, 1), True)
    cdef int[:] ex = exp_arr
    cdef bint adopt = expect is None
    if not adopt:
        for i in range(nw):
            ex[i] = expect[i]

    cdef int[:] ps = t.a_par_start
    cdef int[:] pc = t.a_par_count
    cdef int[:] pi = t.a_par_idx
    cdef int[:] pst = t.a_par_stride
    cdef int[:] ts = t.a_tab_start
    cdef int[:] tab = t.a_tab
    cdef long long bad = -1

    _solve_into(m, todo, ps, pc, pi, pst, ts, tab, vals)
    first = [vals[wt[i]] for i in range(nw)]
    for i in range(nw):
        if adopt:
            ex[i] = vals[wt[i]]
        elif vals[wt[i]] != ex[i]:
            return 0, first

    with nogil:
        while True:
            # advance the odometer, last free variable fastest
            i = nf - 1
            while i >= 0:
                digit[i] += 1
                if digit[i] < dom[fr[i]]:
                    vals[fr[i]] = digit[i]
                    break
                digit[i] = 0
                vals[fr[i]] = 0
                i -= 1
            if i < 0:
                break
            row += 1
            _solve_into(m, todo, ps, pc, pi, pst, ts, tab, vals)
            for i in range(nw):
                if vals[wt[i]] != ex[i]:
                    bad = row
                    break
            if bad >= 0:
                break
    return bad, first

# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled value-iteration sweep kernel.

Contract-identical to the pure-Python twin in ``_sweep_py.py``: iterate
rounds of x_{i+1}(v) = opt over edges of (w + x_i(succ)) with saturating
sentinel arithmetic, stopping on a fixpoint or when a new finite value
drops below the cutoff.  The inner loop runs on int64 buffers.
"""

from cpython cimport array
import array

cdef long long INF_C = 2**62
cdef long long NEG_INF_C = -(2**62)

INF = INF_C
NEG_INF = NEG_INF_C

STATUS_STABLE = 0
STATUS_CUTOFF = 1
STATUS_MAXED = 2


def run_sweeps(owners, frozen, x0, ptr, dst, wt, cutoff, max_rounds):
    cdef array.array owners_a = array.array('q', owners)
    cdef array.array frozen_a = array.array('q', [1 if f else 0 for f in frozen])
    cdef array.array prev_a = array.array('q', x0)
    cdef array.array ptr_a = array.array('q', ptr)
    cdef array.array dst_a = array.array('q', dst)
    cdef array.array wt_a = array.array('q', wt)

    cdef long long[:] own = owners_a
    cdef long long[:] frz = frozen_a
    cdef long long[:] prev = prev_a
    cdef long long[:] p = ptr_a
    cdef long long[:] d = dst_a
    cdef long long[:] w = wt_a

    cdef Py_ssize_t n = len(owners)
    cdef long long cut = cutoff
    cdef long long rounds_cap = max_rounds

    cdef array.array cur_a
    cdef long long[:] cur
    cdef Py_ssize_t v, e
    cdef long long lo, hi, best, cand, xs
    cdef bint changed, crossed, have, maximize
    cdef long long r

    rows = [list(prev_a)]
    for r in range(rounds_cap):
        cur_a = array.array('q', prev_a)
        cur = cur_a
        changed = False
        crossed = False
        for v in range(n):
            if frz[v]:
                continue
            lo = p[v]
            hi = p[v + 1]
            if lo == hi:
                continue
            best = 0
            have = False
            maximize = own[v] == 2
            for e in range(lo, hi):
                xs = prev[d[e]]
                if xs == INF_C:
                    cand = INF_C
                elif xs == NEG_INF_C:
                    cand = NEG_INF_C
                else:
                    cand = xs + w[e]
                if not have:
                    best = cand
                    have = True
                elif maximize:
                    if cand > best:
                        best = cand
                else:
                    if cand < best:
                        best = cand
            if best != prev[v]:
                changed = True
            cur[v] = best
            if NEG_INF_C < best < cut:
                crossed = True
        if not changed:
            return rows, STATUS_STABLE
        rows.append(list(cur_a))
        if crossed:
            return rows, STATUS_CUTOFF
        prev_a = cur_a
        prev = prev_a
    return rows, STATUS_MAXED

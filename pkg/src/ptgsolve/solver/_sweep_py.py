"""Pure-Python value-iteration sweep kernel.

Same contract as the compiled twin in ``_sweep.pyx``; selected at import
time when the extension is unavailable (or forced via PTGSOLVE_PURE=1).
Values are plain ints with the sentinels INF / NEG_INF standing for the
infinities; additions saturate at the sentinels.
"""

INF = 2**62
NEG_INF = -(2**62)

STATUS_STABLE = 0
STATUS_CUTOFF = 1
STATUS_MAXED = 2


def run_sweeps(owners, frozen, x0, ptr, dst, wt, cutoff, max_rounds):
    """Iterate x_{i+1}(v) = opt_{edges}(w + x_i(succ)) from x0.

    ``owners[v]`` is 1 (minimizer) or 2 (maximizer); ``frozen[v]`` vertices
    are never updated.  Returns (rows, status) where rows[i] is the i-th
    iterate (rows[0] is a copy of x0) and status is STABLE once a round
    changes nothing, or CUTOFF as soon as a newly computed finite value
    drops strictly below ``cutoff`` (the offending row is kept).
    """
    n = len(owners)
    prev = list(x0)
    rows = [list(prev)]
    for _ in range(max_rounds):
        cur = list(prev)
        changed = False
        crossed = False
        for v in range(n):
            if frozen[v]:
                continue
            lo = ptr[v]
            hi = ptr[v + 1]
            if lo == hi:
                continue  # deadlock: stays at its initial +oo
            best = 0
            have = False
            maximize = owners[v] == 2
            for e in range(lo, hi):
                xs = prev[dst[e]]
                if xs == INF:
                    cand = INF
                elif xs == NEG_INF:
                    cand = NEG_INF
                else:
                    cand = xs + wt[e]
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
            if NEG_INF < best < cutoff:
                crossed = True
        if not changed:
            return rows, STATUS_STABLE
        rows.append(cur)
        if crossed:
            return rows, STATUS_CUTOFF
        prev = cur
    return rows, STATUS_MAXED

"""Loop kernels shared by both backends.

Graphs are passed as ``int64`` arrays of neighbour bitmasks, so every kernel
here is limited to 62 vertices.  The functions are plain Python over numpy
arrays; the numba backend compiles them unchanged.
"""

import numpy as np

try:
    from numba.extending import register_jitable
except ImportError:  # pragma: no cover - numba is optional

    def register_jitable(fn):
        return fn


MAX_BITS = 62


@register_jitable
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def adjacency_packed(packed):
    """Pairwise "shares a nonzero element" test on bit-packed membership rows."""
    k, w = packed.shape
    adj = np.zeros((k, k), dtype=np.bool_)
    for i in range(k):
        for j in range(i + 1, k):
            for b in range(w):
                if packed[i, b] & packed[j, b]:
                    adj[i, j] = True
                    adj[j, i] = True
                    break
    return adj


def max_clique(adj, n):
    """Maximum clique as ``(size, bitmask)``; ties go to the first set found."""
    best = 0
    best_set = np.int64(0)
    s_size = np.zeros(n + 2, dtype=np.int64)
    s_r = np.zeros(n + 2, dtype=np.int64)
    s_p = np.zeros(n + 2, dtype=np.int64)
    sp = 1
    s_p[0] = (np.int64(1) << n) - 1
    while sp > 0:
        sp -= 1
        size = s_size[sp]
        r = s_r[sp]
        p = s_p[sp]
        if p == 0:
            if size > best:
                best = size
                best_set = r
            continue
        if size + popcount(p) <= best:
            continue
        v = 0
        while not (p >> v) & 1:
            v += 1
        bit = np.int64(1) << v
        # exclude branch below, include branch on top so it is explored first
        s_size[sp] = size
        s_r[sp] = r
        s_p[sp] = p & ~bit
        sp += 1
        s_size[sp] = size + 1
        s_r[sp] = r | bit
        s_p[sp] = p & adj[v]
        sp += 1
    return best, best_set


@register_jitable
def _forbidden(adj, color, v, n):
    forb = np.int64(0)
    nb = adj[v]
    for u in range(n):
        if (nb >> u) & 1 and color[u] >= 0:
            forb |= np.int64(1) << color[u]
    return forb


@register_jitable
def _dsatur_pick(adj, color, n):
    uncolored = np.int64(0)
    for u in range(n):
        if color[u] < 0:
            uncolored |= np.int64(1) << u
    pick = -1
    best_sat = -1
    best_deg = -1
    for u in range(n):
        if color[u] >= 0:
            continue
        sat = popcount(_forbidden(adj, color, u, n))
        deg = popcount(adj[u] & uncolored)
        if sat > best_sat or (sat == best_sat and deg > best_deg):
            pick = u
            best_sat = sat
            best_deg = deg
    return pick


def chromatic(adj, n, lower):
    """Exact chromatic number by DSATUR branch and bound.

    The first descent is plain DSATUR, which gives the initial upper bound;
    afterwards only colourings with fewer colours are searched.  ``lower`` is
    a known lower bound (a clique size) that allows early exit.
    """
    color = np.full(n, -1, dtype=np.int64)
    best_col = np.zeros(n, dtype=np.int64)
    if n == 0:
        return 0, best_col
    best = n + 1
    vert = np.zeros(n, dtype=np.int64)
    nextc = np.zeros(n, dtype=np.int64)
    used = np.zeros(n, dtype=np.int64)
    depth = 0
    vert[0] = _dsatur_pick(adj, color, n)
    while depth >= 0:
        v = vert[depth]
        color[v] = -1
        forb = _forbidden(adj, color, v, n)
        ncol = used[depth]
        c = nextc[depth]
        found = -1
        while c <= ncol and c < best - 1:
            if not (forb >> c) & 1:
                found = c
                break
            c += 1
        if found < 0:
            depth -= 1
            continue
        color[v] = found
        nextc[depth] = found + 1
        newn = ncol if found < ncol else found + 1
        if depth == n - 1:
            best = newn
            best_col[:] = color
            if best <= lower:
                break
            continue
        depth += 1
        vert[depth] = _dsatur_pick(adj, color, n)
        nextc[depth] = 0
        used[depth] = newn
    return best, best_col


@register_jitable
def _greedy_dominating(closed, n, full):
    dom = np.int64(0)
    chosen = np.int64(0)
    size = 0
    while dom != full:
        pick = 0
        gain = -1
        for v in range(n):
            g = popcount(closed[v] & ~dom & full)
            if g > gain:
                gain = g
                pick = v
        chosen |= np.int64(1) << pick
        dom |= closed[pick]
        size += 1
    return size, chosen


def dominating(closed, n):
    """Minimum dominating set as ``(size, bitmask)``.

    ``closed[v]`` is the closed neighbourhood of ``v``.  Branching is on the
    undominated vertex with the fewest candidate dominators; siblings exclude
    earlier candidates so no set is visited twice.
    """
    if n == 0:
        return 0, np.int64(0)
    full = (np.int64(1) << n) - 1
    best, best_set = _greedy_dominating(closed, n, full)
    cap = n * n + 2
    s_d = np.zeros(cap, dtype=np.int64)
    s_dom = np.zeros(cap, dtype=np.int64)
    s_ex = np.zeros(cap, dtype=np.int64)
    s_size = np.zeros(cap, dtype=np.int64)
    sp = 1
    while sp > 0:
        sp -= 1
        d = s_d[sp]
        dom = s_dom[sp]
        ex = s_ex[sp]
        size = s_size[sp]
        if dom == full:
            if size < best:
                best = size
                best_set = d
            continue
        if size + 1 >= best:
            continue
        und = full & ~dom
        maxcov = 0
        for v in range(n):
            if not (ex >> v) & 1:
                c = popcount(closed[v] & und)
                if c > maxcov:
                    maxcov = c
        if maxcov == 0:
            continue
        need = (popcount(und) + maxcov - 1) // maxcov
        if size + need >= best:
            continue
        target = -1
        fewest = n + 1
        for u in range(n):
            if (und >> u) & 1:
                k = popcount(closed[u] & ~ex & full)
                if k < fewest:
                    fewest = k
                    target = u
        if fewest == 0:
            continue
        cand = closed[target] & ~ex & full
        # push in reverse so the lowest candidate is expanded first
        w = n - 1
        while w >= 0:
            if (cand >> w) & 1:
                bit = np.int64(1) << w
                earlier = cand & (bit - 1)
                s_d[sp] = d | bit
                s_dom[sp] = dom | closed[w]
                s_ex[sp] = ex | earlier
                s_size[sp] = size + 1
                sp += 1
            w -= 1
    return best, best_set

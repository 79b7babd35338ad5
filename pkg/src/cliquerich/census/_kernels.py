"""Compiled enumeration kernels.

Both kernels work on a relabelled vertex order (positions ``0..n-1``) and
only enumerate subsets whose smallest position is one of `leaders`, so the
caller can split the leader set across threads. Tallies are written into
caller-owned arrays; the return value is the number of qualifying subsets.
"""

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def exact_kernel(adj, eid, k, leaders, vcount, ecount):
    n = adj.shape[0]
    total = 0
    clique = np.empty(k, np.int64)
    cand = np.empty((k, n), np.int64)
    clen = np.zeros(k, np.int64)
    cur = np.zeros(k, np.int64)
    for li in range(leaders.size):
        v = leaders[li]
        clique[0] = v
        c = 0
        for y in range(v + 1, n):
            if adj[v, y]:
                cand[1, c] = y
                c += 1
        clen[1] = c
        cur[1] = 0
        depth = 1
        while depth >= 1:
            if clen[depth] - cur[depth] < k - depth:
                depth -= 1
                continue
            if depth == k - 1:
                # every remaining candidate closes one K_k
                c = clen[depth] - cur[depth]
                total += c
                for a in range(depth):
                    vcount[clique[a]] += c
                    for b in range(a + 1, depth):
                        ecount[eid[clique[a], clique[b]]] += c
                for i in range(cur[depth], clen[depth]):
                    x = cand[depth, i]
                    vcount[x] += 1
                    for a in range(depth):
                        ecount[eid[clique[a], x]] += 1
                depth -= 1
                continue
            i = cur[depth]
            x = cand[depth, i]
            cur[depth] = i + 1
            clique[depth] = x
            c = 0
            for t in range(i + 1, clen[depth]):
                y = cand[depth, t]
                if adj[x, y]:
                    cand[depth + 1, c] = y
                    c += 1
            clen[depth + 1] = c
            cur[depth + 1] = 0
            depth += 1
    return total


@njit(nogil=True, cache=True)
def _connected(members, k, pos_adj):
    # BFS over positive-weight pairs inside `members`
    seen = np.zeros(k, np.bool_)
    stack = np.empty(k, np.int64)
    seen[0] = True
    stack[0] = 0
    top = 1
    reached = 1
    while top > 0:
        top -= 1
        a = stack[top]
        for b in range(k):
            if not seen[b] and pos_adj[members[a], members[b]]:
                seen[b] = True
                stack[top] = b
                top += 1
                reached += 1
    return reached == k


@njit(nogil=True, cache=True)
def pseudo_kernel(heavy, pos_adj, eid, hdeg_suffix_max, k, need, leaders, vcount, ecount):
    """Count k-subsets that are connected under `pos_adj` and contain at
    least `need` pairs marked in `heavy`.

    Positions are assumed sorted by non-increasing heavy degree, so
    ``hdeg_suffix_max[p]`` bounds the heavy degree of every position >= p.
    """
    n = heavy.shape[0]
    total = 0
    members = np.empty(k, np.int64)
    hcount = np.zeros(k + 1, np.int64)
    nxt = np.zeros(k + 1, np.int64)
    for li in range(leaders.size):
        v = leaders[li]
        members[0] = v
        hcount[1] = 0
        nxt[1] = v + 1
        depth = 1
        while depth >= 1:
            x = nxt[depth]
            remaining = k - depth
            if x > n - remaining:
                depth -= 1
                continue
            nxt[depth] = x + 1
            # each added vertex contributes at most min(hdeg, k-1) heavy pairs
            cap = hdeg_suffix_max[x]
            if cap > k - 1:
                cap = k - 1
            if hcount[depth] + remaining * cap < need:
                # suffix maxima only shrink: no later x can help either
                depth -= 1
                continue
            gain = 0
            for a in range(depth):
                if heavy[members[a], x]:
                    gain += 1
            h = hcount[depth] + gain
            members[depth] = x
            if depth + 1 == k:
                if h >= need and _connected(members, k, pos_adj):
                    total += 1
                    for a in range(k):
                        vcount[members[a]] += 1
                        for b in range(a + 1, k):
                            e = eid[members[a], members[b]]
                            if e >= 0 and pos_adj[members[a], members[b]]:
                                ecount[e] += 1
                continue
            hcount[depth + 1] = h
            nxt[depth + 1] = x + 1
            depth += 1
    return total

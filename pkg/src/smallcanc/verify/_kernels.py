"""Compiled loops over suffix arrays.

Conventions shared by every kernel: ``sa`` is the suffix array of the text,
``lcp[k]`` is the longest common prefix of suffixes ``sa[k]`` and
``sa[k+1]``, and ``cap[pos] > 0`` marks a position where an element of the
symmetrized relator set starts, the value being that element's length.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def best_partner(sa, lcp, cap):
    """For each start, the longest common prefix it shares with any other start.

    The result at ``pos`` is ``max over other starts b of min(LCP, cap[pos], cap[b])``
    and is ``0`` at positions that are not starts.
    """
    n = sa.shape[0]
    best = np.zeros(n, dtype=np.int32)
    cur = -1
    for k in range(n):
        if k > 0 and lcp[k - 1] < cur:
            cur = lcp[k - 1]
        pos = sa[k]
        c = cap[pos]
        if c > 0:
            if cur > best[pos]:
                best[pos] = cur
            if c > cur:
                cur = c
    cur = -1
    for k in range(n - 1, -1, -1):
        if k < n - 1 and lcp[k] < cur:
            cur = lcp[k]
        pos = sa[k]
        c = cap[pos]
        if c > 0:
            if cur > best[pos]:
                best[pos] = cur
            if best[pos] > c:
                best[pos] = c
            if c > cur:
                cur = c
    return best


@njit(cache=True)
def start_order(sa, lcp, cap):
    """Starts in suffix order with the capped LCP between neighbouring starts.

    Returns ``(order, adj)`` where ``adj[k]`` relates ``order[k]`` and
    ``order[k+1]``.
    """
    n = sa.shape[0]
    m = 0
    for k in range(n):
        if cap[sa[k]] > 0:
            m += 1
    order = np.empty(m, dtype=np.int64)
    adj = np.zeros(max(m - 1, 0), dtype=np.int32)
    j = 0
    run = 1 << 30
    for k in range(n):
        pos = sa[k]
        if cap[pos] > 0:
            if j > 0:
                v = run
                if cap[order[j - 1]] < v:
                    v = cap[order[j - 1]]
                if cap[pos] < v:
                    v = cap[pos]
                adj[j - 1] = v
            order[j] = pos
            j += 1
            run = 1 << 30
        if k < n - 1 and lcp[k] < run:
            run = lcp[k]
    return order, adj


@njit(cache=True)
def _merge(a, b):
    # letter-set summary: -2 empty, -1 mixed, otherwise the single letter
    if a == -2:
        return b
    if b == -2 or a == b:
        return a
    return -1


@njit(cache=True)
def left_maximal_intervals(adj, prev, min_len):
    """Intervals of the neighbour-LCP array that are maximal repeats.

    ``prev[k]`` is the letter preceding start ``k`` (in start order). An
    interval ``[lb, rb]`` with value ``h`` is reported when ``h >= min_len``
    and its starts are not all preceded by the same letter. Returns arrays
    ``(h, lb, rb)``.
    """
    m = adj.shape[0] + 1
    size = 16
    hs = np.empty(size, dtype=np.int32)
    lbs = np.empty(size, dtype=np.int64)
    rbs = np.empty(size, dtype=np.int64)
    cnt = 0
    sh = np.empty(m + 1, dtype=np.int32)
    slb = np.empty(m + 1, dtype=np.int64)
    sst = np.empty(m + 1, dtype=np.int32)
    top = 0
    sh[0] = 0
    slb[0] = 0
    sst[0] = -2
    for k in range(1, m + 1):
        L = adj[k - 1] if k < m else 0
        lb = k - 1
        sst[top] = _merge(sst[top], prev[k - 1])
        last = prev[k - 1]
        while L < sh[top]:
            ih, ilb, ist = sh[top], slb[top], sst[top]
            top -= 1
            if ih >= min_len and ist == -1:
                if cnt == size:
                    size *= 2
                    hs2 = np.empty(size, dtype=np.int32)
                    lb2 = np.empty(size, dtype=np.int64)
                    rb2 = np.empty(size, dtype=np.int64)
                    hs2[:cnt] = hs[:cnt]
                    lb2[:cnt] = lbs[:cnt]
                    rb2[:cnt] = rbs[:cnt]
                    hs, lbs, rbs = hs2, lb2, rb2
                hs[cnt] = ih
                lbs[cnt] = ilb
                rbs[cnt] = k - 1
                cnt += 1
            lb = ilb
            last = ist
            if L <= sh[top]:
                sst[top] = _merge(sst[top], ist)
        if L > sh[top]:
            top += 1
            sh[top] = L
            slb[top] = lb
            sst[top] = last
    return hs[:cnt], lbs[:cnt], rbs[:cnt]


@njit(cache=True)
def best_cross(sa, lcp, cap, group):
    """Longest common prefix between a start of group 1 and a start of group 2."""
    n = sa.shape[0]
    best = 0
    for direction in range(2):
        c1 = -1
        c2 = -1
        for step in range(n):
            k = step if direction == 0 else n - 1 - step
            if step > 0:
                v = lcp[k - 1] if direction == 0 else lcp[k]
                if v < c1:
                    c1 = v
                if v < c2:
                    c2 = v
            pos = sa[k]
            c = cap[pos]
            if c > 0:
                if group[pos] == 1:
                    cand = c2 if c2 < c else c
                    if c > c1:
                        c1 = c
                else:
                    cand = c1 if c1 < c else c
                    if c > c2:
                        c2 = c
                if cand > best:
                    best = cand
    return best

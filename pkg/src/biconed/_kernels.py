"""Hot enumeration kernels.

Every kernel is written in the numba-compatible subset of Python and is
compiled with ``numba.njit`` unless ``BICONED_DISABLE_NUMBA`` is set to a
truthy value, in which case the very same functions run under CPython on
numpy arrays.  Edges are passed as two int64 arrays of endpoint indices in
edge-rank order; loops must be filtered out by the caller unless stated.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("BICONED_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = _FLAG in ("", "0", "false", "no")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a hard dependency
        USE_NUMBA = False

if USE_NUMBA:

    def jit(fn):
        return numba.njit(cache=True)(fn)

else:

    def jit(fn):
        return fn


# activity codes stored per (tree, edge)
INT_ACTIVE = 1
INT_PASSIVE = 2
EXT_ACTIVE = 3
EXT_PASSIVE = 4


@jit
def _connects_all(labels, eu, ev, start):
    """True iff the partition ``labels`` plus edges ``start..`` is connected."""
    n = labels.shape[0]
    par = labels.copy()
    comps = 0
    for v in range(n):
        if par[v] == v:
            comps += 1
    if comps == 1:
        return True
    for k in range(start, eu.shape[0]):
        a = eu[k]
        while par[a] != a:
            par[a] = par[par[a]]
            a = par[a]
        b = ev[k]
        while par[b] != b:
            par[b] = par[par[b]]
            b = par[b]
        if a != b:
            if a < b:
                par[b] = a
            else:
                par[a] = b
            comps -= 1
            if comps == 1:
                return True
    return False


@jit
def _merge(src, dst, a, b):
    # labels are representative vertex ids; keep the smaller one
    lo = a if a < b else b
    hi = b if a < b else a
    for v in range(src.shape[0]):
        x = src[v]
        dst[v] = lo if x == hi else x


@jit
def spanning_trees(n, eu, ev):
    """All spanning trees as rows of edge positions, lexicographic order."""
    m = eu.shape[0]
    need = n - 1
    if need <= 0:
        return np.zeros((1, 0), dtype=np.int64)
    cap = 64
    out = np.empty((cap, need), dtype=np.int64)
    count = 0
    labels = np.empty((need + 1, n), dtype=np.int64)
    for v in range(n):
        labels[0, v] = v
    if not _connects_all(labels[0], eu, ev, 0):
        return np.zeros((0, need), dtype=np.int64)
    chosen = np.empty(need, dtype=np.int64)
    nxt = np.zeros(need + 1, dtype=np.int64)
    depth = 0
    while depth >= 0:
        if depth == need:
            if count == cap:
                grown = np.empty((cap * 2, need), dtype=np.int64)
                grown[:cap] = out
                out = grown
                cap *= 2
            out[count] = chosen
            count += 1
            depth -= 1
            continue
        j = nxt[depth]
        advanced = False
        last = m - (need - depth)
        while j <= last:
            a = labels[depth, eu[j]]
            b = labels[depth, ev[j]]
            if a != b:
                _merge(labels[depth], labels[depth + 1], a, b)
                if _connects_all(labels[depth + 1], eu, ev, j + 1):
                    chosen[depth] = j
                    nxt[depth] = j + 1
                    depth += 1
                    nxt[depth] = j + 1
                    advanced = True
                    break
            j += 1
        if not advanced:
            depth -= 1
    return out[:count].copy()


@jit
def forest_counts(n, eu, ev):
    """Number of acyclic edge subsets of each cardinality."""
    m = eu.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    labels = np.empty((n, n), dtype=np.int64)
    for v in range(n):
        labels[0, v] = v
    nxt = np.zeros(n, dtype=np.int64)
    counts[0] = 1
    depth = 0
    while depth >= 0:
        j = nxt[depth]
        advanced = False
        if depth < n - 1:
            while j < m:
                a = labels[depth, eu[j]]
                b = labels[depth, ev[j]]
                if a != b:
                    _merge(labels[depth], labels[depth + 1], a, b)
                    nxt[depth] = j + 1
                    depth += 1
                    nxt[depth] = j + 1
                    counts[depth] += 1
                    advanced = True
                    break
                j += 1
        if not advanced:
            depth -= 1
    return counts


@jit
def forests(n, eu, ev):
    """All acyclic edge subsets in DFS preorder, rows padded with -1."""
    m = eu.shape[0]
    width = n - 1 if n > 1 else 1
    cap = 64
    out = np.full((cap, width), -1, dtype=np.int64)
    count = 1
    labels = np.empty((n, n), dtype=np.int64)
    for v in range(n):
        labels[0, v] = v
    chosen = np.full(width, -1, dtype=np.int64)
    nxt = np.zeros(n, dtype=np.int64)
    depth = 0
    while depth >= 0:
        j = nxt[depth]
        advanced = False
        if depth < n - 1:
            while j < m:
                a = labels[depth, eu[j]]
                b = labels[depth, ev[j]]
                if a != b:
                    _merge(labels[depth], labels[depth + 1], a, b)
                    chosen[depth] = j
                    nxt[depth] = j + 1
                    depth += 1
                    nxt[depth] = j + 1
                    if count == cap:
                        grown = np.full((cap * 2, width), -1, dtype=np.int64)
                        grown[:cap] = out
                        out = grown
                        cap *= 2
                    for k in range(depth):
                        out[count, k] = chosen[k]
                    count += 1
                    advanced = True
                    break
                j += 1
        if not advanced:
            if depth > 0:
                chosen[depth - 1] = -1
            depth -= 1
    return out[:count].copy()


@jit
def activity_flags(n, eu, ev, trees):
    """Activity code for every (tree, edge) pair.

    ``eu``/``ev`` may contain loops here; trees never do.  Codes are
    ``INT_ACTIVE``/``INT_PASSIVE`` on tree edges and
    ``EXT_ACTIVE``/``EXT_PASSIVE`` elsewhere, minima taken by position.
    """
    m = eu.shape[0]
    nt = trees.shape[0]
    need = trees.shape[1]
    out = np.empty((nt, m), dtype=np.int8)
    in_tree = np.zeros(m, dtype=np.bool_)
    side = np.empty(n, dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    pedge = np.empty(n, dtype=np.int64)
    depthv = np.empty(n, dtype=np.int64)
    adj_start = np.empty(n + 1, dtype=np.int64)
    adj = np.empty(2 * need + 1, dtype=np.int64)
    deg = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    for t in range(nt):
        for k in range(m):
            in_tree[k] = False
        for i in range(need):
            in_tree[trees[t, i]] = True
        # adjacency of the tree (CSR)
        for v in range(n):
            deg[v] = 0
        for i in range(need):
            e = trees[t, i]
            deg[eu[e]] += 1
            deg[ev[e]] += 1
        adj_start[0] = 0
        for v in range(n):
            adj_start[v + 1] = adj_start[v] + deg[v]
            deg[v] = adj_start[v]
        for i in range(need):
            e = trees[t, i]
            adj[deg[eu[e]]] = e
            deg[eu[e]] += 1
            adj[deg[ev[e]]] = e
            deg[ev[e]] += 1
        # root at vertex 0: parent pointers, parent edge, depth
        for v in range(n):
            parent[v] = -1
        parent[0] = 0
        pedge[0] = -1
        depthv[0] = 0
        top = 0
        stack[0] = 0
        while top >= 0:
            v = stack[top]
            top -= 1
            for p in range(adj_start[v], adj_start[v + 1]):
                e = adj[p]
                w = ev[e] if eu[e] == v else eu[e]
                if parent[w] == -1:
                    parent[w] = v
                    pedge[w] = e
                    depthv[w] = depthv[v] + 1
                    top += 1
                    stack[top] = w
        # internal activity: the child side of each tree edge
        for i in range(need):
            e = trees[t, i]
            child = eu[e] if pedge[eu[e]] == e else ev[e]
            for v in range(n):
                side[v] = 0
            side[child] = 1
            top = 0
            stack[0] = child
            while top >= 0:
                v = stack[top]
                top -= 1
                for p in range(adj_start[v], adj_start[v + 1]):
                    f = adj[p]
                    if f == e:
                        continue
                    w = ev[f] if eu[f] == v else eu[f]
                    if side[w] == 0:
                        side[w] = 1
                        top += 1
                        stack[top] = w
            first = -1
            for k in range(m):
                if side[eu[k]] != side[ev[k]]:
                    first = k
                    break
            out[t, e] = INT_ACTIVE if first == e else INT_PASSIVE
        # external activity: compare against the tree path
        for k in range(m):
            if in_tree[k]:
                continue
            a = eu[k]
            b = ev[k]
            smallest = True
            while a != b:
                if depthv[a] < depthv[b]:
                    c = a
                    a = b
                    b = c
                if pedge[a] < k:
                    smallest = False
                    break
                a = parent[a]
            out[t, k] = EXT_ACTIVE if smallest else EXT_PASSIVE
    return out

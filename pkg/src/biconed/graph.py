"""Multigraph data model, forest predicates and tree enumeration.

Vertices are opaque hashable labels whose position in ``Multigraph.vertices``
is their order rank.  Edges carry a stable integer id and a rank; unless an
explicit order is supplied, ranks follow the lexicographic order on
(smaller endpoint rank, larger endpoint rank) with parallel edges broken by
ascending id.  Edge subsets are ``frozenset`` objects of edge ids.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Sequence
from typing import NamedTuple

import numpy as np

from . import _kernels

EdgeSubset = frozenset


class GraphError(ValueError):
    """Invalid graph input or a violated operation precondition."""


class Edge(NamedTuple):
    id: int
    u: Hashable
    v: Hashable
    rank: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


class Multigraph:
    """Immutable multigraph with loops and parallel edges.

    ``edges`` is a sequence of ``(u, v)`` pairs; ids default to list
    position.  ``order`` optionally lists edge ids from smallest to largest
    and replaces the lexicographic rule.
    """

    __slots__ = ("vertices", "vertex_rank", "edges", "edge", "_arrays")

    def __init__(
        self,
        vertices: Iterable[Hashable],
        edges: Iterable[Sequence[Hashable]] = (),
        ids: Iterable[int] | None = None,
        order: Sequence[int] | None = None,
    ):
        verts = tuple(vertices)
        rank = {}
        for i, v in enumerate(verts):
            if v in rank:
                raise GraphError(f"duplicate vertex label {v!r}")
            rank[v] = i
        pairs = [tuple(e) for e in edges]
        ids = list(range(len(pairs))) if ids is None else [int(i) for i in ids]
        if len(ids) != len(pairs):
            raise GraphError("edge id list and edge list differ in length")
        if len(set(ids)) != len(ids) or any(i < 0 for i in ids):
            raise GraphError("edge ids must be distinct nonnegative integers")
        for p in pairs:
            if len(p) != 2:
                raise GraphError(f"edge {p!r} does not have two endpoints")
            for x in p:
                if x not in rank:
                    raise GraphError(f"edge endpoint {x!r} is not a vertex")
        if order is None:

            def key(k):
                a, b = rank[pairs[k][0]], rank[pairs[k][1]]
                return (min(a, b), max(a, b), ids[k])

            seq = sorted(range(len(pairs)), key=key)
        else:
            pos = {eid: k for k, eid in enumerate(ids)}
            if sorted(order) != sorted(ids):
                raise GraphError("edge order must list every edge id once")
            seq = [pos[eid] for eid in order]
        built = []
        for r, k in enumerate(seq):
            a, b = pairs[k]
            if rank[a] > rank[b]:
                a, b = b, a
            built.append(Edge(ids[k], a, b, r))
        self.vertices = verts
        self.vertex_rank = rank
        self.edges = tuple(built)
        self.edge = {e.id: e for e in built}
        self._arrays = None

    def __repr__(self) -> str:
        return f"Multigraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    def rank_of(self, eid: int) -> int:
        return self.edge[eid].rank

    def other_end(self, eid: int, x: Hashable) -> Hashable:
        e = self.edge[eid]
        return e.v if e.u == x else e.u

    def incident(self, x: Hashable) -> list[int]:
        return [e.id for e in self.edges if x in (e.u, e.v)]

    def subgraph(self, keep: Iterable[int]) -> Multigraph:
        """Same vertex set, only the edges in ``keep``; ranks are recomputed."""
        keep = set(keep)
        es = [e for e in self.edges if e.id in keep]
        return Multigraph(self.vertices, [(e.u, e.v) for e in es], ids=[e.id for e in es])

    def arrays(self):
        """(endpoint-u, endpoint-v, ids) as int64 arrays in rank order, loops included."""
        if self._arrays is None:
            r = self.vertex_rank
            eu = np.array([r[e.u] for e in self.edges], dtype=np.int64)
            ev = np.array([r[e.v] for e in self.edges], dtype=np.int64)
            eid = np.array([e.id for e in self.edges], dtype=np.int64)
            self._arrays = (eu, ev, eid)
        return self._arrays

    def loopless_arrays(self):
        eu, ev, eid = self.arrays()
        keep = eu != ev
        return eu[keep], ev[keep], eid[keep]


def _check_subset(g: Multigraph, s: Iterable[int]) -> frozenset:
    s = frozenset(s)
    bad = [e for e in s if e not in g.edge]
    if bad:
        raise GraphError(f"unknown edge id(s) {sorted(bad)}")
    return s


class _DSU:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.p[b] = a
        return True


def components(g: Multigraph, s: Iterable[int] = ()) -> list[list[Hashable]]:
    """Connected components of (V(g), s), each sorted by vertex rank."""
    s = _check_subset(g, s)
    dsu = _DSU(g.vertices)
    for eid in s:
        e = g.edge[eid]
        dsu.union(e.u, e.v)
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: g.vertex_rank[c[0]])


def is_acyclic(g: Multigraph, s: Iterable[int]) -> bool:
    s = _check_subset(g, s)
    dsu = _DSU(g.vertices)
    return all(dsu.union(g.edge[eid].u, g.edge[eid].v) for eid in s)


def is_connected(g: Multigraph) -> bool:
    return len(components(g, g.edge_ids)) <= 1


def is_spanning_tree(g: Multigraph, s: Iterable[int]) -> bool:
    s = _check_subset(g, s)
    return len(s) == len(g.vertices) - 1 and is_acyclic(g, s)


def spanning_tree_array(g: Multigraph) -> np.ndarray:
    """Spanning trees as rows of edge ids, rows in lexicographic rank order."""
    eu, ev, eid = g.loopless_arrays()
    if len(g.vertices) == 0:
        raise GraphError("no spanning trees: empty graph")
    rows = _kernels.spanning_trees(len(g.vertices), eu, ev)
    if rows.shape[0] == 0:
        raise GraphError("no spanning trees: graph is disconnected")
    return eid[rows]


def enumerate_spanning_trees(g: Multigraph) -> Iterator[frozenset]:
    """Each spanning tree once, ordered lexicographically by sorted edge ranks."""
    for row in spanning_tree_array(g):
        yield frozenset(int(x) for x in row)


def forest_array(g: Multigraph) -> np.ndarray:
    """Acyclic edge subsets as rows of edge ids padded with -1 (DFS order)."""
    eu, ev, eid = g.loopless_arrays()
    n = len(g.vertices)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    rows = _kernels.forests(n, eu, ev)
    lookup = np.append(eid, -1)
    return lookup[rows]


def enumerate_forests(g: Multigraph) -> Iterator[frozenset]:
    """All acyclic edge subsets, grouped by cardinality then lexicographic by rank."""
    rank = {e.id: e.rank for e in g.edges}
    found = [sorted((int(x) for x in row if x >= 0), key=rank.__getitem__) for row in forest_array(g)]
    found.sort(key=lambda f: (len(f), [rank[x] for x in f]))
    for f in found:
        yield frozenset(f)


def forest_counts(g: Multigraph) -> list[int]:
    """Number of acyclic edge subsets of each size 0..|V|-1."""
    eu, ev, _ = g.loopless_arrays()
    n = len(g.vertices)
    if n == 0:
        return [1]
    return [int(x) for x in _kernels.forest_counts(n, eu, ev)]


def _side_of_cut(g: Multigraph, t: frozenset, e: int) -> set:
    """Vertices reachable from one endpoint of ``e`` in t minus e."""
    adj: dict = {v: [] for v in g.vertices}
    for eid in t:
        if eid == e:
            continue
        x = g.edge[eid]
        adj[x.u].append(x.v)
        adj[x.v].append(x.u)
    start = g.edge[e].u
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _require_tree(g: Multigraph, t) -> frozenset:
    t = _check_subset(g, t)
    if not is_spanning_tree(g, t):
        raise GraphError("edge set is not a spanning tree")
    return t


def fundamental_bond(g: Multigraph, t: Iterable[int], e: int) -> frozenset:
    """Edges with one endpoint in each component of t minus e."""
    t = _require_tree(g, t)
    if e not in t:
        raise GraphError(f"edge {e} is not in the tree")
    side = _side_of_cut(g, t, e)
    return frozenset(x.id for x in g.edges if (x.u in side) != (x.v in side))


def tree_path(g: Multigraph, t: Iterable[int], u: Hashable, v: Hashable) -> list[int]:
    """Edge ids of the unique path from ``u`` to ``v`` in the forest ``t``."""
    t = _check_subset(g, t)
    for x in (u, v):
        if x not in g.vertex_rank:
            raise GraphError(f"unknown vertex {x!r}")
    adj: dict = {x: [] for x in g.vertices}
    for eid in t:
        x = g.edge[eid]
        adj[x.u].append((x.v, eid))
        adj[x.v].append((x.u, eid))
    back = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for w, eid in adj[x]:
            if w not in back:
                back[w] = (x, eid)
                stack.append(w)
    if v not in back:
        raise GraphError(f"{u!r} and {v!r} lie in different components")
    path = []
    x = v
    while back[x] is not None:
        x, eid = back[x]
        path.append(eid)
    path.reverse()
    return path


def fundamental_circuit(g: Multigraph, t: Iterable[int], e: int) -> frozenset:
    """The edge ``e`` together with the tree path joining its endpoints."""
    t = _require_tree(g, t)
    if e in t:
        raise GraphError(f"edge {e} is in the tree")
    x = g.edge[e]
    if x.is_loop:
        return frozenset([e])
    return frozenset([e, *tree_path(g, t, x.u, x.v)])


def count_spanning_trees_oracle(g: Multigraph) -> int:
    """Matrix-tree count with fraction-free (Bareiss) integer elimination."""
    n = len(g.vertices)
    if n <= 1:
        return 1 if n == 1 else 0
    r = g.vertex_rank
    lap = [[0] * n for _ in range(n)]
    for e in g.edges:
        if e.is_loop:
            continue
        a, b = r[e.u], r[e.v]
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    m = [row[1:] for row in lap[1:]]
    k = n - 1
    sign = 1
    prev = 1
    for i in range(k):
        if m[i][i] == 0:
            swap = next((j for j in range(i + 1, k) if m[j][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for j in range(i + 1, k):
            for c in range(i + 1, k):
                m[j][c] = (m[j][c] * m[i][i] - m[j][i] * m[i][c]) // prev
            m[j][i] = 0
        prev = m[i][i]
    return sign * m[k - 1][k - 1]

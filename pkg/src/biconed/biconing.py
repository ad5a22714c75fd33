"""Biconing construction, canonical ordering, T0 and the reduced graph."""

from __future__ import annotations

import re
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .graph import GraphError, Multigraph

CONE = "0"
CONE_BAR = "0b"


def label_key(x):
    """Sort key for vertex labels: numbers first, then natural string order."""
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return (0, x, ())
    parts = re.split(r"(\d+)", str(x))
    return (1, 0, tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p))


@dataclass(frozen=True)
class ReducedGraph:
    graph: Multigraph
    provenance: dict = field(compare=False)  # edge id -> "base" | "cone"


@dataclass(frozen=True, eq=False)
class BiconedGraph:
    base: Multigraph
    cover_a: frozenset
    cover_b: frozenset
    a_order: tuple
    abar_order: tuple
    full: Multigraph
    cone_edge: dict  # vertex label (CONE_BAR, A, B members) -> coning edge ids

    cone_zero = CONE
    cone_zerobar = CONE_BAR

    @property
    def m(self) -> int:
        return len(self.a_order)

    @property
    def n_bar(self) -> int:
        return len(self.abar_order)

    @property
    def abar(self) -> frozenset:
        return frozenset(self.abar_order)

    def in_a(self, v: Hashable) -> bool:
        return v in self.cover_a

    def zero_edge(self) -> int:
        """Id of the edge joining 0 and 0-bar."""
        return self.cone_edge[(CONE, CONE_BAR)]

    def zero_to(self, a: Hashable) -> int:
        return self.cone_edge[(CONE, a)]

    def zerobar_to(self, b: Hashable) -> int:
        return self.cone_edge[(CONE_BAR, b)]

    def canonical_names(self) -> dict:
        """Vertex label -> name in the 0 < 0bar < 1..m < 1bar..nbar convention."""
        names = {CONE: "0", CONE_BAR: "0bar"}
        names.update({v: str(i + 1) for i, v in enumerate(self.a_order)})
        names.update({v: f"{i + 1}bar" for i, v in enumerate(self.abar_order)})
        return names

    @cached_property
    def _t_zero(self) -> frozenset:
        return t_zero(self)

    @cached_property
    def _reduced(self) -> ReducedGraph:
        return reduced_graph(self)

    def t_zero(self) -> frozenset:
        return self._t_zero

    def reduced(self) -> ReducedGraph:
        """The reduced graph, built once per instance."""
        return self._reduced

    def __repr__(self):
        return f"BiconedGraph(m={self.m}, n_bar={self.n_bar}, |A&B|={len(self.cover_a & self.cover_b)}, {self.full!r})"


def bicone(g: Multigraph, a: Iterable[Hashable], b: Iterable[Hashable]) -> BiconedGraph:
    """Add coning vertices 0 (joined to A) and 0bar (joined to B) plus the edge 0 0bar."""
    a, b = frozenset(a), frozenset(b)
    verts = frozenset(g.vertices)
    for v in verts:
        if str(v) in (CONE, CONE_BAR):
            raise GraphError(f"vertex label {v!r} collides with a coning vertex")
    if not (a <= verts and b <= verts):
        raise GraphError("cover sets must be subsets of the vertex set")
    if a | b != verts:
        raise GraphError("not a biconing cover: A and B must cover every vertex")
    a_order = tuple(sorted(a, key=label_key))
    abar_order = tuple(sorted(verts - a, key=label_key))
    vertices = (CONE, CONE_BAR) + a_order + abar_order
    pairs = [(e.u, e.v) for e in g.edges]
    ids = [e.id for e in g.edges]
    nxt = max(ids, default=-1) + 1
    cone_edge = {}
    extra = [(CONE, CONE_BAR)] + [(CONE, x) for x in a_order]
    extra += [(CONE_BAR, x) for x in a_order + abar_order if x in b]
    for p in extra:
        cone_edge[p] = nxt
        pairs.append(p)
        ids.append(nxt)
        nxt += 1
    full = Multigraph(vertices, pairs, ids=ids)
    return BiconedGraph(g, a, b, a_order, abar_order, full, cone_edge)


def t_zero(bg: BiconedGraph) -> frozenset:
    """{0 0bar} with 0a for every a in A and 0bar b for every b outside A."""
    ids = [bg.zero_edge()]
    ids += [bg.zero_to(x) for x in bg.a_order]
    ids += [bg.zerobar_to(x) for x in bg.abar_order]
    return frozenset(ids)


def reduced_graph(bg: BiconedGraph) -> ReducedGraph:
    """Full graph minus the edges of T0 minus vertex 0."""
    drop = t_zero(bg)
    keep = [e for e in bg.full.edges if e.id not in drop]
    assert all(CONE not in (e.u, e.v) for e in keep)
    g = Multigraph(bg.full.vertices[1:], [(e.u, e.v) for e in keep], ids=[e.id for e in keep])
    base_ids = set(bg.base.edge)
    prov = {e.id: "base" if e.id in base_ids else "cone" for e in keep}
    return ReducedGraph(g, prov)


def is_bridging(bg: BiconedGraph, e: int) -> bool:
    """True iff the edge joins A to the complement of A (0bar included)."""
    x = bg.full.edge[e]
    if CONE in (x.u, x.v):
        raise GraphError(f"edge {e} is not an edge of the reduced graph")
    return bg.in_a(x.u) != bg.in_a(x.v)


# ---------------------------------------------------------------- families

FAMILIES = ("complete-bipartite", "complete-multipartite", "coned", "ferrers", "complete")


def _ints(params, kind) -> list:
    try:
        vals = [int(p) for p in params]
    except (TypeError, ValueError):
        raise GraphError(f"{kind}: parameters must be integers") from None
    if any(v < 0 for v in vals):
        raise GraphError(f"{kind}: parameters must be nonnegative")
    return vals


def gen_family(kind: str, params) -> BiconedGraph:
    """Realize a member of a biconed family.

    * ``complete-bipartite`` (m, n): bicone of K_{m,n} with A, B its sides,
      giving K_{m+1,n+1}.
    * ``complete-multipartite`` (n1, ..., nk), k >= 2, n1, n2 >= 1: 0 is a
      vertex of part 1, 0bar a vertex of part 2; A = vertices outside part
      1, B = vertices outside part 2.
    * ``coned`` (graph): A empty, B = V(G); 0 hangs off 0bar.
    * ``ferrers`` (lambda_0 >= ... >= lambda_n): u_0 plays 0, v_0 plays
      0bar; A = {v_1..}, B = {u_1..}.  The full graph is the Ferrers graph.
    * ``complete`` (n), n >= 2: K_n with two vertices as cones, A = B = rest.
    """
    if kind == "coned":
        g = params if isinstance(params, Multigraph) else params[0]
        return bicone(g, (), g.vertices)
    if kind == "complete-bipartite":
        m, n = _ints(params, kind) if len(params) == 2 else (None, None)
        if m is None:
            raise GraphError("complete-bipartite takes two sizes m, n")
        xs = list(range(1, m + 1))
        ys = [f"{j}b" for j in range(1, n + 1)]
        g = Multigraph(xs + ys, [(x, y) for x in xs for y in ys])
        return bicone(g, xs, ys)
    if kind == "complete-multipartite":
        sizes = _ints(params, kind)
        if len(sizes) < 2 or sizes[0] < 1 or sizes[1] < 1:
            raise GraphError("complete-multipartite needs >= 2 parts, the first two nonempty")
        parts = []
        for p, size in enumerate(sizes):
            skip = 1 if p < 2 else 0
            parts.append([f"p{p + 1}v{i}" for i in range(skip + 1, size + 1)])
        verts = [v for part in parts for v in part]
        edges = [(x, y) for p, q in combinations(range(len(parts)), 2) for x in parts[p] for y in parts[q]]
        g = Multigraph(verts, edges)
        a = [v for p, part in enumerate(parts) if p != 0 for v in part]
        b = [v for p, part in enumerate(parts) if p != 1 for v in part]
        return bicone(g, a, b)
    if kind == "ferrers":
        lam = _ints(params, kind)
        if not lam or any(x < y for x, y in zip(lam, lam[1:])) or lam[-1] < 1:
            raise GraphError("ferrers needs a weakly decreasing partition with positive parts")
        us = [f"u{i}" for i in range(1, len(lam))]
        vs = [f"v{j}" for j in range(1, lam[0])]
        edges = [(f"u{i}", f"v{j}") for i in range(1, len(lam)) for j in range(1, lam[i])]
        g = Multigraph(us + vs, edges)
        return bicone(g, vs, us)
    if kind == "complete":
        (n,) = _ints(params, kind) if len(params) == 1 else (None,)
        if n is None or n < 2:
            raise GraphError("complete takes one size n >= 2")
        vs = list(range(1, n - 1))
        g = Multigraph(vs, combinations(vs, 2))
        return bicone(g, vs, vs)
    raise GraphError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")

"""Birooted forests, 2-edge-rooted forests and the bijections between them.

A birooted forest is a ``BirootedForest(support, roots)`` over the reduced
graph.  A 2-edge-rooted forest is a multiplicity mapping ``{edge id: m}``
with ``m >= 1``; an edge of multiplicity ``k + 1`` carries ``k`` edge
roots.  Its canonical form, the ``Monomial``, is the tuple of
``(edge id, exponent)`` pairs sorted by edge id.
"""

from __future__ import annotations

import re
from collections.abc import Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from itertools import product

from .biconing import CONE, CONE_BAR, BiconedGraph, is_bridging
from .graph import GraphError, Multigraph, forest_array, is_spanning_tree

Monomial = tuple


@dataclass(frozen=True)
class BirootedForest:
    support: frozenset
    roots: frozenset


class BijectionError(GraphError):
    """Input is outside the domain of a bijection."""


# ------------------------------------------------------------ monomials


def monomial(f) -> Monomial:
    """Canonical monomial of a multiplicity mapping (or pass-through)."""
    if isinstance(f, Mapping):
        items = f.items()
    else:
        items = f
    out = {}
    for eid, k in items:
        if k < 0:
            raise GraphError(f"negative exponent on edge {eid}")
        if k:
            out[int(eid)] = out.get(int(eid), 0) + int(k)
    return tuple(sorted(out.items()))


def multiplicities(m) -> dict:
    return dict(monomial(m))


def degree(f) -> int:
    """Total multiplicity: edges plus edge roots."""
    return sum(k for _, k in monomial(f))


def format_monomial(m, alias: Mapping | None = None) -> str:
    """``e3^2*e5`` style; ``alias`` maps edge ids to variable names."""
    m = monomial(m)
    if not m:
        return "1"
    names = alias or {}
    parts = []
    for eid, k in m:
        var = names.get(eid, f"e{eid}")
        parts.append(var if k == 1 else f"{var}^{k}")
    return "*".join(parts)


_FACTOR = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*$")


def parse_monomial(text: str, alias: Mapping | None = None) -> Monomial:
    """Inverse of ``format_monomial``; ``alias`` maps edge ids to names."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    lookup = {str(v): int(k) for k, v in (alias or {}).items()}
    out: dict = {}
    for factor in text.split("*"):
        hit = _FACTOR.match(factor)
        if not hit:
            raise GraphError(f"malformed monomial factor {factor!r}")
        name, exp = hit.group(1), int(hit.group(2) or 1)
        if name in lookup:
            eid = lookup[name]
        elif re.fullmatch(r"e\d+", name):
            eid = int(name[1:])
        else:
            raise GraphError(f"unknown variable {name!r}")
        out[eid] = out.get(eid, 0) + exp
    return monomial(out)


# ------------------------------------------------------------ forest view


class _Forest:
    """Adjacency, components and paths of an edge set in the reduced graph."""

    def __init__(self, g: Multigraph, support: Iterable[int]):
        self.g = g
        self.support = frozenset(support)
        adj: dict = {v: [] for v in g.vertices}
        parent = {v: v for v in g.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        self.acyclic = True
        for eid in self.support:
            e = g.edge[eid]
            adj[e.u].append((e.v, eid))
            adj[e.v].append((e.u, eid))
            a, b = find(e.u), find(e.v)
            if a == b:
                self.acyclic = False
            else:
                parent[b] = a
        self.adj = adj
        groups: dict = {}
        for v in g.vertices:  # vertices are in rank order
            groups.setdefault(find(v), []).append(v)
        self.components = list(groups.values())
        self.comp_of = {v: i for i, c in enumerate(self.components) for v in c}
        self.comp_edges = [[] for _ in self.components]
        for eid in sorted(self.support, key=g.rank_of):
            self.comp_edges[self.comp_of[g.edge[eid].u]].append(eid)

    def smallest(self, i: int) -> Hashable:
        return self.components[i][0]

    def path(self, u: Hashable, v: Hashable) -> list[int]:
        """Edge ids from u to v; the first edge is incident to u."""
        back = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for w, eid in self.adj[x]:
                if w not in back:
                    back[w] = (x, eid)
                    stack.append(w)
        if v not in back:
            raise GraphError(f"{u!r} and {v!r} lie in different components")
        out = []
        x = v
        while back[x] is not None:
            x, eid = back[x]
            out.append(eid)
        out.reverse()
        return out

    def far_end(self, eid: int, toward: Hashable) -> Hashable:
        """Endpoint of ``eid`` whose path to ``toward`` passes through ``eid``."""
        e = self.g.edge[eid]
        p = self.path(e.u, toward)
        return e.u if p and p[0] == eid else e.v


def _reduced(bg: BiconedGraph) -> Multigraph:
    return bg.reduced().graph


# ------------------------------------------------------------ phi1


def connecting_vertices(bg: BiconedGraph, t: Iterable[int]) -> frozenset:
    """Vertices of A joined to 0, and of the complement joined to 0bar, in t."""
    t = frozenset(t)
    if not is_spanning_tree(bg.full, t):
        raise BijectionError("edge set is not a spanning tree of the biconed graph")
    out = {a for a in bg.a_order if bg.zero_to(a) in t}
    out |= {b for b in bg.abar_order if bg.zerobar_to(b) in t}
    return frozenset(out)


def phi1(bg: BiconedGraph, t: Iterable[int]) -> BirootedForest:
    """Drop T0 edges from the tree and root its connecting vertices and 0bar."""
    t = frozenset(t)
    connecting_vertices(bg, t)
    return _phi1(bg, t)


def _phi1(bg: BiconedGraph, t: frozenset) -> BirootedForest:
    roots = {a for a in bg.a_order if bg.zero_to(a) in t}
    roots |= {b for b in bg.abar_order if bg.zerobar_to(b) in t}
    roots.add(CONE_BAR)
    red = _reduced(bg)
    return BirootedForest(frozenset(e for e in t if e in red.edge), frozenset(roots))


def birooted_violations(bg: BiconedGraph, r: BirootedForest) -> list[str]:
    red = _reduced(bg)
    bad = []
    unknown = [e for e in r.support if e not in red.edge]
    if unknown:
        return [f"support edges {sorted(unknown)} are not in the reduced graph"]
    stray = [v for v in r.roots if v not in red.vertex_rank]
    if stray:
        return [f"roots {stray!r} are not vertices of the reduced graph"]
    fv = _Forest(red, r.support)
    if not fv.acyclic:
        bad.append("support is not a forest")
        return bad
    if CONE_BAR not in r.roots:
        bad.append("0bar is not rooted")
    two = 0
    for comp in fv.components:
        rs = [v for v in comp if v in r.roots]
        if not rs:
            bad.append(f"component {comp!r} has no root")
        elif len(rs) == 2:
            two += 1
            if bg.in_a(rs[0]) == bg.in_a(rs[1]):
                bad.append(f"birooted component {comp!r} needs one root in A and one outside A")
        elif len(rs) > 2:
            bad.append(f"component {comp!r} has {len(rs)} roots")
    if two > 1:
        bad.append("more than one birooted component")
    return bad


def _require_birooted(bg, r):
    bad = birooted_violations(bg, r)
    if bad:
        raise BijectionError("invalid birooted forest: " + "; ".join(bad))


def phi1_inv(bg: BiconedGraph, r: BirootedForest) -> frozenset:
    """Reattach 0 / 0bar to every root; add 0 0bar when nothing is birooted."""
    _require_birooted(bg, r)
    fv = _Forest(_reduced(bg), r.support)
    edges = set(r.support)
    for v in r.roots:
        if v == CONE_BAR:
            continue
        edges.add(bg.zero_to(v) if bg.in_a(v) else bg.zerobar_to(v))
    if not any(sum(v in r.roots for v in comp) == 2 for comp in fv.components):
        edges.add(bg.zero_edge())
    return frozenset(edges)


# ------------------------------------------------------------ phi2


def phi2(bg: BiconedGraph, r: BirootedForest) -> dict:
    """Move vertex roots onto edges, component by component."""
    _require_birooted(bg, r)
    return _phi2(_Forest(_reduced(bg), r.support), r)


def _phi2(fv: _Forest, r: BirootedForest) -> dict:
    mult = {e: 1 for e in r.support}
    for i, comp in enumerate(fv.components):
        rs = [v for v in comp if v in r.roots]
        vs = fv.smallest(i)
        if len(rs) == 1:
            if rs[0] != vs:
                mult[fv.path(rs[0], vs)[0]] += 1
        elif CONE_BAR in rs:
            other = rs[0] if rs[1] == CONE_BAR else rs[1]
            mult[fv.path(other, CONE_BAR)[0]] += 1
        else:
            p = fv.path(rs[0], rs[1])
            mult[p[0]] += 1
            mult[p[-1]] += 1
    return mult


def _component_roots(fv: _Forest, mult: Mapping) -> list[int]:
    totals = []
    for i, comp in enumerate(fv.components):
        k = sum(mult[e] - 1 for e in fv.comp_edges[i])
        totals.append(k + (1 if CONE_BAR in comp else 0))
    return totals


def _c3_path(fv: _Forest, i: int, mult: Mapping) -> list[int]:
    """The shortest path containing the edge roots (and 0bar) of component i."""
    rooted = [e for e in fv.comp_edges[i] if mult[e] > 1]
    if CONE_BAR in fv.components[i]:
        (e,) = rooted
        return fv.path(CONE_BAR, fv.far_end(e, CONE_BAR))
    if len(rooted) == 1:
        return rooted
    e1, e2 = rooted
    anchor = fv.g.edge[e2].u
    return fv.path(fv.far_end(e1, anchor), fv.far_end(e2, fv.g.edge[e1].u))


def validate_2erf(bg: BiconedGraph, f) -> dict:
    """Per-condition report for a candidate 2-edge-rooted forest."""
    red = _reduced(bg)
    mult = multiplicities(f)
    report = {"C0": True, "C1": True, "C2": True, "C3": True, "detail": []}
    unknown = [e for e in mult if e not in red.edge]
    if unknown:
        report["C0"] = False
        report["detail"].append(f"C0: edges {unknown} are not in the reduced graph")
    fv = None if unknown else _Forest(red, mult)
    if fv is not None and not fv.acyclic:
        report["C0"] = False
        report["detail"].append("C0: support contains a cycle")
    if not report["C0"]:
        report["C1"] = report["C2"] = report["C3"] = None
        report["valid"] = False
        return report
    totals = _component_roots(fv, mult)
    twos = [i for i, k in enumerate(totals) if k == 2]
    if len(twos) > 1:
        report["C1"] = False
        report["detail"].append(f"C1: {len(twos)} components are 2-edge-rooted")
    over = [i for i, k in enumerate(totals) if k > 2]
    if over:
        report["C2"] = False
        report["detail"].append(f"C2: component(s) with {sorted(totals[i] for i in over)} edge roots")
    if report["C1"] and report["C2"] and twos:
        path = _c3_path(fv, twos[0], mult)
        crossing = sum(is_bridging(bg, e) for e in path)
        if crossing % 2 == 0:
            report["C3"] = False
            report["detail"].append(f"C3: {crossing} bridging edges on the rooted path {path}")
    elif not (report["C1"] and report["C2"]):
        report["C3"] = None
    report["valid"] = all(report[c] for c in ("C0", "C1", "C2", "C3"))
    return report


def is_2erf(bg: BiconedGraph, f) -> bool:
    return validate_2erf(bg, f)["valid"]


def phi2_inv(bg: BiconedGraph, f) -> BirootedForest:
    """Recover vertex roots from edge roots."""
    report = validate_2erf(bg, f)
    if not report["valid"]:
        failed = [c for c in ("C0", "C1", "C2", "C3") if report[c] is False]
        raise BijectionError(f"not a 2-edge-rooted forest (fails {', '.join(failed)}): " + "; ".join(report["detail"]))
    mult = multiplicities(f)
    fv = _Forest(_reduced(bg), mult)
    roots = {CONE_BAR}
    for i, comp in enumerate(fv.components):
        rooted = [e for e in fv.comp_edges[i] if mult[e] > 1]
        if CONE_BAR in comp:
            if rooted:
                roots.add(fv.far_end(rooted[0], CONE_BAR))
            continue
        vs = fv.smallest(i)
        if not rooted:
            roots.add(vs)
        elif len(rooted) == 1 and mult[rooted[0]] == 2:
            roots.add(fv.far_end(rooted[0], vs))
        elif len(rooted) == 1:
            e = fv.g.edge[rooted[0]]
            roots.update((e.u, e.v))
        else:
            e1, e2 = rooted
            roots.add(fv.far_end(e1, fv.g.edge[e2].u))
            roots.add(fv.far_end(e2, fv.g.edge[e1].u))
    return BirootedForest(frozenset(mult), frozenset(roots))


# ------------------------------------------------------------ composite


def phi(bg: BiconedGraph, t: Iterable[int]) -> Monomial:
    """Spanning tree of the biconed graph -> canonical monomial."""
    return monomial(phi2(bg, phi1(bg, t)))


def phi_inv(bg: BiconedGraph, m) -> frozenset:
    return phi1_inv(bg, phi2_inv(bg, m))


def enumerate_birooted(bg: BiconedGraph) -> Iterator[BirootedForest]:
    """All birooted forests, built directly from forests of the reduced graph."""
    red = _reduced(bg)
    for row in forest_array(red):
        support = frozenset(int(x) for x in row if x >= 0)
        fv = _Forest(red, support)
        singles = []
        pairs = []
        for comp in fv.components:
            if CONE_BAR in comp:
                singles.append([CONE_BAR])
                pairs.append([(CONE_BAR, a) for a in comp if bg.in_a(a)])
            else:
                singles.append(list(comp))
                ins = [v for v in comp if bg.in_a(v)]
                outs = [v for v in comp if not bg.in_a(v)]
                pairs.append([(a, b) for a in ins for b in outs])
        for choice in product(*singles):
            yield BirootedForest(support, frozenset(choice))
        for i, options in enumerate(pairs):
            rest = singles[:i] + singles[i + 1 :]
            for pair in options:
                for choice in product(*rest):
                    yield BirootedForest(support, frozenset(choice) | frozenset(pair))

"""The multicomplex of 2-edge-rooted forests and the end-to-end check."""

from __future__ import annotations

import time
from collections.abc import Iterable
from itertools import product

import numpy as np

from . import _kernels
from .activity import activity_table, f_vector, h_from_f
from .biconing import CONE_BAR, BiconedGraph, is_bridging
from .forests import (
    BijectionError,
    _Forest,
    _phi1,
    _phi2,
    format_monomial,
    monomial,
    multiplicities,
    validate_2erf,
)
from .graph import count_spanning_trees_oracle, forest_array


class MonomialSet:
    """A finite set of canonical monomials over a ground set of edge ids."""

    __slots__ = ("monomials", "ground_set")

    def __init__(self, monomials: Iterable = (), ground_set: Iterable[int] | None = None):
        self.monomials = frozenset(monomial(m) for m in monomials)
        if ground_set is None:
            ground_set = {e for m in self.monomials for e, _ in m}
        self.ground_set = tuple(sorted(ground_set))

    def __len__(self):
        return len(self.monomials)

    def __contains__(self, m):
        return monomial(m) in self.monomials

    def __iter__(self):
        return iter(self.sorted())

    def __eq__(self, other):
        if isinstance(other, MonomialSet):
            return self.monomials == other.monomials
        return NotImplemented

    def __hash__(self):
        return hash(self.monomials)

    def __repr__(self):
        return f"MonomialSet({len(self)} monomials over {len(self.ground_set)} variables)"

    def sorted(self) -> list:
        """Deterministic order: by degree, then by exponent tuple."""
        return sorted(self.monomials, key=lambda m: (sum(k for _, k in m), m))


# ------------------------------------------------------------ enumeration


def _component_options(bg: BiconedGraph, fv: _Forest, i: int):
    """(at most 1-edge-rooted placements, 2-edge-rooted placements) of component i.

    Placements are tuples of edge ids receiving one extra root each.
    """
    edges = fv.comp_edges[i]
    if CONE_BAR in fv.components[i]:
        low = [()]
        high = []
        for e in edges:
            path = fv.path(CONE_BAR, fv.far_end(e, CONE_BAR))
            if sum(is_bridging(bg, x) for x in path) % 2 == 1:
                high.append((e,))
        return low, high
    low = [()] + [(e,) for e in edges]
    high = [(e, e) for e in edges if is_bridging(bg, e)]
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            e1, e2 = edges[a], edges[b]
            path = fv.path(fv.far_end(e1, fv.g.edge[e2].u), fv.far_end(e2, fv.g.edge[e1].u))
            if sum(is_bridging(bg, x) for x in path) % 2 == 1:
                high.append((e1, e2))
    return low, high


def _placements(bg: BiconedGraph, fv: _Forest):
    opts = [_component_options(bg, fv, i) for i in range(len(fv.components))]
    lows = [o[0] for o in opts]
    for choice in product(*lows):
        yield choice
    for i, (_, high) in enumerate(opts):
        if not high:
            continue
        for h in high:
            for choice in product(*lows[:i], [h], *lows[i + 1 :]):
                yield choice


def enumerate_2erf(bg: BiconedGraph) -> MonomialSet:
    """All 2-edge-rooted forests, from forests of the reduced graph and root placements."""
    red = bg.reduced().graph
    out = set()
    for row in forest_array(red):
        support = [int(x) for x in row if x >= 0]
        fv = _Forest(red, support)
        for choice in _placements(bg, fv):
            mult = dict.fromkeys(support, 1)
            for placed in choice:
                for e in placed:
                    mult[e] += 1
            out.add(tuple(sorted(mult.items())))
    return MonomialSet(out, red.edge_ids)


def count_birooted(bg: BiconedGraph) -> int:
    """Number of birooted forests, counted per forest of the reduced graph."""
    red = bg.reduced().graph
    total = 0
    for row in forest_array(red):
        fv = _Forest(red, [int(x) for x in row if x >= 0])
        single = []
        double = []
        for comp in fv.components:
            ins = sum(bg.in_a(v) for v in comp)
            if CONE_BAR in comp:
                single.append(1)
                double.append(ins)
            else:
                single.append(len(comp))
                double.append(ins * (len(comp) - ins))
        base = 1
        for s in single:
            base *= s
        total += base
        for i, dbl in enumerate(double):
            if dbl:
                rest = 1
                for j, s in enumerate(single):
                    if j != i:
                        rest *= s
                total += dbl * rest
    return total


# ------------------------------------------------------------ predicates


def is_downward_closed(s: MonomialSet):
    """(True, None) or (False, (p, q)) with q = p / e missing from s."""
    members = s.monomials
    for p in s.sorted():
        for idx, (e, k) in enumerate(p):
            q = p[:idx] + ((e, k - 1),) + p[idx + 1 :] if k > 1 else p[:idx] + p[idx + 1 :]
            if q not in members:
                return False, (p, q)
    return True, None


def facets(s: MonomialSet) -> MonomialSet:
    """Members not strictly dividing another member."""
    members = s.monomials
    covered = set()
    # p is a non-facet iff some member divides down to a proper multiple of p;
    # for downward-closed sets one extra variable suffices, else compare pairwise
    closed, _ = is_downward_closed(s)
    if closed:
        for p in members:
            for idx, (e, k) in enumerate(p):
                q = p[:idx] + ((e, k - 1),) + p[idx + 1 :] if k > 1 else p[:idx] + p[idx + 1 :]
                covered.add(q)
    else:
        for p in members:
            dp = dict(p)
            for q in members:
                if q != p and all(dp.get(e, 0) >= k for e, k in q):
                    covered.add(q)
    return MonomialSet((p for p in members if p not in covered), s.ground_set)


def is_pure(s: MonomialSet) -> bool:
    return len({sum(k for _, k in m) for m in facets(s).monomials}) <= 1


def degree_sequence(s: MonomialSet) -> list:
    """Entry i counts members of degree i."""
    degs = [sum(k for _, k in m) for m in s.monomials]
    if not degs:
        return []
    out = [0] * (max(degs) + 1)
    for d in degs:
        out[d] += 1
    return out


# ------------------------------------------------------------ extension


def extend(bg: BiconedGraph, f):
    """A strictly larger 2-edge-rooted forest containing f, or None if f is maximal.

    Tries in order: root an unrooted non-singular component; attach an
    isolated vertex that has a neighbour in the reduced graph; then, when
    nothing is 2-edge-rooted yet but the reduced graph has a bridging edge,
    add a bridging edge, double a rooted bridging edge, or root the
    bridging edge nearest to the component's root.
    """
    report = validate_2erf(bg, f)
    if not report["valid"]:
        raise BijectionError("extend needs a valid 2-edge-rooted forest: " + "; ".join(report["detail"]))
    red = bg.reduced().graph
    mult = multiplicities(f)
    fv = _Forest(red, mult)
    totals = []
    for i, comp in enumerate(fv.components):
        totals.append(sum(mult[e] - 1 for e in fv.comp_edges[i]) + (CONE_BAR in comp))

    for i, comp in enumerate(fv.components):
        if fv.comp_edges[i] and totals[i] == 0:
            mult[fv.comp_edges[i][0]] += 1
            return monomial(mult)
    for i, comp in enumerate(fv.components):
        if len(comp) == 1 and comp[0] != CONE_BAR:
            reach = [e.id for e in red.edges if not e.is_loop and comp[0] in (e.u, e.v)]
            if reach:
                mult[reach[0]] = 1
                return monomial(mult)
    bridging = [e.id for e in red.edges if is_bridging(bg, e.id)]
    if 2 in totals or not bridging:
        return None
    inside = [e for e in bridging if e in mult]
    if not inside:
        mult[bridging[0]] = 1
        return monomial(mult)
    rooted = [e for e in inside if mult[e] > 1]
    if rooted:
        mult[rooted[0]] += 1
        return monomial(mult)
    for i, comp in enumerate(fv.components):
        cands = [e for e in fv.comp_edges[i] if is_bridging(bg, e)]
        if not cands:
            continue
        if CONE_BAR in comp:
            for e in cands:
                path = fv.path(CONE_BAR, fv.far_end(e, CONE_BAR))
                if sum(is_bridging(bg, x) for x in path) == 1:
                    mult[e] += 1
                    return monomial(mult)
        else:
            (r,) = [e for e in fv.comp_edges[i] if mult[e] > 1]
            for e in cands:
                path = fv.path(fv.far_end(e, red.edge[r].u), fv.far_end(r, red.edge[e].u))
                if sum(is_bridging(bg, x) for x in path) == 1:
                    mult[e] += 1
                    return monomial(mult)
    raise AssertionError("no extension found although the forest is not maximal")  # pragma: no cover


def extend_to_facet(bg: BiconedGraph, f) -> list:
    """Chain f = m_0 < m_1 < ... < m_k with m_k maximal."""
    chain = [monomial(f)]
    while True:
        nxt = extend(bg, chain[-1])
        if nxt is None:
            return chain
        chain.append(nxt)


def extension_check(bg: BiconedGraph, s: MonomialSet) -> dict:
    """Run ``extend`` from every member of ``s``.

    Each step must land in ``s``, divide-increase by one, and every chain
    must end at a facet of ``s`` within ``rank`` steps.  Successors are
    memoized, so each member is extended once.
    """
    d = len(bg.full.vertices) - 1
    top = facets(s).monomials
    steps: dict = {}
    bad = None
    for start in s.sorted():
        chain = [start]
        while chain[-1] not in steps:
            m = chain[-1]
            nxt = extend(bg, m)
            if nxt is None:
                steps[m] = 0
                if m not in top and bad is None:
                    bad = f"{format_monomial(m)} has no extension but is not a facet"
                break
            if (nxt not in s or sum(k for _, k in nxt) != sum(k for _, k in m) + 1) and bad is None:
                bad = f"extend({format_monomial(m)}) = {format_monomial(nxt)} is not a one-step member"
            if nxt not in s:
                steps[m] = 0
                break
            chain.append(nxt)
        for i in range(len(chain) - 2, -1, -1):
            steps[chain[i]] = steps[chain[i + 1]] + 1
    longest = max(steps.values(), default=0)
    if longest > d and bad is None:
        bad = f"a chain needs {longest} steps, more than the rank {d}"
    return {"ok": bad is None, "longest_chain": longest, "first_failure": bad}


# ------------------------------------------------------------ end to end


def _pad(seq, n):
    seq = list(seq)
    return seq + [0] * (n - len(seq))


def _strip(seq):
    seq = list(seq)
    while len(seq) > 1 and seq[-1] == 0:
        seq.pop()
    return seq


def verify_stanley(bg: BiconedGraph, bijection_limit: int = 50_000) -> dict:
    """Check that the h-vector of the biconed graph is a pure O-sequence.

    PASS requires the degree sequence of the directly enumerated
    2-edge-rooted forests to equal the h-vector (up to trailing zeros), the
    set to be downward closed and pure, and every auxiliary cross-check that
    ran to agree.  Tree-by-tree bijection checks run only when the number of
    spanning trees is at most ``bijection_limit``.
    """
    t0 = time.perf_counter()
    g = bg.full
    d = len(g.vertices) - 1
    trees, codes = activity_table(g)
    n_trees = int(trees.shape[0])
    int_active = (codes == _kernels.INT_ACTIVE).sum(axis=1)
    passive = d - int_active
    h_act = [int(x) for x in np.bincount(passive, minlength=d + 1)]
    f = f_vector(g)
    h_f = list(h_from_f(f))
    fset = enumerate_2erf(bg)
    degseq = degree_sequence(fset)
    closed, witness = is_downward_closed(fset)
    facet_set = facets(fset)
    facet_degrees = sorted({sum(k for _, k in m) for m in facet_set.monomials})
    pure = len(facet_degrees) <= 1
    mobius = int((int_active == 0).sum())
    top = max(facet_degrees) if facet_degrees else 0
    top_facets = sum(1 for m in facet_set.monomials if sum(k for _, k in m) == top)
    oracle = count_spanning_trees_oracle(g)
    birooted = count_birooted(bg)

    checks = {
        "h_from_f == h_from_activity": h_f == h_act,
        "degree_sequence == h (up to trailing zeros)": _strip(degseq) == _strip(h_act),
        "downward_closed": closed,
        "pure": pure,
        "tree_count == matrix_tree_oracle": n_trees == oracle,
        "tree_count == birooted_count": n_trees == birooted,
        "tree_count == |F|": n_trees == len(fset),
        "mobius == h_d": mobius == h_act[d],
    }
    if h_act[d] != 0:
        checks["mobius == top-degree facets"] = mobius == top_facets and top == d
    first_failure = None
    if not closed:
        p, q = witness
        first_failure = f"{format_monomial(p)} is a member but {format_monomial(q)} is not"

    bijection = {"checked": n_trees <= bijection_limit}
    characterization = None
    if bijection["checked"]:
        _, _, eid = g.arrays()
        red = bg.reduced().graph
        image = set()
        rule_hits = alt_hits = 0
        connecting = 0
        for row, code_row in zip(trees.tolist(), codes):
            t = frozenset(row)
            r = _phi1(bg, t)
            fv = _Forest(red, r.support)
            m = monomial(_phi2(fv, r))
            image.add(m)
            deg = sum(k for _, k in m)
            npass = int((code_row == _kernels.INT_PASSIVE).sum())
            if deg != npass and first_failure is None:
                first_failure = f"tree {sorted(t)} has {npass} passive edges but phi gives degree {deg}"
            bijection.setdefault("degree_mismatches", 0)
            bijection["degree_mismatches"] += deg != npass
            lm, rm, nc = _characterization_counts(bg, r, fv, code_row, eid)
            rule_hits += lm
            alt_hits += rm
            connecting += nc
        bijection["image_size"] = len(image)
        checks["phi injective"] = len(image) == n_trees
        checks["phi image == F"] = image == set(fset.monomials)
        checks["degree(phi(t)) == passive(t)"] = bijection.get("degree_mismatches", 0) == 0
        if image != set(fset.monomials) and first_failure is None:
            extra = sorted(image - set(fset.monomials)) or sorted(set(fset.monomials) - image)
            first_failure = f"phi image and F differ at {format_monomial(extra[0])}"
        characterization = {
            "connecting_edges": connecting,
            "active_iff_root_is_smallest_and_not_birooted": rule_hits,
            "active_iff_root_is_not_smallest": alt_hits,
        }
        checks["connecting-edge activity matches smallest-vertex rule"] = rule_hits == connecting

    extension = None
    if bijection["checked"]:
        extension = extension_check(bg, fset)
        checks["extend reaches a facet within rank steps"] = extension["ok"]
        if not extension["ok"] and first_failure is None:
            first_failure = extension["first_failure"]

    failed = [name for name, ok in checks.items() if not ok]
    if failed and first_failure is None:
        first_failure = f"check failed: {failed[0]}"
    return {
        "status": "PASS" if not failed else "FAIL",
        "graph": {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "m": bg.m,
            "n_bar": bg.n_bar,
            "a_and_b": len(bg.cover_a & bg.cover_b),
            "reduced_edges": len(bg.reduced().graph.edges),
        },
        "rank": d,
        "f": f,
        "h": {"from_f": h_f, "from_activity": h_act, "from_multicomplex": _pad(degseq, d + 1)},
        "counts": {
            "spanning_trees": n_trees,
            "matrix_tree_oracle": oracle,
            "birooted_forests": birooted,
            "two_edge_rooted_forests": len(fset),
        },
        "multicomplex": {
            "downward_closed": closed,
            "pure": pure,
            "facets": len(facet_set),
            "facet_degrees": facet_degrees,
            "top_degree": top,
        },
        "mobius_coinvariant": mobius,
        "top_degree_facets": top_facets,
        "bijection": bijection,
        "activity_characterization": characterization,
        "extension": extension,
        "checks": checks,
        "failed": failed,
        "first_failure": first_failure,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def _characterization_counts(bg: BiconedGraph, r, fv, code_row, eid):
    """Compare ground-truth activity of connecting edges with two readings.

    Reading 1: an edge 0v / 0bar v is active iff v is the smallest vertex of
    its component in phi1(t) and that component is not birooted.  Reading 2:
    active iff v is not the smallest vertex.  ``r`` is phi1 of the tree and
    ``fv`` its forest view.  Returns (reading-1 hits,
    reading-2 hits, connecting edges seen).
    """
    truth = dict(zip(eid.tolist(), (code_row == _kernels.INT_ACTIVE).tolist()))
    hits1 = hits2 = seen = 0
    for v in r.roots:
        if v == CONE_BAR:
            continue
        e = bg.zero_to(v) if bg.in_a(v) else bg.zerobar_to(v)
        i = fv.comp_of[v]
        smallest = fv.smallest(i) == v
        birooted = sum(x in r.roots for x in fv.components[i]) == 2
        active = bool(truth[e])
        seen += 1
        hits1 += active == (smallest and not birooted)
        hits2 += active == (not smallest)
    return hits1, hits2, seen
